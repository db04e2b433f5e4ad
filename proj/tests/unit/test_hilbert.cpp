#include <gtest/gtest.h>

#include "darkbell/error.hpp"
#include "darkbell/hilbert.hpp"

using namespace darkbell;

TEST(HilbertSpace, IndexRoundTrip) {
  const HilbertSpace space(5);
  ASSERT_EQ(space.dim(), 24u);
  for (std::size_t i = 0; i < space.dim(); ++i) EXPECT_EQ(space.index_of(space.label_of(i)), i);
  EXPECT_EQ(space.index_of({0, Spin::Down, Spin::Down}), 0u);
  EXPECT_EQ(space.index_of({0, Spin::Down, Spin::Up}), 1u);
  EXPECT_EQ(space.index_of({1, Spin::Up, Spin::Down}), 6u);
}

TEST(HilbertSpace, RejectsTinyCutoffAndOverflow) {
  EXPECT_THROW(HilbertSpace(1), Error);
  const HilbertSpace space(3);
  try {
    (void)space.index_of({4, Spin::Up, Spin::Up});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CutoffExceeded);
  }
}

TEST(HilbertSpace, SectorsPartitionTheSpace) {
  const HilbertSpace space(7);
  const auto even = space.sector_indices(Sector::Even);
  const auto odd = space.sector_indices(Sector::Odd);
  EXPECT_EQ(even.size() + odd.size(), space.dim());
  EXPECT_EQ(even.size(), odd.size());
  for (auto i : even) EXPECT_EQ(space.parity(i), 1);
  for (auto i : odd) EXPECT_EQ(space.parity(i), -1);
  EXPECT_EQ(space.sector_indices(Sector::Full).size(), space.dim());
}

TEST(BasisLabel, ParityAndTag) {
  EXPECT_EQ((BasisLabel{0, Spin::Up, Spin::Up}.parity()), 1);
  EXPECT_EQ((BasisLabel{1, Spin::Down, Spin::Up}.parity()), 1);
  EXPECT_EQ((BasisLabel{1, Spin::Up, Spin::Up}.parity()), -1);
  EXPECT_EQ((BasisLabel{0, Spin::Up, Spin::Down}.parity()), -1);
  EXPECT_EQ((BasisLabel{12, Spin::Up, Spin::Down}.tag()), "12ud");
}

TEST(StateVector, NormalizationAndWeights) {
  const HilbertSpace space(4);
  StateVector psi(space);
  EXPECT_THROW((void)psi.normalized(), Error);
  psi[{0, Spin::Up, Spin::Up}] = 3.0;
  psi[{4, Spin::Up, Spin::Up}] = Complex(0.0, 4.0);
  const StateVector n = psi.normalized();
  EXPECT_TRUE(n.is_normalized());
  EXPECT_NEAR(n.top_shell_weight(), 16.0 / 25.0, 1e-15);
  EXPECT_NEAR(n.sector_weight(Sector::Even), 1.0, 1e-15);
  EXPECT_NEAR(n.sector_weight(Sector::Odd), 0.0, 1e-15);
  const auto b = StateVector::basis(space, {4, Spin::Up, Spin::Up});
  EXPECT_NEAR(b.overlap(n), 16.0 / 25.0, 1e-15);
}

TEST(Sector, StringRoundTrip) {
  for (auto s : {Sector::Even, Sector::Odd, Sector::Full}) EXPECT_EQ(sector_from_string(to_string(s)), s);
  EXPECT_THROW(sector_from_string("sideways"), Error);
}
