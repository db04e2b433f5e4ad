#include "darkbell/hamiltonian.hpp"

#include <cmath>
#include <vector>

#include "darkbell/error.hpp"
#include "darkbell/schedules.hpp"

namespace darkbell {

namespace {

bool is_diagonal_param(Param p) {
  return p == Param::Omega || p == Param::Delta1 || p == Param::Delta2 || p == Param::U1 ||
         p == Param::U2;
}

}  // namespace

HamiltonianGenerators::HamiltonianGenerators(const HilbertSpace& space)
    : space_(space),
      generators_{OperatorMatrix(space), OperatorMatrix(space), OperatorMatrix(space),
                  OperatorMatrix(space), OperatorMatrix(space), OperatorMatrix(space),
                  OperatorMatrix(space), OperatorMatrix(space), OperatorMatrix(space)} {
  const auto dim = static_cast<Eigen::Index>(space.dim());
  for (auto& d : diagonals_) d = Eigen::VectorXd::Zero(dim);
  std::array<std::vector<Eigen::Triplet<double>>, kNumParams> trips;

  auto diag = [&](Param p) -> Eigen::VectorXd& { return diagonals_[static_cast<std::size_t>(p)]; };
  auto couple = [&](Param p, std::size_t i, std::size_t k, double v) {
    auto& t = trips[static_cast<std::size_t>(p)];
    t.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k), v);
    t.emplace_back(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i), v);
  };

  for (std::size_t i = 0; i < space.dim(); ++i) {
    const BasisLabel b = space.label_of(i);
    const auto ii = static_cast<Eigen::Index>(i);
    diag(Param::Omega)[ii] = b.n;
    diag(Param::Delta1)[ii] = sz(b.s1);
    diag(Param::Delta2)[ii] = sz(b.s2);
    diag(Param::U1)[ii] = b.n * sz(b.s1);
    diag(Param::U2)[ii] = b.n * sz(b.s2);

    if (b.n >= space.n_max()) continue;  // hard cutoff: no |n_max + 1> partner
    const double amp = std::sqrt(static_cast<double>(b.n + 1));
    // a^dag s_1 (rotating) lowers an up qubit; a^dag s_1^dag (counter-rotating) raises a down one.
    {
      BasisLabel up = b;
      up.n += 1;
      up.s1 = b.s1 == Spin::Up ? Spin::Down : Spin::Up;
      couple(b.s1 == Spin::Up ? Param::G1r : Param::G1c, i, space.index_of(up), amp);
    }
    {
      BasisLabel up = b;
      up.n += 1;
      up.s2 = b.s2 == Spin::Up ? Spin::Down : Spin::Up;
      couple(b.s2 == Spin::Up ? Param::G2r : Param::G2c, i, space.index_of(up), amp);
    }
  }

  for (Param p : kAllParams) {
    const auto k = static_cast<std::size_t>(p);
    if (is_diagonal_param(p)) {
      generators_[k] = OperatorMatrix::diagonal(space, diagonals_[k]);
    } else {
      OperatorMatrix::Sparse m(dim, dim);
      m.setFromTriplets(trips[k].begin(), trips[k].end());
      generators_[k] = OperatorMatrix(space, std::move(m));
    }
  }
}

OperatorMatrix HamiltonianGenerators::combine(const ModelParams& coefficients) const {
  OperatorMatrix out(space_);
  for (Param p : kAllParams) {
    const double c = coefficients.get(p);
    if (c != 0.0) out += c * generator(p);
  }
  return out;
}

void HamiltonianGenerators::apply(const ModelParams& params, const Eigen::VectorXcd& in,
                                  Eigen::VectorXcd& out) const {
  Eigen::VectorXd d = params.omega * diagonals_[static_cast<std::size_t>(Param::Omega)];
  for (Param p : {Param::Delta1, Param::Delta2, Param::U1, Param::U2}) {
    const double c = params.get(p);
    if (c != 0.0) d += c * diagonals_[static_cast<std::size_t>(p)];
  }
  const Eigen::VectorXd re = in.real();
  const Eigen::VectorXd im = in.imag();
  Eigen::VectorXd out_re = d.cwiseProduct(re);
  Eigen::VectorXd out_im = d.cwiseProduct(im);
  for (Param p : {Param::G1r, Param::G1c, Param::G2r, Param::G2c}) {
    const double c = params.get(p);
    if (c == 0.0) continue;
    const auto& g = generator(p).entries();
    out_re.noalias() += c * (g * re);
    out_im.noalias() += c * (g * im);
  }
  out.resize(in.size());
  out.real() = out_re;
  out.imag() = out_im;
}

OperatorMatrix build_hamiltonian(const ModelParams& params, const HilbertSpace& space) {
  params.validate();
  return HamiltonianGenerators(space).combine(params);
}

OperatorMatrix build_hamiltonian_derivative(const Schedule& schedule, double t,
                                            const HilbertSpace& space) {
  return HamiltonianGenerators(space).combine(schedule.rates_at(t));
}

}  // namespace darkbell
