#include "darkbell/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "darkbell/error.hpp"

namespace darkbell {

StateVector SectorEigen::state(const HilbertSpace& space, int k) const {
  return StateVector(space, vectors.col(k).cast<Complex>());
}

SectorEigen diagonalize_sector(const ModelParams& params, Sector sector, const HilbertSpace& space,
                               int n_levels) {
  const Eigen::MatrixXd h = build_hamiltonian(params, space).dense();
  const auto idx = space.sector_indices(sector);
  const auto n = static_cast<Eigen::Index>(idx.size());
  const int keep = n_levels <= 0 ? static_cast<int>(n) : n_levels;
  if (keep > n) {
    throw Error(ErrorKind::InvalidParams,
                fmt::format("requested {} levels but the {} sector has dimension {}", keep,
                            to_string(sector), n));
  }

  Eigen::MatrixXd block(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      block(r, c) = h(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(r)]),
                      static_cast<Eigen::Index>(idx[static_cast<std::size_t>(c)]));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::EigensolverFailure,
                fmt::format("eigensolver did not converge in the {} sector", to_string(sector)));
  }

  SectorEigen out;
  out.sector = sector;
  out.values = solver.eigenvalues().head(keep);
  out.vectors = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(space.dim()), keep);
  out.top_shell_weight = Eigen::VectorXd::Zero(keep);
  for (int k = 0; k < keep; ++k) {
    Eigen::VectorXd v = solver.eigenvectors().col(k);
    Eigen::Index pivot = 0;
    v.cwiseAbs().maxCoeff(&pivot);
    if (v[pivot] < 0.0) v = -v;
    for (Eigen::Index r = 0; r < n; ++r) {
      out.vectors(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(r)]), k) = v[r];
    }
    out.top_shell_weight[k] = out.vectors.col(k).tail(4).squaredNorm();
  }
  return out;
}

ModelParams SweepSpec::params_at(std::size_t i) const {
  const double x = points.at(i);
  if (const auto* ax = std::get_if<ParamAxis>(&axis)) {
    ModelParams p = base;
    p.set(ax->param, x);
    for (const auto& [target, link] : ax->links) {
      p.set(target, link.offset + link.scale * p.get(link.source));
    }
    return p;
  }
  return std::get<ScheduleAxis>(axis).schedule.params_at(x);
}

void SweepSpec::validate(const HilbertSpace& space) const {
  if (points.empty()) throw Error(ErrorKind::InvalidParams, "sweep has no points");
  const bool up = points.size() < 2 || points[1] > points[0];
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (up ? !(points[i] > points[i - 1]) : !(points[i] < points[i - 1])) {
      throw Error(ErrorKind::InvalidParams,
                  fmt::format("sweep points must be strictly monotone (index {})", i));
    }
  }
  const auto sector_dim = space.sector_indices(sector).size();
  if (n_levels < 1 || static_cast<std::size_t>(n_levels) > sector_dim) {
    throw Error(ErrorKind::InvalidParams,
                fmt::format("n_levels = {} outside 1..{}", n_levels, sector_dim));
  }
}

bool SpectrumResult::truncation_flag(std::size_t i) const {
  const auto& row = contaminated.at(i);
  return std::any_of(row.begin(), row.end(), [](bool b) { return b; });
}

std::vector<double> linspace(double from, double to, int n) {
  std::vector<double> out;
  if (n <= 0) return out;
  if (n == 1) return {from};
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out.push_back(i == n - 1 ? to : from + (to - from) * i / (n - 1));
  }
  return out;
}

namespace {

// Contiguous run of levels within kDegeneracyTolerance of level k.
std::pair<int, int> degenerate_block(const Eigen::VectorXd& values, int k) {
  int lo = k;
  int hi = k;
  while (lo > 0 && values[k] - values[lo - 1] < kDegeneracyTolerance) --lo;
  while (hi + 1 < values.size() && values[hi + 1] - values[k] < kDegeneracyTolerance) ++hi;
  return {lo, hi};
}

}  // namespace

SpectrumResult sweep(const SweepSpec& spec, const HilbertSpace& space) {
  spec.validate(space);
  const std::size_t n_points = spec.points.size();
  std::vector<SectorEigen> eig(n_points);
  std::vector<std::exception_ptr> failures(n_points);

  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, n_points);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < n_points; i += workers) {
          try {
            eig[i] = diagonalize_sector(spec.params_at(i), spec.sector, space);
          } catch (...) {
            failures[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (std::size_t i = 0; i < n_points; ++i) {
    if (!failures[i]) continue;
    try {
      std::rethrow_exception(failures[i]);
    } catch (const Error& e) {
      throw Error(e.kind(), fmt::format("sweep point {}: {}", i, e.what()));
    }
  }

  SpectrumResult out;
  out.axis = spec.points;
  out.eigenvalues.resize(static_cast<Eigen::Index>(n_points), spec.n_levels);
  Eigen::VectorXd previous;
  for (std::size_t i = 0; i < n_points; ++i) {
    const SectorEigen& e = eig[i];
    const ModelParams p = spec.params_at(i);
    out.eigenvalues.row(static_cast<Eigen::Index>(i)) = e.values.head(spec.n_levels).transpose();
    out.dark_residual.push_back((e.values.array() - p.omega).abs().minCoeff());
    std::vector<bool> flags;
    for (int k = 0; k < spec.n_levels; ++k) flags.push_back(e.top_shell_weight[k] > kTruncationWeight);
    out.contaminated.push_back(std::move(flags));

    int tracked = 0;
    if (i == 0) {
      (e.values.array() - spec.track_energy).abs().minCoeff(&tracked);
      previous = e.vectors.col(tracked);
    } else {
      (e.vectors.transpose() * previous).cwiseAbs().maxCoeff(&tracked);
      const auto [lo, hi] = degenerate_block(e.values, tracked);
      if (hi > lo) {
        // Continue with the projection of the previous vector onto the block.
        const auto blk = e.vectors.middleCols(lo, hi - lo + 1);
        Eigen::VectorXd proj = blk * (blk.transpose() * previous);
        const double nrm = proj.norm();
        previous = nrm > 0.0 ? Eigen::VectorXd(proj / nrm) : Eigen::VectorXd(e.vectors.col(tracked));
      } else {
        previous = e.vectors.col(tracked);
      }
    }
    out.tracked_level.push_back(tracked);
    out.tracked_energy.push_back(e.values[tracked]);
  }
  return out;
}

LevelGap nearest_level_gap(const ModelParams& params, const DarkFamily& family,
                           const HilbertSpace& space, double reference_energy) {
  StateVector dark(space);
  try {
    dark = construct_dark_state(params, family, space).state;
  } catch (const Error& e) {
    throw Error(ErrorKind::NoDarkLevel, fmt::format("no analytic dark state: {}", e.what()));
  }
  const SectorEigen eig = diagonalize_sector(params, family.sector(), space);
  const Eigen::VectorXd dark_re = dark.amplitudes().real();
  const Eigen::VectorXd overlaps = (eig.vectors.transpose() * dark_re).array().square();

  LevelGap out;
  double best_weight = 0.0;
  for (int k = 0; k < eig.size();) {
    const auto [lo, hi] = degenerate_block(eig.values, k);
    const double w = overlaps.segment(lo, hi - lo + 1).sum();
    if (w > best_weight) {
      best_weight = w;
      overlaps.segment(lo, hi - lo + 1).maxCoeff(&out.dark_index);
      out.dark_index += lo;
    }
    k = hi + 1;
  }
  if (best_weight <= kDarkOverlapThreshold) {
    throw Error(ErrorKind::NoDarkLevel,
                fmt::format("no level overlaps the dark state above {} (best {:.6f})",
                            kDarkOverlapThreshold, best_weight));
  }
  out.dark_overlap = best_weight;
  out.gap = std::numeric_limits<double>::infinity();
  for (int k = 0; k < eig.size(); ++k) {
    if (k == out.dark_index) continue;
    const double d = std::abs(eig.values[k] - reference_energy);
    if (d < out.gap) {
      out.gap = d;
      out.level_index = k;
    }
  }
  return out;
}

}  // namespace darkbell
