#include "kinex/rrn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "kinex/error.hpp"
#include "kinex/parallel.hpp"

namespace kinex {

ResistorLattice::ResistorLattice(std::size_t side, std::vector<double> horizontal,
                                 std::vector<double> vertical, Interval g_window,
                                 RrnInit init, double initial_potential)
    : side_(side),
      horizontal_(std::move(horizontal)),
      vertical_(std::move(vertical)),
      g_window_(g_window) {
  if (side_ < 3) fail(ErrorCode::InvalidParameter, "lattice side must be at least 3");
  if (horizontal_.size() != side_ * side_ || vertical_.size() != (side_ - 1) * side_) {
    fail(ErrorCode::ShapeError, "bond arrays do not match the lattice side");
  }
  auto bad = [](double g) { return !(g > 0.0) || !std::isfinite(g); };
  if (std::any_of(horizontal_.begin(), horizontal_.end(), bad) ||
      std::any_of(vertical_.begin(), vertical_.end(), bad)) {
    fail(ErrorCode::InvalidParameter, "conductances must be finite and positive");
  }

  const std::size_t L = side_;
  potential_.assign(L * L, 0.0);
  std::fill_n(potential_.begin(), L, 1.0);
  for (std::size_t r = 1; r + 1 < L; ++r) {
    const double v = init == RrnInit::Ramp
                         ? 1.0 - static_cast<double>(r) / static_cast<double>(L - 1)
                         : initial_potential;
    std::fill_n(potential_.begin() + static_cast<std::ptrdiff_t>(r * L), L, v);
  }
  next_ = potential_;

  total_.assign(L * L, 0.0);
  for (std::size_t r = 1; r + 1 < L; ++r) {
    for (std::size_t c = 0; c < L; ++c) {
      const double g = vertical_[(r - 1) * L + c] + vertical_[r * L + c] +
                       horizontal_[r * L + (c + L - 1) % L] + horizontal_[r * L + c];
      total_[r * L + c] = g;
    }
  }
}

void ResistorLattice::set_potential(std::size_t row, std::size_t col, double v) {
  if (row == 0 || row + 1 >= side_ || col >= side_) {
    fail(ErrorCode::InvalidParameter, "only interior potentials can be set");
  }
  potential_[row * side_ + col] = v;
}

double ResistorLattice::node_residual(std::size_t row, std::size_t col) const {
  const std::size_t L = side_;
  const std::size_t o = row * L + col;
  const double vo = potential_[o];
  return vertical_[(row - 1) * L + col] * (potential_[o - L] - vo) +
         vertical_[row * L + col] * (potential_[o + L] - vo) +
         horizontal_[row * L + (col + L - 1) % L] * (potential_[row * L + (col + L - 1) % L] - vo) +
         horizontal_[o] * (potential_[row * L + (col + 1) % L] - vo);
}

double ResistorLattice::relax_sweep() {
  const std::size_t L = side_;
  const double* v = potential_.data();
  const double* gh = horizontal_.data();
  const double* gv = vertical_.data();
  const double* total = total_.data();
  double* out = next_.data();
  // Same summation order as the conductance total, so each quotient is a
  // true weighted mean and cannot leave [min, max] of the neighbours.
  auto update = [&](std::size_t o, std::size_t left, std::size_t right) {
    const double num = gv[o - L] * v[o - L] + gv[o] * v[o + L] + gh[left] * v[left] +
                       gh[o] * v[right];
    return num / total[o];
  };
  double delta = 0.0;
  for (std::size_t r = 1; r + 1 < L; ++r) {
    const std::size_t row = r * L;
    out[row] = update(row, row + L - 1, row + 1);
    for (std::size_t o = row + 1; o + 1 < row + L; ++o) out[o] = update(o, o - 1, o + 1);
    out[row + L - 1] = update(row + L - 1, row + L - 2, row);
    for (std::size_t o = row; o < row + L; ++o) delta += std::abs(out[o] - v[o]);
  }
  potential_.swap(next_);
  return delta / static_cast<double>(interior_nodes());
}

ResistorLattice build_lattice(const RrnSpec& spec, RngStream& rng) {
  spec.validate();
  const std::size_t L = spec.side;
  const double lo = std::max(spec.g_window.lo, kConductanceFloor);
  const double hi = spec.g_window.hi;
  if (lo > hi) fail(ErrorCode::InvalidParameter, "conductance window is empty above the floor");
  // hi - u (hi - lo) with u in [0,1) lies in (lo, hi].
  // A degenerate window gives a homogeneous medium and consumes no draws.
  auto draw = [&] {
    if (lo == hi) return hi;
    return std::max(hi - (hi - lo) * rng.uniform01(), std::nextafter(lo, hi));
  };
  std::vector<double> horizontal(L * L), vertical((L - 1) * L);
  for (auto& g : horizontal) g = draw();
  for (auto& g : vertical) g = draw();
  return ResistorLattice(L, std::move(horizontal), std::move(vertical), spec.g_window,
                         spec.init, spec.initial_potential);
}

std::size_t relax_to_convergence(ResistorLattice& lattice, double tolerance,
                                 std::size_t max_sweeps) {
  std::size_t sweeps = 0;
  while (sweeps < max_sweeps) {
    ++sweeps;
    if (lattice.relax_sweep() < tolerance) break;
  }
  return sweeps;
}

std::vector<double> solve_kirchhoff_dense(const ResistorLattice& lattice) {
  const std::size_t L = lattice.side();
  const std::size_t n = lattice.interior_nodes();
  const auto& gh = lattice.horizontal();
  const auto& gv = lattice.vertical();
  auto unknown = [L](std::size_t r, std::size_t c) { return static_cast<Eigen::Index>((r - 1) * L + c); };

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t r = 1; r + 1 < L; ++r) {
    for (std::size_t c = 0; c < L; ++c) {
      const Eigen::Index row = unknown(r, c);
      struct Bond { std::size_t r, c; double g; };
      const Bond bonds[4] = {
          {r - 1, c, gv[(r - 1) * L + c]},
          {r + 1, c, gv[r * L + c]},
          {r, (c + L - 1) % L, gh[r * L + (c + L - 1) % L]},
          {r, (c + 1) % L, gh[r * L + c]},
      };
      double total = 0.0;
      for (const auto& bond : bonds) total += bond.g;
      // Rows scaled by 1/total: unit diagonal.
      a(row, row) += 1.0;
      for (const auto& bond : bonds) {
        const double w = bond.g / total;
        if (bond.r == 0) {
          b(row) += w;  // top bus bar at 1 V
        } else if (bond.r == L - 1) {
          // bottom bus bar at 0 V
        } else {
          a(row, unknown(bond.r, bond.c)) -= w;
        }
      }
    }
  }
  const Eigen::VectorXd x = a.fullPivLu().solve(b);
  return {x.data(), x.data() + x.size()};
}

double dense_solver_discrepancy(const ResistorLattice& lattice, double tolerance,
                                std::size_t max_sweeps) {
  ResistorLattice relaxed = lattice;
  relax_to_convergence(relaxed, tolerance, max_sweeps);
  const auto direct = solve_kirchhoff_dense(lattice);
  const std::size_t L = lattice.side();
  double worst = 0.0;
  for (std::size_t r = 1; r + 1 < L; ++r) {
    for (std::size_t c = 0; c < L; ++c) {
      worst = std::max(worst, std::abs(relaxed.potential(r, c) - direct[(r - 1) * L + c]));
    }
  }
  return worst;
}

RelaxationSeries run_rrn_relaxation(const RrnSpec& spec, std::size_t t_max,
                                    std::size_t n_configs, std::uint64_t master_seed,
                                    unsigned threads) {
  spec.validate();
  if (t_max < 2) fail(ErrorCode::InvalidParameter, "t_max must be at least 2");
  if (n_configs < 1) fail(ErrorCode::InvalidParameter, "n_configs must be at least 1");

  auto one_config = [&](std::size_t c) {
    RngStream rng(master_seed, c);
    ResistorLattice lattice = build_lattice(spec, rng);
    std::vector<double> x(t_max);
    for (auto& v : x) v = lattice.relax_sweep();
    return x;
  };

  RelaxationSeries series;
  series.x_mean = ordered_sum(n_configs, t_max, resolve_threads(threads), one_config);
  for (auto& v : series.x_mean) v /= static_cast<double>(n_configs);
  series.t.resize(t_max);
  std::iota(series.t.begin(), series.t.end(), std::int64_t{1});
  series.n_configs = n_configs;
  series.n_agents = (spec.side - 2) * spec.side;
  series.master_seed = master_seed;
  series.source = spec;
  return series;
}

}  // namespace kinex
