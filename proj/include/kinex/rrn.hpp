#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "kinex/relaxation.hpp"
#include "kinex/rng.hpp"
#include "kinex/specs.hpp"

namespace kinex {

/// Lower cut applied to sampled conductances so that (0, g_max] never yields
/// an open bond.
inline constexpr double kConductanceFloor = 1e-9;

/// L x L node potentials (row-major, row 0 = top bus bar at 1 V, row L-1 =
/// bottom bus bar at 0 V) and bond conductances, periodic left-right.
///
/// horizontal[r * L + c] joins (r, c) and (r, c + 1 mod L);
/// vertical[r * L + c] joins (r, c) and (r + 1, c) for r < L - 1.
class ResistorLattice {
 public:
  ResistorLattice(std::size_t side, std::vector<double> horizontal,
                  std::vector<double> vertical, Interval g_window,
                  RrnInit init = RrnInit::Uniform, double initial_potential = 0.5);

  std::size_t side() const noexcept { return side_; }
  std::size_t interior_nodes() const noexcept { return (side_ - 2) * side_; }
  const Interval& g_window() const noexcept { return g_window_; }

  double potential(std::size_t row, std::size_t col) const {
    return potential_[row * side_ + col];
  }
  void set_potential(std::size_t row, std::size_t col, double v);
  const std::vector<double>& potentials() const noexcept { return potential_; }
  const std::vector<double>& horizontal() const noexcept { return horizontal_; }
  const std::vector<double>& vertical() const noexcept { return vertical_; }

  /// Net current into interior node (row, col): sum_k g_k (V_k - V_o).
  double node_residual(std::size_t row, std::size_t col) const;

  /// One synchronous sweep: every interior node becomes the
  /// conductance-weighted mean of its four neighbours, all read from the
  /// previous sweep. Returns (1/N_int) sum |dV|.
  double relax_sweep();

 private:
  std::size_t side_;
  std::vector<double> potential_;
  std::vector<double> next_;
  std::vector<double> horizontal_;
  std::vector<double> vertical_;
  std::vector<double> total_;  // sum of the four bond conductances per node
  Interval g_window_;
};

/// Samples bonds uniformly on (max(g_lo, floor), g_hi]. Throws InvalidParameter
/// for L < 3 or a bad window.
ResistorLattice build_lattice(const RrnSpec& spec, RngStream& rng);

/// Sweeps until X < tolerance or max_sweeps; returns the sweep count.
std::size_t relax_to_convergence(ResistorLattice& lattice, double tolerance,
                                 std::size_t max_sweeps);

/// Interior potentials (row-major over rows 1..L-2) from a direct dense LU
/// solve of the Kirchhoff equations. Independent of the sweep code path.
std::vector<double> solve_kirchhoff_dense(const ResistorLattice& lattice);

/// Largest |V_sweep - V_dense| over interior nodes after relaxing a copy of
/// `lattice` to convergence.
double dense_solver_discrepancy(const ResistorLattice& lattice,
                                double tolerance = 1e-14,
                                std::size_t max_sweeps = 2'000'000);

/// Mean X(t) over n_configs conductance realizations; realization c draws its
/// bonds from RngStream(master_seed, c). One time step = one sweep.
RelaxationSeries run_rrn_relaxation(const RrnSpec& spec, std::size_t t_max,
                                    std::size_t n_configs, std::uint64_t master_seed,
                                    unsigned threads = 0);

}  // namespace kinex
