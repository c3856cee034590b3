#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

namespace kinex {

/// Closed-open real interval [lo, hi). A degenerate interval (lo == hi) is a
/// constant where a caller allows it.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double width() const noexcept { return hi - lo; }
  double mid() const noexcept { return 0.5 * (lo + hi); }
  bool operator==(const Interval&) const = default;
};

enum class ExchangeRule { PureGambling, FixedSaving, DistributedSaving, General };

/// epsilon is either redrawn uniformly on [0,1) per interaction or held fixed.
struct EpsilonMode {
  std::optional<double> fixed;

  static EpsilonMode random_uniform() { return {}; }
  static EpsilonMode constant(double eps) { return {eps}; }
  bool is_random() const noexcept { return !fixed.has_value(); }
  bool operator==(const EpsilonMode&) const = default;
};

enum class Pairing { MeanField, Lattice2D };

struct PairingSpec {
  Pairing kind = Pairing::MeanField;
  std::size_t side = 0;  // Lattice2D only
  bool operator==(const PairingSpec&) const = default;
};

enum class InitKind { EqualUnit, UniformRandom, DeltaAtOneAgent };

/// Initial wealths. The total is always mean_wealth * N; EqualUnit gives every
/// agent mean_wealth (1 by default), DeltaAtOneAgent puts the total on agent 0.
struct InitSpec {
  InitKind kind = InitKind::EqualUnit;
  double mean_wealth = 1.0;
  bool operator==(const InitSpec&) const = default;
};

struct ModelSpec {
  ExchangeRule rule = ExchangeRule::PureGambling;
  double lambda_fixed = 0.0;       // FixedSaving
  Interval lambda_window{0.0, 1.0};  // DistributedSaving, half-open
  EpsilonMode epsilon;
  Interval eps1_window{0.0, 1.0};  // General
  Interval eps2_window{0.0, 1.0};  // General
  PairingSpec pairing;
  InitSpec init;

  /// Throws InvalidParameter on any out-of-range field.
  void validate() const;
  /// validate() plus the size checks: n >= 2, and L*L == n for Lattice2D.
  void validate_for(std::size_t n_agents) const;

  bool operator==(const ModelSpec&) const = default;
};

enum class RrnInit { Uniform, Ramp };

/// Random resistor network on an L x L lattice: top row at 1 V, bottom row at
/// 0 V, periodic left-right. Bond conductances are uniform on (g_lo, g_hi];
/// g_lo == g_hi > 0 is a homogeneous medium.
struct RrnSpec {
  std::size_t side = 100;
  Interval g_window{0.0, 1.0};
  RrnInit init = RrnInit::Uniform;
  double initial_potential = 0.5;  // Uniform init only

  void validate() const;
  bool operator==(const RrnSpec&) const = default;
};

std::string to_string(ExchangeRule rule);
std::string to_string(RrnInit init);

}  // namespace kinex
