#pragma once

#include <vector>

#include "dosc/core.hpp"
#include "dosc/spectra.hpp"

namespace dosc {

/// Orbital angular momentum expectation in units of hbar.
struct LzValue {
  int n = 0;
  Branch branch = Branch::Positive;
  Frame frame = Frame::Relativistic;
  double value = 0.0;
  bool defined = true;
  /// n = 0 gives zero in both phases, so it cannot tell them apart.
  bool degenerate = false;
};

/// <L_z> from the squared-energy substitution, e.g. for the left phase
/// -(E^2 - m^2 c^4) / (2 c^2 m omega_T) + hbar n_l. Reduces to -n_l (left)
/// or +n_r (right). Throws CriticalUndefinedError at the critical field.
LzValue lz_expectation_rel(int n, Branch branch, const PhysicalParams& params);

/// Non-relativistic counterpart, e.g. -E / omega_T + hbar n_l.
LzValue lz_expectation_nonrel(int n, Branch branch, const PhysicalParams& params);

/// Dispatches on the regime; at the critical field returns defined = false.
LzValue order_parameter(const PhysicalParams& params, int n, Branch branch, Frame frame);

struct SweepRecord {
  double B = 0.0;
  double b = 0.0;
  Regime regime = Regime::Critical;
  std::vector<EnergyLevel> levels; // spectrum_table order
  std::vector<LzValue> lz;         // same (n, branch) keys as levels
};

/// Uniform grid over [B_start, B_end] with `steps` points, both ends
/// included. Throws ValidationError on a malformed range.
std::vector<SweepRecord> sweep(const PhysicalParams& params, double B_start, double B_end, int steps,
                               int n_max, Frame frame);

struct TransitionEstimate {
  double B = 0.0;
  double error = 0.0; // half the grid spacing
};

/// Locates the field where <L_z> of level n changes sign. A grid point
/// with undefined <L_z> is returned as is; otherwise the midpoint of the
/// bracketing interval. Throws NotBracketedError when nothing changes sign.
TransitionEstimate detect_transition(const std::vector<SweepRecord>& records, int n,
                                     Branch branch = Branch::Positive);

} // namespace dosc
