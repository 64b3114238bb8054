#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dosc/core.hpp"
#include "dosc/eigensolver.hpp"
#include "dosc/fock.hpp"

namespace dosc {

// Numerical verification of the closed-form spectra. Everything here works
// in the dimensionless system hbar = m = c = 1: energies in m c^2, lengths
// in hbar / (m c), angular momentum in hbar.

inline constexpr int kDefaultFockCutoff = 24;
inline constexpr double kClusterTolerance = 1e-8;  // m c^2
inline constexpr double kLeakageThreshold = 1e-6;  // top-shell weight
inline constexpr double kNearCriticalBand = 1e-3;  // |1 - b|

/// Oscillator width used for the Fock basis, in the params' length unit.
/// sqrt(hbar / (m |omega_T|)) away from the critical field,
/// sqrt(hbar / (m omega)) at it, and the Compton length hbar / (m c) when
/// omega = B = 0.
double default_delta_ref(const PhysicalParams& params);

/// Dirac Hamiltonian with linear oscillator coupling and symmetric-gauge
/// vector potential on the truncated basis, in units of m c^2.
/// `delta_ref` is in the params' length unit. Throws AssemblyError if the
/// result fails the Hermiticity gate.
OperatorMatrix build_dirac_hamiltonian(const PhysicalParams& params, const FockBasis& basis,
                                       double delta_ref);

/// p^2 + 1 (that is c^2 p^2 + m^2 c^4 in units of (m c^2)^2).
OperatorMatrix free_energy_squared(const FockBasis& basis, double delta_ref_compton);

/// L_z + sigma_z / 2 in units of hbar; commutes with the truncated
/// Hamiltonian because the truncation preserves total quanta.
OperatorMatrix total_angular_momentum(const FockBasis& basis);

struct NumericLevel {
  double energy = 0.0;
  int multiplicity = 0;
  /// Smallest top-shell weight reachable inside the eigenspace.
  double leakage = 0.0;
  bool artifact = false;
  bool converged = false;
  std::vector<Eigen::Index> columns;
};

struct OracleRun {
  PhysicalParams params;
  FockBasis basis{0};
  double delta_ref = 0.0; // params' length unit
  OperatorMatrix hamiltonian;
  EigenDecomposition decomposition;
  std::vector<NumericLevel> levels; // ascending in energy
};

OracleRun run_oracle(const PhysicalParams& params, int cutoff,
                     std::optional<double> delta_ref = std::nullopt);

/// Groups eigenvalues closer than `tol` (chained) and measures top-shell
/// leakage. Levels whose every state leaks more than kLeakageThreshold into
/// the outermost shell are flagged as truncation artifacts.
std::vector<NumericLevel> cluster_levels(const EigenDecomposition& decomposition,
                                         const FockBasis& basis,
                                         double tol = kClusterTolerance);

struct TrustWindow {
  int positive = 0;
  int negative = 0;
};

/// Diagonalizes at `cutoff` and `cutoff / 2`. A non-artifact level is
/// trusted when the half-size run reproduces it to kClusterTolerance;
/// counts are contiguous runs outward from +-m c^2. Needs cutoff >= 8.
TrustWindow convergence_check(const PhysicalParams& params, int cutoff,
                              std::optional<double> delta_ref = std::nullopt);

struct NumericSpectrum {
  OracleRun run;
  TrustWindow trust;
  std::vector<NumericLevel> positive; // trusted, ascending
  std::vector<NumericLevel> negative; // trusted, descending
  std::vector<double> artifacts;
};

/// Trusted distinct levels nearest +-m c^2, `window` per sign.
/// Throws TruncationError if cutoff < 8 or fewer than `window` levels are
/// trusted on either side.
NumericSpectrum numeric_spectrum(const PhysicalParams& params, int cutoff, int window,
                                 std::optional<double> delta_ref = std::nullopt);

/// Same trust analysis without the window requirement.
NumericSpectrum trusted_spectrum(const PhysicalParams& params, int cutoff,
                                 std::optional<double> delta_ref = std::nullopt);

/// Orbital angular momentum (units of hbar) of the large spinor component
/// (upper for Positive, lower for Negative) over a degenerate cluster,
/// after diagonalizing the conserved L_z + sigma_z / 2 inside it.
/// Throws DegeneracyError if the cluster does not split into sharp
/// half-integer total angular momenta.
std::vector<double> numeric_lz(const EigenDecomposition& decomposition, const FockBasis& basis,
                               const OperatorMatrix& L_z, const std::vector<Eigen::Index>& cluster,
                               Branch branch);

struct MatchEntry {
  double analytic = 0.0;
  std::optional<double> numeric;
  double abs_error = 0.0;
  double rel_error = 0.0;
  bool matched = false;
};

struct MatchReport {
  std::vector<MatchEntry> entries;
  std::vector<double> unmatched_numeric;
  bool pass = true;

  int matched_count() const;
};

inline constexpr double kMatchTolerance = 1e-8;

/// Greedy nearest matching of each analytic level to an unused numeric
/// level. PASS iff every analytic level has a partner within `tol`
/// relative error.
MatchReport match_spectra(std::span<const double> analytic, std::span<const double> numeric,
                          double tol = kMatchTolerance);

struct ZeroModeCheck {
  bool plus_present = false;
  bool minus_present = false;
  bool consistent = false;
};

struct LzCheck {
  int n = 0;
  Branch branch = Branch::Positive;
  double energy = 0.0;
  double predicted = 0.0;
  std::vector<double> multiset;
  bool member = false;
  bool extremal = false;
};

struct OracleReport {
  PhysicalParams params;
  Regime regime = Regime::Critical;
  int cutoff = 0;
  double delta_ref = 0.0;
  int window = 0;
  double tol = kMatchTolerance;
  TrustWindow trust;
  MatchReport positive;
  MatchReport negative;
  ZeroModeCheck zero_mode;
  std::vector<LzCheck> lz;
  std::vector<double> artifacts;
  bool near_critical = false;
  std::string status; // PASS, FAIL or INFORMATIONAL

  bool pass() const { return status == "PASS"; }
};

/// Full oracle comparison at one parameter point: analytic levels with the
/// chiral branch rule, numeric trusted levels, zero-mode placement and the
/// angular-momentum membership check for levels n = 1..3.
OracleReport oracle_report(const PhysicalParams& params, int cutoff = kDefaultFockCutoff,
                           int window = 6, double tol = kMatchTolerance,
                           std::optional<double> delta_ref = std::nullopt);

} // namespace dosc
