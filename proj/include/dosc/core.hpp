#pragma once

#include <optional>
#include <string_view>

namespace dosc {

/// Constants and controls of the planar Dirac oscillator in a uniform field.
///
/// `B` is a field magnitude; the orientation is fixed along -z. All values
/// are in a consistent unit system (SI, or natural units with hbar=c=m=e=1).
struct PhysicalParams {
  double hbar = 1.0;
  double c = 1.0;
  double m = 1.0;
  double e = 1.0;
  double omega = 1.0;
  double B = 0.0;

  static PhysicalParams natural(double omega, double B);

  /// Throws ValidationError naming the first offending field.
  /// `allow_zero_omega` admits the pure Landau / free limits used by the
  /// numerical Hamiltonian.
  void validate(bool allow_zero_omega = false) const;

  PhysicalParams with_field(double field) const;
  PhysicalParams with_omega(double w) const;

  /// Rest energy m c^2 in the params' unit system.
  double rest_energy() const { return m * c * c; }
};

enum class Regime { LeftPhase, Critical, RightPhase };
enum class Branch { Positive, Negative };

std::string_view to_string(Regime r);
std::string_view to_string(Branch b);
/// "+" / "-"
std::string_view branch_symbol(Branch b);

/// +1 for Positive, -1 for Negative.
constexpr double sign_of(Branch b) { return b == Branch::Positive ? 1.0 : -1.0; }

struct DerivedScales {
  double omega_c = 0.0;       // e B / m
  double omega_tilde = 0.0;   // omega_c / 2
  double omega_T = 0.0;       // omega - omega_tilde
  double omega_tilde_T = 0.0; // omega_tilde - omega
  double B_c = 0.0;
  double b = 0.0;             // B / B_c
  double r_omega = 0.0;       // hbar omega / (m c^2)
  double F_w = 0.0;           // 1 - b
  std::optional<double> F_s;  // 1 - 1/b, only for B > 0
};

double critical_field(const PhysicalParams& params);
DerivedScales derive_scales(const PhysicalParams& params);

inline constexpr double kDefaultRegimeTolerance = 1e-12;

Regime classify_regime(const PhysicalParams& params,
                       double rel_tol = kDefaultRegimeTolerance);

/// hbar * omega_T / (m c^2): the signed dimensionless oscillator strength
/// left over after the vector potential has partially cancelled the linear
/// potential. Equals r_omega * (1 - b). Well defined for omega = 0.
double reduced_strength(const PhysicalParams& params);

} // namespace dosc
