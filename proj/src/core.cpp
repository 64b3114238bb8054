#include "dosc/core.hpp"

#include <cmath>
#include <string>

#include "dosc/errors.hpp"

namespace dosc {

PhysicalParams PhysicalParams::natural(double omega, double B) {
  PhysicalParams p;
  p.omega = omega;
  p.B = B;
  return p;
}

namespace {

void require_positive(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw ValidationError(std::string(name) + " must be a finite positive number, got " +
                          std::to_string(value));
  }
}

} // namespace

void PhysicalParams::validate(bool allow_zero_omega) const {
  require_positive(hbar, "hbar");
  require_positive(c, "c");
  require_positive(m, "mass");
  require_positive(e, "charge");
  if (allow_zero_omega && omega == 0.0) {
    // pure Landau or free limit
  } else {
    require_positive(omega, "omega");
  }
  if (!std::isfinite(B) || B < 0.0) {
    throw ValidationError("B must be a finite non-negative magnitude, got " + std::to_string(B));
  }
}

PhysicalParams PhysicalParams::with_field(double field) const {
  PhysicalParams p = *this;
  p.B = field;
  return p;
}

PhysicalParams PhysicalParams::with_omega(double w) const {
  PhysicalParams p = *this;
  p.omega = w;
  return p;
}

std::string_view to_string(Regime r) {
  switch (r) {
  case Regime::LeftPhase: return "LeftPhase";
  case Regime::Critical: return "Critical";
  case Regime::RightPhase: return "RightPhase";
  }
  return "?";
}

std::string_view to_string(Branch b) {
  return b == Branch::Positive ? "Positive" : "Negative";
}

std::string_view branch_symbol(Branch b) { return b == Branch::Positive ? "+" : "-"; }

double critical_field(const PhysicalParams& params) {
  return 2.0 * params.m * params.omega / params.e;
}

DerivedScales derive_scales(const PhysicalParams& params) {
  DerivedScales s;
  s.omega_c = params.e * params.B / params.m;
  s.omega_tilde = 0.5 * s.omega_c;
  s.omega_T = params.omega - s.omega_tilde;
  s.omega_tilde_T = -s.omega_T;
  s.B_c = critical_field(params);
  s.b = params.B / s.B_c;
  s.r_omega = params.hbar * params.omega / params.rest_energy();
  s.F_w = 1.0 - s.b;
  if (params.B > 0.0) {
    s.F_s = 1.0 - 1.0 / s.b;
  }
  return s;
}

Regime classify_regime(const PhysicalParams& params, double rel_tol) {
  if (!(rel_tol >= 0.0 && rel_tol < 1.0)) {
    throw ValidationError("rel_tol must lie in [0, 1)");
  }
  const double B_c = critical_field(params);
  if (std::abs(params.B - B_c) <= rel_tol * B_c) {
    return Regime::Critical;
  }
  return params.B < B_c ? Regime::LeftPhase : Regime::RightPhase;
}

double reduced_strength(const PhysicalParams& params) {
  const double omega_T = params.omega - 0.5 * params.e * params.B / params.m;
  return params.hbar * omega_T / params.rest_energy();
}

} // namespace dosc
