#include "dosc/spectra.hpp"

#include <cmath>
#include <string>

#include "dosc/errors.hpp"

namespace dosc {

std::string_view to_string(Chirality c) {
  switch (c) {
  case Chirality::Left: return "left";
  case Chirality::Right: return "right";
  case Chirality::Undefined: return "undefined";
  }
  return "?";
}

std::string_view to_string(Frame f) {
  return f == Frame::Relativistic ? "rel" : "nonrel";
}

namespace {

void require_index(int n, const char* name) {
  if (n < 0) {
    throw ValidationError(std::string(name) + " must be non-negative");
  }
}

void require_not_right(const PhysicalParams& params, const char* what) {
  if (classify_regime(params) == Regime::RightPhase) {
    throw RegimeError(std::string(what) + " requires B <= B_c");
  }
}

void require_not_left(const PhysicalParams& params, const char* what) {
  if (classify_regime(params) == Regime::LeftPhase) {
    throw RegimeError(std::string(what) + " requires B >= B_c");
  }
}

// Branch-signed relativistic energy from E^2 / (m c^2)^2 = 1 + x.
double signed_root(double x, Branch branch) { return sign_of(branch) * std::sqrt(1.0 + x); }

} // namespace

int left_index(int n_l, Branch branch) { return branch == Branch::Positive ? n_l : n_l + 1; }

int right_index(int n_r, Branch branch) { return branch == Branch::Positive ? n_r + 1 : n_r; }

double sqrt1pm1(double x) { return x / (std::sqrt(1.0 + x) + 1.0); }

WaveNumber wave_number(const PhysicalParams& params, int n, Branch branch) {
  require_index(n, "n");
  WaveNumber w;
  const double k2 = 4.0 * params.m * params.omega / params.hbar;
  w.k = std::sqrt(k2);
  w.k_n = std::sqrt(k2 * left_index(n, branch));
  return w;
}

double free_particle_energy(double k, const PhysicalParams& params, Branch branch) {
  if (k < 0.0) {
    throw ValidationError("k must be non-negative");
  }
  const double p_over_mc = params.hbar * k / (params.m * params.c);
  return signed_root(p_over_mc * p_over_mc, branch);
}

double left_energy_rel(int n_l, Branch branch, const PhysicalParams& params) {
  require_index(n_l, "n_l");
  require_not_right(params, "left_energy_rel");
  const DerivedScales s = derive_scales(params);
  return signed_root(4.0 * s.r_omega * s.F_w * left_index(n_l, branch), branch);
}

double right_energy_rel(int n_r, Branch branch, const PhysicalParams& params) {
  require_index(n_r, "n_r");
  require_not_left(params, "right_energy_rel");
  const DerivedScales s = derive_scales(params);
  // F_s 2 hbar c^2 e B / (m c^2)^2, which equals 4 r_omega (b - 1) and stays
  // finite in the omega = 0 Landau limit.
  const double landau = 2.0 * params.hbar * params.e * params.B / (params.m * params.m * params.c * params.c);
  return signed_root(s.F_s.value_or(0.0) * landau * right_index(n_r, branch), branch);
}

double left_energy_nonrel(int n_l, Branch branch, const PhysicalParams& params) {
  require_index(n_l, "n_l");
  require_not_right(params, "left_energy_nonrel");
  const DerivedScales s = derive_scales(params);
  // hbar^2 k^2 / 2m = 2 hbar omega
  // + 0.0 folds a signed zero into +0
  return sign_of(branch) * s.F_w * 2.0 * s.r_omega * left_index(n_l, branch) + 0.0;
}

double right_energy_nonrel(int n_r, Branch branch, const PhysicalParams& params) {
  require_index(n_r, "n_r");
  require_not_left(params, "right_energy_nonrel");
  const DerivedScales s = derive_scales(params);
  const double cyclotron = params.hbar * s.omega_c / params.rest_energy();
  const double F_s = s.F_s.value_or(0.0);
  return sign_of(branch) * F_s * cyclotron * right_index(n_r, branch) + 0.0;
}

double dirac_oscillator_energy(int n_l, Branch branch, const PhysicalParams& params) {
  return left_energy_rel(n_l, branch, params.with_field(0.0));
}

double landau_level_energy(int n_r, Branch branch, const PhysicalParams& params) {
  require_index(n_r, "n_r");
  // 2 hbar c^2 e B / (m c^2)^2
  const double landau = 2.0 * params.hbar * params.e * params.B / (params.m * params.m * params.c * params.c);
  return signed_root(landau * right_index(n_r, branch), branch);
}

EnergyLevel regime_level(const PhysicalParams& params, Regime regime, int n, Branch branch,
                         Frame frame) {
  EnergyLevel level;
  level.n = n;
  level.branch = branch;
  level.frame = frame;
  const bool rel = frame == Frame::Relativistic;
  switch (regime) {
  case Regime::LeftPhase:
    level.chirality = Chirality::Left;
    level.energy = rel ? left_energy_rel(n, branch, params) : left_energy_nonrel(n, branch, params);
    break;
  case Regime::RightPhase:
    level.chirality = Chirality::Right;
    level.energy = rel ? right_energy_rel(n, branch, params) : right_energy_nonrel(n, branch, params);
    break;
  case Regime::Critical:
    level.chirality = Chirality::Undefined;
    level.energy = rel ? sign_of(branch) : 0.0;
    break;
  }
  return level;
}

std::vector<EnergyLevel> spectrum_table(const PhysicalParams& params, int n_max, Frame frame) {
  require_index(n_max, "n_max");
  const Regime regime = classify_regime(params);
  std::vector<EnergyLevel> levels;
  levels.reserve(2 * static_cast<std::size_t>(n_max + 1));
  for (Branch branch : {Branch::Positive, Branch::Negative}) {
    for (int n = 0; n <= n_max; ++n) {
      levels.push_back(regime_level(params, regime, n, branch, frame));
    }
  }
  return levels;
}

} // namespace dosc
