#pragma once

#include <vector>

#include "dosc/core.hpp"

namespace dosc {

enum class Chirality { Left, Right, Undefined };
enum class Frame { Relativistic, NonRelativistic };

std::string_view to_string(Chirality c);  // "left" / "right" / "undefined"
std::string_view to_string(Frame f);      // "rel" / "nonrel"

/// One level of the closed-form spectrum. Energies are in units of m c^2;
/// negative-branch energies are negative numbers.
struct EnergyLevel {
  int n = 0;
  Branch branch = Branch::Positive;
  Chirality chirality = Chirality::Undefined;
  Frame frame = Frame::Relativistic;
  double energy = 0.0;
};

struct WaveNumber {
  double k = 0.0;   // 1 / length
  double k_n = 0.0; // quantized, 1 / length
};

/// k^2 = 4 m omega / hbar, k_n^2 = k^2 (n + 1/2 -+ 1/2).
WaveNumber wave_number(const PhysicalParams& params, int n, Branch branch);

/// Effective oscillator index: the eigenvalue of the chiral number operator
/// that enters the squared energy. Left: n (Positive), n + 1 (Negative).
/// Right: n + 1 (Positive), n (Negative).
int left_index(int n_l, Branch branch);
int right_index(int n_r, Branch branch);

/// +-sqrt(hbar^2 k^2 c^2 + m^2 c^4) / (m c^2) for a wavenumber k in 1/length.
double free_particle_energy(double k, const PhysicalParams& params, Branch branch);

double left_energy_rel(int n_l, Branch branch, const PhysicalParams& params);
double right_energy_rel(int n_r, Branch branch, const PhysicalParams& params);
double left_energy_nonrel(int n_l, Branch branch, const PhysicalParams& params);
double right_energy_nonrel(int n_r, Branch branch, const PhysicalParams& params);

/// B = 0 limit of the left-phase spectrum.
double dirac_oscillator_energy(int n_l, Branch branch, const PhysicalParams& params);
/// omega = 0 limit of the right-phase spectrum (relativistic Landau levels).
double landau_level_energy(int n_r, Branch branch, const PhysicalParams& params);

/// Levels n = 0..n_max of both branches (Positive first), using the formula
/// appropriate to the regime. At the critical field the continuum is
/// represented by its k = 0 edge (+-1 relativistic, 0 non-relativistic).
std::vector<EnergyLevel> spectrum_table(const PhysicalParams& params, int n_max, Frame frame);

/// Energy of one (n, branch) level in the regime's formula; shared by
/// spectrum_table and the sweep.
EnergyLevel regime_level(const PhysicalParams& params, Regime regime, int n, Branch branch,
                         Frame frame);

/// sqrt(1 + x) - 1 without cancellation for small x.
double sqrt1pm1(double x);

} // namespace dosc
