#include "dosc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dosc/errors.hpp"
#include "dosc/phase.hpp"
#include "dosc/spectra.hpp"

namespace dosc {

namespace {

constexpr Complex kI{0.0, 1.0};

double to_compton(const PhysicalParams& params, double length) {
  return length * params.m * params.c / params.hbar;
}

bool near_critical(const PhysicalParams& params) {
  if (params.omega == 0.0) {
    return params.B == 0.0;
  }
  return std::abs(1.0 - derive_scales(params).b) < kNearCriticalBand;
}

double min_eigenvalue(const OperatorMatrix& M) {
  if (M.rows() == 1) {
    return M(0, 0).real();
  }
  return hermitian_eigensolve(M).eigenvalues(0);
}

struct TrustedRuns {
  OracleRun full;
  TrustWindow trust;
};

TrustedRuns establish_trust(const PhysicalParams& params, int cutoff, std::optional<double> delta_ref) {
  if (cutoff < 8) {
    throw TruncationError("trust window needs a Fock cutoff of at least 8, got " + std::to_string(cutoff));
  }
  const double width = delta_ref.value_or(default_delta_ref(params));
  TrustedRuns out{run_oracle(params, cutoff, width), {}};
  const OracleRun half = run_oracle(params, cutoff / 2, width);

  std::vector<double> reference;
  for (const NumericLevel& level : half.levels) {
    if (!level.artifact) {
      reference.push_back(level.energy);
    }
  }
  for (NumericLevel& level : out.full.levels) {
    if (level.artifact) {
      continue;
    }
    level.converged = std::any_of(reference.begin(), reference.end(), [&](double e) {
      return std::abs(e - level.energy) <= kClusterTolerance;
    });
  }

  auto count_from = [](auto first, auto last, auto keep) {
    int count = 0;
    for (auto it = first; it != last; ++it) {
      if (it->artifact || !keep(*it)) {
        continue;
      }
      if (!it->converged) {
        break;
      }
      ++count;
    }
    return count;
  };
  const auto& levels = out.full.levels;
  out.trust.positive = count_from(levels.begin(), levels.end(), [](const NumericLevel& l) { return l.energy > 0.0; });
  out.trust.negative = count_from(levels.rbegin(), levels.rend(), [](const NumericLevel& l) { return l.energy < 0.0; });
  return out;
}

NumericSpectrum collect(TrustedRuns runs, std::optional<int> window) {
  NumericSpectrum spec;
  spec.trust = runs.trust;
  const auto& levels = runs.full.levels;
  const int keep_pos = window.value_or(runs.trust.positive);
  const int keep_neg = window.value_or(runs.trust.negative);
  for (const NumericLevel& level : levels) {
    if (level.artifact) {
      spec.artifacts.push_back(level.energy);
    } else if (level.energy > 0.0 && static_cast<int>(spec.positive.size()) < keep_pos) {
      spec.positive.push_back(level);
    }
  }
  for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
    if (!it->artifact && it->energy < 0.0 && static_cast<int>(spec.negative.size()) < keep_neg) {
      spec.negative.push_back(*it);
    }
  }
  spec.run = std::move(runs.full);
  return spec;
}

std::vector<double> energies_of(const std::vector<NumericLevel>& levels) {
  std::vector<double> out;
  out.reserve(levels.size());
  for (const auto& l : levels) {
    out.push_back(l.energy);
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

double default_delta_ref(const PhysicalParams& params) {
  const double omega_T = params.omega - 0.5 * params.e * params.B / params.m;
  if (classify_regime(params) != Regime::Critical && omega_T != 0.0) {
    return std::sqrt(params.hbar / (params.m * std::abs(omega_T)));
  }
  if (params.omega > 0.0) {
    return std::sqrt(params.hbar / (params.m * params.omega));
  }
  return params.hbar / (params.m * params.c);
}

OperatorMatrix build_dirac_hamiltonian(const PhysicalParams& params, const FockBasis& basis,
                                       double delta_ref) {
  params.validate(true);
  const PhaseSpaceOps ops = position_momentum_ops(basis, to_compton(params, delta_ref));
  const double r_omega = params.hbar * params.omega / params.rest_energy();
  // e A / (m c) for A = (B/2)(-y, x): half the cyclotron energy over m c^2.
  const double half_cyclotron = 0.5 * params.hbar * params.e * params.B / (params.m * params.rest_energy());

  const Eigen::Matrix2cd sx = pauli_matrix(Pauli::X);
  const Eigen::Matrix2cd sy = pauli_matrix(Pauli::Y);
  const Eigen::Matrix2cd sz = pauli_matrix(Pauli::Z);

  OperatorMatrix H = spin_product(sx, ops.p_x) + spin_product(sy, ops.p_y);
  // c sigma_j (-i m omega sigma_z r_j)
  const Eigen::Matrix2cd osc_x = -kI * r_omega * sx * sz;
  const Eigen::Matrix2cd osc_y = -kI * r_omega * sy * sz;
  H += spin_product(osc_x, ops.x) + spin_product(osc_y, ops.y);
  H += spin_product(sx, -half_cyclotron * ops.y) + spin_product(sy, half_cyclotron * ops.x);
  H += spin_operator(basis, sz);

  if (!is_hermitian(H)) {
    throw AssemblyError("Dirac Hamiltonian failed the Hermiticity gate (defect " +
                        std::to_string(hermiticity_defect(H)) + ")");
  }
  return H;
}

OperatorMatrix free_energy_squared(const FockBasis& basis, double delta_ref_compton) {
  const PhaseSpaceOps ops = position_momentum_ops(basis, delta_ref_compton);
  return ops.p_x * ops.p_x + ops.p_y * ops.p_y + identity(basis);
}

OperatorMatrix total_angular_momentum(const FockBasis& basis) {
  const NumberOps ops = number_and_angular_ops(basis, 0.0);
  return ops.L_z + 0.5 * spin_operator(basis, pauli_matrix(Pauli::Z));
}

std::vector<NumericLevel> cluster_levels(const EigenDecomposition& decomposition,
                                         const FockBasis& basis, double tol) {
  std::vector<Eigen::Index> top_rows;
  for (int i = 0; i < basis.dim(); ++i) {
    if (basis.state(i).quanta() == basis.cutoff()) {
      top_rows.push_back(i);
    }
  }

  std::vector<NumericLevel> levels;
  const Eigen::Index n = decomposition.eigenvalues.size();
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && decomposition.eigenvalues(stop) - decomposition.eigenvalues(stop - 1) <= tol) {
      ++stop;
    }
    NumericLevel level;
    level.multiplicity = static_cast<int>(stop - start);
    level.energy = decomposition.eigenvalues.segment(start, stop - start).mean();
    for (Eigen::Index k = start; k < stop; ++k) {
      level.columns.push_back(k);
    }
    Eigen::MatrixXcd top(static_cast<Eigen::Index>(top_rows.size()), level.multiplicity);
    for (std::size_t r = 0; r < top_rows.size(); ++r) {
      for (int c = 0; c < level.multiplicity; ++c) {
        top(static_cast<Eigen::Index>(r), c) = decomposition.eigenvectors(top_rows[r], start + c);
      }
    }
    const OperatorMatrix weight = top.adjoint() * top;
    level.leakage = std::max(0.0, min_eigenvalue(0.5 * (weight + weight.adjoint())));
    level.artifact = level.leakage > kLeakageThreshold;
    levels.push_back(std::move(level));
    start = stop;
  }
  return levels;
}

OracleRun run_oracle(const PhysicalParams& params, int cutoff, std::optional<double> delta_ref) {
  params.validate(true);
  OracleRun run;
  run.params = params;
  run.basis = FockBasis(cutoff);
  run.delta_ref = delta_ref.value_or(default_delta_ref(params));
  run.hamiltonian = build_dirac_hamiltonian(params, run.basis, run.delta_ref);
  run.decomposition = hermitian_eigensolve(run.hamiltonian);
  run.levels = cluster_levels(run.decomposition, run.basis);
  return run;
}

TrustWindow convergence_check(const PhysicalParams& params, int cutoff, std::optional<double> delta_ref) {
  return establish_trust(params, cutoff, delta_ref).trust;
}

NumericSpectrum trusted_spectrum(const PhysicalParams& params, int cutoff, std::optional<double> delta_ref) {
  return collect(establish_trust(params, cutoff, delta_ref), std::nullopt);
}

NumericSpectrum numeric_spectrum(const PhysicalParams& params, int cutoff, int window,
                                 std::optional<double> delta_ref) {
  if (window < 0) {
    throw ValidationError("window must be non-negative");
  }
  TrustedRuns runs = establish_trust(params, cutoff, delta_ref);
  if (runs.trust.positive < window || runs.trust.negative < window) {
    throw TruncationError("only " + std::to_string(runs.trust.positive) + " positive / " +
                          std::to_string(runs.trust.negative) + " negative levels are trusted at cutoff " +
                          std::to_string(cutoff) + ", window " + std::to_string(window) + " requested");
  }
  return collect(std::move(runs), window);
}

std::vector<double> numeric_lz(const EigenDecomposition& decomposition, const FockBasis& basis,
                               const OperatorMatrix& L_z, const std::vector<Eigen::Index>& cluster,
                               Branch branch) {
  const auto d = static_cast<Eigen::Index>(cluster.size());
  if (d == 0) {
    return {};
  }
  Eigen::MatrixXcd V(decomposition.eigenvectors.rows(), d);
  for (Eigen::Index k = 0; k < d; ++k) {
    V.col(k) = decomposition.eigenvectors.col(cluster[static_cast<std::size_t>(k)]);
  }
  const OperatorMatrix J = L_z + 0.5 * spin_operator(basis, pauli_matrix(Pauli::Z));
  OperatorMatrix J_cluster = V.adjoint() * J * V;
  J_cluster = 0.5 * (J_cluster + J_cluster.adjoint());
  const EigenDecomposition split = hermitian_eigensolve(J_cluster);
  for (Eigen::Index k = 0; k < d; ++k) {
    const double j = split.eigenvalues(k);
    if (std::abs(j - 0.5 - std::round(j - 0.5)) > 1e-6) {
      throw DegeneracyError("cluster mixes total angular momenta (j = " + std::to_string(j) + ")");
    }
  }
  const Eigen::MatrixXcd W = V * split.eigenvectors;
  const OperatorMatrix P = spinor_projector(basis, branch == Branch::Positive ? 1 : 2);

  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index k = 0; k < d; ++k) {
    const Eigen::VectorXcd large = P * W.col(k);
    const double weight = large.squaredNorm();
    if (weight < 0.25) {
      throw DegeneracyError("large spinor component carries too little weight");
    }
    const double lz = large.dot(L_z * large).real() / weight;
    if (std::abs(lz - std::round(lz)) > 1e-6) {
      throw DegeneracyError("large-component L_z is not sharp (" + std::to_string(lz) + ")");
    }
    out.push_back(lz);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int MatchReport::matched_count() const {
  return static_cast<int>(std::count_if(entries.begin(), entries.end(), [](const MatchEntry& e) { return e.matched; }));
}

MatchReport match_spectra(std::span<const double> analytic, std::span<const double> numeric, double tol) {
  MatchReport report;
  std::vector<bool> used(numeric.size(), false);
  for (double a : analytic) {
    MatchEntry entry;
    entry.analytic = a;
    std::optional<std::size_t> best;
    for (std::size_t k = 0; k < numeric.size(); ++k) {
      if (used[k]) {
        continue;
      }
      if (!best || std::abs(numeric[k] - a) < std::abs(numeric[*best] - a)) {
        best = k;
      }
    }
    if (best) {
      entry.numeric = numeric[*best];
      entry.abs_error = std::abs(numeric[*best] - a);
      entry.rel_error = a != 0.0 ? entry.abs_error / std::abs(a) : entry.abs_error;
      entry.matched = entry.rel_error <= tol;
      if (entry.matched) {
        used[*best] = true;
      }
    } else {
      entry.abs_error = std::numeric_limits<double>::infinity();
      entry.rel_error = std::numeric_limits<double>::infinity();
    }
    report.pass = report.pass && entry.matched;
    report.entries.push_back(entry);
  }
  for (std::size_t k = 0; k < numeric.size(); ++k) {
    if (!used[k]) {
      report.unmatched_numeric.push_back(numeric[k]);
    }
  }
  return report;
}

OracleReport oracle_report(const PhysicalParams& params, int cutoff, int window, double tol,
                           std::optional<double> delta_ref) {
  params.validate(true);
  OracleReport report;
  report.params = params;
  report.regime = classify_regime(params);
  report.cutoff = cutoff;
  report.window = window;
  report.tol = tol;
  report.near_critical = near_critical(params);

  const NumericSpectrum spec = report.near_critical
                                   ? trusted_spectrum(params, cutoff, delta_ref)
                                   : numeric_spectrum(params, cutoff, window, delta_ref);
  report.delta_ref = spec.run.delta_ref;
  report.trust = spec.trust;
  report.artifacts = spec.artifacts;

  for (const NumericLevel& level : spec.run.levels) {
    if (level.artifact) {
      continue;
    }
    report.zero_mode.plus_present |= std::abs(level.energy - 1.0) <= kClusterTolerance;
    report.zero_mode.minus_present |= std::abs(level.energy + 1.0) <= kClusterTolerance;
  }

  if (report.near_critical) {
    report.status = "INFORMATIONAL";
    return report;
  }

  const bool left = report.regime == Regime::LeftPhase;
  report.zero_mode.consistent = left ? (report.zero_mode.plus_present && !report.zero_mode.minus_present)
                                     : (report.zero_mode.minus_present && !report.zero_mode.plus_present);

  std::vector<double> analytic_pos, analytic_neg;
  for (int n = 0; n < window; ++n) {
    analytic_pos.push_back(regime_level(params, report.regime, n, Branch::Positive, Frame::Relativistic).energy);
    analytic_neg.push_back(regime_level(params, report.regime, n, Branch::Negative, Frame::Relativistic).energy);
  }
  std::sort(analytic_pos.begin(), analytic_pos.end());
  std::sort(analytic_neg.begin(), analytic_neg.end());
  report.positive = match_spectra(analytic_pos, energies_of(spec.positive), tol);
  report.negative = match_spectra(analytic_neg, energies_of(spec.negative), tol);

  const OperatorMatrix L_z = number_and_angular_ops(spec.run.basis, 0.0).L_z;
  bool lz_ok = true;
  for (int n = 1; n <= std::min(3, window - 1); ++n) {
    for (Branch branch : {Branch::Positive, Branch::Negative}) {
      LzCheck check;
      check.n = n;
      check.branch = branch;
      check.energy = regime_level(params, report.regime, n, branch, Frame::Relativistic).energy;
      check.predicted = lz_expectation_rel(n, branch, params).value;
      const auto& side = branch == Branch::Positive ? spec.positive : spec.negative;
      const auto level = std::find_if(side.begin(), side.end(), [&](const NumericLevel& l) {
        return std::abs(l.energy - check.energy) <= tol * std::abs(check.energy);
      });
      if (level != side.end()) {
        check.multiset = numeric_lz(spec.run.decomposition, spec.run.basis, L_z, level->columns, branch);
        check.member = std::any_of(check.multiset.begin(), check.multiset.end(),
                                   [&](double v) { return std::abs(v - check.predicted) <= 1e-6; });
        // Left-phase towers grow by right quanta (L_z rises from -n_l);
        // right-phase towers grow by left quanta (L_z falls from +n_r).
        check.extremal = left ? std::abs(check.multiset.front() - check.predicted) <= 1e-6
                              : std::abs(check.multiset.back() - check.predicted) <= 1e-6;
      }
      lz_ok = lz_ok && check.member && check.extremal;
      report.lz.push_back(std::move(check));
    }
  }

  report.status = report.positive.pass && report.negative.pass && report.zero_mode.consistent && lz_ok
                      ? "PASS"
                      : "FAIL";
  return report;
}

} // namespace dosc
