// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "dosc/errors.hpp"
#include "dosc/fock.hpp"
#include "dosc/oracle.hpp"
#include "dosc/phase.hpp"
#include "dosc/spectra.hpp"

using namespace dosc;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Oracle reports are shared between the spectrum and zero-mode criteria.
std::map<double, OracleReport> g_reports;
std::map<double, double> g_runtime;

const OracleReport& report_at(double B) {
  auto it = g_reports.find(B);
  if (it == g_reports.end()) {
    const auto t0 = std::chrono::steady_clock::now();
    OracleReport r = oracle_report(PhysicalParams::natural(1.0, B), 24, 6, 1e-8);
    g_runtime[B] = seconds_since(t0);
    it = g_reports.emplace(B, std::move(r)).first;
  }
  return it->second;
}

double worst_rel_error(const MatchReport& m) {
  double worst = 0.0;
  for (const auto& e : m.entries) {
    worst = std::max(worst, e.rel_error);
  }
  return worst;
}

Outcome spectrum_agreement(const std::vector<double>& fields) {
  Outcome o{true, ""};
  double worst = 0.0;
  double slowest = 0.0;
  for (double B : fields) {
    const OracleReport& r = report_at(B);
    const bool ok = r.positive.pass && r.negative.pass && r.positive.matched_count() == 6 &&
                    r.negative.matched_count() == 6 && g_runtime[B] <= 120.0;
    o.pass = o.pass && ok;
    worst = std::max({worst, worst_rel_error(r.positive), worst_rel_error(r.negative)});
    slowest = std::max(slowest, g_runtime[B]);
    if (!ok) {
      o.detail += " B=" + fmt("%g", B) + " failed;";
    }
  }
  o.detail += " 6+6 levels per field, max rel error " + fmt("%.2e", worst) + ", slowest field " +
              fmt("%.1f", slowest) + " s";
  return o;
}

Outcome criterion_zero_mode() {
  Outcome o{true, ""};
  for (double B : {0.0, 0.5, 1.0, 1.5, 2.5, 3.0, 4.0}) {
    const OracleReport& r = report_at(B);
    const bool left = B < 2.0;
    const bool ok = left ? (r.zero_mode.plus_present && !r.zero_mode.minus_present)
                         : (r.zero_mode.minus_present && !r.zero_mode.plus_present);
    o.pass = o.pass && ok;
    o.detail += " B=" + fmt("%g", B) + (r.zero_mode.plus_present ? ":+1" : "") +
                (r.zero_mode.minus_present ? ":-1" : "");
  }
  return o;
}

Outcome criterion_critical_cancellation() {
  const auto p = PhysicalParams::natural(1.0, 2.0);
  const FockBasis basis(24);
  const double width = default_delta_ref(p);
  const OperatorMatrix H = build_dirac_hamiltonian(p, basis, width);
  const OperatorMatrix H2 = H * H;
  const auto inner = basis.shells_up_to(basis.cutoff() - 2);
  const double defect = restrict_to(H2 - free_energy_squared(basis, width), inner).norm();
  const double ratio = defect / H2.norm();
  return {ratio <= 1e-10, " ||H^2 - (p^2+1)|| / ||H^2|| = " + fmt("%.2e", ratio) + " on Q <= 22"};
}

Outcome criterion_order_parameter() {
  const auto p = PhysicalParams::natural(1.0, 0.0);
  double worst = 0.0;
  int checked = 0;
  for (Frame frame : {Frame::Relativistic, Frame::NonRelativistic}) {
    for (const SweepRecord& r : sweep(p, 0.1, 3.9, 100, 3, frame)) {
      if (r.regime == Regime::Critical) {
        continue;
      }
      for (const LzValue& v : r.lz) {
        if (v.n < 1) {
          continue;
        }
        const double expected = r.b < 1.0 ? -v.n : v.n;
        worst = std::max(worst, v.defined ? std::abs(v.value - expected) : INFINITY);
        ++checked;
      }
    }
  }
  const TransitionEstimate t = detect_transition(sweep(p, 0.0, 4.0, 401, 1, Frame::Relativistic), 1);
  const bool detect_ok = std::abs(t.B - 2.0) <= 0.005 && t.error <= 0.005 + 1e-15;
  return {worst <= 1e-12 && detect_ok && checked == 2 * 100 * 6,
          " " + std::to_string(checked) + " values, max |<L_z> -+ n| = " + fmt("%.1e", worst) +
              ", transition " + fmt("%.4f", t.B) + " +- " + fmt("%.4f", t.error)};
}

std::vector<double> magnitudes(const std::vector<NumericLevel>& levels) {
  std::vector<double> out;
  for (const auto& l : levels) {
    out.push_back(std::abs(l.energy));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Outcome criterion_mirror() {
  Outcome o{true, ""};
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  for (double b : {0.25, 0.5, 0.75}) {
    const auto left = PhysicalParams::natural(1.0, 2.0 * b);
    const auto right = PhysicalParams::natural(1.0, 2.0 * (2.0 - b));
    for (int n = 0; n <= 10; ++n) {
      // equal effective index: (n, +) left with (n, -) right and vice versa
      worst_analytic = std::max(worst_analytic, std::abs(left_energy_rel(n, Branch::Positive, left) +
                                                         right_energy_rel(n, Branch::Negative, right)));
      worst_analytic = std::max(worst_analytic, std::abs(left_energy_rel(n, Branch::Negative, left) +
                                                         right_energy_rel(n, Branch::Positive, right)));
    }
    const NumericSpectrum L = numeric_spectrum(left, 24, 6);
    const NumericSpectrum R = numeric_spectrum(right, 24, 6);
    const auto lp = magnitudes(L.positive), ln = magnitudes(L.negative);
    const auto rp = magnitudes(R.positive), rn = magnitudes(R.negative);
    for (std::size_t k = 0; k < 6; ++k) {
      worst_numeric = std::max({worst_numeric, std::abs(lp[k] - rn[k]), std::abs(ln[k] - rp[k])});
    }
  }
  o.pass = worst_analytic <= 1e-8 && worst_numeric <= 1e-8;
  o.detail = " max |E(b) + E(2-b)|: analytic " + fmt("%.1e", worst_analytic) + ", numeric " +
             fmt("%.1e", worst_numeric) + " (b = 0.25, 0.5, 0.75)";
  return o;
}

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const fs::path out = fs::temp_directory_path() / ("dosc_acceptance_" + std::to_string(::getpid()) + ".out");
  const std::string cmd = "\"" DOSC_CLI_PATH "\" " + args + " >\"" + out.string() + "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  fs::remove(out);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

Outcome criterion_nonrel_limit() {
  // Electron-like constants; c is chosen so that hbar omega / (m c^2) hits each target.
  const double hbar = 1.054571817e-34, m = 9.1093837e-31, e = 1.602176634e-19, omega = 1e12;
  const double B_c = 2.0 * m * omega / e;
  const std::vector<double> targets{1e-3, 1e-4, 1e-5};
  double spread = 0.0;
  bool ok = true;
  int series = 0;
  for (double b : {0.5, 1.5}) {
    // scaled deviation dev / r_omega for every (n, branch) at each r_omega
    std::map<std::pair<int, int>, std::vector<double>> scaled;
    for (double r : targets) {
      const double c = std::sqrt(hbar * omega / (m * r));
      std::string base = "spectrum --units si --format json --n-max 5 --omega " + fmt("%.17g", omega) +
                         " --B " + fmt("%.17g", b * B_c) + " --mass " + fmt("%.17g", m) + " --charge " +
                         fmt("%.17g", e) + " --hbar " + fmt("%.17g", hbar) + " --c " + fmt("%.17g", c);
      const CliResult rel = run_cli(base + " --frame rel");
      const CliResult nonrel = run_cli(base + " --frame nonrel");
      if (rel.code != 0 || nonrel.code != 0) {
        return {false, " CLI failed in SI mode"};
      }
      const json jr = json::parse(rel.out), jn = json::parse(nonrel.out);
      for (std::size_t i = 0; i < jr.size(); ++i) {
        const double E_rel = jr[i]["energy_mc2"].get<double>();
        const double E_nr = jn[i]["energy_mc2"].get<double>();
        if (E_nr == 0.0) {
          continue; // zero mode: both sides vanish
        }
        const double sign = jr[i]["branch"] == "+" ? 1.0 : -1.0;
        const double dev = std::abs((E_rel - sign) / E_nr - 1.0);
        scaled[{jr[i]["n"].get<int>(), static_cast<int>(sign)}].push_back(dev / r);
      }
    }
    for (const auto& [key, values] : scaled) {
      if (values.size() != targets.size()) {
        ok = false;
        continue;
      }
      const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
      spread = std::max(spread, *hi / *lo);
      ok = ok && *hi / *lo <= 3.0;
      ++series;
    }
  }
  return {ok && series == 2 * 11,
          " " + std::to_string(series) + " level series, worst spread of deviation/r_omega " + fmt("%.3f", spread)};
}

double max_abs(const OperatorMatrix& M) { return M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff(); }

Outcome criterion_operator_identities() {
  constexpr Complex kI{0.0, 1.0};
  double identity_defect = 0.0;
  double commutator_defect = 0.0;
  bool gates = true;
  for (int cutoff : {12, 24}) {
    const FockBasis basis(cutoff);
    const OperatorMatrix Id = identity(basis);
    const double w = 0.6;
    const NumberOps ops = number_and_angular_ops(basis, w);
    const double scale = max_abs(ops.H_ho);
    identity_defect = std::max({identity_defect,
                                max_abs(ops.H_ho - w * Id - w * ops.L_z - 2.0 * w * ops.N_l) / scale,
                                max_abs(ops.H_ho + w * Id - w * ops.L_z - 2.0 * w * (ops.N_l + Id)) / scale,
                                max_abs(ops.H_ho + w * Id + w * ops.L_z - 2.0 * w * (ops.N_r + Id)) / scale,
                                max_abs(ops.H_ho - w * Id + w * ops.L_z - 2.0 * w * ops.N_r) / scale});

    const auto inner = basis.shells_up_to(cutoff - 1);
    const auto k = static_cast<Eigen::Index>(inner.size());
    const OperatorMatrix Ik = OperatorMatrix::Identity(k, k);
    const ChiralPair c = chiral_ladders(basis);
    const PhaseSpaceOps ps = position_momentum_ops(basis, 1.0);
    commutator_defect = std::max({commutator_defect,
                                  max_abs(restrict_to(commutator(c.a_r, c.a_r.adjoint()), inner) - Ik),
                                  max_abs(restrict_to(commutator(c.a_l, c.a_l.adjoint()), inner) - Ik),
                                  max_abs(restrict_to(commutator(c.a_r, c.a_l.adjoint()), inner)),
                                  max_abs(commutator(c.a_r, c.a_l)),
                                  max_abs(restrict_to(commutator(ps.x, ps.p_x), inner) - kI * Ik),
                                  max_abs(restrict_to(commutator(ps.y, ps.p_y), inner) - kI * Ik)});

    gates = gates && is_hermitian(ops.N_r) && is_hermitian(ops.N_l) && is_hermitian(ops.L_z) &&
            is_hermitian(ops.H_ho) && is_hermitian(ps.x) && is_hermitian(ps.p_x);
    for (double B : {1.0, 3.0}) {
      const auto p = PhysicalParams::natural(1.0, B);
      const OperatorMatrix H = build_dirac_hamiltonian(p, basis, default_delta_ref(p));
      const EigenDecomposition d = hermitian_eigensolve(H);
      gates = gates && is_hermitian(H) && d.max_residual(H) <= kResidualGate * H.norm() &&
              d.orthonormality_defect() <= kOrthonormalityGate;
    }
  }
  return {identity_defect <= 1e-13 && commutator_defect <= 1e-12 && gates,
          " identity defect " + fmt("%.1e", identity_defect) + ", commutator defect " +
              fmt("%.1e", commutator_defect) + ", gates " + (gates ? "ok" : "FAILED") + " (N_max 12, 24)"};
}

std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) {
    out.push_back(f);
  }
  return out;
}

bool csv_json_parity(const std::string& args, const std::string& records_key) {
  const CliResult csv = run_cli(args);
  const CliResult js = run_cli(args + " --format json");
  if (csv.code != js.code) {
    return false;
  }
  json rows = json::parse(js.out);
  if (!records_key.empty()) {
    rows = rows[records_key];
  }
  std::istringstream in(csv.out);
  std::string line;
  std::getline(in, line);
  const auto header = csv_fields(line);
  std::size_t i = 0;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) {
      continue;
    }
    const auto fields = csv_fields(line);
    if (i >= rows.size() || fields.size() != header.size()) {
      return false;
    }
    for (std::size_t k = 0; k < header.size(); ++k) {
      const json& v = rows[i].at(header[k]);
      std::string expect;
      if (v.is_number_integer()) {
        expect = std::to_string(v.get<long>());
      } else if (v.is_number()) {
        expect = fmt("%.12g", v.get<double>());
      } else if (v.is_boolean()) {
        expect = v.get<bool>() ? "true" : "false";
      } else if (v.is_null()) {
        expect = "nan";
      } else {
        expect = v.get<std::string>();
      }
      if (expect != fields[k]) {
        return false;
      }
    }
    ++i;
  }
  return i == rows.size() && i > 0;
}

Outcome criterion_cli() {
  struct Case {
    const char* args;
    int expected;
  };
  const Case cases[] = {
      {"classify --omega 1 --B 1", 0},
      {"classify --omega -1 --B 1", 2},
      {"spectrum --units si --omega 1 --B 1", 2},
      {"oracle --omega 1 --B 3 --N-max 12 --window 3 --tol 1e-300 --assert", 3},
      {"sweep --omega 1 --B-start 0 --B-end 1 --steps 11 --n 1", 4},
      {"oracle --omega 1 --B 0 --N-max 4 --window 6 --assert", 5},
  };
  Outcome o{true, " exit codes"};
  for (const Case& c : cases) {
    const int got = run_cli(c.args).code;
    o.pass = o.pass && got == c.expected;
    o.detail += " " + std::to_string(got) + (got == c.expected ? "" : "(want " + std::to_string(c.expected) + ")");
  }
  const bool spectrum = csv_json_parity("spectrum --omega 1 --B 0.7 --n-max 8", "");
  const bool sweep_rel = csv_json_parity("sweep --omega 1 --B-end 4 --steps 81 --n 2", "records");
  const bool sweep_nr = csv_json_parity("sweep --omega 1 --B-end 4 --steps 81 --n 1 --frame nonrel", "records");
  o.pass = o.pass && spectrum && sweep_rel && sweep_nr;
  o.detail += std::string(", CSV/JSON parity ") + (spectrum && sweep_rel && sweep_nr ? "ok" : "FAILED");
  return o;
}

} // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {1, "left-phase spectrum agreement", [] { return spectrum_agreement({0.0, 0.5, 1.0, 1.5}); }},
      {2, "right-phase spectrum agreement", [] { return spectrum_agreement({2.5, 3.0, 4.0}); }},
      {3, "zero-mode branch placement", criterion_zero_mode},
      {4, "critical-point cancellation", criterion_critical_cancellation},
      {5, "order-parameter law", criterion_order_parameter},
      {6, "mirror symmetry", criterion_mirror},
      {7, "non-relativistic limit", criterion_nonrel_limit},
      {8, "operator identities and gates", criterion_operator_identities},
      {9, "CLI contract", criterion_cli},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string(" exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("[%s] criterion %d: %s --%s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
