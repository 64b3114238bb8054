#include "dosc/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "dosc/errors.hpp"
#include "dosc/oracle.hpp"
#include "dosc/phase.hpp"
#include "dosc/report.hpp"
#include "dosc/spectra.hpp"

namespace dosc::cli {

namespace {

struct RunConfig {
  std::string units = "natural";
  double omega = 1.0;
  double B = 0.0;
  std::optional<double> mass;
  std::optional<double> charge;
  std::optional<double> hbar;
  std::optional<double> c;
  int n_max = 5;
  std::string frame = "rel";
  int fock_cutoff = kDefaultFockCutoff;
  std::string format = "csv";
  std::string output;
};

struct SweepConfig {
  double B_start = 0.0;
  double B_end = 4.0;
  int steps = 401;
  int n = 1;
  std::string svg;
};

struct OracleConfig {
  int window = 6;
  double tol = kMatchTolerance;
  std::optional<double> delta_ref;
  bool assert_pass = false;
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--units", cfg.units, "natural (hbar=c=m=e=1) or si")
      ->check(CLI::IsMember({"natural", "si"}));
  cmd->add_option("--omega", cfg.omega, "Dirac oscillator frequency");
  cmd->add_option("--B", cfg.B, "external field magnitude");
  cmd->add_option("--mass", cfg.mass, "fermion mass (si only)");
  cmd->add_option("--charge", cfg.charge, "charge magnitude (si only)");
  cmd->add_option("--hbar", cfg.hbar, "reduced Planck constant (si only)");
  cmd->add_option("--c", cfg.c, "speed of light (si only)");
  cmd->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("-o,--output", cfg.output, "output file (default stdout)");
}

PhysicalParams make_params(const RunConfig& cfg, bool allow_zero_omega = false) {
  PhysicalParams p = PhysicalParams::natural(cfg.omega, cfg.B);
  if (cfg.units == "si") {
    auto require = [](const std::optional<double>& v, const char* name) {
      if (!v) {
        throw ValidationError(std::string("--") + name + " is required with --units si");
      }
      return *v;
    };
    p.m = require(cfg.mass, "mass");
    p.e = require(cfg.charge, "charge");
    p.hbar = require(cfg.hbar, "hbar");
    p.c = require(cfg.c, "c");
  }
  p.validate(allow_zero_omega);
  return p;
}

Frame parse_frame(const std::string& frame) {
  return frame == "nonrel" ? Frame::NonRelativistic : Frame::Relativistic;
}

std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("DOSC_OUTPUT_DIR"); dir && *dir) {
      return std::filesystem::path(dir) / p;
    }
  }
  return p;
}

void emit(const std::string& path, const std::string& payload, std::ostream& out) {
  if (path.empty()) {
    out << payload;
    return;
  }
  const auto target = resolve_output(path);
  if (target.has_parent_path()) {
    std::filesystem::create_directories(target.parent_path());
  }
  std::ofstream file(target);
  if (!file) {
    throw ValidationError("cannot open output file " + target.string());
  }
  file << payload;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  const PhysicalParams params = make_params(cfg);
  if (cfg.format == "json") {
    emit(cfg.output, report::classify_json(params).dump(2) + "\n", out);
  } else {
    emit(cfg.output, report::classify_text(params) + "\n", out);
  }
  return kSuccess;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  const PhysicalParams params = make_params(cfg);
  if (cfg.n_max < 0) {
    throw ValidationError("--n-max must be non-negative");
  }
  const auto levels = spectrum_table(params, cfg.n_max, parse_frame(cfg.frame));
  const double scale = params.rest_energy();
  if (cfg.format == "json") {
    emit(cfg.output, report::spectrum_json(levels, scale).dump(2) + "\n", out);
  } else {
    std::ostringstream csv;
    report::write_spectrum_csv(csv, levels, scale);
    emit(cfg.output, csv.str(), out);
  }
  return kSuccess;
}

int cmd_sweep(const RunConfig& cfg, const SweepConfig& sw, std::ostream& out, std::ostream& err) {
  const PhysicalParams params = make_params(cfg);
  if (sw.n < 0) {
    throw ValidationError("--n must be non-negative");
  }
  const auto records = sweep(params, sw.B_start, sw.B_end, sw.steps, sw.n, parse_frame(cfg.frame));
  std::optional<TransitionEstimate> transition;
  std::string failure;
  try {
    transition = detect_transition(records, sw.n);
  } catch (const NotBracketedError& e) {
    failure = e.what();
  } catch (const ValidationError& e) {
    // n = 0 vanishes in both phases and cannot locate the transition
    failure = e.what();
  }

  if (cfg.format == "json") {
    emit(cfg.output, report::sweep_json(records, sw.n, transition).dump(2) + "\n", out);
  } else {
    std::ostringstream csv;
    report::write_sweep_csv(csv, records, sw.n, transition);
    emit(cfg.output, csv.str(), out);
  }
  if (!sw.svg.empty()) {
    emit(sw.svg, report::sweep_svg(records, sw.n), out);
  }
  if (!transition) {
    err << "transition not bracketed: " << failure << '\n';
    return kNotBracketed;
  }
  return kSuccess;
}

int cmd_oracle(const RunConfig& cfg, const OracleConfig& oc, std::ostream& out, std::ostream& err) {
  const PhysicalParams params = make_params(cfg, true);
  if (oc.window < 0) {
    throw ValidationError("--window must be non-negative");
  }
  if (cfg.fock_cutoff < 0) {
    throw ValidationError("--N-max must be non-negative");
  }
  const OracleReport rep = oracle_report(params, cfg.fock_cutoff, oc.window, oc.tol, oc.delta_ref);
  emit(cfg.output, report::oracle_report_json(rep).dump(2) + "\n", out);
  if (oc.assert_pass && rep.status == "FAIL") {
    err << "oracle mismatch\n";
    return kOracleMismatch;
  }
  return kSuccess;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra and chirality order parameter of the planar Dirac oscillator in a magnetic field"};
  app.require_subcommand(1);

  RunConfig cfg;
  SweepConfig sw;
  OracleConfig oc;

  auto* classify = app.add_subcommand("classify", "critical field, scales and regime");
  add_common(classify, cfg);

  auto* spectrum = app.add_subcommand("spectrum", "closed-form energy table");
  add_common(spectrum, cfg);
  spectrum->add_option("--n-max", cfg.n_max, "highest quantum number");
  spectrum->add_option("--frame", cfg.frame, "rel or nonrel")->check(CLI::IsMember({"rel", "nonrel"}));

  auto* sweep_cmd = app.add_subcommand("sweep", "order parameter across a field scan");
  add_common(sweep_cmd, cfg);
  sweep_cmd->add_option("--frame", cfg.frame, "rel or nonrel")->check(CLI::IsMember({"rel", "nonrel"}));
  sweep_cmd->add_option("--B-start", sw.B_start, "first field value");
  sweep_cmd->add_option("--B-end", sw.B_end, "last field value");
  sweep_cmd->add_option("--steps", sw.steps, "grid points, endpoints included");
  sweep_cmd->add_option("--n", sw.n, "quantum number whose <L_z> is tracked");
  sweep_cmd->add_option("--svg", sw.svg, "also write an SVG plot of <L_z>(B)");

  auto* oracle = app.add_subcommand("oracle", "numerical diagonalization check");
  add_common(oracle, cfg);
  oracle->add_option("--N-max,--fock-cutoff", cfg.fock_cutoff, "total-quanta cutoff of the Fock basis");
  oracle->add_option("--window", oc.window, "levels per sign that must be trusted and matched");
  oracle->add_option("--tol", oc.tol, "relative matching tolerance");
  oracle->add_option("--delta-ref", oc.delta_ref, "oscillator width of the basis");
  oracle->add_flag("--assert", oc.assert_pass, "exit 3 when the comparison fails");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }

  try {
    if (classify->parsed()) {
      return cmd_classify(cfg, out);
    }
    if (spectrum->parsed()) {
      return cmd_spectrum(cfg, out);
    }
    if (sweep_cmd->parsed()) {
      return cmd_sweep(cfg, sw, out, err);
    }
    return cmd_oracle(cfg, oc, out, err);
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kValidation;
  } catch (const NotBracketedError& e) {
    err << e.what() << '\n';
    return kNotBracketed;
  } catch (const RegimeError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kValidation;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}

} // namespace dosc::cli
