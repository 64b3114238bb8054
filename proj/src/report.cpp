#include "dosc/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace dosc::report {

std::string csv_number(double value) {
  if (std::isnan(value)) {
    return "nan";
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string regime_label(Regime r) {
  switch (r) {
  case Regime::LeftPhase: return "left";
  case Regime::Critical: return "critical";
  case Regime::RightPhase: return "right";
  }
  return "?";
}

json classify_json(const PhysicalParams& params) {
  const DerivedScales s = derive_scales(params);
  json j;
  j["regime"] = std::string(to_string(classify_regime(params)));
  j["B_c"] = s.B_c;
  j["b"] = s.b;
  j["F_w"] = s.F_w;
  j["F_s"] = s.F_s ? json(*s.F_s) : json(nullptr);
  j["omega_c"] = s.omega_c;
  j["omega_T"] = s.omega_T;
  j["omega_tilde_T"] = s.omega_tilde_T;
  j["r_omega"] = s.r_omega;
  return j;
}

std::string classify_text(const PhysicalParams& params) {
  const DerivedScales s = derive_scales(params);
  const Regime regime = classify_regime(params);
  std::ostringstream out;
  out << to_string(regime) << ", B_c=" << csv_number(s.B_c) << ", b=" << csv_number(s.b);
  if (regime != Regime::RightPhase) {
    out << ", F_w=" << csv_number(s.F_w);
  }
  if (regime != Regime::LeftPhase && s.F_s) {
    out << ", F_s=" << csv_number(*s.F_s);
  }
  return out.str();
}

void write_spectrum_csv(std::ostream& out, const std::vector<EnergyLevel>& levels, double energy_scale) {
  out << kSpectrumColumns << '\n';
  for (const EnergyLevel& l : levels) {
    out << l.n << ',' << branch_symbol(l.branch) << ',' << to_string(l.chirality) << ','
        << to_string(l.frame) << ',' << csv_number(l.energy) << ',' << csv_number(l.energy * energy_scale)
        << '\n';
  }
}

json spectrum_json(const std::vector<EnergyLevel>& levels, double energy_scale) {
  json rows = json::array();
  for (const EnergyLevel& l : levels) {
    rows.push_back({{"n", l.n},
                    {"branch", std::string(branch_symbol(l.branch))},
                    {"chirality", std::string(to_string(l.chirality))},
                    {"frame", std::string(to_string(l.frame))},
                    {"energy_mc2", l.energy},
                    {"energy_output_units", l.energy * energy_scale}});
  }
  return rows;
}

namespace {

template <typename Fn>
void for_level(const std::vector<SweepRecord>& records, int n, Fn&& fn) {
  for (const SweepRecord& r : records) {
    for (std::size_t k = 0; k < r.levels.size(); ++k) {
      if (r.levels[k].n == n) {
        fn(r, r.levels[k], r.lz[k]);
      }
    }
  }
}

} // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records, int n,
                     const std::optional<TransitionEstimate>& transition) {
  out << kSweepColumns << '\n';
  for_level(records, n, [&](const SweepRecord& r, const EnergyLevel& level, const LzValue& lz) {
    out << csv_number(r.B) << ',' << csv_number(r.b) << ',' << regime_label(r.regime) << ',' << level.n
        << ',' << branch_symbol(level.branch) << ',' << csv_number(level.energy) << ','
        << (lz.defined ? csv_number(lz.value) : "nan") << ',' << (lz.defined ? "true" : "false") << '\n';
  });
  if (transition) {
    out << "# B_transition ≈ " << csv_number(transition->B) << " ± " << csv_number(transition->error)
        << '\n';
  } else {
    out << "# B_transition not bracketed\n";
  }
}

json sweep_json(const std::vector<SweepRecord>& records, int n,
                const std::optional<TransitionEstimate>& transition) {
  json rows = json::array();
  for_level(records, n, [&](const SweepRecord& r, const EnergyLevel& level, const LzValue& lz) {
    rows.push_back({{"B", r.B},
                    {"b", r.b},
                    {"regime", regime_label(r.regime)},
                    {"n", level.n},
                    {"branch", std::string(branch_symbol(level.branch))},
                    {"energy_mc2", level.energy},
                    {"lz_hbar", lz.defined ? json(lz.value) : json(nullptr)},
                    {"lz_defined", lz.defined}});
  });
  json j;
  j["records"] = std::move(rows);
  if (transition) {
    j["transition"] = {{"B", transition->B}, {"error", transition->error}};
  } else {
    j["transition"] = nullptr;
  }
  return j;
}

std::string sweep_svg(const std::vector<SweepRecord>& records, int n) {
  constexpr double width = 640.0, height = 360.0, margin = 40.0;
  double lz_max = 1.0;
  for_level(records, n, [&](const SweepRecord&, const EnergyLevel&, const LzValue& lz) {
    if (lz.defined) {
      lz_max = std::max(lz_max, std::abs(lz.value));
    }
  });
  const double B0 = records.empty() ? 0.0 : records.front().B;
  const double B1 = records.empty() ? 1.0 : records.back().B;
  auto px = [&](double B) { return margin + (B - B0) / (B1 - B0) * (width - 2 * margin); };
  auto py = [&](double v) { return height / 2 - v / lz_max * (height / 2 - margin); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  svg << "<line x1=\"" << margin << "\" y1=\"" << height / 2 << "\" x2=\"" << width - margin << "\" y2=\""
      << height / 2 << "\" stroke=\"gray\"/>\n";
  std::ostringstream points;
  auto flush = [&] {
    if (!points.str().empty()) {
      svg << "<polyline fill=\"none\" stroke=\"black\" points=\"" << points.str() << "\"/>\n";
      points.str("");
    }
  };
  for_level(records, n, [&](const SweepRecord& r, const EnergyLevel& level, const LzValue& lz) {
    if (level.branch != Branch::Positive) {
      return;
    }
    if (!lz.defined) {
      flush();
      return;
    }
    points << px(r.B) << ',' << py(lz.value) << ' ';
  });
  flush();
  svg << "<text x=\"" << margin << "\" y=\"20\">&lt;L_z&gt; (hbar) vs B, n=" << n << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

json match_report_json(const MatchReport& report) {
  json entries = json::array();
  for (const MatchEntry& e : report.entries) {
    entries.push_back({{"analytic", e.analytic},
                       {"numeric", e.numeric ? json(*e.numeric) : json(nullptr)},
                       {"abs_error", e.numeric ? json(e.abs_error) : json(nullptr)},
                       {"rel_error", e.numeric ? json(e.rel_error) : json(nullptr)},
                       {"matched", e.matched}});
  }
  return {{"levels", entries},
          {"matched", report.matched_count()},
          {"unmatched_numeric", report.unmatched_numeric},
          {"pass", report.pass}};
}

json oracle_report_json(const OracleReport& report) {
  const PhysicalParams& p = report.params;
  json lz = json::array();
  for (const LzCheck& c : report.lz) {
    lz.push_back({{"n", c.n},
                  {"branch", std::string(branch_symbol(c.branch))},
                  {"energy_mc2", c.energy},
                  {"predicted_hbar", c.predicted},
                  {"numeric_multiset_hbar", c.multiset},
                  {"member", c.member},
                  {"extremal", c.extremal}});
  }
  return {{"params", {{"hbar", p.hbar}, {"c", p.c}, {"mass", p.m}, {"charge", p.e}, {"omega", p.omega}, {"B", p.B}}},
          {"regime", std::string(to_string(report.regime))},
          {"N_max", report.cutoff},
          {"delta_ref", report.delta_ref},
          {"window", report.window},
          {"tolerance", report.tol},
          {"trusted", {{"positive", report.trust.positive}, {"negative", report.trust.negative}}},
          {"positive", match_report_json(report.positive)},
          {"negative", match_report_json(report.negative)},
          {"zero_mode",
           {{"plus_present", report.zero_mode.plus_present},
            {"minus_present", report.zero_mode.minus_present},
            {"consistent", report.zero_mode.consistent}}},
          {"lz", lz},
          {"truncation_artifacts", report.artifacts},
          {"near_critical", report.near_critical},
          {"status", report.status}};
}

} // namespace dosc::report
