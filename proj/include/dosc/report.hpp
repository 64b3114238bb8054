#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "dosc/core.hpp"
#include "dosc/oracle.hpp"
#include "dosc/phase.hpp"
#include "dosc/spectra.hpp"

namespace dosc::report {

using json = nlohmann::json;

/// Fixed 12-significant-digit rendering used for every CSV number.
std::string csv_number(double value);

std::string regime_label(Regime r); // "left" / "critical" / "right"

inline const char* kSpectrumColumns = "n,branch,chirality,frame,energy_mc2,energy_output_units";
inline const char* kSweepColumns = "B,b,regime,n,branch,energy_mc2,lz_hbar,lz_defined";

json classify_json(const PhysicalParams& params);
std::string classify_text(const PhysicalParams& params);

/// `energy_scale` converts m c^2 units to the requested output unit.
void write_spectrum_csv(std::ostream& out, const std::vector<EnergyLevel>& levels, double energy_scale);
json spectrum_json(const std::vector<EnergyLevel>& levels, double energy_scale);

/// Rows for level n of each record, both branches.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records, int n,
                     const std::optional<TransitionEstimate>& transition);
json sweep_json(const std::vector<SweepRecord>& records, int n,
                const std::optional<TransitionEstimate>& transition);

/// Polyline plot of <L_z>(B) for level n (Positive branch); undefined
/// points break the line.
std::string sweep_svg(const std::vector<SweepRecord>& records, int n);

json match_report_json(const MatchReport& report);
json oracle_report_json(const OracleReport& report);

} // namespace dosc::report
