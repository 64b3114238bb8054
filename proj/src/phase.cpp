#include "dosc/phase.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "dosc/errors.hpp"

namespace dosc {

namespace {

// (E^2 - 1) for E in units of m c^2, factored to keep precision near |E| = 1.
double squared_excess(double energy) { return (energy - 1.0) * (energy + 1.0); }

LzValue base_value(int n, Branch branch, Frame frame) {
  if (n < 0) {
    throw ValidationError("n must be non-negative");
  }
  LzValue v;
  v.n = n;
  v.branch = branch;
  v.frame = frame;
  v.degenerate = n == 0;
  return v;
}

Regime require_phase(const PhysicalParams& params) {
  const Regime regime = classify_regime(params);
  if (regime == Regime::Critical) {
    throw CriticalUndefinedError("<L_z> is undetermined at the critical field");
  }
  return regime;
}

} // namespace

LzValue lz_expectation_rel(int n, Branch branch, const PhysicalParams& params) {
  LzValue v = base_value(n, branch, Frame::Relativistic);
  const Regime regime = require_phase(params);
  const DerivedScales s = derive_scales(params);
  if (regime == Regime::LeftPhase) {
    // hbar omega_T / (m c^2)
    const double strength = s.r_omega * s.F_w;
    const double energy = left_energy_rel(n, branch, params);
    const double offset = branch == Branch::Positive ? n : n + 2;
    v.value = -squared_excess(energy) / (2.0 * strength) + offset;
  } else {
    const double strength = -reduced_strength(params);
    const double energy = right_energy_rel(n, branch, params);
    const double offset = branch == Branch::Positive ? n + 2 : n;
    v.value = squared_excess(energy) / (2.0 * strength) - offset;
  }
  return v;
}

LzValue lz_expectation_nonrel(int n, Branch branch, const PhysicalParams& params) {
  LzValue v = base_value(n, branch, Frame::NonRelativistic);
  const Regime regime = require_phase(params);
  const DerivedScales s = derive_scales(params);
  if (regime == Regime::LeftPhase) {
    const double strength = s.r_omega * s.F_w;
    const double energy = left_energy_nonrel(n, branch, params);
    v.value = branch == Branch::Positive ? -energy / strength + n : energy / strength + (n + 2);
  } else {
    const double strength = -reduced_strength(params);
    const double energy = right_energy_nonrel(n, branch, params);
    v.value = branch == Branch::Positive ? energy / strength - (n + 2) : -energy / strength - n;
  }
  v.value += 0.0;
  return v;
}

LzValue order_parameter(const PhysicalParams& params, int n, Branch branch, Frame frame) {
  if (classify_regime(params) == Regime::Critical) {
    LzValue v = base_value(n, branch, frame);
    v.defined = false;
    v.value = std::nan("");
    return v;
  }
  return frame == Frame::Relativistic ? lz_expectation_rel(n, branch, params)
                                      : lz_expectation_nonrel(n, branch, params);
}

std::vector<SweepRecord> sweep(const PhysicalParams& params, double B_start, double B_end, int steps,
                               int n_max, Frame frame) {
  if (!std::isfinite(B_start) || !std::isfinite(B_end) || !(B_start < B_end)) {
    throw ValidationError("sweep needs B_start < B_end");
  }
  if (B_start < 0.0) {
    throw ValidationError("sweep B_start must be non-negative");
  }
  if (steps < 2) {
    throw ValidationError("sweep needs at least 2 steps");
  }
  if (n_max < 0) {
    throw ValidationError("n_max must be non-negative");
  }
  params.validate();

  std::vector<SweepRecord> records;
  records.reserve(static_cast<std::size_t>(steps));
  const double span = B_end - B_start;
  for (int i = 0; i < steps; ++i) {
    const double B = i == steps - 1 ? B_end : B_start + span * i / (steps - 1);
    const PhysicalParams point = params.with_field(B);
    SweepRecord record;
    record.B = B;
    record.b = derive_scales(point).b;
    record.regime = classify_regime(point);
    record.levels = spectrum_table(point, n_max, frame);
    for (const EnergyLevel& level : record.levels) {
      record.lz.push_back(order_parameter(point, level.n, level.branch, frame));
    }
    records.push_back(std::move(record));
  }
  return records;
}

TransitionEstimate detect_transition(const std::vector<SweepRecord>& records, int n, Branch branch) {
  if (n < 1) {
    throw ValidationError("transition detection needs n >= 1");
  }
  if (records.size() < 2) {
    throw ValidationError("transition detection needs at least 2 sweep records");
  }

  auto lookup = [&](const SweepRecord& r) -> const LzValue& {
    for (const LzValue& v : r.lz) {
      if (v.n == n && v.branch == branch) {
        return v;
      }
    }
    throw ValidationError("sweep records do not contain level n = " + std::to_string(n));
  };

  const double half_spacing = 0.5 * (records.back().B - records.front().B) / static_cast<double>(records.size() - 1);
  std::optional<double> previous_sign;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const LzValue& v = lookup(records[i]);
    if (!v.defined) {
      return {records[i].B, half_spacing};
    }
    const double sign = v.value < 0.0 ? -1.0 : (v.value > 0.0 ? 1.0 : 0.0);
    if (previous_sign && sign != 0.0 && *previous_sign != 0.0 && sign != *previous_sign) {
      return {0.5 * (records[i - 1].B + records[i].B), half_spacing};
    }
    if (sign != 0.0) {
      previous_sign = sign;
    }
  }
  throw NotBracketedError("order parameter does not change sign between B = " +
                          std::to_string(records.front().B) + " and " + std::to_string(records.back().B));
}

} // namespace dosc
