#pragma once

#include "amc/sensitivity.hpp"
#include "amc/sweep.hpp"

#include <iosfwd>
#include <string>

namespace amc {

/// Format a double with 12 significant digits (round-trips through CSV
/// readers to the values the harness computed).
std::string format_g12(double v);

/// CSV with a fixed header row.  A result must hold only one row family
/// (classification or sensitivity); byte-stable for a fixed result.
void write_csv(const SweepResult& r, std::ostream& os);
std::string to_csv(const SweepResult& r);

/// JSON with full experiment metadata (base_seed and scenario parameters)
/// for replay, plus all rows.
void write_json(const SweepResult& r, std::ostream& os);
std::string to_json(const SweepResult& r);

/// Contour point list (CSV: superclass_id, threshold, delta2, delta1).
void write_contours_csv(std::span<const ContourPoint> pts, std::ostream& os);

} // namespace amc
