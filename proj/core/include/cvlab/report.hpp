#pragma once

// Report emitters. JSON and CSV carry full precision (JSON numbers re-read
// bit-exactly); human output uses 6 significant digits.

#include <cvlab/sweep.hpp>

#include <string>

namespace cvlab {

enum class ReportFormat { Json, Csv, Human };

ReportFormat report_format_from_string(const std::string& s);

/// Top-level keys: surface, chi, h1, L, L_error, c_total, samples, verdicts.
std::string to_json(const SweepReport& report);
/// Header h,mu,lambda,c_trunc,quad_error,gb_residual; one row per sample.
std::string to_csv(const SweepReport& report);
std::string to_human(const SweepReport& report);
/// One line per verdict: "<check>: <status> (<note>)  residual ...  bound ...".
std::string verdict_table(const SweepReport& report);

std::string render(const SweepReport& report, ReportFormat format);

/// Inverse of to_json. Directions of divergent quantities and free-form notes
/// are not part of the JSON document and come back empty.
SweepReport parse_report_json(const std::string& text);

/// 6 significant digits.
std::string format_human(double v);

}  // namespace cvlab
