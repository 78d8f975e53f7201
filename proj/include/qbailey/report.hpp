#pragma once

// Verification reports and their json/csv/text renderings.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qbailey/bailey.hpp"
#include "qbailey/series.hpp"

namespace qbailey {

enum class Status { pass, fail, error };
enum class Format { json, csv, text };

std::string to_string(Status s);
std::string to_string(Format f);
std::optional<Format> parse_format(const std::string& text);

// Identities known to the driver, in the spelling used on the command line.
const std::vector<std::string>& identity_names();

struct ReportParameters {
  std::optional<std::int64_t> N;
  std::optional<std::int64_t> k;
  std::optional<std::int64_t> ell;
  std::optional<std::int64_t> M;
  std::optional<std::int64_t> L_max;
  std::optional<std::int64_t> r;
  std::optional<std::int64_t> s;
  std::optional<std::string> rho1;
  std::optional<std::string> rho2;
};

struct ReportMismatch {
  std::string exponent;
  std::string lhs;
  std::string rhs;
  std::optional<std::int64_t> L;  // table row, for table comparisons
};

using CoefficientSample = std::vector<std::pair<std::string, std::string>>;

struct IdentityReport {
  std::string identity;
  ReportParameters params;
  std::int64_t denominator = 1;
  std::int64_t order = 0;  // T in integer exponent units
  Status status = Status::pass;
  std::optional<ReportMismatch> first_mismatch;
  CoefficientSample lhs_sample;
  CoefficientSample rhs_sample;
  std::string message;
  double elapsed_ms = 0.0;
};

inline constexpr std::size_t kSampleSize = 16;

ReportMismatch to_report(const Mismatch& m, std::optional<std::int64_t> L = std::nullopt);

// Fill status, mismatch and samples from two sides compared up to the grid
// cutoff. With require_integral, a term at a fractional exponent on either
// side fails the report (the coefficient there is expected to be 0).
void record_sides(IdentityReport& report, const QSeries& lhs, const QSeries& rhs, const Grid& grid,
                  bool require_integral = false);

// Same for two tables compared row by row; samples come from the first
// mismatching row, or row 0.
void record_tables(IdentityReport& report, const SeriesTable& lhs, const SeriesTable& rhs,
                   const Grid& grid);

struct EmitOptions {
  bool timing = false;  // json/csv carry elapsed_ms only when set
};

// One JSON object per line; CSV with a header row; text as an aligned table.
void emit_reports(std::ostream& os, const std::vector<IdentityReport>& reports, Format format,
                  const EmitOptions& options = {});
std::string emit_report(const IdentityReport& report, Format format, const EmitOptions& options = {});

}  // namespace qbailey
