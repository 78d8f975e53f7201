#include "qbailey/report.hpp"

#include <algorithm>
#include <array>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace qbailey {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::error: return "error";
  }
  return "error";
}

std::string to_string(Format f) {
  switch (f) {
    case Format::json: return "json";
    case Format::csv: return "csv";
    case Format::text: return "text";
  }
  return "json";
}

std::optional<Format> parse_format(const std::string& text) {
  if (text == "json") return Format::json;
  if (text == "csv") return Format::csv;
  if (text == "text") return Format::text;
  return std::nullopt;
}

const std::vector<std::string>& identity_names() {
  static const std::vector<std::string> names = {"euler", "euler-levelN", "ag", "agn",
                                                 "lemma3", "pair-check", "rho-check",
                                                 "triple-product"};
  return names;
}

ReportMismatch to_report(const Mismatch& m, std::optional<std::int64_t> L) {
  return {format_exponent(m.exponent), m.lhs.get_str(), m.rhs.get_str(), L};
}

namespace {

CoefficientSample sample(const QSeries& s) { return serialize(s, kSampleSize); }

// First nonzero term at a fractional exponent within the cutoff.
std::optional<Rational> first_fractional(const QSeries& s, std::int64_t cutoff) {
  if (s.is_zero()) return std::nullopt;
  auto D = s.denominator();
  auto coeffs = s.coefficients();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    auto index = s.offset() + static_cast<std::int64_t>(i);
    if (index > cutoff) break;
    if (coeffs[i] != 0 && index % D != 0) return Rational(index, D);
  }
  return std::nullopt;
}

}  // namespace

void record_sides(IdentityReport& report, const QSeries& lhs, const QSeries& rhs, const Grid& grid,
                  bool require_integral) {
  report.denominator = grid.denominator;
  report.lhs_sample = sample(lhs);
  report.rhs_sample = sample(rhs);
  report.first_mismatch.reset();
  report.status = Status::pass;

  auto [a, b] = align(lhs, rhs);
  auto scale = a.denominator() / grid.denominator;
  auto limit = grid.is_exact() ? kExact : grid.cutoff * scale;
  auto mismatch = first_mismatch(a, b, limit);

  std::optional<Rational> fractional;
  if (require_integral) {
    auto fa = first_fractional(a, limit);
    auto fb = first_fractional(b, limit);
    if (fa && fb) fractional = std::min(*fa, *fb);
    else fractional = fa ? fa : fb;
  }

  if (fractional && (!mismatch || *fractional < mismatch->exponent)) {
    report.status = Status::fail;
    report.first_mismatch = to_report({*fractional, a.coefficient(*fractional), b.coefficient(*fractional)});
    report.message = "nonzero coefficient at a fractional exponent";
    return;
  }
  if (mismatch) {
    report.status = Status::fail;
    report.first_mismatch = to_report(*mismatch);
  }
}

void record_tables(IdentityReport& report, const SeriesTable& lhs, const SeriesTable& rhs,
                   const Grid& grid) {
  report.denominator = grid.denominator;
  auto check = compare_tables(lhs, rhs, grid.is_exact() ? std::nullopt : std::optional(grid.cutoff));
  std::size_t row = 0;
  report.first_mismatch.reset();
  report.status = Status::pass;
  if (!check.equal) {
    report.status = Status::fail;
    row = static_cast<std::size_t>(check.index.value_or(0));
    report.first_mismatch = to_report(*check.mismatch, check.index);
  }
  report.lhs_sample = row < lhs.size() ? sample(lhs[row]) : CoefficientSample{};
  report.rhs_sample = row < rhs.size() ? sample(rhs[row]) : CoefficientSample{};
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json params_json(const ReportParameters& p) {
  ordered_json j = ordered_json::object();
  auto put = [&](const char* key, const std::optional<std::int64_t>& v) {
    if (v) j[key] = *v;
  };
  put("N", p.N);
  put("k", p.k);
  put("ell", p.ell);
  put("M", p.M);
  put("L_max", p.L_max);
  put("r", p.r);
  put("s", p.s);
  if (p.rho1) j["rho1"] = *p.rho1;
  if (p.rho2) j["rho2"] = *p.rho2;
  return j;
}

ordered_json sample_json(const CoefficientSample& s) {
  ordered_json j = ordered_json::array();
  for (const auto& [e, c] : s) j.push_back(ordered_json::array({e, c}));
  return j;
}

std::string to_json(const IdentityReport& r, const EmitOptions& options) {
  ordered_json j;
  j["identity"] = r.identity;
  j["params"] = params_json(r.params);
  j["D"] = r.denominator;
  j["T"] = r.order;
  j["status"] = to_string(r.status);
  if (r.first_mismatch) {
    ordered_json m;
    m["exponent"] = r.first_mismatch->exponent;
    m["lhs"] = r.first_mismatch->lhs;
    m["rhs"] = r.first_mismatch->rhs;
    if (r.first_mismatch->L) m["L"] = *r.first_mismatch->L;
    j["first_mismatch"] = m;
  }
  j["lhs_sample"] = sample_json(r.lhs_sample);
  j["rhs_sample"] = sample_json(r.rhs_sample);
  if (!r.message.empty()) j["message"] = r.message;
  if (options.timing) j["elapsed_ms"] = r.elapsed_ms;
  return j.dump();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string opt(const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : ""; }

std::string sample_field(const CoefficientSample& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ";" : "") + s[i].first + ":" + s[i].second;
  return out;
}

std::string format_ms(double ms) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << ms;
  return os.str();
}

std::string csv_header(const EmitOptions& options) {
  std::string h =
      "identity,N,k,ell,M,L_max,r,s,rho1,rho2,D,T,status,mismatch_exponent,mismatch_L,"
      "mismatch_lhs,mismatch_rhs,lhs_sample,rhs_sample,message";
  if (options.timing) h += ",elapsed_ms";
  return h;
}

std::string to_csv(const IdentityReport& r, const EmitOptions& options) {
  const auto& p = r.params;
  std::vector<std::string> f = {r.identity, opt(p.N), opt(p.k), opt(p.ell), opt(p.M), opt(p.L_max),
                                opt(p.r), opt(p.s), p.rho1.value_or(""), p.rho2.value_or(""),
                                std::to_string(r.denominator), std::to_string(r.order),
                                to_string(r.status)};
  if (r.first_mismatch) {
    f.push_back(r.first_mismatch->exponent);
    f.push_back(opt(r.first_mismatch->L));
    f.push_back(r.first_mismatch->lhs);
    f.push_back(r.first_mismatch->rhs);
  } else {
    f.insert(f.end(), 4, "");
  }
  f.push_back(sample_field(r.lhs_sample));
  f.push_back(sample_field(r.rhs_sample));
  f.push_back(r.message);
  if (options.timing) f.push_back(format_ms(r.elapsed_ms));
  std::string line;
  for (std::size_t i = 0; i < f.size(); ++i) line += (i ? "," : "") + csv_field(f[i]);
  return line;
}

std::string params_text(const ReportParameters& p) {
  std::string out;
  auto put = [&](const char* key, const std::string& v) {
    if (!out.empty()) out += ' ';
    out += key;
    out += '=';
    out += v;
  };
  if (p.N) put("N", std::to_string(*p.N));
  if (p.k) put("k", std::to_string(*p.k));
  if (p.ell) put("ell", std::to_string(*p.ell));
  if (p.M) put("M", std::to_string(*p.M));
  if (p.L_max) put("L_max", std::to_string(*p.L_max));
  if (p.r) put("r", std::to_string(*p.r));
  if (p.s) put("s", std::to_string(*p.s));
  if (p.rho1) put("rho1", *p.rho1);
  if (p.rho2) put("rho2", *p.rho2);
  return out.empty() ? "-" : out;
}

std::string mismatch_text(const IdentityReport& r) {
  if (!r.first_mismatch) return "-";
  const auto& m = *r.first_mismatch;
  std::string out;
  if (m.L) out = "L=" + std::to_string(*m.L) + " ";
  return out + "q^" + m.exponent + ": " + m.lhs + " vs " + m.rhs;
}

void emit_text(std::ostream& os, const std::vector<IdentityReport>& reports) {
  constexpr std::size_t kColumns = 8;
  std::vector<std::array<std::string, kColumns>> rows;
  rows.push_back({"identity", "params", "D", "T", "status", "first mismatch", "ms", "message"});
  for (const auto& r : reports) {
    rows.push_back({r.identity, params_text(r.params), std::to_string(r.denominator),
                    std::to_string(r.order), to_string(r.status), mismatch_text(r),
                    format_ms(r.elapsed_ms), r.message});
  }
  std::array<std::size_t, kColumns> width{};
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < kColumns; ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < kColumns; ++c) {
      line += row[c];
      if (c + 1 < kColumns) line += std::string(width[c] - row[c].size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
  }
}

}  // namespace

void emit_reports(std::ostream& os, const std::vector<IdentityReport>& reports, Format format,
                  const EmitOptions& options) {
  switch (format) {
    case Format::json:
      for (const auto& r : reports) os << to_json(r, options) << '\n';
      break;
    case Format::csv:
      os << csv_header(options) << '\n';
      for (const auto& r : reports) os << to_csv(r, options) << '\n';
      break;
    case Format::text:
      emit_text(os, reports);
      break;
  }
}

std::string emit_report(const IdentityReport& report, Format format, const EmitOptions& options) {
  std::ostringstream os;
  emit_reports(os, {report}, format, options);
  return os.str();
}

}  // namespace qbailey
