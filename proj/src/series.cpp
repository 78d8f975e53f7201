#include "qbailey/series.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace qbailey {

std::string format_exponent(const Rational& e) {
  if (e.denominator() == 1) return std::to_string(e.numerator());
  return std::to_string(e.numerator()) + "/" + std::to_string(e.denominator());
}

Rational parse_exponent(const std::string& text) {
  auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      auto n = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return Rational(n);
    }
    auto num = std::stoll(text.substr(0, slash), &used);
    if (used != slash) throw std::invalid_argument(text);
    auto rest = text.substr(slash + 1);
    auto den = std::stoll(rest, &used);
    if (used != rest.size() || den == 0) throw std::invalid_argument(text);
    return Rational(num, den);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("malformed exponent '" + text + "'");
  }
}

std::int64_t Grid::index(const Rational& exponent) const {
  auto scaled = exponent * Rational(denominator);
  if (scaled.denominator() != 1) {
    throw GridError("exponent " + format_exponent(exponent) + " is off the 1/" +
                    std::to_string(denominator) + " grid");
  }
  return scaled.numerator();
}

QSeries QSeries::zero(const Grid& grid) {
  QSeries s;
  s.denominator_ = grid.denominator;
  s.cutoff_ = grid.cutoff;
  return s;
}

QSeries QSeries::one(const Grid& grid) { return monomial(grid, 0, 1); }

QSeries QSeries::monomial(const Grid& grid, std::int64_t index, Integer coefficient) {
  QSeries s = zero(grid);
  if (index > s.cutoff_ || coefficient == 0) return s;
  s.offset_ = index;
  s.coeffs_.push_back(std::move(coefficient));
  s.normalize();
  return s;
}

QSeries QSeries::from_coefficients(std::int64_t denominator, std::int64_t offset,
                                   std::vector<Integer> coefficients, std::int64_t cutoff) {
  if (denominator <= 0) throw GridError("grid denominator must be positive");
  QSeries s;
  s.denominator_ = denominator;
  s.offset_ = offset;
  s.cutoff_ = cutoff;
  s.coeffs_ = std::move(coefficients);
  s.normalize();
  return s;
}

void QSeries::normalize() {
  std::size_t lead = 0;
  while (lead < coeffs_.size() && sgn(coeffs_[lead]) == 0) ++lead;
  if (lead == coeffs_.size() || offset_ + static_cast<std::int64_t>(lead) > cutoff_) {
    coeffs_.clear();
    offset_ = 0;
    return;
  }
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    offset_ += static_cast<std::int64_t>(lead);
  }
  if (is_exact()) {
    while (sgn(coeffs_.back()) == 0) coeffs_.pop_back();
  } else {
    // Truncated series span [offset, cutoff] exactly.
    coeffs_.resize(static_cast<std::size_t>(cutoff_ - offset_ + 1));
  }
}

std::optional<std::int64_t> QSeries::lowest_index() const {
  if (is_zero()) return std::nullopt;
  return offset_;
}

std::optional<std::int64_t> QSeries::highest_index() const {
  for (auto i = coeffs_.size(); i-- > 0;) {
    if (sgn(coeffs_[i]) != 0) return offset_ + static_cast<std::int64_t>(i);
  }
  return std::nullopt;
}

std::optional<Rational> QSeries::lowest_exponent() const {
  if (is_zero()) return std::nullopt;
  return Rational(offset_, denominator_);
}

Integer QSeries::coefficient(std::int64_t index) const {
  if (index > cutoff_) {
    throw std::out_of_range("coefficient index " + std::to_string(index) +
                            " beyond cutoff " + std::to_string(cutoff_));
  }
  if (index < offset_ || index >= offset_ + static_cast<std::int64_t>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(index - offset_)];
}

Integer QSeries::coefficient(const Rational& exponent) const {
  auto scaled = exponent * Rational(denominator_);
  if (scaled.denominator() != 1) return 0;
  return coefficient(scaled.numerator());
}

std::vector<std::pair<Rational, Integer>> QSeries::terms() const {
  std::vector<std::pair<Rational, Integer>> out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) != 0) {
      out.emplace_back(Rational(offset_ + static_cast<std::int64_t>(i), denominator_), coeffs_[i]);
    }
  }
  return out;
}

std::size_t QSeries::term_count() const {
  return static_cast<std::size_t>(
      std::count_if(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return sgn(c) != 0; }));
}

bool QSeries::has_only_integral_exponents() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    auto idx = offset_ + static_cast<std::int64_t>(i);
    if (sgn(coeffs_[i]) != 0 && idx % denominator_ != 0) return false;
  }
  return true;
}

QSeries QSeries::truncated(std::int64_t cutoff) const {
  if (cutoff >= cutoff_) return *this;
  QSeries s;
  s.denominator_ = denominator_;
  s.cutoff_ = cutoff;
  if (!is_zero() && offset_ <= cutoff) {
    s.offset_ = offset_;
    auto keep = std::min<std::int64_t>(static_cast<std::int64_t>(coeffs_.size()), cutoff - offset_ + 1);
    s.coeffs_.assign(coeffs_.begin(), coeffs_.begin() + keep);
  }
  s.normalize();
  return s;
}

QSeries QSeries::refined(std::int64_t denominator) const {
  if (denominator == denominator_) return *this;
  if (denominator <= 0 || denominator % denominator_ != 0) {
    throw GridError("cannot refine 1/" + std::to_string(denominator_) + " grid to 1/" +
                    std::to_string(denominator));
  }
  auto f = denominator / denominator_;
  QSeries s;
  s.denominator_ = denominator;
  s.cutoff_ = is_exact() ? kExact : cutoff_ * f;
  if (!is_zero()) {
    s.offset_ = offset_ * f;
    s.coeffs_.resize((coeffs_.size() - 1) * static_cast<std::size_t>(f) + 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) s.coeffs_[i * static_cast<std::size_t>(f)] = coeffs_[i];
  }
  s.normalize();
  return s;
}

QSeries QSeries::shifted(std::int64_t index) const {
  QSeries s = *this;
  if (!s.is_zero()) s.offset_ += index;
  s.cutoff_ = cutoff_add(cutoff_, index);
  return s;
}

QSeries QSeries::scaled(const Integer& factor) const {
  if (factor == 0) return zero(grid());
  QSeries s = *this;
  for (auto& c : s.coeffs_) c *= factor;
  return s;
}

QSeries QSeries::operator-() const { return scaled(-1); }

std::pair<QSeries, QSeries> align(const QSeries& a, const QSeries& b) {
  if (a.denominator() == b.denominator()) return {a, b};
  auto d = std::lcm(a.denominator(), b.denominator());
  return {a.refined(d), b.refined(d)};
}

void QSeries::add_scaled(const QSeries& other_in, int sign) {
  if (other_in.denominator_ != denominator_) {
    auto [mine, theirs] = align(*this, other_in);
    *this = std::move(mine);
    add_scaled(theirs, sign);
    return;
  }
  const QSeries& other = other_in;
  auto cutoff = std::min(cutoff_, other.cutoff_);
  if (other.is_zero()) {
    if (cutoff < cutoff_) *this = truncated(cutoff);
    return;
  }
  if (is_zero()) {
    auto keep_cutoff = cutoff;
    *this = other.truncated(keep_cutoff);
    cutoff_ = std::min(cutoff_, keep_cutoff);
    if (sign < 0) {
      for (auto& c : coeffs_) c = -c;
    }
    normalize();
    return;
  }
  auto lo = std::min(offset_, other.offset_);
  std::int64_t hi;
  if (cutoff >= kExact) {
    hi = std::max(offset_ + static_cast<std::int64_t>(coeffs_.size()),
                  other.offset_ + static_cast<std::int64_t>(other.coeffs_.size())) - 1;
  } else {
    hi = cutoff;
  }
  if (lo > hi) {
    coeffs_.clear();
    offset_ = 0;
    cutoff_ = cutoff;
    return;
  }
  auto size = static_cast<std::size_t>(hi - lo + 1);
  if (lo != offset_ || size != coeffs_.size()) {
    std::vector<Integer> fresh(size);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      auto idx = offset_ + static_cast<std::int64_t>(i);
      if (idx > hi) break;
      fresh[static_cast<std::size_t>(idx - lo)].swap(coeffs_[i]);
    }
    coeffs_ = std::move(fresh);
    offset_ = lo;
  }
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) {
    auto idx = other.offset_ + static_cast<std::int64_t>(i);
    if (idx > hi) break;
    auto& dst = coeffs_[static_cast<std::size_t>(idx - lo)];
    if (sign > 0) {
      dst += other.coeffs_[i];
    } else {
      dst -= other.coeffs_[i];
    }
  }
  cutoff_ = cutoff;
  normalize();
}

QSeries& QSeries::operator+=(const QSeries& other) {
  add_scaled(other, 1);
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& other) {
  add_scaled(other, -1);
  return *this;
}

namespace {

// gcd of the gaps between nonzero entries; 0 when there is at most one.
std::int64_t support_stride(std::span<const Integer> c) {
  std::int64_t g = 0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (sgn(c[i]) != 0) {
      g = std::gcd(g, static_cast<std::int64_t>(i));
      if (g == 1) break;
    }
  }
  return g;
}

}  // namespace

QSeries operator*(const QSeries& a_in, const QSeries& b_in) {
  if (a_in.denominator() != b_in.denominator()) {
    auto [a, b] = align(a_in, b_in);
    return a * b;
  }
  const auto& a = a_in;
  const auto& b = b_in;
  auto d = a.denominator();
  // Known range of a product: every coefficient of a up to Ta meets b from its
  // lowest term on, and vice versa.
  auto cutoff = std::min(a.cutoff(), b.cutoff());
  if (!b.is_zero()) cutoff = std::min(cutoff, cutoff_add(a.cutoff(), b.offset()));
  if (!a.is_zero()) cutoff = std::min(cutoff, cutoff_add(b.cutoff(), a.offset()));
  if (a.is_zero() || b.is_zero()) return QSeries::zero({d, cutoff});

  auto lo = a.offset() + b.offset();
  auto hi = *a.highest_index() + *b.highest_index();
  if (cutoff < kExact) hi = std::min(hi, cutoff);
  if (lo > hi) return QSeries::zero({d, cutoff});

  auto ac = a.coefficients();
  auto bc = b.coefficients();
  auto g = std::gcd(support_stride(ac), support_stride(bc));
  if (g == 0) g = 1;

  auto span_a = (*a.highest_index() - a.offset()) / g + 1;
  auto span_b = (*b.highest_index() - b.offset()) / g + 1;
  auto span_r = (hi - lo) / g + 1;

  // Outer loop runs over the sparser operand.
  const Integer* outer = ac.data();
  const Integer* inner = bc.data();
  auto n_outer = span_a;
  auto n_inner = span_b;
  std::size_t nz_a = 0, nz_b = 0;
  for (std::int64_t i = 0; i < span_a; ++i) nz_a += sgn(ac[static_cast<std::size_t>(i * g)]) != 0;
  for (std::int64_t i = 0; i < span_b; ++i) nz_b += sgn(bc[static_cast<std::size_t>(i * g)]) != 0;
  if (nz_b < nz_a) {
    std::swap(outer, inner);
    std::swap(n_outer, n_inner);
  }

  std::vector<Integer> r(static_cast<std::size_t>(span_r));
  for (std::int64_t i = 0; i < n_outer && i < span_r; ++i) {
    const Integer& x = outer[i * g];
    if (sgn(x) == 0) continue;
    auto limit = std::min(n_inner, span_r - i);
    for (std::int64_t j = 0; j < limit; ++j) {
      const Integer& y = inner[j * g];
      if (sgn(y) == 0) continue;
      mpz_addmul(r[static_cast<std::size_t>(i + j)].get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    }
  }

  std::vector<Integer> out;
  if (g == 1) {
    out = std::move(r);
  } else {
    out.resize(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t t = 0; t < span_r; ++t) out[static_cast<std::size_t>(t * g)].swap(r[static_cast<std::size_t>(t)]);
  }
  return QSeries::from_coefficients(d, lo, std::move(out), cutoff);
}

QSeries QSeries::times_binomial(int sign, std::int64_t index) const {
  auto shifted_part = shifted(index);
  QSeries out = *this;
  if (sign > 0) {
    out -= shifted_part;
  } else {
    out += shifted_part;
  }
  return out;
}

QSeries QSeries::over_binomial(int sign, std::int64_t index) const {
  if (index == 0) {
    throw NotInvertible(sign > 0 ? "division by the zero factor (1 - 1)"
                                 : "division by (1 + 1) is non-invertible over integers");
  }
  if (index < 0) {
    // 1/(1 - e q^k) = -e q^{-k} / (1 - e q^{-k}) for k < 0.
    return over_binomial(sign, -index).shifted(-index).scaled(-sign).truncated(cutoff_);
  }
  if (is_exact()) {
    throw std::logic_error("division of an exact polynomial requires a finite cutoff");
  }
  QSeries s = *this;
  if (s.is_zero()) return s;
  auto n = static_cast<std::int64_t>(s.coeffs_.size());
  for (std::int64_t i = index; i < n; ++i) {
    const auto& prev = s.coeffs_[static_cast<std::size_t>(i - index)];
    if (sgn(prev) == 0) continue;
    if (sign > 0) {
      s.coeffs_[static_cast<std::size_t>(i)] += prev;
    } else {
      s.coeffs_[static_cast<std::size_t>(i)] -= prev;
    }
  }
  return s;
}

bool operator==(const QSeries& a, const QSeries& b) { return !first_mismatch(a, b).has_value(); }

std::string QSeries::to_string(std::size_t max_terms) const {
  std::ostringstream os;
  std::size_t shown = 0;
  for (const auto& [e, c] : terms()) {
    if (shown == max_terms) {
      os << " + ...";
      break;
    }
    bool neg = sgn(c) < 0;
    Integer mag = neg ? Integer(-c) : c;
    if (shown == 0) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    bool unit = mag == 1;
    if (!unit || e == 0) os << mag.get_str();
    if (e != 0) {
      if (!unit) os << "*";
      os << "q";
      if (e != 1) {
        if (e.denominator() == 1 && e > 0) {
          os << "^" << format_exponent(e);
        } else {
          os << "^(" << format_exponent(e) << ")";
        }
      }
    }
    ++shown;
  }
  if (shown == 0) os << "0";
  if (!is_exact()) os << " + O(q^" << format_exponent(Rational(cutoff_ + 1, denominator_)) << ")";
  return os.str();
}

QSeries invert(const QSeries& s, std::optional<std::int64_t> cutoff) {
  if (s.is_zero()) throw NotInvertible("inverse of the zero series");
  auto lo = s.offset();
  auto coeffs = s.coefficients();
  const Integer& lead = coeffs[0];
  if (lead != 1 && lead != -1) {
    throw NotInvertible("non-invertible over integers: leading coefficient " + lead.get_str());
  }
  if (s.is_exact() && !cutoff) {
    throw std::logic_error("inverse of an exact polynomial requires a cutoff");
  }
  // s = q^lo * u with u(0) = lead; 1/u is known exactly as far as u is.
  std::int64_t result_cutoff = s.is_exact() ? kExact : s.cutoff() - 2 * lo;
  if (cutoff) result_cutoff = std::min(result_cutoff, *cutoff);
  auto u_cutoff = result_cutoff + lo;  // relative index bound for 1/u
  if (u_cutoff < 0) return QSeries::zero({s.denominator(), result_cutoff});

  auto g = support_stride(coeffs);
  if (g == 0) g = 1;
  auto n = u_cutoff / g + 1;
  auto na = static_cast<std::int64_t>(coeffs.size() - 1) / g + 1;
  std::vector<Integer> a(static_cast<std::size_t>(std::min(na, n)));
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = coeffs[i * static_cast<std::size_t>(g)];

  std::vector<Integer> inv(static_cast<std::size_t>(n));
  inv[0] = lead;
  Integer acc;
  for (std::int64_t k = 1; k < n; ++k) {
    acc = 0;
    auto top = std::min<std::int64_t>(k, static_cast<std::int64_t>(a.size()) - 1);
    for (std::int64_t j = 1; j <= top; ++j) {
      const auto& x = a[static_cast<std::size_t>(j)];
      if (sgn(x) == 0) continue;
      mpz_addmul(acc.get_mpz_t(), x.get_mpz_t(), inv[static_cast<std::size_t>(k - j)].get_mpz_t());
    }
    // lead is +-1, so dividing by it is multiplying by it.
    if (lead == 1) {
      inv[static_cast<std::size_t>(k)] = -acc;
    } else {
      inv[static_cast<std::size_t>(k)] = acc;
    }
  }
  std::vector<Integer> out;
  if (g == 1) {
    out = std::move(inv);
  } else {
    out.resize(static_cast<std::size_t>((n - 1) * g + 1));
    for (std::int64_t t = 0; t < n; ++t) out[static_cast<std::size_t>(t * g)].swap(inv[static_cast<std::size_t>(t)]);
  }
  return QSeries::from_coefficients(s.denominator(), -lo, std::move(out), result_cutoff);
}

std::optional<Mismatch> first_mismatch(const QSeries& a_in, const QSeries& b_in,
                                       std::optional<std::int64_t> limit) {
  auto [a, b] = align(a_in, b_in);
  auto cutoff = std::min(a.cutoff(), b.cutoff());
  if (limit) cutoff = std::min(cutoff, *limit);
  std::int64_t lo;
  if (a.is_zero() && b.is_zero()) return std::nullopt;
  if (a.is_zero()) {
    lo = b.offset();
  } else if (b.is_zero()) {
    lo = a.offset();
  } else {
    lo = std::min(a.offset(), b.offset());
  }
  auto hi = cutoff;
  if (hi >= kExact) hi = std::max(a.highest_index().value_or(lo), b.highest_index().value_or(lo));
  for (auto i = lo; i <= hi; ++i) {
    auto x = a.coefficient(i);
    auto y = b.coefficient(i);
    if (x != y) return Mismatch{Rational(i, a.denominator()), x, y};
  }
  return std::nullopt;
}

std::vector<std::pair<std::string, std::string>> serialize(const QSeries& s, std::size_t max_terms) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [e, c] : s.terms()) {
    if (max_terms != 0 && out.size() == max_terms) break;
    out.emplace_back(format_exponent(e), c.get_str());
  }
  return out;
}

QSeries QPower::to_series(const Grid& grid) const {
  return QSeries::monomial(grid, grid.index(exponent), sign);
}

std::string QPower::to_string() const {
  std::string out = sign < 0 ? "-" : "";
  if (exponent == 0) return out + "1";
  out += "q";
  if (exponent == 1) return out;
  if (exponent.denominator() == 1 && exponent > 0) return out + "^" + format_exponent(exponent);
  return out + "^(" + format_exponent(exponent) + ")";
}

QPower QPower::parse(const std::string& raw) {
  std::string text;
  for (char ch : raw) {
    if (!std::isspace(static_cast<unsigned char>(ch))) text.push_back(ch);
  }
  QPower p;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    p.sign = text[pos] == '-' ? -1 : 1;
    ++pos;
  }
  auto body = text.substr(pos);
  if (body == "1") return {p.sign, 0};
  if (body.empty() || body[0] != 'q') throw std::invalid_argument("malformed q-power '" + raw + "'");
  if (body == "q") return {p.sign, 1};
  if (body.size() < 3 || body[1] != '^') throw std::invalid_argument("malformed q-power '" + raw + "'");
  auto e = body.substr(2);
  if (e.front() == '(') {
    if (e.back() != ')') throw std::invalid_argument("malformed q-power '" + raw + "'");
    e = e.substr(1, e.size() - 2);
  }
  return {p.sign, parse_exponent(e)};
}

}  // namespace qbailey
