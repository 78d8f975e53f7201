#pragma once

// Truncated formal power series in q on a fractional exponent grid.
//
// A QSeries stores exact integer coefficients of q^{i/D} for grid indices i
// in [offset, cutoff]. The cutoff is the largest grid index whose coefficient
// is known; every coefficient at or below it is exact. Exact polynomials
// (finite Laurent polynomials known to all orders) carry the cutoff kExact.

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>
#include <gmpxx.h>

namespace qbailey {

using Integer = mpz_class;
using Rational = boost::rational<std::int64_t>;

}  // namespace qbailey

// Boost 1.74 recurses forever on rational<int64_t> vs int under C++20
// rewritten comparisons; exact non-template overloads take precedence.
namespace boost {
inline bool operator==(const rational<std::int64_t>& a, int b) { return a == rational<std::int64_t>(b); }
inline bool operator<(const rational<std::int64_t>& a, int b) { return a < rational<std::int64_t>(b); }
inline bool operator>(const rational<std::int64_t>& a, int b) { return a > rational<std::int64_t>(b); }
inline bool operator<=(const rational<std::int64_t>& a, int b) { return !(a > b); }
inline bool operator>=(const rational<std::int64_t>& a, int b) { return !(a < b); }
inline bool operator<(int a, const rational<std::int64_t>& b) { return b > a; }
inline bool operator>(int a, const rational<std::int64_t>& b) { return b < a; }
inline bool operator<=(int a, const rational<std::int64_t>& b) { return !(b < a); }
inline bool operator>=(int a, const rational<std::int64_t>& b) { return !(b > a); }
}  // namespace boost

namespace qbailey {

inline constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max() / 4;

// An exponent fell between grid points, or two grids cannot be aligned.
class GridError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Division by a series whose leading coefficient is not a unit of Z.
class NotInvertible : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// "p/q", or "n" when integral.
std::string format_exponent(const Rational& e);
Rational parse_exponent(const std::string& text);

// Saturating arithmetic on cutoffs; anything at or above kExact stays exact.
constexpr std::int64_t cutoff_add(std::int64_t cutoff, std::int64_t delta) {
  return cutoff >= kExact ? kExact : cutoff + delta;
}

// Grid denominator plus the working cutoff (in grid units) of a computation.
struct Grid {
  std::int64_t denominator = 1;
  std::int64_t cutoff = 0;

  // Cutoff given as an integer exponent T, i.e. T*D grid units.
  static Grid integral(std::int64_t denominator, std::int64_t order) {
    return {denominator, order * denominator};
  }
  static Grid exact(std::int64_t denominator) { return {denominator, kExact}; }

  Grid with_cutoff(std::int64_t c) const { return {denominator, c}; }
  bool is_exact() const { return cutoff >= kExact; }

  // Grid index of an exponent; throws GridError when it is off-grid.
  std::int64_t index(const Rational& exponent) const;
  Rational exponent(std::int64_t index) const { return Rational(index, denominator); }
};

struct Mismatch {
  Rational exponent;
  Integer lhs;
  Integer rhs;
};

class QSeries {
 public:
  // Exact zero on the unit grid.
  QSeries() = default;

  static QSeries zero(const Grid& grid);
  static QSeries one(const Grid& grid);
  static QSeries monomial(const Grid& grid, std::int64_t index, Integer coefficient = 1);
  static QSeries from_coefficients(std::int64_t denominator, std::int64_t offset,
                                   std::vector<Integer> coefficients, std::int64_t cutoff);

  std::int64_t denominator() const { return denominator_; }
  std::int64_t cutoff() const { return cutoff_; }
  bool is_exact() const { return cutoff_ >= kExact; }
  bool is_zero() const { return coeffs_.empty(); }
  Grid grid() const { return {denominator_, cutoff_}; }

  // Grid index of coefficients()[0]. Equals the lowest nonzero index unless
  // the series is zero.
  std::int64_t offset() const { return offset_; }
  std::span<const Integer> coefficients() const { return coeffs_; }

  std::optional<std::int64_t> lowest_index() const;
  std::optional<std::int64_t> highest_index() const;
  std::optional<Rational> lowest_exponent() const;

  // Coefficient at a grid index or exponent. Asking beyond the cutoff throws.
  Integer coefficient(std::int64_t index) const;
  Integer coefficient(const Rational& exponent) const;

  // Nonzero terms in increasing exponent order.
  std::vector<std::pair<Rational, Integer>> terms() const;
  std::size_t term_count() const;
  bool has_only_integral_exponents() const;

  QSeries truncated(std::int64_t cutoff) const;
  QSeries refined(std::int64_t denominator) const;

  // Multiplication by q^{index/D}; the known range moves with it.
  QSeries shifted(std::int64_t index) const;
  QSeries scaled(const Integer& factor) const;

  // Multiplication by / division by (1 - sign*q^{index/D}), O(length).
  QSeries times_binomial(int sign, std::int64_t index) const;
  QSeries over_binomial(int sign, std::int64_t index) const;

  QSeries operator-() const;
  QSeries& operator+=(const QSeries& other);
  QSeries& operator-=(const QSeries& other);

  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator*(const QSeries& a, const QSeries& b);

  // Coefficient-wise equality up to the smaller cutoff.
  friend bool operator==(const QSeries& a, const QSeries& b);

  std::string to_string(std::size_t max_terms = 12) const;

 private:
  void normalize();
  void add_scaled(const QSeries& other, int sign);

  std::int64_t denominator_ = 1;
  std::int64_t offset_ = 0;
  std::int64_t cutoff_ = kExact;
  std::vector<Integer> coeffs_;
};

// Multiplicative inverse. The lowest nonzero coefficient must be +-1; the
// optional cutoff bounds the result (required when s is exact).
QSeries invert(const QSeries& s, std::optional<std::int64_t> cutoff = std::nullopt);

// First exponent (on the common grid) at which a and b differ, comparing up
// to min(cutoff_a, cutoff_b, limit).
std::optional<Mismatch> first_mismatch(const QSeries& a, const QSeries& b,
                                       std::optional<std::int64_t> limit = std::nullopt);

// Both series re-expressed on the grid lcm(Da, Db).
std::pair<QSeries, QSeries> align(const QSeries& a, const QSeries& b);

// Ordered (exponent, coefficient) list of the nonzero terms, as strings.
std::vector<std::pair<std::string, std::string>> serialize(const QSeries& s,
                                                           std::size_t max_terms = 0);

// Signed monomial eps*q^r with rational r.
struct QPower {
  int sign = 1;
  Rational exponent = 0;

  static QPower q(Rational r = 1) { return {1, r}; }
  static QPower minus_q(Rational r = 1) { return {-1, r}; }

  QPower operator*(const QPower& o) const { return {sign * o.sign, exponent + o.exponent}; }
  QPower operator/(const QPower& o) const { return {sign * o.sign, exponent - o.exponent}; }
  QPower pow(std::int64_t n) const {
    return {(n % 2 != 0) ? sign : 1, exponent * Rational(n)};
  }
  bool operator==(const QPower&) const = default;

  // One-term series; GridError when r*D is not an integer.
  QSeries to_series(const Grid& grid) const;
  std::string to_string() const;
  static QPower parse(const std::string& text);
};

}  // namespace qbailey
