#include "qbailey/qfunctions.hpp"

#include <algorithm>
#include <cmath>

namespace qbailey {

namespace {

std::int64_t factor_index(const QPower& a, std::int64_t k, const Rational& step, std::int64_t d) {
  return Grid{d, 0}.index(a.exponent + Rational(k) * step);
}

// Lowest grid index of (a; q^step)_n: the sum of the negative factor indices.
std::int64_t pochhammer_order(const QPower& a, ProductLength n, std::int64_t d, const Rational& step) {
  std::int64_t order = 0;
  for (std::int64_t k = 0; !n || k < *n; ++k) {
    auto idx = factor_index(a, k, step, d);
    if (idx >= 0) {
      if (step > 0) break;
      continue;
    }
    order += idx;
  }
  return order;
}

}  // namespace

QSeries pochhammer(const QPower& a, ProductLength n, const Grid& grid, Rational step) {
  auto d = grid.denominator;
  if (n && *n < 0) throw std::invalid_argument("negative Pochhammer length");
  if (!n) {
    if (step <= 0) throw std::invalid_argument("infinite Pochhammer product needs a positive step");
    if (grid.is_exact()) throw std::invalid_argument("infinite Pochhammer product needs a finite cutoff");
  }

  // Factors with negative index form an exact Laurent polynomial; the rest is
  // accumulated truncated, far enough that the final product is known to the cutoff.
  auto order = pochhammer_order(a, n, d, step);
  QSeries laurent = QSeries::one(Grid::exact(d));
  std::vector<std::int64_t> positive;
  Integer scale = 1;
  bool vanishes = false;
  for (std::int64_t k = 0; !n || k < *n; ++k) {
    auto idx = factor_index(a, k, step, d);
    if (idx < 0) {
      laurent = laurent.times_binomial(a.sign, idx);
    } else if (idx == 0) {
      if (a.sign > 0) {
        if (!n) throw std::domain_error("infinite Pochhammer product has a vanishing factor (1 - 1)");
        vanishes = true;
      } else {
        scale *= 2;
      }
    } else {
      if (!n && idx > cutoff_add(grid.cutoff, -order)) break;
      positive.push_back(idx);
    }
  }
  if (vanishes) return QSeries::zero(grid);

  auto inner_cutoff = cutoff_add(grid.cutoff, -laurent.offset());
  QSeries rest = QSeries::one({d, inner_cutoff});
  for (auto idx : positive) {
    if (idx > inner_cutoff) continue;
    rest = rest.times_binomial(a.sign, idx);
  }
  if (scale != 1) rest = rest.scaled(scale);
  return (laurent * rest).truncated(grid.cutoff);
}

QSeries divide_pochhammer(const QSeries& s_in, const QPower& a, ProductLength n, Rational step) {
  if (s_in.is_exact()) throw std::logic_error("divide_pochhammer needs a truncated series");
  if (!n && step <= 0) throw std::invalid_argument("infinite Pochhammer product needs a positive step");
  if (n && *n < 0) throw std::invalid_argument("negative Pochhammer length");
  QSeries s = s_in;
  auto d = s.denominator();
  for (std::int64_t k = 0; !n || k < *n; ++k) {
    auto idx = factor_index(a, k, step, d);
    if (idx > 0 && (s.is_zero() || idx > s.cutoff() - s.offset())) {
      // This factor (and for a positive step every later one) is 1 up to the cutoff.
      if (step > 0) break;
      continue;
    }
    s = s.over_binomial(a.sign, idx);
  }
  return s;
}

QSeries inverse_pochhammer(const QPower& a, ProductLength n, const Grid& grid, Rational step) {
  if (grid.is_exact()) throw std::invalid_argument("inverse Pochhammer product needs a finite cutoff");
  return divide_pochhammer(QSeries::one(grid), a, n, step);
}

QSeries gaussian(std::int64_t a, std::int64_t b, const Grid& grid) {
  if (b < 0 || b > a) return QSeries::zero(grid);
  auto d = grid.denominator;
  b = std::min(b, a - b);
  auto degree = b * (a - b);
  auto limit = grid.is_exact() ? degree : std::min(degree, grid.cutoff >= 0 ? grid.cutoff / d : -1);
  if (limit < 0) return QSeries::zero(grid);

  std::vector<Integer> c(static_cast<std::size_t>(limit + 1));
  c[0] = 1;
  for (std::int64_t i = 1; i <= b; ++i) {
    auto up = a - b + i;
    for (auto idx = limit; idx >= up; --idx) c[static_cast<std::size_t>(idx)] -= c[static_cast<std::size_t>(idx - up)];
    for (auto idx = i; idx <= limit; ++idx) c[static_cast<std::size_t>(idx)] += c[static_cast<std::size_t>(idx - i)];
  }
  std::vector<Integer> spread(static_cast<std::size_t>(limit * d + 1));
  for (std::int64_t i = 0; i <= limit; ++i) spread[static_cast<std::size_t>(i * d)].swap(c[static_cast<std::size_t>(i)]);
  return QSeries::from_coefficients(d, 0, std::move(spread), grid.cutoff);
}

std::optional<std::pair<std::int64_t, std::int64_t>> quadratic_window(std::int64_t a, std::int64_t b,
                                                                      std::int64_t c,
                                                                      std::int64_t limit) {
  if (a <= 0) throw std::invalid_argument("quadratic_window needs a positive leading coefficient");
  auto f = [&](std::int64_t j) -> __int128 {
    return static_cast<__int128>(a) * j * j + static_cast<__int128>(b) * j + c;
  };
  auto vertex = static_cast<std::int64_t>(std::floor(-static_cast<long double>(b) / (2.0L * a)));
  auto best = f(vertex) <= f(vertex + 1) ? vertex : vertex + 1;
  if (f(best) > limit) return std::nullopt;
  long double disc = static_cast<long double>(b) * b - 4.0L * a * (static_cast<long double>(c) - limit);
  long double root = std::sqrt(std::max(disc, 0.0L));
  auto hi = static_cast<std::int64_t>(std::floor((-b + root) / (2.0L * a)));
  auto lo = static_cast<std::int64_t>(std::ceil((-b - root) / (2.0L * a)));
  hi = std::max(hi, best);
  lo = std::min(lo, best);
  while (f(hi + 1) <= limit) ++hi;
  while (f(hi) > limit) --hi;
  while (f(lo - 1) <= limit) --lo;
  while (f(lo) > limit) ++lo;
  return std::make_pair(lo, hi);
}

TripleProduct triple_product(std::int64_t r, std::int64_t s, const Grid& grid) {
  if (s < 1) throw std::invalid_argument("triple_product needs s >= 1");
  auto d = grid.denominator;
  TripleProduct out{QSeries::zero(grid), QSeries::zero(grid)};

  // 2 * exponent = s j^2 + (2r - s) j.
  auto top = grid.cutoff >= 0 ? grid.cutoff / d : -((-grid.cutoff + d - 1) / d);
  if (auto window = quadratic_window(s, 2 * r - s, 0, 2 * top)) {
    for (auto j = window->first; j <= window->second; ++j) {
      auto e = s * j * (j - 1) / 2 + r * j;
      out.sum_form += QSeries::monomial(grid, e * d, (j % 2 == 0) ? 1 : -1);
    }
  }

  auto rr = ((r % s) + s) % s;
  if (rr == 0) return out;  // a factor (1 - q^0) kills the product
  Rational step(s);
  QPower x = QPower::q(r), y = QPower::q(s - r), z = QPower::q(s);
  auto ox = pochhammer_order(x, kInfinite, d, step);
  auto oy = pochhammer_order(y, kInfinite, d, step);
  auto px = pochhammer(x, kInfinite, grid.with_cutoff(grid.cutoff - oy), step);
  auto py = pochhammer(y, kInfinite, grid.with_cutoff(grid.cutoff - ox), step);
  auto pz = pochhammer(z, kInfinite, grid.with_cutoff(grid.cutoff - ox - oy), step);
  out.product_form = (px * py * pz).truncated(grid.cutoff);
  return out;
}

}  // namespace qbailey
