#pragma once

// Basic q-objects: Pochhammer symbols, Gaussian polynomials and the two
// forms of Jacobi's triple product.

#include <cstdint>
#include <optional>
#include <utility>

#include "qbailey/series.hpp"

namespace qbailey {

// Length of a Pochhammer symbol; nullopt is the infinite product.
using ProductLength = std::optional<std::int64_t>;
inline constexpr ProductLength kInfinite = std::nullopt;

// (a; q^step)_n = (1 - a)(1 - a q^step)...(1 - a q^{(n-1) step}).
//
// Finite products are exact when grid.cutoff is kExact. The infinite product
// keeps only the factors that can reach the cutoff and requires step > 0; it
// throws when a factor is identically zero (a = q^0 or any a q^{k step} = 1).
QSeries pochhammer(const QPower& a, ProductLength n, const Grid& grid, Rational step = 1);

// s / (a; q^step)_n, computed factor by factor in O(n * length(s)). The
// result keeps the cutoff of s, which must be finite.
QSeries divide_pochhammer(const QSeries& s, const QPower& a, ProductLength n, Rational step = 1);

// 1 / (a; q^step)_n truncated at grid.cutoff.
QSeries inverse_pochhammer(const QPower& a, ProductLength n, const Grid& grid, Rational step = 1);

// The Gaussian polynomial [A, B] = (q)_A / ((q)_B (q)_{A-B}); zero unless
// 0 <= B <= A. Exact when grid.cutoff is kExact, else truncated.
QSeries gaussian(std::int64_t a, std::int64_t b, const Grid& grid);

struct TripleProduct {
  QSeries sum_form;
  QSeries product_form;
};

// sum_j (-1)^j q^{s j(j-1)/2 + r j} and (q^r; q^s)(q^{s-r}; q^s)(q^s; q^s),
// both truncated at grid.cutoff.
TripleProduct triple_product(std::int64_t r, std::int64_t s, const Grid& grid);

// Closed integer interval [lo, hi] of j with a j^2 + b j + c <= limit for
// a > 0, or nullopt when empty. Exact in 128-bit arithmetic.
std::optional<std::pair<std::int64_t, std::int64_t>> quadratic_window(std::int64_t a, std::int64_t b,
                                                                      std::int64_t c,
                                                                      std::int64_t limit);

}  // namespace qbailey
