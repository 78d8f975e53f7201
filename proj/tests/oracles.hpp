#pragma once

// Reference computations that share no code with the library: plain int64
// power series, partition counting and brute-force lattice scans.

#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "qbailey/series.hpp"

namespace oracle {

using Poly = std::vector<std::int64_t>;  // coefficient of q^i at index i

inline Poly mul(const Poly& a, const Poly& b, std::size_t T) {
  Poly c(T + 1, 0);
  for (std::size_t i = 0; i < a.size() && i <= T; ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= T; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

// prod_{k in factors} (1 - q^k), expanded term by term.
inline Poly product_of_binomials(const std::vector<std::size_t>& factors, std::size_t T) {
  Poly p(T + 1, 0);
  p[0] = 1;
  for (auto k : factors) {
    Poly f(T + 1, 0);
    f[0] = 1;
    if (k <= T) f[k] = -1;
    p = mul(p, f, T);
  }
  return p;
}

// p(n) for n <= T by the standard coin DP.
inline Poly partition_counts(std::size_t T) {
  Poly p(T + 1, 0);
  p[0] = 1;
  for (std::size_t part = 1; part <= T; ++part) {
    for (std::size_t n = part; n <= T; ++n) p[n] += p[n - part];
  }
  return p;
}

// Partitions into parts whose residue mod m lies in `residues`.
inline Poly restricted_partitions(std::size_t T, std::size_t m, const std::set<std::size_t>& residues) {
  Poly p(T + 1, 0);
  p[0] = 1;
  for (std::size_t part = 1; part <= T; ++part) {
    if (!residues.count(part % m)) continue;
    for (std::size_t n = part; n <= T; ++n) p[n] += p[n - part];
  }
  return p;
}

// sum_j (-1)^j q^{j(3j-1)/2} over j in Z.
inline Poly pentagonal(std::size_t T) {
  Poly p(T + 1, 0);
  for (std::int64_t j = -static_cast<std::int64_t>(T); j <= static_cast<std::int64_t>(T); ++j) {
    auto e = j * (3 * j - 1) / 2;
    if (e >= 0 && e <= static_cast<std::int64_t>(T)) p[static_cast<std::size_t>(e)] += (j % 2 == 0) ? 1 : -1;
  }
  return p;
}

// Partitions fitting in a b x (a-b) box: the coefficients of [a, b].
inline Poly box_partitions(std::int64_t a, std::int64_t b) {
  if (b < 0 || b > a) return {};
  auto rows = b, width = a - b;
  auto deg = static_cast<std::size_t>(rows * width);
  // ways[r][w][n]: partitions of n into at most r parts each <= w.
  std::vector<std::vector<Poly>> ways(static_cast<std::size_t>(rows + 1),
                                      std::vector<Poly>(static_cast<std::size_t>(width + 1)));
  for (std::int64_t r = 0; r <= rows; ++r) {
    for (std::int64_t w = 0; w <= width; ++w) {
      Poly p(deg + 1, 0);
      if (r == 0 || w == 0) {
        p[0] = 1;
      } else {
        // Either no part equals w, or remove one part of size w.
        const auto& keep = ways[static_cast<std::size_t>(r)][static_cast<std::size_t>(w - 1)];
        const auto& drop = ways[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(w)];
        for (std::size_t n = 0; n <= deg; ++n) {
          p[n] = keep[n];
          if (n >= static_cast<std::size_t>(w)) p[n] += drop[n - static_cast<std::size_t>(w)];
        }
      }
      ways[static_cast<std::size_t>(r)][static_cast<std::size_t>(w)] = std::move(p);
    }
  }
  return ways[static_cast<std::size_t>(rows)][static_cast<std::size_t>(width)];
}

inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  std::int64_t c = 1;
  for (std::int64_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

// N * Cinv[j][k] for A_{N-1}, 1-based, from the closed form min(j,k) - jk/N.
inline std::int64_t scaled_cinv(std::int64_t N, std::int64_t j, std::int64_t k) {
  return N * std::min(j, k) - j * k;
}

struct BoxSolution {
  std::vector<std::int64_t> n;
  std::vector<std::int64_t> m;
  bool operator<(const BoxSolution& o) const { return n < o.n; }
  bool operator==(const BoxSolution& o) const = default;
};

// Scan every n in [0, side]^{N-1}; keep those with L/N - (Cinv n)_1 integral
// and m = Cinv(b - 2n) integral and nonnegative (b as in the linear systems).
inline std::vector<BoxSolution> box_scan(std::int64_t N, std::int64_t L, std::int64_t ell, bool em,
                                         std::int64_t M, std::int64_t side) {
  auto r = N - 1;
  std::vector<std::int64_t> b(static_cast<std::size_t>(r), 0);
  if (r > 0) {
    if (ell >= 1 && ell <= r) b[static_cast<std::size_t>(ell - 1)] += 1;
    if (em) {
      b[0] += M - L;
      b[static_cast<std::size_t>(r - 1)] += M + L + ell;
    } else {
      b[static_cast<std::size_t>(r - 1)] += 2 * L + ell;
    }
  }
  std::vector<BoxSolution> out;
  std::vector<std::int64_t> n(static_cast<std::size_t>(r), 0);
  while (true) {
    // L - N (Cinv n)_1 divisible by N.
    std::int64_t first = 0;
    for (std::int64_t k = 1; k <= r; ++k) first += scaled_cinv(N, 1, k) * n[static_cast<std::size_t>(k - 1)];
    bool ok = ((L - first) % N) == 0;
    std::vector<std::int64_t> m(static_cast<std::size_t>(r), 0);
    for (std::int64_t j = 1; ok && j <= r; ++j) {
      std::int64_t s = 0;
      for (std::int64_t k = 1; k <= r; ++k) {
        s += scaled_cinv(N, j, k) * (b[static_cast<std::size_t>(k - 1)] - 2 * n[static_cast<std::size_t>(k - 1)]);
      }
      if (s % N != 0 || s < 0) ok = false;
      else m[static_cast<std::size_t>(j - 1)] = s / N;
    }
    if (ok) out.push_back({n, m});
    std::size_t i = 0;
    while (i < n.size() && n[i] == side) n[i++] = 0;
    if (i == n.size()) break;
    ++n[i];
  }
  return out;
}

// Integer coefficients of q^0..q^T of a library series (on any grid).
inline Poly coefficients(const qbailey::QSeries& s, std::size_t T) {
  Poly p(T + 1, 0);
  for (std::size_t i = 0; i <= T; ++i) {
    p[i] = s.coefficient(qbailey::Rational(static_cast<std::int64_t>(i))).get_si();
  }
  return p;
}

inline qbailey::QSeries to_series(const Poly& p, std::int64_t D, std::int64_t T) {
  std::vector<qbailey::Integer> c;
  for (std::size_t i = 0; i < p.size() && static_cast<std::int64_t>(i) <= T; ++i) {
    c.push_back(p[i]);
    if (static_cast<std::int64_t>(i) < T) {
      for (std::int64_t pad = 1; pad < D; ++pad) c.push_back(0);
    }
  }
  return qbailey::QSeries::from_coefficients(D, 0, std::move(c), T * D);
}

}  // namespace oracle
