#pragma once

// Independent reference computations for the test suites. Nothing here calls
// the Freudenthal, Racah-Speiser, Klimyk or torus-quadrature code paths.

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <set>
#include <vector>

#include "lieint/exact.hpp"
#include "lieint/rootsys.hpp"

namespace oracle {

using lieint::BigInt;
using lieint::IntVector;

inline BigInt binomial(int n, int k) {
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline BigInt catalan(int m) { return binomial(2 * m, m) / (m + 1); }

/// dim [V_s^{(x) n}]^{SU(2)} by iterated Clebsch-Gordan on twice-spins:
/// j (x) s = |j - s|, |j - s| + 2, ..., j + s.
inline BigInt su2_invariants(int two_spin, int n) {
  std::map<int, BigInt> state{{0, 1}};
  for (int k = 0; k < n; ++k) {
    std::map<int, BigInt> next;
    for (const auto& [j, c] : state)
      for (int t = std::abs(j - two_spin); t <= j + two_spin; t += 2) next[t] += c;
    state = std::move(next);
  }
  return state.count(0) ? state[0] : BigInt(0);
}

/// int_{SU(2)} |Tr g|^{2n} dg = (2/pi) int_0^pi (2 cos t)^{2n} sin^2 t dt.
/// The integrand is a trigonometric polynomial of degree 2n + 2 in t, so the
/// periodic trapezoid rule with more than 2n + 2 points over [0, 2 pi) is exact.
inline long double su2_abs_trace_moment(int n) {
  const int m = 2 * n + 8;
  long double s = 0;
  for (int i = 0; i < m; ++i) {
    const long double t = 2.0L * std::numbers::pi_v<long double> * i / m;
    const long double c = 2.0L * std::cos(t);
    const long double sn = std::sin(t);
    s += std::pow(c, 2 * n) * sn * sn;
  }
  // mean over [0, 2 pi) of the even integrand equals its mean over [0, pi)
  return 2.0L * s / m;
}

/// Weight multiplicities from the Weyl character formula, by formal division
/// of the alternant A_{lam+rho} by prod_{alpha>0} (e^{alpha/2} - e^{-alpha/2}).
inline std::map<IntVector, BigInt> weyl_character(const lieint::RootSystem& rs, const IntVector& lam) {
  const std::size_t r = rs.rank();
  // Alternant: orbit of lam + rho with the parity of the reflection word.
  IntVector top = lam;
  for (auto& x : top) x += 1;
  std::map<IntVector, int> orbit{{top, 1}};
  std::vector<IntVector> queue{top};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    for (std::size_t i = 0; i < r; ++i) {
      IntVector next = queue[k];
      const std::int64_t c = next[i];
      for (std::size_t j = 0; j < r; ++j) next[j] -= c * rs.cartan()(i, j);
      if (orbit.emplace(next, -orbit[queue[k]]).second) queue.push_back(next);
    }
  }
  // e^{-rho} A_{lam+rho}
  std::map<IntVector, BigInt> poly;
  for (const auto& [mu, s] : orbit) {
    IntVector v = mu;
    for (auto& x : v) x -= 1;
    poly[v] += s;
  }
  // Divide by (1 - e^{-alpha}) for each positive root: Q(mu) = sum_{k>=0} P(mu + k alpha).
  for (const auto& alpha : rs.positive_roots()) {
    std::map<IntVector, BigInt> q;
    std::set<IntVector> candidates;
    for (const auto& [mu, c] : poly) {
      IntVector v = mu;
      for (int k = 0; k < 64; ++k) {
        candidates.insert(v);
        for (std::size_t j = 0; j < r; ++j) v[j] -= alpha[j];
      }
    }
    for (const auto& mu : candidates) {
      BigInt s = 0;
      IntVector v = mu;
      for (int k = 0; k < 128; ++k) {
        auto it = poly.find(v);
        if (it != poly.end()) s += it->second;
        for (std::size_t j = 0; j < r; ++j) v[j] += alpha[j];
      }
      if (s != 0) q[mu] = s;
    }
    poly = std::move(q);
  }
  return poly;
}

/// All cycle types (exponent vectors) of permutations of k points.
inline std::vector<std::vector<std::int64_t>> cycle_types(int k) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> exps(static_cast<std::size_t>(k), 0);
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.push_back(exps);
      return;
    }
    for (int j = std::min(remaining, max_part); j >= 1; --j) {
      ++exps[static_cast<std::size_t>(j - 1)];
      self(self, remaining - j, j);
      --exps[static_cast<std::size_t>(j - 1)];
    }
  };
  rec(rec, k, k);
  return out;
}

}  // namespace oracle
