#pragma once

// Weight systems of irreducible representations: Freudenthal multiplicities,
// Weyl dimensions, regularity, and the weight covariance form A_lambda.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "lieint/errors.hpp"
#include "lieint/exact.hpp"
#include "lieint/rootsys.hpp"

namespace lieint {

/// Finite multiset of integral weights with signed integer multiplicities.
/// Also holds virtual characters; zero entries are never stored.
class WeightSystem {
 public:
  using Map = std::map<IntVector, BigInt>;

  WeightSystem() = default;
  explicit WeightSystem(std::size_t rank, bool is_virtual = false) : rank_(rank), virtual_(is_virtual) {}

  /// The trivial character {0: 1}.
  static WeightSystem unit(std::size_t rank) {
    WeightSystem ws(rank);
    ws.add(IntVector(rank, 0), 1);
    return ws;
  }

  std::size_t rank() const { return rank_; }
  bool is_virtual() const { return virtual_; }
  void set_virtual(bool v) { virtual_ = v; }

  const Map& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  void add(const IntVector& mu, const BigInt& m) {
    if (mu.size() != rank_) throw InternalError("weight of wrong rank added to weight system");
    if (m == 0) return;
    auto [it, inserted] = entries_.try_emplace(mu, m);
    if (!inserted) it->second += m;
    if (it->second < 0) virtual_ = true;
    if (it->second == 0) entries_.erase(it);
  }

  BigInt multiplicity(const IntVector& mu) const {
    auto it = entries_.find(mu);
    return it == entries_.end() ? BigInt(0) : it->second;
  }

  /// Sum of multiplicities (the dimension for a genuine character).
  BigInt total() const {
    BigInt s = 0;
    for (const auto& [mu, m] : entries_) s += m;
    return s;
  }

  /// Sum of m(mu) * mu.
  std::vector<BigInt> first_moment() const {
    std::vector<BigInt> s(rank_, 0);
    for (const auto& [mu, m] : entries_)
      for (std::size_t i = 0; i < rank_; ++i) s[i] += m * mu[i];
    return s;
  }

  /// Per-axis maximum of |mu_i| over the support.
  IntVector max_abs_coords() const {
    IntVector b(rank_, 0);
    for (const auto& [mu, m] : entries_)
      for (std::size_t i = 0; i < rank_; ++i) b[i] = std::max(b[i], mu[i] < 0 ? -mu[i] : mu[i]);
    return b;
  }

  friend bool operator==(const WeightSystem& a, const WeightSystem& b) {
    return a.rank_ == b.rank_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t rank_ = 0;
  bool virtual_ = false;
  Map entries_;
};

/// Throws ConfigError unless lam is a dominant integral weight of rs.
inline IntVector require_dominant(const RootSystem& rs, const Weight& lam) {
  rs.check_rank(lam.rank());
  if (!lam.is_integral()) throw ConfigError("highest weight must be integral");
  IntVector v = lam.to_ints();
  if (std::any_of(v.begin(), v.end(), [](std::int64_t x) { return x < 0; }))
    throw ConfigError("highest weight must be dominant (nonnegative coordinates)");
  return v;
}

/// prod over positive roots of <lam + rho, alpha^vee> / <rho, alpha^vee>.
inline BigInt weyl_dimension(const RootSystem& rs, const Weight& lam) {
  const IntVector l = require_dominant(rs, lam);
  BigInt num = 1, den = 1;
  for (const auto& cor : rs.positive_coroots()) {
    std::int64_t a = 0, b = 0;
    for (std::size_t i = 0; i < l.size(); ++i) {
      a += (l[i] + 1) * cor[i];
      b += cor[i];
    }
    num *= a;
    den *= b;
  }
  if (num % den != 0) throw InternalError("Weyl dimension is not an integer");
  return num / den;
}

inline bool is_regular(const RootSystem& rs, const Weight& lam) {
  const IntVector l = require_dominant(rs, lam);
  return std::all_of(l.begin(), l.end(), [](std::int64_t x) { return x >= 1; });
}

namespace detail {

// Integer multiple of the W-invariant form on weight coordinates.
struct ScaledForm {
  Matrix<std::int64_t> gram;

  explicit ScaledForm(const RootSystem& rs) : gram(rs.rank(), rs.rank()) {
    const auto& g = rs.weight_gram();
    BigInt l = 1;
    for (std::size_t i = 0; i < g.rows(); ++i)
      for (std::size_t j = 0; j < g.cols(); ++j) l = boost::multiprecision::lcm(l, denominator(g(i, j)));
    for (std::size_t i = 0; i < g.rows(); ++i)
      for (std::size_t j = 0; j < g.cols(); ++j) gram(i, j) = to_int64(g(i, j) * Rational(l));
  }

  std::int64_t operator()(const IntVector& a, const IntVector& b) const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * gram(i, j) * b[j];
    }
    return s;
  }
};

inline IntVector plus(IntVector a, const IntVector& b, std::int64_t k = 1) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += k * b[i];
  return a;
}

}  // namespace detail

/// Dominant weights of V_lam with multiplicities (Freudenthal's recursion).
inline std::map<IntVector, BigInt> dominant_multiplicities(const RootSystem& rs, const Weight& lam) {
  const IntVector top = require_dominant(rs, lam);
  const auto& roots = rs.positive_roots();
  const auto& coeffs = rs.positive_root_coefficients();

  // Dominant weights below lam, reached by subtracting positive roots while
  // staying dominant; depth = height of lam - mu.
  std::map<IntVector, std::int64_t> depth{{top, 0}};
  std::vector<IntVector> frontier{top};
  while (!frontier.empty()) {
    std::vector<IntVector> next;
    for (const auto& mu : frontier) {
      for (std::size_t r = 0; r < roots.size(); ++r) {
        IntVector nu = detail::plus(mu, roots[r], -1);
        if (std::any_of(nu.begin(), nu.end(), [](std::int64_t x) { return x < 0; })) continue;
        std::int64_t h = 0;
        for (auto c : coeffs[r]) h += c;
        if (depth.try_emplace(nu, depth[mu] + h).second) next.push_back(std::move(nu));
      }
    }
    frontier = std::move(next);
  }

  std::vector<IntVector> order;
  for (const auto& [mu, d] : depth) order.push_back(mu);
  std::stable_sort(order.begin(), order.end(), [&](const IntVector& a, const IntVector& b) { return depth[a] < depth[b]; });

  const detail::ScaledForm form(rs);
  const IntVector rho = rs.rho();
  const IntVector top_rho = detail::plus(top, rho);
  const std::int64_t top_norm = form(top_rho, top_rho);

  std::map<IntVector, BigInt> mult;
  mult[top] = 1;
  for (std::size_t k = 1; k < order.size(); ++k) {
    const IntVector& mu = order[k];
    BigInt acc = 0;
    for (const auto& alpha : roots) {
      IntVector nu = mu;
      for (;;) {
        nu = detail::plus(nu, alpha);
        const auto dom = rs.to_dominant(nu);
        auto it = mult.find(dom.weight);
        if (it == mult.end()) break;
        acc += it->second * form(nu, alpha);
      }
    }
    const IntVector mu_rho = detail::plus(mu, rho);
    const std::int64_t denom = top_norm - form(mu_rho, mu_rho);
    if (denom <= 0) throw InternalError("Freudenthal denominator is not positive");
    acc *= 2;
    if (acc % denom != 0) throw InternalError("Freudenthal recursion produced a non-integer multiplicity");
    BigInt m = acc / denom;
    if (m != 0) mult[mu] = m;
  }
  return mult;
}

/// Complete weight system of V_lam: Freudenthal on the dominant chamber,
/// then Weyl-orbit completion.
inline WeightSystem compute_weight_system(const RootSystem& rs, const Weight& lam) {
  WeightSystem ws(rs.rank());
  for (const auto& [mu, m] : dominant_multiplicities(rs, lam))
    for (const auto& nu : rs.weyl_orbit(mu)) ws.add(nu, m);
  return ws;
}

/// Process-wide memo of weight systems keyed by (group name, highest weight).
/// Lookups take a shared lock; population is serialized.
class WeightSystemCache {
 public:
  static WeightSystemCache& instance() {
    static WeightSystemCache cache;
    return cache;
  }

  std::shared_ptr<const WeightSystem> get(const RootSystem& rs, const Weight& lam) {
    Key key{rs.name(), require_dominant(rs, lam)};
    {
      std::shared_lock lock(mutex_);
      if (auto it = map_.find(key); it != map_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    if (auto it = map_.find(key); it != map_.end()) return it->second;
    auto ws = std::make_shared<const WeightSystem>(compute_weight_system(rs, lam));
    map_.emplace(std::move(key), ws);
    return ws;
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return map_.size();
  }

  void clear() {
    std::unique_lock lock(mutex_);
    map_.clear();
  }

 private:
  using Key = std::pair<std::string, IntVector>;
  mutable std::shared_mutex mutex_;
  std::map<Key, std::shared_ptr<const WeightSystem>> map_;
};

inline const WeightSystem& weight_system(const RootSystem& rs, const Weight& lam) {
  // Entries are never evicted except by an explicit clear(); callers that
  // clear the cache must not hold references across the call.
  return *WeightSystemCache::instance().get(rs, lam);
}

/// A_lambda = (1/dim) sum m(mu) mu (x) mu, as a matrix t -> t* in the dual bases.
class ALambda {
 public:
  explicit ALambda(RationalMatrix m) : matrix_(std::move(m)) {}

  const RationalMatrix& matrix() const { return matrix_; }
  Rational determinant() const { return lieint::determinant(matrix_); }
  bool is_positive_definite() const { return lieint::is_positive_definite(matrix_); }

  /// Solves A x = mu for x in t.
  Covector solve(const Weight& mu) const { return Covector(lieint::solve(matrix_, mu.coords)); }

 private:
  RationalMatrix matrix_;
};

inline ALambda a_lambda(const RootSystem& rs, const Weight& lam) {
  const WeightSystem& ws = weight_system(rs, lam);
  const std::size_t r = rs.rank();
  Matrix<BigInt> acc(r, r);
  for (const auto& [mu, m] : ws.entries())
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) acc(i, j) += m * mu[i] * mu[j];
  const BigInt dim = ws.total();
  RationalMatrix a(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) a(i, j) = Rational(acc(i, j), dim);
  ALambda out(std::move(a));
  if (is_regular(rs, lam) && !out.is_positive_definite())
    throw InternalError("A_lambda is not positive definite for a regular highest weight");
  return out;
}

}  // namespace lieint
