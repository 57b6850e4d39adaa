#pragma once

// Exact evaluation of trace-moment integrals in the character ring.
//
// A moment  int prod_j Tr(g^j)^{a_j} conj(Tr(g^j))^{b_j} dg  is the trivial
// multiplicity of the virtual character prod_j psi^j(chi)^{a_j} psi^j(chi*)^{b_j},
// where psi^j is the j-th Adams operation (dilation of weights by j).

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "lieint/errors.hpp"
#include "lieint/exact.hpp"
#include "lieint/repweights.hpp"
#include "lieint/rootsys.hpp"

namespace lieint {

/// Exponent vector (alpha_1, ..., alpha_r) of a permutation cycle type:
/// alpha_j counts cycles of length j.
class CycleType {
 public:
  CycleType() = default;
  CycleType(std::initializer_list<std::int64_t> exps) : CycleType(std::vector<std::int64_t>(exps)) {}
  explicit CycleType(std::vector<std::int64_t> exps) : exps_(std::move(exps)) {
    for (auto e : exps_)
      if (e < 0) throw ConfigError("cycle type exponents must be nonnegative");
    while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
  }

  /// Parses "2", "0,1", "" (empty = no cycles).
  static CycleType parse(const std::string& text) {
    std::vector<std::int64_t> exps;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char c) { return std::isspace(c); }), tok.end());
      if (tok.empty()) {
        if (text.find_first_not_of(" \t") == std::string::npos) break;
        throw ConfigError("empty entry in cycle type '" + text + "'");
      }
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        throw ConfigError("malformed cycle type '" + text + "'");
      }
      if (used != tok.size()) throw ConfigError("malformed cycle type '" + text + "'");
      exps.push_back(v);
    }
    return CycleType(std::move(exps));
  }

  const std::vector<std::int64_t>& exps() const { return exps_; }
  /// Length of the exponent vector after trimming trailing zeros.
  std::size_t max_cycle() const { return exps_.size(); }
  std::int64_t operator[](std::size_t j) const { return j >= 1 && j <= exps_.size() ? exps_[j - 1] : 0; }
  bool empty() const { return exps_.empty(); }

  /// |alpha| = sum alpha_j
  std::int64_t size() const { return std::accumulate(exps_.begin(), exps_.end(), std::int64_t{0}); }
  /// k_alpha = sum j alpha_j
  std::int64_t weight() const {
    std::int64_t k = 0;
    for (std::size_t j = 0; j < exps_.size(); ++j) k += static_cast<std::int64_t>(j + 1) * exps_[j];
    return k;
  }
  /// l_alpha = sum j^2 alpha_j
  std::int64_t quad() const {
    std::int64_t l = 0;
    for (std::size_t j = 0; j < exps_.size(); ++j) {
      const auto jj = static_cast<std::int64_t>(j + 1);
      l += jj * jj * exps_[j];
    }
    return l;
  }
  /// gcd{j : alpha_j != 0}, 0 when there are no cycles.
  std::int64_t gcd_support() const {
    std::int64_t g = 0;
    for (std::size_t j = 0; j < exps_.size(); ++j)
      if (exps_[j] != 0) g = std::gcd(g, static_cast<std::int64_t>(j + 1));
    return g;
  }

  /// Every exponent multiplied by n (the cycle type of the N-th scaled moment).
  CycleType scaled(std::int64_t n) const {
    std::vector<std::int64_t> e = exps_;
    for (auto& x : e) x *= n;
    return CycleType(std::move(e));
  }

  std::string str() const {
    std::string s;
    for (std::size_t j = 0; j < exps_.size(); ++j) {
      if (j) s += ",";
      s += std::to_string(exps_[j]);
    }
    return s;
  }

  friend bool operator==(const CycleType&, const CycleType&) = default;

 private:
  std::vector<std::int64_t> exps_;
};

/// Support-size cap for convolutions.
struct ConvolutionLimits {
  std::size_t max_support = 10'000'000;
};

/// psi^j: every weight dilated by j.
inline WeightSystem adams(const WeightSystem& ws, std::int64_t j) {
  if (j < 1) throw ConfigError("Adams operation needs j >= 1");
  WeightSystem out(ws.rank(), ws.is_virtual() || j > 1);
  for (const auto& [mu, m] : ws.entries()) {
    IntVector nu = mu;
    for (auto& x : nu) x *= j;
    out.add(nu, m);
  }
  return out;
}

inline WeightSystem dual(const WeightSystem& ws) {
  WeightSystem out(ws.rank(), ws.is_virtual());
  for (const auto& [mu, m] : ws.entries()) {
    IntVector nu = mu;
    for (auto& x : nu) x = -x;
    out.add(nu, m);
  }
  return out;
}

/// Character product = convolution of weight multisets.
inline WeightSystem product(const WeightSystem& a, const WeightSystem& b, const ConvolutionLimits& limits = {}) {
  if (a.rank() != b.rank()) throw ConfigError("product of weight systems of different rank");
  const WeightSystem& small = a.size() <= b.size() ? a : b;
  const WeightSystem& large = a.size() <= b.size() ? b : a;
  WeightSystem out(a.rank(), a.is_virtual() || b.is_virtual());
  IntVector nu(a.rank());
  for (const auto& [mu, m] : small.entries()) {
    for (const auto& [mu2, m2] : large.entries()) {
      for (std::size_t i = 0; i < nu.size(); ++i) nu[i] = mu[i] + mu2[i];
      out.add(nu, m * m2);
    }
    if (out.size() > limits.max_support) throw CapacityError("convolution exceeds the support cap");
  }
  return out;
}

/// Irreducible decomposition of a (possibly virtual) W-invariant weight
/// multiset by signed reflection of mu + rho into the dominant chamber.
inline std::map<IntVector, BigInt> racah_speiser(const RootSystem& rs, const WeightSystem& ws) {
  std::map<IntVector, BigInt> out;
  for (const auto& [mu, m] : ws.entries()) {
    IntVector shifted = mu;
    for (auto& x : shifted) x += 1;
    const auto dom = rs.to_dominant(std::move(shifted));
    if (dom.singular) continue;
    IntVector hw = dom.weight;
    for (auto& x : hw) x -= 1;
    auto& slot = out[hw];
    slot += dom.sign * m;
    if (slot == 0) out.erase(hw);
  }
  return out;
}

/// Multiplicity of the trivial representation (Racah-Speiser).
inline BigInt trivial_multiplicity(const RootSystem& rs, const WeightSystem& ws) {
  rs.check_rank(ws.rank());
  BigInt n = 0;
  for (const auto& [mu, m] : ws.entries()) {
    IntVector shifted = mu;
    for (auto& x : shifted) x += 1;
    const auto dom = rs.to_dominant(std::move(shifted));
    if (dom.singular) continue;
    if (std::all_of(dom.weight.begin(), dom.weight.end(), [](std::int64_t x) { return x == 1; })) n += dom.sign * m;
  }
  return n;
}

/// Independent decomposer: repeatedly peel off the irreducible whose highest
/// weight is the top of the remaining support (height measured by 2 rho^vee).
inline std::map<IntVector, BigInt> greedy_decompose(const RootSystem& rs, WeightSystem ws) {
  IntVector two_rho_vee(rs.rank(), 0);
  for (const auto& cor : rs.positive_coroots())
    for (std::size_t i = 0; i < cor.size(); ++i) two_rho_vee[i] += cor[i];
  auto height = [&](const IntVector& mu) {
    std::int64_t h = 0;
    for (std::size_t i = 0; i < mu.size(); ++i) h += mu[i] * two_rho_vee[i];
    return h;
  };
  std::map<IntVector, BigInt> out;
  while (!ws.empty()) {
    auto top = ws.entries().begin();
    for (auto it = ws.entries().begin(); it != ws.entries().end(); ++it)
      if (height(it->first) > height(top->first)) top = it;
    const IntVector hw = top->first;
    const BigInt c = top->second;
    if (std::any_of(hw.begin(), hw.end(), [](std::int64_t x) { return x < 0; }))
      throw InternalError("top weight of a W-invariant multiset is not dominant");
    out[hw] = c;
    for (const auto& [mu, m] : weight_system(rs, Weight::from_ints(hw)).entries()) ws.add(mu, -c * m);
  }
  return out;
}

/// Factor list of the moment's virtual character, smallest support first.
inline std::vector<WeightSystem> moment_factors(const WeightSystem& base, const CycleType& a, const CycleType& b) {
  std::vector<WeightSystem> factors;
  const WeightSystem base_dual = dual(base);
  for (std::size_t j = 1; j <= a.max_cycle(); ++j)
    for (std::int64_t n = 0; n < a[j]; ++n) factors.push_back(adams(base, static_cast<std::int64_t>(j)));
  for (std::size_t j = 1; j <= b.max_cycle(); ++j)
    for (std::int64_t n = 0; n < b[j]; ++n) factors.push_back(adams(base_dual, static_cast<std::int64_t>(j)));
  std::stable_sort(factors.begin(), factors.end(),
                   [](const WeightSystem& x, const WeightSystem& y) { return x.size() < y.size(); });
  return factors;
}

/// int prod_j Tr(g^j)^{a_j} conj(Tr(g^j))^{b_j} dg for V_lam, exactly.
inline BigInt exact_moment(const RootSystem& rs, const Weight& lam, const CycleType& a, const CycleType& b,
                           const ConvolutionLimits& limits = {}) {
  const WeightSystem& base = weight_system(rs, lam);
  WeightSystem acc = WeightSystem::unit(rs.rank());
  for (const auto& f : moment_factors(base, a, b)) acc = product(acc, f, limits);
  return trivial_multiplicity(rs, acc);
}

/// Tensor a dominant decomposition with a W-invariant weight multiset
/// (Brauer-Klimyk): V_nu (x) chi = sum_mu m(mu) sign(w) V_{w(nu+mu+rho)-rho}.
inline std::map<IntVector, BigInt> tensor_decomposition(const RootSystem& rs, const std::map<IntVector, BigInt>& dec,
                                                        const WeightSystem& ws) {
  std::map<IntVector, BigInt> out;
  IntVector shifted(rs.rank());
  for (const auto& [nu, c] : dec) {
    for (const auto& [mu, m] : ws.entries()) {
      for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] = nu[i] + mu[i] + 1;
      const auto dom = rs.to_dominant(shifted);
      if (dom.singular) continue;
      IntVector hw = dom.weight;
      for (auto& x : hw) x -= 1;
      auto it = out.try_emplace(std::move(hw), 0).first;
      it->second += dom.sign * c * m;
      if (it->second == 0) out.erase(it);
    }
  }
  return out;
}

/// dim [V_lam^{(x) N}]^G by iterated dominant-chamber tensor decomposition.
inline BigInt invariant_dimension(const RootSystem& rs, const Weight& lam, std::int64_t n) {
  if (n < 0) throw ConfigError("tensor power must be nonnegative");
  const WeightSystem& ws = weight_system(rs, lam);
  std::map<IntVector, BigInt> dec{{IntVector(rs.rank(), 0), BigInt(1)}};
  for (std::int64_t k = 0; k < n; ++k) dec = tensor_decomposition(rs, dec, ws);
  auto it = dec.find(IntVector(rs.rank(), 0));
  return it == dec.end() ? BigInt(0) : it->second;
}

/// Canonical permutation of a cycle type: cycles sorted by length, filled
/// left to right, each cycle p -> p+1 -> ... -> p. Returns s as an image table.
inline std::vector<std::size_t> canonical_permutation(const CycleType& s) {
  std::vector<std::size_t> perm;
  for (std::size_t j = 1; j <= s.max_cycle(); ++j)
    for (std::int64_t c = 0; c < s[j]; ++c) {
      const std::size_t start = perm.size();
      for (std::size_t t = 0; t < j; ++t) perm.push_back(start + (t + 1) % j);
    }
  return perm;
}

/// Tr(B^{(x)k} sigma_k(s)) by explicit summation over (C^d)^{(x)k}, where
/// sigma_k(s) sends (x) v_i to (x) v_{s^{-1}(i)}.
inline std::complex<double> permutation_trace_bruteforce(const Eigen::MatrixXcd& b, const CycleType& s,
                                                         std::size_t max_terms = 100000) {
  const std::size_t d = static_cast<std::size_t>(b.rows());
  if (b.rows() != b.cols()) throw ConfigError("permutation trace needs a square matrix");
  const std::vector<std::size_t> perm = canonical_permutation(s);
  const std::size_t k = perm.size();
  double terms = std::pow(static_cast<double>(d), static_cast<double>(k));
  if (terms > static_cast<double>(max_terms)) throw CapacityError("d^k exceeds the brute-force cap");
  std::vector<std::size_t> inv(k);
  for (std::size_t i = 0; i < k; ++i) inv[perm[i]] = i;

  std::vector<std::size_t> phi(k, 0);
  std::complex<double> total = 0;
  for (;;) {
    std::complex<double> term = 1;
    for (std::size_t i = 0; i < k; ++i) term *= b(static_cast<Eigen::Index>(phi[i]), static_cast<Eigen::Index>(phi[inv[i]]));
    total += term;
    std::size_t pos = 0;
    while (pos < k && ++phi[pos] == d) phi[pos++] = 0;
    if (pos == k) break;
  }
  return total;
}

/// prod_j Tr(B^j)^{a_j}.
inline std::complex<double> trace_power_product(const Eigen::MatrixXcd& b, const CycleType& s) {
  std::complex<double> out = 1;
  Eigen::MatrixXcd power = b;
  for (std::size_t j = 1; j <= s.max_cycle(); ++j) {
    if (j > 1) power = power * b;
    out *= std::pow(power.trace(), static_cast<int>(s[j]));
  }
  return out;
}

}  // namespace lieint
