#pragma once

// Root data for compact, simply connected, semisimple groups.
//
// Coordinates: the integral lattice I is the coroot lattice and its fixed
// Z-basis is the simple coroots. Covectors (elements of t) are written in
// that basis; weights (elements of t*) in the dual basis, i.e. in
// fundamental-weight coordinates. The two bases are dual, so the canonical
// pairing is the plain dot product. The Cartan matrix is stored as
// cartan(i, j) = <alpha_i, alpha_j^vee>, so row i is the simple root alpha_i
// in weight coordinates. Bourbaki numbering throughout.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lieint/errors.hpp"
#include "lieint/exact.hpp"

namespace lieint {

enum class SimpleType { A, B, C, D, E, F, G };

struct SimpleFactor {
  SimpleType type;
  int rank;

  friend bool operator==(const SimpleFactor&, const SimpleFactor&) = default;
};

/// Element of t*, in fundamental-weight coordinates.
struct Weight {
  RationalVector coords;

  Weight() = default;
  explicit Weight(RationalVector c) : coords(std::move(c)) {}
  static Weight from_ints(const IntVector& v) {
    RationalVector c;
    c.reserve(v.size());
    for (auto x : v) c.push_back(make_rational(x));
    return Weight(std::move(c));
  }

  std::size_t rank() const { return coords.size(); }
  bool is_integral() const {
    return std::all_of(coords.begin(), coords.end(), [](const Rational& q) { return is_integer(q); });
  }
  /// Integer coordinates; throws ConfigError when not integral.
  IntVector to_ints() const {
    IntVector v;
    v.reserve(coords.size());
    for (const auto& q : coords) {
      if (!is_integer(q)) throw ConfigError("weight is not integral");
      v.push_back(numerator(q).convert_to<std::int64_t>());
    }
    return v;
  }

  friend bool operator==(const Weight&, const Weight&) = default;
  friend bool operator<(const Weight& a, const Weight& b) { return a.coords < b.coords; }
};

/// Element of t, in simple-coroot coordinates.
struct Covector {
  RationalVector coords;

  Covector() = default;
  explicit Covector(RationalVector c) : coords(std::move(c)) {}
  static Covector from_ints(const IntVector& v) { return Covector(Weight::from_ints(v).coords); }

  std::size_t rank() const { return coords.size(); }
  bool is_integral() const {
    return std::all_of(coords.begin(), coords.end(), [](const Rational& q) { return is_integer(q); });
  }

  friend bool operator==(const Covector&, const Covector&) = default;
};

/// Pi(G) = Lambda / I with coset representatives psi_h reduced to [0,1)^rank.
struct FundamentalGroup {
  std::vector<Covector> elements;
  std::vector<std::int64_t> elementary_divisors;
  std::size_t identity = 0;

  std::size_t order() const { return elements.size(); }
};

namespace detail {

inline void set_link(IntMatrix& c, std::size_t i, std::size_t j, std::int64_t cij, std::int64_t cji) {
  c(i, j) = cij;
  c(j, i) = cji;
}

// Cartan matrix (row i = alpha_i in weight coordinates) and symmetrizer
// d_i = |alpha_i|^2 / 2 with long roots of squared length 2.
inline std::pair<IntMatrix, RationalVector> simple_cartan(const SimpleFactor& f) {
  const auto n = static_cast<std::size_t>(f.rank);
  IntMatrix c(n, n);
  RationalVector d(n, make_rational(1));
  for (std::size_t i = 0; i < n; ++i) c(i, i) = 2;
  switch (f.type) {
    case SimpleType::A:
      for (std::size_t i = 0; i + 1 < n; ++i) set_link(c, i, i + 1, -1, -1);
      break;
    case SimpleType::B:
      for (std::size_t i = 0; i + 2 < n; ++i) set_link(c, i, i + 1, -1, -1);
      set_link(c, n - 2, n - 1, -2, -1);
      d[n - 1] = make_rational(1, 2);
      break;
    case SimpleType::C:
      for (std::size_t i = 0; i + 2 < n; ++i) set_link(c, i, i + 1, -1, -1);
      set_link(c, n - 2, n - 1, -1, -2);
      for (std::size_t i = 0; i + 1 < n; ++i) d[i] = make_rational(1, 2);
      break;
    case SimpleType::D:
      for (std::size_t i = 0; i + 2 < n; ++i) set_link(c, i, i + 1, -1, -1);
      set_link(c, n - 3, n - 1, -1, -1);
      break;
    case SimpleType::E:
      // 1-3-4-5-6-7-8 with 2 attached to 4.
      set_link(c, 0, 2, -1, -1);
      set_link(c, 1, 3, -1, -1);
      for (std::size_t i = 2; i + 1 < n; ++i) set_link(c, i, i + 1, -1, -1);
      break;
    case SimpleType::F:
      set_link(c, 0, 1, -1, -1);
      set_link(c, 1, 2, -2, -1);
      set_link(c, 2, 3, -1, -1);
      d[2] = d[3] = make_rational(1, 2);
      break;
    case SimpleType::G:
      set_link(c, 0, 1, -1, -3);
      d[0] = make_rational(1, 3);
      break;
  }
  return {c, d};
}

inline BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt simple_weyl_order(const SimpleFactor& f) {
  switch (f.type) {
    case SimpleType::A: return factorial(f.rank + 1);
    case SimpleType::B:
    case SimpleType::C: return (BigInt(1) << f.rank) * factorial(f.rank);
    case SimpleType::D: return (BigInt(1) << (f.rank - 1)) * factorial(f.rank);
    case SimpleType::E:
      return f.rank == 6 ? BigInt(51840) : f.rank == 7 ? BigInt(2903040) : BigInt(696729600);
    case SimpleType::F: return 1152;
    case SimpleType::G: return 12;
  }
  return 1;
}

inline char type_letter(SimpleType t) { return "ABCDEFG"[static_cast<int>(t)]; }

}  // namespace detail

inline bool is_valid_factor(const SimpleFactor& f) {
  switch (f.type) {
    case SimpleType::A: return f.rank >= 1;
    case SimpleType::B: return f.rank >= 2;
    case SimpleType::C: return f.rank >= 3;
    case SimpleType::D: return f.rank >= 4;
    case SimpleType::E: return f.rank >= 6 && f.rank <= 8;
    case SimpleType::F: return f.rank == 4;
    case SimpleType::G: return f.rank == 2;
  }
  return false;
}

/// Parses "A2", "B3", "A1xA1", "a1,g2" (case-insensitive; 'x' or ',' between factors).
inline std::vector<SimpleFactor> parse_group(const std::string& text) {
  std::vector<SimpleFactor> out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) throw ConfigError("empty factor in group string '" + text + "'");
    const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(token[0])));
    if (letter < 'A' || letter > 'G') throw ConfigError("unknown simple type '" + token + "'");
    const std::string digits = token.substr(1);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
      throw ConfigError("malformed simple factor '" + token + "'");
    SimpleFactor f{static_cast<SimpleType>(letter - 'A'), std::stoi(digits)};
    if (!is_valid_factor(f)) throw ConfigError("invalid simple type/rank '" + token + "'");
    out.push_back(f);
    token.clear();
  };
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == 'x' || ch == 'X' || ch == ',' || ch == '*') {
      flush();
    } else {
      token.push_back(ch);
    }
  }
  flush();
  return out;
}

class RootSystem {
 public:
  explicit RootSystem(std::vector<SimpleFactor> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw ConfigError("root system needs at least one simple factor");
    for (const auto& f : factors_)
      if (!is_valid_factor(f))
        throw ConfigError(std::string("invalid simple type/rank ") + detail::type_letter(f.type) + std::to_string(f.rank));
    assemble();
  }

  static RootSystem parse(const std::string& text) { return RootSystem(parse_group(text)); }

  const std::vector<SimpleFactor>& factors() const { return factors_; }
  std::size_t rank() const { return rank_; }
  std::size_t num_positive_roots() const { return positive_roots_.size(); }
  std::size_t dim_g() const { return 2 * positive_roots_.size() + rank_; }

  /// cartan(i, j) = <alpha_i, alpha_j^vee>.
  const IntMatrix& cartan() const { return cartan_; }
  const RationalVector& symmetrizer() const { return symmetrizer_; }

  /// Positive roots in weight coordinates, sorted by height then lexicographically.
  const std::vector<IntVector>& positive_roots() const { return positive_roots_; }
  /// Matching simple-root coefficient vectors.
  const std::vector<IntVector>& positive_root_coefficients() const { return root_coefficients_; }
  /// Matching coroots in simple-coroot coordinates.
  const std::vector<IntVector>& positive_coroots() const { return positive_coroots_; }

  IntVector simple_root(std::size_t i) const { return cartan_.row(i); }
  /// rho = sum of fundamental weights.
  IntVector rho() const { return IntVector(rank_, 1); }

  /// W-invariant form on t* in weight coordinates: (omega_i, omega_j) = (C^{-1} D)_{ij}.
  const RationalMatrix& weight_gram() const { return weight_gram_; }

  BigInt weyl_group_order() const {
    BigInt n = 1;
    for (const auto& f : factors_) n *= detail::simple_weyl_order(f);
    return n;
  }

  std::string name() const {
    std::string s;
    for (const auto& f : factors_) {
      if (!s.empty()) s += "x";
      s += detail::type_letter(f.type);
      s += std::to_string(f.rank);
    }
    return s;
  }

  /// Simple reflection s_i(mu) = mu - <mu, alpha_i^vee> alpha_i on integral weights.
  void reflect(IntVector& mu, std::size_t i) const {
    const std::int64_t c = mu[i];
    if (c == 0) return;
    for (std::size_t j = 0; j < rank_; ++j) mu[j] -= c * cartan_(i, j);
  }

  void reflect(RationalVector& mu, std::size_t i) const {
    const Rational c = mu[i];
    if (c == 0) return;
    for (std::size_t j = 0; j < rank_; ++j) mu[j] -= c * cartan_(i, j);
  }

  /// Dual action on covectors: s_i(x) = x - <alpha_i, x> alpha_i^vee.
  void reflect_covector(RationalVector& x, std::size_t i) const {
    Rational c = 0;
    for (std::size_t j = 0; j < rank_; ++j) c += cartan_(i, j) * x[j];
    x[i] -= c;
  }

  struct Dominant {
    IntVector weight;
    int sign;          ///< sign of the Weyl element used
    bool singular;     ///< some coordinate of the result is zero
  };

  /// Moves an integral weight into the closed dominant chamber.
  Dominant to_dominant(IntVector mu) const {
    int sign = 1;
    for (;;) {
      std::size_t i = 0;
      while (i < rank_ && mu[i] >= 0) ++i;
      if (i == rank_) break;
      reflect(mu, i);
      sign = -sign;
    }
    const bool singular = std::any_of(mu.begin(), mu.end(), [](std::int64_t v) { return v == 0; });
    return {std::move(mu), sign, singular};
  }

  std::pair<Weight, int> to_dominant(const Weight& w) const {
    RationalVector mu = w.coords;
    int sign = 1;
    for (;;) {
      std::size_t i = 0;
      while (i < rank_ && mu[i] >= 0) ++i;
      if (i == rank_) break;
      reflect(mu, i);
      sign = -sign;
    }
    return {Weight(std::move(mu)), sign};
  }

  /// Full Weyl orbit by breadth-first traversal over simple reflections.
  std::set<Weight> weyl_orbit(const Weight& w) const {
    check_rank(w.rank());
    std::set<Weight> seen{w};
    std::deque<Weight> queue{w};
    while (!queue.empty()) {
      Weight cur = std::move(queue.front());
      queue.pop_front();
      for (std::size_t i = 0; i < rank_; ++i) {
        Weight next = cur;
        reflect(next.coords, i);
        if (seen.insert(next).second) queue.push_back(std::move(next));
      }
    }
    return seen;
  }

  /// Orbit of an integral weight; used by weight-system completion.
  std::vector<IntVector> weyl_orbit(const IntVector& mu) const {
    std::set<IntVector> seen{mu};
    std::vector<IntVector> out{mu};
    for (std::size_t k = 0; k < out.size(); ++k) {
      for (std::size_t i = 0; i < rank_; ++i) {
        if (out[k][i] == 0) continue;
        IntVector next = out[k];
        reflect(next, i);
        if (seen.insert(next).second) out.push_back(std::move(next));
      }
    }
    return out;
  }

  /// Coefficients c with mu = sum_i c_i alpha_i (rational in general).
  RationalVector root_coordinates(const Weight& mu) const {
    check_rank(mu.rank());
    return inverse_cartan_transpose_ * mu.coords;
  }

  bool in_root_lattice(const Weight& mu) const {
    const auto c = root_coordinates(mu);
    return std::all_of(c.begin(), c.end(), [](const Rational& q) { return is_integer(q); });
  }

  /// Smallest m >= 1 with m * mu in the root lattice.
  std::int64_t root_lattice_order(const Weight& mu) const {
    BigInt m = 1;
    for (const auto& q : root_coordinates(mu)) m = boost::multiprecision::lcm(m, denominator(q));
    return m.convert_to<std::int64_t>();
  }

  void check_rank(std::size_t n) const {
    if (n != rank_)
      throw ConfigError("expected " + std::to_string(rank_) + " coordinates for " + name() + ", got " + std::to_string(n));
  }

 private:
  void assemble();

  std::vector<SimpleFactor> factors_;
  std::size_t rank_ = 0;
  IntMatrix cartan_;
  RationalVector symmetrizer_;
  RationalMatrix weight_gram_;
  RationalMatrix inverse_cartan_transpose_;
  std::vector<IntVector> positive_roots_;
  std::vector<IntVector> root_coefficients_;
  std::vector<IntVector> positive_coroots_;
};

inline void RootSystem::assemble() {
  for (const auto& f : factors_) rank_ += static_cast<std::size_t>(f.rank);
  cartan_ = IntMatrix(rank_, rank_);
  symmetrizer_.assign(rank_, make_rational(1));
  std::size_t off = 0;
  for (const auto& f : factors_) {
    auto [c, d] = detail::simple_cartan(f);
    for (std::size_t i = 0; i < c.rows(); ++i) {
      symmetrizer_[off + i] = d[i];
      for (std::size_t j = 0; j < c.cols(); ++j) cartan_(off + i, off + j) = c(i, j);
    }
    off += c.rows();
  }

  const RationalMatrix cr = to_rational(cartan_);
  const RationalMatrix cinv = inverse(cr);
  weight_gram_ = RationalMatrix(rank_, rank_);
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j) weight_gram_(i, j) = cinv(i, j) * symmetrizer_[j];
  inverse_cartan_transpose_ = inverse(cr.transpose());

  // Positive roots by height: beta + alpha_i is a root iff p > 0, where
  // p - q = -<beta, alpha_i^vee> and q is the length of the downward string.
  std::map<IntVector, IntVector> by_coeff;  // coefficients -> weight coords
  std::vector<IntVector> order;
  for (std::size_t i = 0; i < rank_; ++i) {
    IntVector c(rank_, 0);
    c[i] = 1;
    by_coeff.emplace(c, cartan_.row(i));
    order.push_back(c);
  }
  for (std::size_t k = 0; k < order.size(); ++k) {
    const IntVector beta = order[k];
    const IntVector wt = by_coeff.at(beta);
    for (std::size_t i = 0; i < rank_; ++i) {
      std::int64_t q = 0;
      IntVector down = beta;
      for (;;) {
        if (down[i] == 0) break;
        --down[i];
        if (!by_coeff.count(down)) break;
        ++q;
      }
      const std::int64_t p = q - wt[i];
      if (p <= 0) continue;
      IntVector up = beta;
      ++up[i];
      if (by_coeff.count(up)) continue;
      IntVector upw = wt;
      for (std::size_t j = 0; j < rank_; ++j) upw[j] += cartan_(i, j);
      by_coeff.emplace(up, upw);
      order.push_back(up);
    }
  }

  std::sort(order.begin(), order.end(), [](const IntVector& a, const IntVector& b) {
    std::int64_t ha = 0, hb = 0;
    for (auto v : a) ha += v;
    for (auto v : b) hb += v;
    return ha != hb ? ha < hb : a < b;
  });

  for (const auto& c : order) {
    root_coefficients_.push_back(c);
    positive_roots_.push_back(by_coeff.at(c));
    // alpha^vee = sum_i c_i (|alpha_i|^2 / |alpha|^2) alpha_i^vee
    Rational norm = 0;
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = 0; j < rank_; ++j)
        norm += c[i] * c[j] * cartan_(i, j) * symmetrizer_[j];
    IntVector cor(rank_);
    for (std::size_t i = 0; i < rank_; ++i) cor[i] = to_int64(c[i] * 2 * symmetrizer_[i] / norm);
    positive_coroots_.push_back(cor);
  }
}

inline Rational pairing(const Weight& mu, const Covector& x) {
  if (mu.rank() != x.rank()) throw ConfigError("pairing: rank mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < mu.rank(); ++i) s += mu.coords[i] * x.coords[i];
  return s;
}

/// kappa(x) = prod over positive roots of <alpha, x>.
inline Rational kappa(const RootSystem& rs, const Covector& x) {
  rs.check_rank(x.rank());
  Rational prod = 1;
  for (const auto& root : rs.positive_roots()) {
    Rational s = 0;
    for (std::size_t i = 0; i < root.size(); ++i) s += root[i] * x.coords[i];
    if (s == 0) return 0;
    prod *= s;
  }
  return prod;
}

/// Coset representatives of Lambda / I via the Smith normal form of the
/// Cartan matrix: Lambda = C^{-1} Z^r, and P C Q = D gives psi = Q D^{-1} z.
inline FundamentalGroup fundamental_group(const RootSystem& rs) {
  const std::size_t r = rs.rank();
  const SmithForm snf = smith_normal_form(rs.cartan());
  FundamentalGroup out;
  out.elementary_divisors = snf.divisors;
  IntVector z(r, 0);
  for (;;) {
    RationalVector x(r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        if (z[j] != 0) x[i] += make_rational(snf.col_transform(i, j) * z[j], snf.divisors[j]);
    for (auto& v : x) v = frac(v);
    out.elements.emplace_back(std::move(x));
    std::size_t k = 0;
    while (k < r && ++z[k] == snf.divisors[k]) z[k++] = 0;
    if (k == r) break;
  }
  return out;
}

}  // namespace lieint
