#pragma once

// Weyl-integration quadrature of the trace moments on the maximal torus.
//
// In the coroot basis the fundamental domain of I is the unit cube and the
// integrand is a trigonometric polynomial with integer frequencies, so the
// equal-weight periodic grid with more points per axis than the frequency
// bound integrates it exactly (up to roundoff).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "lieint/asymptotics.hpp"
#include "lieint/charring.hpp"
#include "lieint/errors.hpp"
#include "lieint/repweights.hpp"
#include "lieint/rootsys.hpp"

namespace lieint {

/// sum_mu m(mu) e^{2 pi i <mu, phi>}, phi in coroot coordinates.
inline std::complex<double> character_at(const WeightSystem& ws, const std::vector<double>& phi) {
  if (phi.size() != ws.rank()) throw ConfigError("character_at: rank mismatch");
  std::complex<double> s = 0;
  for (const auto& [mu, m] : ws.entries()) {
    double t = 0;
    for (std::size_t i = 0; i < mu.size(); ++i) t += static_cast<double>(mu[i]) * phi[i];
    t -= std::floor(t);
    s += m.convert_to<double>() * std::complex<double>(std::cos(kTwoPi * t), std::sin(kTwoPi * t));
  }
  return s;
}

/// |Delta(phi)|^2 = prod_{alpha > 0} (2 sin(pi <alpha, phi>))^2.
inline double weyl_denominator_sq(const RootSystem& rs, const std::vector<double>& phi) {
  rs.check_rank(phi.size());
  double prod = 1;
  for (const auto& root : rs.positive_roots()) {
    double t = 0;
    for (std::size_t i = 0; i < root.size(); ++i) t += static_cast<double>(root[i]) * phi[i];
    t -= std::floor(t);
    const double s = 2.0 * std::sin(std::numbers::pi * t);
    prod *= s * s;
  }
  return prod;
}

/// Smallest 5-smooth integer >= n.
inline std::size_t next_smooth(std::size_t n) {
  for (std::size_t m = std::max<std::size_t>(n, 1);; ++m) {
    std::size_t r = m;
    for (std::size_t p : {2, 3, 5})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

struct TorusGrid {
  std::vector<std::size_t> sizes;
  IntVector bandwidth;

  bool aliasing_free() const {
    for (std::size_t i = 0; i < sizes.size(); ++i)
      if (static_cast<std::int64_t>(sizes[i]) <= bandwidth[i]) return false;
    return true;
  }

  std::size_t points() const {
    std::size_t n = 1;
    for (auto s : sizes) n *= s;
    return n;
  }

  /// Default: bandwidth + 1 per axis, rounded up to a 5-smooth size.
  static TorusGrid for_bandwidth(const IntVector& bandwidth) {
    TorusGrid g;
    g.bandwidth = bandwidth;
    for (auto b : bandwidth) g.sizes.push_back(next_smooth(static_cast<std::size_t>(b) + 1));
    return g;
  }
};

struct QuadOptions {
  /// Refuse when log of the integrand magnitude bound exceeds this.
  double max_log_magnitude = std::log(1e290);
  unsigned threads = 1;
  std::size_t leaf_size = 4096;
  /// Drop class-function terms on which the centre acts nontrivially; their
  /// integrals vanish exactly but cancel catastrophically on the grid.
  bool central_selection = true;
};

struct QuadResult {
  double value = 0;
  double imag_residual = 0;  ///< |imaginary part| / max(1, |value|)
  TorusGrid grid;
};

/// Per-axis frequency bound of prod_j k(j phi)^{N a_j} conj(k(j phi))^{N b_j} f |Delta|^2.
inline IntVector moment_bandwidth(const RootSystem& rs, const Weight& lam, const CycleType& a, const CycleType& b,
                                  std::int64_t n, const ClassFunction& f) {
  const IntVector wmax = weight_system(rs, lam).max_abs_coords();
  IntVector bw(rs.rank(), 0);
  const std::int64_t k = n * (a.weight() + b.weight());
  for (std::size_t i = 0; i < bw.size(); ++i) bw[i] = k * wmax[i];
  for (const auto& root : rs.positive_roots())
    for (std::size_t i = 0; i < bw.size(); ++i) bw[i] += root[i] < 0 ? -root[i] : root[i];
  IntVector fmax(rs.rank(), 0);
  for (const auto& t : f.terms()) {
    const IntVector m = weight_system(rs, Weight::from_ints(t.weight)).max_abs_coords();
    for (std::size_t i = 0; i < fmax.size(); ++i) fmax[i] = std::max(fmax[i], m[i]);
  }
  for (std::size_t i = 0; i < bw.size(); ++i) bw[i] += fmax[i];
  return bw;
}

namespace detail {

// The integrand is evaluated and summed in extended precision: for exactly
// vanishing moments the grid sum cancels terms of size dim^{N|alpha|}.
using Real = long double;
using Complex = std::complex<Real>;

inline Complex ipow(Complex z, std::int64_t e) {
  Complex r = 1;
  while (e > 0) {
    if (e & 1) r *= z;
    z *= z;
    e >>= 1;
  }
  return r;
}

struct Neumaier {
  Real sum = 0, comp = 0;
  void add(Real x) {
    const Real t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  Real value() const { return sum + comp; }
};

struct LeafSum {
  Real re = 0, im = 0;
};

/// e^{2 pi i t / m} in extended precision; quarter turns are exact.
inline Complex unit_root(std::int64_t t, std::int64_t m) {
  const Rational r = frac(make_rational(t, m));
  if (r == 0) return {1, 0};
  if (r == make_rational(1, 2)) return {-1, 0};
  if (r == make_rational(1, 4)) return {0, 1};
  if (r == make_rational(3, 4)) return {0, -1};
  const Real angle = 2 * std::numbers::pi_v<Real> * static_cast<Real>(t) / static_cast<Real>(m);
  return {std::cos(angle), std::sin(angle)};
}

// Character evaluation on the grid through per-axis root-of-unity tables.
class GridEvaluator {
 public:
  struct Factor {
    std::int64_t dilation;
    std::int64_t power;
    bool conjugate;
  };

  GridEvaluator(const RootSystem& rs, const WeightSystem& ws, std::vector<Factor> factors, const ClassFunction& f,
                const TorusGrid& grid)
      : rs_(rs), grid_(grid), factors_(std::move(factors)) {
    const std::size_t r = rs.rank();
    tables_.resize(r);
    for (std::size_t i = 0; i < r; ++i) {
      const auto m = static_cast<std::int64_t>(grid.sizes[i]);
      tables_[i].resize(grid.sizes[i]);
      for (std::int64_t t = 0; t < m; ++t) tables_[i][static_cast<std::size_t>(t)] = unit_root(t, m);
    }
    base_ = flatten(ws);
    for (const auto& term : f.terms())
      f_terms_.push_back({static_cast<Real>(term.coefficient), flatten(weight_system(rs, Weight::from_ints(term.weight)))});
    f_trivial_ = f.is_one();
    lcm_ = 1;
    for (auto m : grid.sizes) lcm_ = std::lcm(lcm_, static_cast<std::int64_t>(m));
  }

  Complex integrand(const std::vector<std::int64_t>& idx) const {
    Complex value = 1;
    for (const auto& fac : factors_) {
      Complex k = character(base_, fac.dilation, idx);
      if (fac.conjugate) k = std::conj(k);
      value *= ipow(k, fac.power);
    }
    if (!f_trivial_) {
      Complex fv = 0;
      for (const auto& [c, ws] : f_terms_) fv += c * character(ws, 1, idx);
      value *= fv;
    }
    return value * denominator_sq(idx);
  }

 private:
  struct Flat {
    std::vector<std::int64_t> coords;  // size * rank
    std::vector<Real> mult;
  };

  Flat flatten(const WeightSystem& ws) const {
    Flat out;
    for (const auto& [mu, m] : ws.entries()) {
      out.coords.insert(out.coords.end(), mu.begin(), mu.end());
      out.mult.push_back(m.convert_to<Real>());
    }
    return out;
  }

  Complex character(const Flat& ws, std::int64_t j, const std::vector<std::int64_t>& idx) const {
    const std::size_t r = idx.size();
    Complex s = 0;
    for (std::size_t w = 0; w < ws.mult.size(); ++w) {
      Complex z = 1;
      for (std::size_t i = 0; i < r; ++i) {
        const auto m = static_cast<std::int64_t>(grid_.sizes[i]);
        std::int64_t t = (j * ws.coords[w * r + i] % m) * idx[i] % m;
        if (t < 0) t += m;
        z *= tables_[i][static_cast<std::size_t>(t)];
      }
      s += ws.mult[w] * z;
    }
    return s;
  }

  Real denominator_sq(const std::vector<std::int64_t>& idx) const {
    Real prod = 1;
    for (const auto& root : rs_.positive_roots()) {
      std::int64_t num = 0;
      for (std::size_t i = 0; i < idx.size(); ++i) {
        const std::int64_t scale = lcm_ / static_cast<std::int64_t>(grid_.sizes[i]);
        num = (num + (root[i] * idx[i] % lcm_) * scale) % lcm_;
      }
      if (num < 0) num += lcm_;
      if (num == 0) return 0;
      const Real s = 2 * std::sin(std::numbers::pi_v<Real> * static_cast<Real>(num) / static_cast<Real>(lcm_));
      prod *= s * s;
    }
    return prod;
  }

  const RootSystem& rs_;
  const TorusGrid& grid_;
  std::vector<Factor> factors_;
  std::vector<std::vector<Complex>> tables_;
  Flat base_;
  std::vector<std::pair<Real, Flat>> f_terms_;
  bool f_trivial_ = true;
  std::int64_t lcm_ = 1;
};

// Mean of the integrand over the grid: compensated sums on fixed leaves,
// then a pairwise tree over leaves, so the result does not depend on threads.
inline std::complex<double> grid_mean(const GridEvaluator& eval, const TorusGrid& grid, const QuadOptions& opt) {
  const std::size_t total = grid.points();
  const std::size_t leaf = std::max<std::size_t>(opt.leaf_size, 1);
  const std::size_t leaves = (total + leaf - 1) / leaf;
  std::vector<LeafSum> sums(leaves);

  auto run = [&](std::size_t first_leaf, std::size_t last_leaf) {
    std::vector<std::int64_t> idx(grid.sizes.size());
    for (std::size_t l = first_leaf; l < last_leaf; ++l) {
      Neumaier re, im;
      const std::size_t begin = l * leaf;
      const std::size_t end = std::min(total, begin + leaf);
      for (std::size_t p = begin; p < end; ++p) {
        std::size_t rem = p;
        for (std::size_t i = 0; i < idx.size(); ++i) {
          idx[i] = static_cast<std::int64_t>(rem % grid.sizes[i]);
          rem /= grid.sizes[i];
        }
        const auto v = eval.integrand(idx);
        re.add(v.real());
        im.add(v.imag());
      }
      sums[l] = {re.value(), im.value()};
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(leaves)));
  if (threads == 1) {
    run(0, leaves);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t per = (leaves + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t a = t * per, b = std::min(leaves, a + per);
      if (a < b) pool.emplace_back(run, a, b);
    }
  }

  while (sums.size() > 1) {
    std::vector<LeafSum> next((sums.size() + 1) / 2);
    for (std::size_t i = 0; i < next.size(); ++i) {
      next[i] = sums[2 * i];
      if (2 * i + 1 < sums.size()) {
        next[i].re += sums[2 * i + 1].re;
        next[i].im += sums[2 * i + 1].im;
      }
    }
    sums = std::move(next);
  }
  const Real n = static_cast<Real>(total);
  return sums.empty() ? std::complex<double>(0)
                      : std::complex<double>(static_cast<double>(sums[0].re / n), static_cast<double>(sums[0].im / n));
}

}  // namespace detail

/// K_N(f, a, b) by Weyl integration on an aliasing-free torus grid. With an
/// empty b this is I_N(f, a). Pass an empty grid to use the default.
inline QuadResult quad_K_N(const RootSystem& rs, const Weight& lam, const CycleType& a, const CycleType& b,
                           std::int64_t n, const ClassFunction& f, TorusGrid grid = {}, const QuadOptions& opt = {}) {
  if (n < 1) throw ConfigError("N must be >= 1");
  const WeightSystem& ws = weight_system(rs, lam);
  const IntVector bw = moment_bandwidth(rs, lam, a, b, n, f);
  if (grid.sizes.empty()) {
    grid = TorusGrid::for_bandwidth(bw);
  } else {
    if (grid.sizes.size() != rs.rank()) throw ConfigError("grid needs one size per torus axis");
    grid.bandwidth = bw;
    if (!grid.aliasing_free()) {
      std::string need;
      for (auto x : bw) need += (need.empty() ? "" : ",") + std::to_string(x + 1);
      throw ConfigError("grid too small for an exact rule; required sizes >= " + need);
    }
  }

  double fbound = 0;
  for (const auto& t : f.terms()) fbound += std::abs(t.coefficient) * weyl_dimension(rs, Weight::from_ints(t.weight)).convert_to<double>();
  const double log_bound = static_cast<double>(n * (a.size() + b.size())) * log_abs(ws.total()) +
                           static_cast<double>(rs.num_positive_roots()) * std::log(4.0) + std::log(std::max(fbound, 1.0));
  if (log_bound > opt.max_log_magnitude)
    throw CapacityError("integrand magnitude exceeds the floating-point cap; use the exact or asymptotic path");

  ClassFunction weight = f;
  if (opt.central_selection) {
    // Translating by a central psi multiplies the integrand by
    // e^{2 pi i (N (k_a - k_b) <lam, psi> + <nu, psi>)} for the term chi_nu of f.
    const auto centre = fundamental_group(rs).elements;
    std::vector<ClassFunction::Term> kept;
    for (const auto& t : f.terms()) {
      bool trivial = true;
      for (const auto& psi : centre)
        trivial = trivial && is_integer(Rational(n * (a.weight() - b.weight())) * pairing(lam, psi) +
                                        pairing(Weight::from_ints(t.weight), psi));
      if (trivial) kept.push_back(t);
    }
    if (kept.empty()) {
      QuadResult out;
      out.grid = std::move(grid);
      return out;
    }
    weight = ClassFunction(std::move(kept));
  }

  std::vector<detail::GridEvaluator::Factor> factors;
  for (std::size_t j = 1; j <= a.max_cycle(); ++j)
    if (a[j] > 0) factors.push_back({static_cast<std::int64_t>(j), n * a[j], false});
  for (std::size_t j = 1; j <= b.max_cycle(); ++j)
    if (b[j] > 0) factors.push_back({static_cast<std::int64_t>(j), n * b[j], true});

  const detail::GridEvaluator eval(rs, ws, std::move(factors), weight, grid);
  const std::complex<double> mean = detail::grid_mean(eval, grid, opt);
  const double w = rs.weyl_group_order().convert_to<double>();
  QuadResult out;
  out.value = mean.real() / w;
  out.imag_residual = std::abs(mean.imag() / w) / std::max(1.0, std::abs(out.value));
  out.grid = std::move(grid);
  return out;
}

inline QuadResult quad_I_N(const RootSystem& rs, const Weight& lam, const CycleType& a, std::int64_t n,
                           const ClassFunction& f, TorusGrid grid = {}, const QuadOptions& opt = {}) {
  return quad_K_N(rs, lam, a, CycleType{}, n, f, std::move(grid), opt);
}

/// Probabilists' Gauss-Hermite rule (weight e^{-x^2/2}) by Golub-Welsch.
inline std::pair<std::vector<double>, std::vector<double>> gauss_hermite_rule(std::size_t n) {
  if (n == 0) throw ConfigError("Gauss-Hermite rule needs at least one node");
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 1; k < n; ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    jac(i, i - 1) = jac(i - 1, i) = std::sqrt(static_cast<double>(k));
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jac);
  std::vector<double> nodes(n), weights(n);
  const double mass = std::sqrt(kTwoPi);
  for (std::size_t k = 0; k < n; ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    nodes[k] = eig.eigenvalues()(i);
    const double v = eig.eigenvectors()(0, i);
    weights[k] = mass * v * v;
  }
  return {nodes, weights};
}

/// int_t e^{-<Hx,x>/2} kappa(x)^2 dx by diagonalising H and applying a
/// tensor Gauss-Hermite rule exact for the degree-2d polynomial kappa^2.
inline double mehta_quadrature(const RootSystem& rs, const Eigen::MatrixXd& h) {
  detail::require_spd(h, rs.rank());
  const std::size_t r = rs.rank();
  if (r > 3) throw CapacityError("mehta_quadrature supports rank <= 3");
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
  // x = V diag(lambda^{-1/2}) y maps e^{-<Hx,x>/2} to e^{-|y|^2/2}.
  Eigen::MatrixXd map = eig.eigenvectors();
  for (Eigen::Index i = 0; i < map.cols(); ++i) map.col(i) /= std::sqrt(eig.eigenvalues()(i));
  const double jac = map.determinant();

  const auto [nodes, weights] = gauss_hermite_rule(rs.num_positive_roots() + 1);
  const std::size_t m = nodes.size();
  std::vector<std::size_t> idx(r, 0);
  detail::Neumaier sum;
  Eigen::VectorXd y(static_cast<Eigen::Index>(r));
  for (;;) {
    double w = 1;
    for (std::size_t i = 0; i < r; ++i) {
      y(static_cast<Eigen::Index>(i)) = nodes[idx[i]];
      w *= weights[idx[i]];
    }
    const double k = detail::kappa_real(rs, map * y);
    sum.add(w * k * k);
    std::size_t pos = 0;
    while (pos < r && ++idx[pos] == m) idx[pos++] = 0;
    if (pos == r) break;
  }
  return sum.value() * std::abs(jac);
}

}  // namespace lieint
