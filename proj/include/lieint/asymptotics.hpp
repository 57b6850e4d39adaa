#pragma once

// Closed-form leading terms of the trace-moment integrals I_N and K_N, the
// tensor-invariant dimension estimate, the generic Laplace constant for
// phases with a vanishing Weyl denominator, and Mehta's Gaussian integral.
// Every estimate keeps its factored constituents so a report can audit it.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lieint/charring.hpp"
#include "lieint/errors.hpp"
#include "lieint/exact.hpp"
#include "lieint/repweights.hpp"
#include "lieint/rootsys.hpp"

namespace lieint {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// e^{2 pi i r}, with r reduced mod 1 exactly first; quarter turns are exact.
inline std::complex<double> root_of_unity(const Rational& r) {
  const Rational t = frac(r);
  if (t == 0) return {1.0, 0.0};
  if (t == make_rational(1, 2)) return {-1.0, 0.0};
  if (t == make_rational(1, 4)) return {0.0, 1.0};
  if (t == make_rational(3, 4)) return {0.0, -1.0};
  const double angle = kTwoPi * to_double(t);
  return {std::cos(angle), std::sin(angle)};
}

struct CycleConstants {
  std::int64_t size;    ///< |alpha|
  std::int64_t weight;  ///< k_alpha
  std::int64_t quad;    ///< l_alpha
};

inline CycleConstants cycle_constants(const CycleType& a) { return {a.size(), a.weight(), a.quad()}; }

/// Band-limited class function f = sum_i c_i chi_{nu_i}.
class ClassFunction {
 public:
  struct Term {
    IntVector weight;
    double coefficient;
  };

  ClassFunction() = default;
  explicit ClassFunction(std::vector<Term> terms) : terms_(std::move(terms)) {}

  /// f == 1.
  static ClassFunction one(std::size_t rank) { return ClassFunction({{IntVector(rank, 0), 1.0}}); }

  /// Parses "0,0:1.0;1,1:0.5" (weight:coefficient terms separated by ';').
  /// An empty string means f == 1.
  static ClassFunction parse(const std::string& text, std::size_t rank) {
    if (text.find_first_not_of(" \t") == std::string::npos) return one(rank);
    std::vector<Term> terms;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ';')) {
      if (tok.find_first_not_of(" \t") == std::string::npos) continue;
      const auto colon = tok.find(':');
      Term t{parse_weight_coords(tok.substr(0, colon), rank), 1.0};
      if (colon != std::string::npos) {
        try {
          t.coefficient = std::stod(tok.substr(colon + 1));
        } catch (const std::exception&) {
          throw ConfigError("malformed class-function coefficient in '" + tok + "'");
        }
      }
      for (auto x : t.weight)
        if (x < 0) throw ConfigError("class-function weights must be dominant");
      terms.push_back(std::move(t));
    }
    if (terms.empty()) return one(rank);
    return ClassFunction(std::move(terms));
  }

  /// Parses "1,1" into integer coordinates of the given rank.
  static IntVector parse_weight_coords(const std::string& text, std::size_t rank) {
    IntVector v;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stoll(tok, &used));
        if (tok.find_first_not_of(" \t", used) != std::string::npos) throw ConfigError("");
      } catch (const std::exception&) {
        throw ConfigError("malformed weight '" + text + "'");
      }
    }
    if (v.size() != rank)
      throw ConfigError("weight '" + text + "' has " + std::to_string(v.size()) + " coordinates, expected " + std::to_string(rank));
    return v;
  }

  const std::vector<Term>& terms() const { return terms_; }

  bool is_one() const {
    return terms_.size() == 1 && terms_[0].coefficient == 1.0 &&
           std::all_of(terms_[0].weight.begin(), terms_[0].weight.end(), [](std::int64_t x) { return x == 0; });
  }

  double at_identity(const RootSystem& rs) const {
    double s = 0;
    for (const auto& t : terms_) s += t.coefficient * weyl_dimension(rs, Weight::from_ints(t.weight)).convert_to<double>();
    return s;
  }

  /// f(h) for central h = exp(psi): chi_nu(h) = dim V_nu * e^{2 pi i <nu, psi>}.
  std::complex<double> at_central(const RootSystem& rs, const Covector& psi) const {
    std::complex<double> s = 0;
    for (const auto& t : terms_) {
      const Weight nu = Weight::from_ints(t.weight);
      s += t.coefficient * weyl_dimension(rs, nu).convert_to<double>() * root_of_unity(pairing(nu, psi));
    }
    return s;
  }

  std::string str() const {
    std::string s;
    for (const auto& t : terms_) {
      if (!s.empty()) s += ";";
      for (std::size_t i = 0; i < t.weight.size(); ++i) s += (i ? "," : "") + std::to_string(t.weight[i]);
      std::ostringstream c;
      c.precision(17);
      c << t.coefficient;
      s += ":" + c.str();
    }
    return s;
  }

 private:
  std::vector<Term> terms_;
};

/// nu_{m lambda}(h) = e^{2 pi i m <lambda, psi_h>}.
inline std::complex<double> nu_character(const RootSystem& rs, const Weight& lam, std::int64_t m, const Covector& psi) {
  rs.check_rank(lam.rank());
  return root_of_unity(Rational(m) * pairing(lam, psi));
}

struct AsymptoticEstimate {
  double value = 0;          ///< full leading term (may be +inf for huge N)
  double log_abs_value = 0;  ///< log|value|, -inf when the leading term vanishes
  int sign = 0;
  double log_dim_power = 0;  ///< N (|alpha|+|beta|) log dim V_lambda
  Rational kappa_term;       ///< kappa(A_lambda^{-1} rho)
  Rational det_a;            ///< det A_lambda
  std::complex<double> pi_sum;
  double prefactor = 0;      ///< (2 pi)^d / (2 pi l N)^{dim G / 2}
  std::int64_t n = 0;

  /// Reassembles the value from the stored constituents.
  double reconstruct() const {
    return std::exp(log_dim_power) * prefactor * to_double(kappa_term) / std::sqrt(to_double(det_a)) * pi_sum.real();
  }
};

/// Basis-dependent raw data of a leading term. leading_term_I/K fill it in
/// the coroot basis; any unimodular change of basis must give the same value.
struct LeadingTermInputs {
  struct CentralTerm {
    RationalVector weight;
    double coefficient;
    double dimension;
  };

  std::vector<RationalVector> positive_roots;  ///< weight coordinates
  std::vector<std::pair<RationalVector, BigInt>> weights;
  RationalVector rho;
  RationalVector lambda;
  std::vector<RationalVector> psi;  ///< Pi(G) coset representatives
  std::vector<CentralTerm> f_terms;
  std::size_t dim_g = 0;
  std::int64_t size = 0;        ///< |alpha| + |beta|
  std::int64_t quad = 0;        ///< l_alpha + l_beta
  bool with_nu = true;          ///< include nu_{N k lambda}(h)
  std::int64_t nu_weight = 0;   ///< k_alpha (nu uses N * nu_weight)
  std::int64_t n = 1;
};

inline Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline AsymptoticEstimate assemble_leading_term(const LeadingTermInputs& in) {
  const std::size_t r = in.rho.size();
  RationalMatrix a(r, r);
  BigInt dim = 0;
  for (const auto& [mu, m] : in.weights) {
    dim += m;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) a(i, j) += Rational(m) * mu[i] * mu[j];
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) a(i, j) /= Rational(dim);
  if (!is_positive_definite(a)) throw InternalError("A_lambda is not positive definite for a regular highest weight");

  AsymptoticEstimate est;
  est.n = in.n;
  est.det_a = determinant(a);
  const RationalVector x = solve(a, in.rho);
  est.kappa_term = 1;
  for (const auto& root : in.positive_roots) est.kappa_term *= dot(root, x);

  for (const auto& psi : in.psi) {
    std::complex<double> f = 0;
    for (const auto& t : in.f_terms) f += t.coefficient * t.dimension * root_of_unity(dot(t.weight, psi));
    const std::complex<double> nu = in.with_nu ? root_of_unity(Rational(in.n * in.nu_weight) * dot(in.lambda, psi)) : 1.0;
    est.pi_sum += nu * f;
  }

  const double d = static_cast<double>(in.positive_roots.size());
  est.log_dim_power = static_cast<double>(in.n * in.size) * log_abs(dim);
  est.prefactor = std::pow(kTwoPi, d) /
                  std::pow(kTwoPi * static_cast<double>(in.quad) * static_cast<double>(in.n), static_cast<double>(in.dim_g) / 2.0);
  const double re = est.pi_sum.real();
  const double kap = to_double(est.kappa_term);
  est.sign = (re > 0) - (re < 0);
  if (kap < 0) est.sign = -est.sign;
  est.log_abs_value = re == 0 ? -HUGE_VAL
                              : est.log_dim_power + std::log(est.prefactor) + std::log(std::abs(kap)) -
                                    0.5 * std::log(to_double(est.det_a)) + std::log(std::abs(re));
  est.value = est.sign == 0 ? 0.0 : est.sign * std::exp(est.log_abs_value);
  return est;
}

/// Fills LeadingTermInputs in the coroot basis.
inline LeadingTermInputs leading_term_inputs(const RootSystem& rs, const Weight& lam, std::int64_t size, std::int64_t quad,
                                             bool with_nu, std::int64_t nu_weight, std::int64_t n, const ClassFunction& f) {
  LeadingTermInputs in;
  for (const auto& root : rs.positive_roots()) in.positive_roots.push_back(Weight::from_ints(root).coords);
  for (const auto& [mu, m] : weight_system(rs, lam).entries()) in.weights.emplace_back(Weight::from_ints(mu).coords, m);
  in.rho = Weight::from_ints(rs.rho()).coords;
  in.lambda = lam.coords;
  for (const auto& psi : fundamental_group(rs).elements) in.psi.push_back(psi.coords);
  for (const auto& t : f.terms())
    in.f_terms.push_back({Weight::from_ints(t.weight).coords, t.coefficient,
                          weyl_dimension(rs, Weight::from_ints(t.weight)).convert_to<double>()});
  in.dim_g = rs.dim_g();
  in.size = size;
  in.quad = quad;
  in.with_nu = with_nu;
  in.nu_weight = nu_weight;
  in.n = n;
  return in;
}

inline void require_regular(const RootSystem& rs, const Weight& lam) {
  if (!is_regular(rs, lam)) throw HypothesisError("highest weight must be regular (all fundamental-weight coordinates >= 1)");
}

/// Leading term of I_N(f, alpha).
inline AsymptoticEstimate leading_term_I(const RootSystem& rs, const Weight& lam, const CycleType& a, std::int64_t n,
                                         const ClassFunction& f) {
  require_regular(rs, lam);
  if (n < 1) throw ConfigError("N must be >= 1");
  if (a.gcd_support() != 1)
    throw HypothesisError("leading term of I_N requires gcd{j : alpha_j != 0} = 1 (got " + std::to_string(a.gcd_support()) + ")");
  return assemble_leading_term(leading_term_inputs(rs, lam, a.size(), a.quad(), true, a.weight(), n, f));
}

/// Leading term of K_N(f, alpha, beta); the nu factor is absent.
inline AsymptoticEstimate leading_term_K(const RootSystem& rs, const Weight& lam, const CycleType& a, const CycleType& b,
                                         std::int64_t n, const ClassFunction& f) {
  require_regular(rs, lam);
  if (n < 1) throw ConfigError("N must be >= 1");
  if (std::gcd(a.gcd_support(), b.gcd_support()) != 1)
    throw HypothesisError("leading term of K_N requires gcd{j : alpha_j != 0 or beta_j != 0} = 1");
  if (a.weight() != b.weight())
    throw HypothesisError("leading term of K_N requires k_alpha = k_beta (got " + std::to_string(a.weight()) + " vs " +
                          std::to_string(b.weight()) + ")");
  return assemble_leading_term(
      leading_term_inputs(rs, lam, a.size() + b.size(), a.quad() + b.quad(), false, 0, n, f));
}

/// dim [V_lam^{(x)N}]^G ~ |Pi| dim^N kappa(A^{-1}rho) / ((2pi)^{rk/2} N^{dimG/2} sqrt(det A)),
/// for regular lam in the root lattice. Returned in the same audit form.
inline AsymptoticEstimate biane_estimate(const RootSystem& rs, const Weight& lam, std::int64_t n) {
  require_regular(rs, lam);
  if (!rs.in_root_lattice(lam)) throw HypothesisError("dimension estimate requires lambda in the root lattice");
  if (n < 1) throw ConfigError("N must be >= 1");
  const ALambda a = a_lambda(rs, lam);
  AsymptoticEstimate est;
  est.n = n;
  est.det_a = a.determinant();
  est.kappa_term = kappa(rs, a.solve(Weight::from_ints(rs.rho())));
  est.pi_sum = static_cast<double>(fundamental_group(rs).order());
  est.log_dim_power = static_cast<double>(n) * log_abs(weyl_dimension(rs, lam));
  const double r = static_cast<double>(rs.rank());
  est.prefactor = 1.0 / (std::pow(kTwoPi, r / 2.0) * std::pow(static_cast<double>(n), static_cast<double>(rs.dim_g()) / 2.0));
  est.sign = 1;
  est.log_abs_value = est.log_dim_power + std::log(est.prefactor) + std::log(to_double(est.kappa_term)) -
                      0.5 * std::log(to_double(est.det_a)) + std::log(est.pi_sum.real());
  est.value = std::exp(est.log_abs_value);
  return est;
}

inline double biane_dimension_estimate(const RootSystem& rs, const Weight& lam, std::int64_t n) {
  return biane_estimate(rs, lam, n).value;
}

namespace detail {

inline void require_spd(const Eigen::MatrixXd& h, std::size_t rank) {
  if (static_cast<std::size_t>(h.rows()) != rank || h.rows() != h.cols()) throw ConfigError("H must be rank x rank");
  if (!h.isApprox(h.transpose(), 1e-12)) throw ConfigError("H must be symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(h);
  if (llt.info() != Eigen::Success) throw ConfigError("H must be positive definite");
}

inline double kappa_real(const RootSystem& rs, const Eigen::VectorXd& x) {
  double prod = 1;
  for (const auto& root : rs.positive_roots()) {
    double s = 0;
    for (std::size_t i = 0; i < root.size(); ++i) s += static_cast<double>(root[i]) * x(static_cast<Eigen::Index>(i));
    prod *= s;
  }
  return prod;
}

inline Eigen::VectorXd rho_vector(const RootSystem& rs) {
  return Eigen::VectorXd::Ones(static_cast<Eigen::Index>(rs.rank()));
}

// S_i^T H S_i = H for every simple reflection S_i = 1 - e_i (row i of C).
inline bool is_w_invariant(const RootSystem& rs, const Eigen::MatrixXd& h) {
  const auto r = static_cast<Eigen::Index>(rs.rank());
  for (Eigen::Index i = 0; i < r; ++i) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(r, r);
    for (Eigen::Index j = 0; j < r; ++j) s(i, j) -= static_cast<double>(rs.cartan()(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
    if (!(s.transpose() * h * s).isApprox(h, 1e-10)) return false;
  }
  return true;
}

inline void require_w_invariant(const RootSystem& rs, const Eigen::MatrixXd& h) {
  if (!is_w_invariant(rs, h)) throw ConfigError("H must commute with the Weyl group action");
}

}  // namespace detail

/// Converts an exact matrix t -> t* to floating point.
inline Eigen::MatrixXd to_eigen(const RationalMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double(m(i, j));
  return out;
}

/// Laplace constant for int_T e^{N Phi} g |Delta|^2 dt with nondegenerate
/// critical point at the identity and H = -Hess Phi(0):
///   (2 pi / N)^{dimG/2} (2 pi)^d g(0) e^{N Phi(0)} |W| kappa(H^{-1} rho) / sqrt(det H).
inline double vanish_leading_constant(const RootSystem& rs, const Eigen::MatrixXd& h, double g0, double phi0, std::int64_t n) {
  detail::require_spd(h, rs.rank());
  detail::require_w_invariant(rs, h);
  const Eigen::LLT<Eigen::MatrixXd> llt(h);
  const Eigen::VectorXd x = llt.solve(detail::rho_vector(rs));
  const double det = h.determinant();
  const double dim_g = static_cast<double>(rs.dim_g());
  const double d = static_cast<double>(rs.num_positive_roots());
  return std::pow(kTwoPi / static_cast<double>(n), dim_g / 2.0) * std::pow(kTwoPi, d) * g0 *
         std::exp(static_cast<double>(n) * phi0) * rs.weyl_group_order().convert_to<double>() * detail::kappa_real(rs, x) /
         std::sqrt(det);
}

/// int_t e^{-<Hx,x>/2} kappa(x)^2 dx = (2 pi)^{rk/2} |W| kappa(H^{-1} rho) / sqrt(det H).
inline double mehta_closed_form(const RootSystem& rs, const Eigen::MatrixXd& h) {
  detail::require_spd(h, rs.rank());
  detail::require_w_invariant(rs, h);
  const Eigen::LLT<Eigen::MatrixXd> llt(h);
  const Eigen::VectorXd x = llt.solve(detail::rho_vector(rs));
  return std::pow(kTwoPi, static_cast<double>(rs.rank()) / 2.0) * rs.weyl_group_order().convert_to<double>() *
         detail::kappa_real(rs, x) / std::sqrt(h.determinant());
}

/// W-invariant form on t in the coroot basis, (a_i^vee, a_j^vee) = C_ij / d_i,
/// with each simple block scaled to determinant 1 (unit covolume for I).
inline Eigen::MatrixXd unit_invariant_form(const RootSystem& rs) {
  const auto r = static_cast<Eigen::Index>(rs.rank());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(r, r);
  Eigen::Index off = 0;
  for (const auto& f : rs.factors()) {
    const Eigen::Index n = f.rank;
    Eigen::MatrixXd block(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        const auto ii = static_cast<std::size_t>(off + i), jj = static_cast<std::size_t>(off + j);
        block(i, j) = static_cast<double>(rs.cartan()(ii, jj)) / to_double(rs.symmetrizer()[ii]);
      }
    block /= std::pow(block.determinant(), 1.0 / static_cast<double>(n));
    h.block(off, off, n, n) = block;
    off += n;
  }
  return h;
}

/// The Hessian (2 pi)^2 l A_lambda of the moment phase at its critical points.
inline Eigen::MatrixXd moment_hessian(const RootSystem& rs, const Weight& lam, std::int64_t quad) {
  return kTwoPi * kTwoPi * static_cast<double>(quad) * to_eigen(a_lambda(rs, lam).matrix());
}

}  // namespace lieint
