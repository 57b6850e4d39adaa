#pragma once

// Experiment runner: evaluates a moment along an N schedule by the exact,
// quadrature and asymptotic paths and assembles a convergence report.

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lieint/asymptotics.hpp"
#include "lieint/charring.hpp"
#include "lieint/errors.hpp"
#include "lieint/repweights.hpp"
#include "lieint/rootsys.hpp"
#include "lieint/torusquad.hpp"

namespace lieint {

enum class Estimator { Automatic, Biane };

struct ExperimentConfig {
  std::string group;
  std::string lambda;
  CycleType a;
  CycleType b;
  std::vector<std::int64_t> n_schedule;
  std::string f;  ///< class-function terms, empty for f == 1
  bool run_exact = false;
  bool run_quad = false;
  bool run_asymptotic = false;
  Estimator estimator = Estimator::Automatic;
  std::string grid;  ///< per-axis override, e.g. "64,64"
  std::string out;
  std::string format = "json";
  unsigned threads = 1;
  bool timings = false;

  void validate() const {
    if (group.empty()) throw ConfigError("config: group is required");
    if (lambda.empty()) throw ConfigError("config: lambda is required");
    if (n_schedule.empty()) throw ConfigError("config: N schedule is empty");
    for (std::size_t i = 0; i < n_schedule.size(); ++i) {
      if (n_schedule[i] < 1) throw ConfigError("config: N values must be >= 1");
      if (i > 0 && n_schedule[i] <= n_schedule[i - 1]) throw ConfigError("config: N schedule must be strictly increasing");
    }
    if (!run_exact && !run_quad && !run_asymptotic) throw ConfigError("config: at least one evaluation path is required");
    if (format != "json" && format != "csv") throw ConfigError("config: format must be json or csv");
  }
};

/// Parses "2:160:2", "1,2,5", or a comma list mixing both.
inline std::vector<std::int64_t> parse_schedule(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string tok;
  auto num = [&](const std::string& s) -> std::int64_t {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(s, &used);
      if (s.find_first_not_of(" \t", used) != std::string::npos) throw ConfigError("");
      return v;
    } catch (const std::exception&) {
      throw ConfigError("malformed N schedule '" + text + "'");
    }
  };
  while (std::getline(ss, tok, ',')) {
    if (tok.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<std::string> parts;
    std::stringstream ps(tok);
    std::string p;
    while (std::getline(ps, p, ':')) parts.push_back(p);
    if (parts.size() == 1) {
      out.push_back(num(parts[0]));
    } else if (parts.size() == 2 || parts.size() == 3) {
      const std::int64_t lo = num(parts[0]), hi = num(parts[1]);
      const std::int64_t step = parts.size() == 3 ? num(parts[2]) : 1;
      if (step < 1) throw ConfigError("N schedule step must be >= 1");
      for (std::int64_t v = lo; v <= hi; v += step) out.push_back(v);
    } else {
      throw ConfigError("malformed N schedule '" + text + "'");
    }
  }
  return out;
}

inline void parse_paths(const std::string& text, ExperimentConfig& cfg) {
  cfg.run_exact = cfg.run_quad = cfg.run_asymptotic = false;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char c) { return std::isspace(c); }), tok.end());
    if (tok.empty()) continue;
    if (tok == "exact") cfg.run_exact = true;
    else if (tok == "quad") cfg.run_quad = true;
    else if (tok == "asym" || tok == "asymptotic") cfg.run_asymptotic = true;
    else throw ConfigError("unknown evaluation path '" + tok + "'");
  }
}

/// Reads a key = value config file (INI syntax without sections).
inline ExperimentConfig parse_config(std::istream& in) {
  boost::property_tree::ptree pt;
  try {
    boost::property_tree::read_ini(in, pt);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  ExperimentConfig cfg;
  bool have_paths = false;
  for (const auto& [key, node] : pt) {
    const std::string v = node.data();
    if (key == "group") cfg.group = v;
    else if (key == "lambda") cfg.lambda = v;
    else if (key == "a") cfg.a = CycleType::parse(v);
    else if (key == "b") cfg.b = CycleType::parse(v);
    else if (key == "N") cfg.n_schedule = parse_schedule(v);
    else if (key == "f") cfg.f = v;
    else if (key == "paths") {
      parse_paths(v, cfg);
      have_paths = true;
    } else if (key == "estimator") {
      if (v == "auto") cfg.estimator = Estimator::Automatic;
      else if (v == "biane") cfg.estimator = Estimator::Biane;
      else throw ConfigError("config: estimator must be auto or biane");
    } else if (key == "grid") cfg.grid = v;
    else if (key == "out") cfg.out = v;
    else if (key == "format") cfg.format = v;
    else if (key == "threads") cfg.threads = static_cast<unsigned>(std::stoul(v));
    else if (key == "timings") cfg.timings = (v == "true" || v == "1" || v == "yes");
    else throw ConfigError("config: unknown key '" + key + "'");
  }
  if (!have_paths) cfg.run_exact = cfg.run_asymptotic = true;
  cfg.validate();
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

struct HypothesisVerdict {
  bool dominant_integral = false;
  bool regular = false;
  std::int64_t gcd_alpha = 0;
  std::int64_t gcd_combined = 0;
  bool k_balanced = false;
  bool lambda_in_root_lattice = false;
  /// m with: k lambda in the root lattice iff m divides k.
  std::int64_t root_lattice_order = 0;
  std::vector<std::string> failures_theorem1;
  std::vector<std::string> failures_theorem2;
  std::vector<std::string> failures_dimension;

  bool theorem1() const { return failures_theorem1.empty(); }
  bool theorem2() const { return failures_theorem2.empty(); }
  bool dimension_formula() const { return failures_dimension.empty(); }

  /// k_a lambda in the root lattice (else I_N(1, alpha) vanishes identically).
  bool tensor_power_in_root_lattice(std::int64_t k) const {
    return root_lattice_order > 0 && k % root_lattice_order == 0;
  }
};

/// Evaluates every hypothesis predicate exactly; never throws.
inline HypothesisVerdict check_hypotheses(const RootSystem& rs, const Weight& lam, const CycleType& a, const CycleType& b) {
  HypothesisVerdict v;
  v.gcd_alpha = a.gcd_support();
  v.gcd_combined = std::gcd(a.gcd_support(), b.gcd_support());
  v.k_balanced = a.weight() == b.weight();
  try {
    require_dominant(rs, lam);
    v.dominant_integral = true;
    v.regular = is_regular(rs, lam);
    v.lambda_in_root_lattice = rs.in_root_lattice(lam);
    v.root_lattice_order = rs.root_lattice_order(lam);
  } catch (const std::exception&) {
    v.dominant_integral = false;
  }
  auto common = [&](std::vector<std::string>& f) {
    if (!v.dominant_integral) f.push_back("highest weight is not dominant integral");
    else if (!v.regular) f.push_back("highest weight is not regular");
  };
  common(v.failures_theorem1);
  if (v.gcd_alpha != 1) v.failures_theorem1.push_back("gcd{j : alpha_j != 0} = " + std::to_string(v.gcd_alpha) + " != 1");
  if (!b.empty()) v.failures_theorem1.push_back("beta is nonzero (I_N has no conjugate factors)");
  common(v.failures_theorem2);
  if (v.gcd_combined != 1)
    v.failures_theorem2.push_back("gcd{j : alpha_j != 0 or beta_j != 0} = " + std::to_string(v.gcd_combined) + " != 1");
  if (!v.k_balanced)
    v.failures_theorem2.push_back("k_alpha = " + std::to_string(a.weight()) + " != k_beta = " + std::to_string(b.weight()));
  common(v.failures_dimension);
  if (v.dominant_integral && !v.lambda_in_root_lattice) v.failures_dimension.push_back("lambda is not in the root lattice");
  if (!(a == CycleType{1}) || !b.empty()) v.failures_dimension.push_back("dimension formula needs alpha = (1), beta = ()");
  return v;
}

/// Exact moment with a class-function weight: sum_i c_i * mult of V_{nu_i}^*
/// in the moment character. Integer when f == 1.
inline Rational exact_weighted_moment(const RootSystem& rs, const Weight& lam, const CycleType& a, const CycleType& b,
                                      const ClassFunction& f, const ConvolutionLimits& limits = {}) {
  if (f.is_one()) return Rational(exact_moment(rs, lam, a, b, limits));
  const WeightSystem& base = weight_system(rs, lam);
  WeightSystem acc = WeightSystem::unit(rs.rank());
  for (const auto& fac : moment_factors(base, a, b)) acc = product(acc, fac, limits);
  Rational total = 0;
  for (const auto& t : f.terms()) {
    const WeightSystem prod = product(acc, weight_system(rs, Weight::from_ints(t.weight)), limits);
    total += Rational(t.coefficient) * Rational(trivial_multiplicity(rs, prod));
  }
  return total;
}

struct ReportRow {
  std::int64_t n = 0;
  std::optional<Rational> exact;
  std::optional<QuadResult> quad;
  std::optional<AsymptoticEstimate> asym;
  std::optional<double> ratio;            ///< exact / asymptotic, from log space
  std::optional<double> quad_exact_diff;  ///< |quad - exact| / max(1, |exact|)
  std::vector<std::string> errors;
  double seconds = 0;
};

struct ConvergenceReport {
  ExperimentConfig config;
  std::string estimator_name;  ///< "theorem1", "theorem2", "dimension", or "hypothesis-violated"
  HypothesisVerdict hypotheses;
  std::vector<ReportRow> rows;
  std::optional<double> fitted_exponent;
  std::size_t fit_points = 0;
};

inline double log_abs(const Rational& q) { return log_abs(numerator(q)) - log_abs(denominator(q)); }

inline std::optional<double> ratio_from_logs(const Rational& exact, const AsymptoticEstimate& est) {
  if (est.sign == 0) return std::nullopt;
  if (exact == 0) return 0.0;
  const int s = (exact > 0 ? 1 : -1) * est.sign;
  return s * std::exp(log_abs(exact) - est.log_abs_value);
}

/// Least-squares slope of log|r - 1| against log N over the upper half of the
/// schedule; rows with no ratio or r == 1 are skipped.
inline std::pair<std::optional<double>, std::size_t> fit_error_exponent(const std::vector<ReportRow>& rows) {
  std::vector<double> xs, ys;
  for (std::size_t i = rows.size() / 2; i < rows.size(); ++i) {
    if (!rows[i].ratio) continue;
    const double e = std::abs(*rows[i].ratio - 1.0);
    if (e == 0 || !std::isfinite(e)) continue;
    xs.push_back(std::log(static_cast<double>(rows[i].n)));
    ys.push_back(std::log(e));
  }
  if (xs.size() < 2) return {std::nullopt, xs.size()};
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double den = n * sxx - sx * sx;
  if (den == 0) return {std::nullopt, xs.size()};
  return {(n * sxy - sx * sy) / den, xs.size()};
}

inline TorusGrid parse_grid(const std::string& text, std::size_t rank) {
  TorusGrid g;
  if (text.empty()) return g;
  for (auto v : ClassFunction::parse_weight_coords(text, rank)) {
    if (v < 1) throw ConfigError("grid sizes must be positive");
    g.sizes.push_back(static_cast<std::size_t>(v));
  }
  return g;
}

inline Weight parse_weight(const std::string& text, const RootSystem& rs) {
  return Weight::from_ints(ClassFunction::parse_weight_coords(text, rs.rank()));
}

inline ConvergenceReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const RootSystem rs = RootSystem::parse(cfg.group);
  const Weight lam = parse_weight(cfg.lambda, rs);
  require_dominant(rs, lam);
  const ClassFunction f = ClassFunction::parse(cfg.f, rs.rank());
  const TorusGrid grid = parse_grid(cfg.grid, rs.rank());

  ConvergenceReport rep;
  rep.config = cfg;
  rep.hypotheses = check_hypotheses(rs, lam, cfg.a, cfg.b);
  bool asym_ok = cfg.run_asymptotic;
  if (cfg.estimator == Estimator::Biane) {
    rep.estimator_name = "dimension";
    asym_ok = asym_ok && rep.hypotheses.dimension_formula() && f.is_one();
  } else if (cfg.b.empty()) {
    rep.estimator_name = "theorem1";
    asym_ok = asym_ok && rep.hypotheses.theorem1();
  } else {
    rep.estimator_name = "theorem2";
    asym_ok = asym_ok && rep.hypotheses.theorem2();
  }
  if (cfg.run_asymptotic && !asym_ok) rep.estimator_name = "hypothesis-violated";

  QuadOptions qopt;
  qopt.threads = cfg.threads;
  for (const std::int64_t n : cfg.n_schedule) {
    ReportRow row;
    row.n = n;
    const auto t0 = std::chrono::steady_clock::now();
    if (cfg.run_exact) {
      try {
        row.exact = exact_weighted_moment(rs, lam, cfg.a.scaled(n), cfg.b.scaled(n), f);
      } catch (const std::exception& e) {
        row.errors.push_back(std::string("exact: ") + e.what());
      }
    }
    if (cfg.run_quad) {
      try {
        row.quad = quad_K_N(rs, lam, cfg.a, cfg.b, n, f, grid, qopt);
      } catch (const std::exception& e) {
        row.errors.push_back(std::string("quad: ") + e.what());
      }
    }
    if (asym_ok) {
      try {
        if (cfg.estimator == Estimator::Biane) row.asym = biane_estimate(rs, lam, n);
        else if (cfg.b.empty()) row.asym = leading_term_I(rs, lam, cfg.a, n, f);
        else row.asym = leading_term_K(rs, lam, cfg.a, cfg.b, n, f);
      } catch (const std::exception& e) {
        row.errors.push_back(std::string("asymptotic: ") + e.what());
      }
    }
    if (row.exact && row.asym) row.ratio = ratio_from_logs(*row.exact, *row.asym);
    if (row.exact && row.quad) {
      const double ex = to_double(*row.exact);
      row.quad_exact_diff = std::abs(row.quad->value - ex) / std::max(1.0, std::abs(ex));
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.rows.push_back(std::move(row));
  }
  std::tie(rep.fitted_exponent, rep.fit_points) = fit_error_exponent(rep.rows);
  return rep;
}

namespace detail {

inline std::string rational_string(const Rational& q) {
  return is_integer(q) ? numerator(q).str() : q.str();
}

inline nlohmann::ordered_json number_or_null(double x) {
  return std::isfinite(x) ? nlohmann::ordered_json(x) : nlohmann::ordered_json(nullptr);
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const AsymptoticEstimate& est) {
  nlohmann::ordered_json j;
  j["N"] = est.n;
  j["value"] = detail::number_or_null(est.value);
  j["log_abs_value"] = detail::number_or_null(est.log_abs_value);
  j["sign"] = est.sign;
  j["log_dim_power"] = est.log_dim_power;
  j["kappa_term"] = detail::rational_string(est.kappa_term);
  j["det_a"] = detail::rational_string(est.det_a);
  j["pi_sum"] = {{"re", est.pi_sum.real()}, {"im", est.pi_sum.imag()}};
  j["prefactor"] = est.prefactor;
  return j;
}

inline nlohmann::ordered_json to_json(const HypothesisVerdict& v) {
  nlohmann::ordered_json j;
  j["dominant_integral"] = v.dominant_integral;
  j["regular"] = v.regular;
  j["gcd_alpha"] = v.gcd_alpha;
  j["gcd_combined"] = v.gcd_combined;
  j["k_balanced"] = v.k_balanced;
  j["lambda_in_root_lattice"] = v.lambda_in_root_lattice;
  j["root_lattice_order"] = v.root_lattice_order;
  j["theorem1"] = {{"holds", v.theorem1()}, {"failures", v.failures_theorem1}};
  j["theorem2"] = {{"holds", v.theorem2()}, {"failures", v.failures_theorem2}};
  j["dimension_formula"] = {{"holds", v.dimension_formula()}, {"failures", v.failures_dimension}};
  return j;
}

inline nlohmann::ordered_json to_json(const ConvergenceReport& rep) {
  nlohmann::ordered_json j;
  const auto& c = rep.config;
  j["config"] = {{"group", c.group},
                 {"lambda", c.lambda},
                 {"a", c.a.str()},
                 {"b", c.b.str()},
                 {"N", c.n_schedule},
                 {"f", c.f},
                 {"paths", {{"exact", c.run_exact}, {"quad", c.run_quad}, {"asymptotic", c.run_asymptotic}}},
                 {"grid", c.grid},
                 {"threads", c.threads}};
  j["estimator"] = rep.estimator_name;
  j["hypotheses"] = to_json(rep.hypotheses);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : rep.rows) {
    nlohmann::ordered_json row;
    row["N"] = r.n;
    row["exact"] = r.exact ? nlohmann::ordered_json(detail::rational_string(*r.exact)) : nlohmann::ordered_json(nullptr);
    if (r.quad) {
      row["quad"] = {{"value", r.quad->value}, {"imag_residual", r.quad->imag_residual}, {"grid", r.quad->grid.sizes}};
    } else {
      row["quad"] = nullptr;
    }
    row["asymptotic"] = r.asym ? to_json(*r.asym) : nlohmann::ordered_json(nullptr);
    row["ratio"] = r.ratio ? detail::number_or_null(*r.ratio) : nlohmann::ordered_json(nullptr);
    row["abs_ratio_minus_one"] = r.ratio ? detail::number_or_null(std::abs(*r.ratio - 1.0)) : nlohmann::ordered_json(nullptr);
    row["quad_exact_rel_diff"] = r.quad_exact_diff ? nlohmann::ordered_json(*r.quad_exact_diff) : nlohmann::ordered_json(nullptr);
    row["errors"] = r.errors;
    if (c.timings) row["seconds"] = r.seconds;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  j["fitted_error_exponent"] = rep.fitted_exponent ? nlohmann::ordered_json(*rep.fitted_exponent) : nlohmann::ordered_json(nullptr);
  j["fit_points"] = rep.fit_points;
  return j;
}

inline std::string to_csv(const ConvergenceReport& rep) {
  std::ostringstream os;
  os.precision(17);
  os << "N,exact,quad,quad_imag_residual,asym_value,asym_log_abs,ratio,abs_ratio_minus_one,errors";
  if (rep.config.timings) os << ",seconds";
  os << "\n";
  for (const auto& r : rep.rows) {
    os << r.n << ",";
    if (r.exact) os << detail::rational_string(*r.exact);
    os << ",";
    if (r.quad) os << r.quad->value << "," << r.quad->imag_residual;
    else os << ",";
    os << ",";
    if (r.asym) os << r.asym->value << "," << r.asym->log_abs_value;
    else os << ",";
    os << ",";
    if (r.ratio) os << *r.ratio << "," << std::abs(*r.ratio - 1.0);
    else os << ",";
    os << ",";
    std::string err;
    for (const auto& e : r.errors) err += (err.empty() ? "" : " | ") + e;
    for (auto& ch : err)
      if (ch == '"') ch = '\'';
    if (!err.empty()) os << '"' << err << '"';
    if (rep.config.timings) os << "," << r.seconds;
    os << "\n";
  }
  return os.str();
}

inline std::string render(const ConvergenceReport& rep) {
  return rep.config.format == "csv" ? to_csv(rep) : to_json(rep).dump(2) + "\n";
}

}  // namespace lieint
