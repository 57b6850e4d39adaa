#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "lieint/lieint.hpp"

using namespace lieint;
using Json = nlohmann::ordered_json;

namespace {

struct Options {
  std::string group;
  std::string lambda;
  std::string a = "1";
  std::string b;
  std::string n = "1";
  std::string f;
  std::string grid;
  std::string out;
  std::string format = "json";
  std::string estimator = "auto";
  std::string config;
  unsigned threads = 1;
  bool timings = false;
};

std::string rational_string(const Rational& q) { return is_integer(q) ? numerator(q).str() : q.str(); }

Json vector_json(const RationalVector& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(is_integer(x) ? Json(to_int64(x)) : Json(rational_string(x)));
  return j;
}

template <class T>
Json matrix_json(const Matrix<T>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<T, Rational>) row.push_back(rational_string(m(i, j)));
      else row.push_back(m(i, j));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string join(const IntVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write '" + path + "'");
  os << text;
}

void check_format(const std::string& format) {
  if (format != "json" && format != "csv") throw ConfigError("format must be json or csv");
}

std::string cmd_info(const Options& o) {
  const RootSystem rs = RootSystem::parse(o.group);
  const FundamentalGroup pi = fundamental_group(rs);
  if (o.format == "csv") {
    std::ostringstream os;
    os << "key,value\n"
       << "group," << rs.name() << "\nrank," << rs.rank() << "\ndim," << rs.dim_g() << "\npositive_roots,"
       << rs.num_positive_roots() << "\nweyl_group_order," << rs.weyl_group_order() << "\npi_order," << pi.order() << "\n";
    for (const auto& root : rs.positive_roots()) os << "root," << join(root) << "\n";
    for (const auto& psi : pi.elements) {
      os << "pi_element,";
      for (std::size_t i = 0; i < psi.coords.size(); ++i) os << (i ? " " : "") << rational_string(psi.coords[i]);
      os << "\n";
    }
    return os.str();
  }
  Json j;
  j["group"] = rs.name();
  j["rank"] = rs.rank();
  j["dim"] = rs.dim_g();
  j["cartan"] = matrix_json(rs.cartan());
  j["symmetrizer"] = vector_json(rs.symmetrizer());
  j["positive_roots"] = rs.positive_roots();
  j["positive_coroots"] = rs.positive_coroots();
  j["rho"] = rs.rho();
  j["weyl_group_order"] = rs.weyl_group_order().str();
  Json elems = Json::array();
  for (const auto& psi : pi.elements) elems.push_back(vector_json(psi.coords));
  j["fundamental_group"] = {{"order", pi.order()}, {"elementary_divisors", pi.elementary_divisors}, {"elements", elems}};
  return j.dump(2) + "\n";
}

std::string cmd_weights(const Options& o) {
  const RootSystem rs = RootSystem::parse(o.group);
  const Weight lam = parse_weight(o.lambda, rs);
  const WeightSystem& ws = weight_system(rs, lam);
  if (o.format == "csv") {
    std::ostringstream os;
    for (std::size_t i = 0; i < rs.rank(); ++i) os << "mu" << i + 1 << ",";
    os << "multiplicity\n";
    for (const auto& [mu, m] : ws.entries()) {
      for (auto x : mu) os << x << ",";
      os << m << "\n";
    }
    return os.str();
  }
  Json j;
  j["group"] = rs.name();
  j["lambda"] = lam.to_ints();
  j["dim"] = weyl_dimension(rs, lam).str();
  j["regular"] = is_regular(rs, lam);
  j["in_root_lattice"] = rs.in_root_lattice(lam);
  Json entries = Json::array();
  for (const auto& [mu, m] : ws.entries()) entries.push_back({{"weight", mu}, {"multiplicity", m.str()}});
  j["weights"] = std::move(entries);
  const ALambda a = a_lambda(rs, lam);
  j["a_lambda"] = matrix_json(a.matrix());
  j["det_a_lambda"] = rational_string(a.determinant());
  return j.dump(2) + "\n";
}

ExperimentConfig config_from_flags(const Options& o) {
  ExperimentConfig cfg;
  cfg.group = o.group;
  cfg.lambda = o.lambda;
  cfg.a = CycleType::parse(o.a);
  cfg.b = CycleType::parse(o.b);
  cfg.n_schedule = parse_schedule(o.n);
  cfg.f = o.f;
  cfg.grid = o.grid;
  cfg.format = o.format;
  cfg.threads = o.threads;
  cfg.timings = o.timings;
  if (o.estimator == "biane") cfg.estimator = Estimator::Biane;
  else if (o.estimator != "auto") throw ConfigError("estimator must be auto or biane");
  return cfg;
}

std::string cmd_single(const Options& o, const std::string& path) {
  ExperimentConfig cfg = config_from_flags(o);
  parse_paths(path, cfg);
  const ConvergenceReport rep = run_experiment(cfg);
  if (rep.estimator_name == "hypothesis-violated") {
    const auto& v = rep.hypotheses;
    const auto& failures = cfg.estimator == Estimator::Biane ? v.failures_dimension
                           : cfg.b.empty()                   ? v.failures_theorem1
                                                             : v.failures_theorem2;
    std::string msg;
    for (const auto& f : failures) msg += (msg.empty() ? "" : "; ") + f;
    if (cfg.estimator == Estimator::Biane && msg.empty()) msg = "dimension estimate needs f = 1";
    throw HypothesisError(msg);
  }
  return render(rep);
}

/// Flags override the config file's format and output path.
std::string cmd_converge(Options& o, bool format_given, bool out_given) {
  ExperimentConfig cfg = load_config(o.config);
  if (format_given) cfg.format = o.format;
  if (!out_given) o.out = cfg.out;
  cfg.out = o.out;
  return render(run_experiment(cfg));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trace-moment integrals over compact Lie groups: exact, quadrature and leading-term evaluation"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "write the report to this file instead of stdout");
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };
  auto add_eval = [&](CLI::App* sub) {
    sub->add_option("--group", o.group, "group, e.g. A2 or A1xG2")->required();
    sub->add_option("--lambda", o.lambda, "highest weight in fundamental-weight coordinates, e.g. 1,1")->required();
    sub->add_option("--a", o.a, "cycle type alpha as exponents, e.g. 0,1");
    sub->add_option("--b", o.b, "cycle type beta (conjugated factors)");
    sub->add_option("--N", o.n, "N or a schedule such as 2:40:2");
    sub->add_option("--f", o.f, "class function 'weight:coef;...', empty for f = 1");
    sub->add_option("--grid", o.grid, "per-axis quadrature grid sizes, e.g. 64,64");
    sub->add_option("--threads", o.threads, "quadrature threads");
    sub->add_option("--estimator", o.estimator, "auto or biane");
    sub->add_flag("--timings", o.timings, "include per-row timings in the report");
    add_common(sub);
  };

  auto* info = app.add_subcommand("info", "root data and fundamental group");
  info->add_option("group,--group", o.group, "group, e.g. A2 or A1xG2")->required();
  add_common(info);

  auto* weights = app.add_subcommand("weights", "weight system of an irreducible representation");
  weights->add_option("group,--group", o.group, "group")->required();
  weights->add_option("lambda,--lambda", o.lambda, "highest weight")->required();
  add_common(weights);

  auto* exact = app.add_subcommand("exact", "exact moment from the character ring");
  auto* quad = app.add_subcommand("quad", "moment by torus quadrature");
  auto* asym = app.add_subcommand("asym", "closed-form leading term");
  for (auto* sub : {exact, quad, asym}) add_eval(sub);

  auto* converge = app.add_subcommand("converge", "convergence study from a config file");
  converge->add_option("config", o.config, "config file")->required()->check(CLI::ExistingFile);
  add_common(converge);

  CLI11_PARSE(app, argc, argv);

  try {
    check_format(o.format);
    std::string text;
    if (info->parsed()) text = cmd_info(o);
    else if (weights->parsed()) text = cmd_weights(o);
    else if (exact->parsed()) text = cmd_single(o, "exact");
    else if (quad->parsed()) text = cmd_single(o, "quad");
    else if (asym->parsed()) text = cmd_single(o, "asym");
    else if (converge->parsed())
      text = cmd_converge(o, converge->count("--format") > 0, converge->count("--out") > 0);
    if (!text.empty()) emit(text, o.out);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const HypothesisError& e) {
    std::cerr << "hypothesis violated: " << e.what() << "\n";
    return 3;
  } catch (const CapacityError& e) {
    std::cerr << "capacity exceeded: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 5;
  }
  return 0;
}
