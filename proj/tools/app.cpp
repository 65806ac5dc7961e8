#include "app.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <toml.hpp>

#include "mgk/coinvariants.hpp"
#include "mgk/derham.hpp"
#include "mgk/error.hpp"
#include "mgk/mellin.hpp"
#include "mgk/polynomial.hpp"

namespace mgk::app {

using nlohmann::json;

namespace {

// ---- config parsing -------------------------------------------------------

using Locations = std::map<std::string, std::string>;

std::string where(const toml::source_region& r) {
  std::ostringstream os;
  if (r.path) os << *r.path << ":";
  os << r.begin.line << ":" << r.begin.column;
  return os.str();
}

json from_toml(const toml::node& node, const std::string& path, Locations& locs) {
  locs[path] = where(node.source());
  if (auto* t = node.as_table()) {
    json out = json::object();
    for (auto&& [k, v] : *t) {
      std::string key(k.str());
      out[key] = from_toml(v, path.empty() ? key : path + "." + key, locs);
    }
    return out;
  }
  if (auto* a = node.as_array()) {
    json out = json::array();
    for (std::size_t i = 0; i < a->size(); ++i)
      out.push_back(from_toml(*a->get(i), path + "[" + std::to_string(i) + "]", locs));
    return out;
  }
  if (auto* s = node.as_string()) return s->get();
  if (auto* i = node.as_integer()) return i->get();
  if (auto* b = node.as_boolean()) return b->get();
  if (node.is_floating_point())
    throw InputError(locs[path] + ": floating-point values are not accepted; write rationals as \"p/q\"");
  throw InputError(locs[path] + ": unsupported value type");
}

class Reader {
 public:
  Reader(std::string origin, Locations locs) : origin_(std::move(origin)), locs_(std::move(locs)) {}

  [[noreturn]] void fail(const std::string& path, const std::string& what) const {
    auto it = locs_.find(path);
    std::string at = it != locs_.end() ? it->second : origin_;
    throw InputError(at + ": " + (path.empty() ? "" : "'" + path + "': ") + what);
  }

  void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) const {
    if (!obj.is_object()) fail(path, "expected a table");
    for (const auto& [k, v] : obj.items()) {
      bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; });
      if (!ok) fail(join(path, k), "unknown key");
    }
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }
  static std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

  long integer(const json& v, const std::string& path) const {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<long>();
  }

  Rational rational(const json& v, const std::string& path) const {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (!v.is_string()) fail(path, "expected a rational string \"p/q\"");
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const InputError& e) {
      fail(path, e.what());
    }
  }

  std::string string(const json& v, const std::string& path) const {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
  }

  const json& array(const json& v, const std::string& path) const {
    if (!v.is_array()) fail(path, "expected an array");
    return v;
  }

  IntVector int_vector(const json& v, const std::string& path) const {
    IntVector out;
    const json& a = array(v, path);
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(integer(a[i], at(path, i)));
    return out;
  }

  QVector rational_vector(const json& v, const std::string& path) const {
    QVector out;
    const json& a = array(v, path);
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(rational(a[i], at(path, i)));
    return out;
  }

  IntMatrix int_matrix(const json& v, const std::string& path) const {
    const json& rows = array(v, path);
    const std::size_t n = rows.size();
    if (n == 0) fail(path, "empty matrix");
    IntMatrix m(n);
    for (std::size_t r = 0; r < n; ++r) {
      IntVector row = int_vector(rows[r], at(path, r));
      if (row.size() != n) fail(at(path, r), "matrix must be square");
      for (std::size_t c = 0; c < n; ++c) m(r, c) = row[c];
    }
    return m;
  }

  RootDatumSpec root_datum(const json& v, const std::string& path) const {
    only_keys(v, path, {"preset", "rank", "generators", "factors"});
    RootDatumSpec spec;
    if (!v.contains("preset")) fail(path, "missing key 'preset'");
    spec.preset = string(v["preset"], join(path, "preset"));
    if (v.contains("rank")) {
      long r = integer(v["rank"], join(path, "rank"));
      if (r < 0 || r > 64) fail(join(path, "rank"), "rank out of range");
      spec.rank = static_cast<int>(r);
    }
    if (v.contains("generators")) {
      const std::string p = join(path, "generators");
      const json& gens = array(v["generators"], p);
      for (std::size_t i = 0; i < gens.size(); ++i) spec.generators.push_back(int_matrix(gens[i], at(p, i)));
    }
    if (v.contains("factors")) {
      const std::string p = join(path, "factors");
      const json& fs = array(v["factors"], p);
      for (std::size_t i = 0; i < fs.size(); ++i) spec.factors.push_back(root_datum(fs[i], at(p, i)));
    }
    return spec;
  }

 private:
  std::string origin_;
  Locations locs_;
};

Convention parse_convention(const std::string& s) {
  if (s == "unsigned") return Convention::kUnsigned;
  if (s == "signed") return Convention::kSigned;
  throw InputError("convention must be 'unsigned' or 'signed', got '" + s + "'");
}

json spec_json(const RootDatumSpec& s) {
  json j{{"preset", s.preset}, {"rank", s.rank}};
  if (!s.generators.empty()) {
    json gens = json::array();
    for (const auto& g : s.generators) {
      json rows = json::array();
      for (std::size_t r = 0; r < g.size(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < g.size(); ++c) row.push_back(g(r, c));
        rows.push_back(row);
      }
      gens.push_back(rows);
    }
    j["generators"] = gens;
  }
  if (!s.factors.empty()) {
    json fs = json::array();
    for (const auto& f : s.factors) fs.push_back(spec_json(f));
    j["factors"] = fs;
  }
  return j;
}

// ---- report helpers ------------------------------------------------------

json strings(const QVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
    rows.push_back(row);
  }
  return rows;
}

json module_json(const MonodromicModule& m, const std::vector<Matrix>& u) {
  json nu = json::array(), us = json::array();
  for (const auto& n : m.nu) nu.push_back(matrix_json(n));
  for (const auto& x : u) us.push_back(matrix_json(x));
  return {{"coset_rep", strings(m.coset_rep)}, {"dim", m.dim()}, {"nu", nu}, {"u", us}};
}

json contract_json(const ContractReport& c) {
  return {{"ok", c.ok}, {"equations_checked", c.equations_checked}, {"failures", c.failures}};
}

json convolution_json(const GammaConvolutionReport& r, Convention conv) {
  json kappa = json::array();
  for (const auto& k : r.kappa_reference) kappa.push_back(matrix_json(k));
  return {{"convention", to_string(conv)},
          {"iso_ok", r.iso_ok},
          {"equivariance_ok", r.equivariance_ok},
          {"eta_independent", r.eta_independent},
          {"lifts_checked", r.lifts_checked},
          {"kappa_reference", kappa},
          {"diagnostics", r.diagnostics}};
}

MatrixGroup group_of(const RunConfig& cfg) {
  return weyl_group(build_root_datum(cfg.root_datum, cfg.options.cap), cfg.options.cap);
}

GammaData gamma_of(const RunConfig& cfg) {
  return make_gamma_data(group_of(cfg), cfg.lambda_family(), cfg.c, cfg.sigma_or_default());
}

GammaOptions gamma_options(const RunConfig& cfg) {
  GammaOptions o;
  o.convention = cfg.options.convention;
  return o;
}

TorusPoint xi_of(const RunConfig& cfg) {
  QVector xi = cfg.xi_or_default();
  if (xi.size() != cfg.rank())
    throw InputError("xi has " + std::to_string(xi.size()) + " entries, rank is " + std::to_string(cfg.rank()));
  return TorusPoint{xi};
}

unsigned long factorial(std::size_t n) {
  unsigned long f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t b = 1;
  for (std::size_t i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// ---- checks -------------------------------------------------------------

struct Outcome {
  bool passed = false;
  json details;
};

Outcome key_prop(const RunConfig& cfg) {
  GammaData g = gamma_of(cfg);
  KeyPropReport r = check_key_prop(g, xi_of(cfg), gamma_options(cfg));
  json d = convolution_json(r.convolution, cfg.options.convention);
  EXiModule e = e_xi_module(g.weyl, xi_of(cfg));
  d["module"] = module_json(e.module, e.structure.u);
  d["stabilizer_order"] = r.stabilizer_order;
  d["fiber_dim"] = r.fiber_dim;
  d["contract"] = contract_json(r.contract);
  return {r.passed, d};
}

Outcome unipotent(const RunConfig& cfg) {
  if (cfg.options.n_max < 1) throw InputError("options.n_max must be at least 1");
  TowerReport r = check_unipotent_tower(gamma_of(cfg), xi_of(cfg), cfg.options.n_max, gamma_options(cfg));
  json levels = json::array();
  for (const auto& l : r.levels)
    levels.push_back({{"n", l.n}, {"dim", l.dim}, {"iso_ok", l.iso_ok}, {"projection_ok", l.projection_ok},
                      {"diagnostics", l.diagnostics}});
  return {r.passed, {{"n_max", cfg.options.n_max}, {"levels", levels}}};
}

Outcome e_theta(const RunConfig& cfg) {
  EThetaReport r = check_e_theta(gamma_of(cfg), xi_of(cfg), gamma_options(cfg));
  json d = convolution_json(r.convolution, cfg.options.convention);
  d["components"] = r.components;
  d["total_dim"] = r.total_dim;
  d["contract"] = contract_json(r.contract);
  return {r.passed, d};
}

Outcome multiplier(const RunConfig& cfg) {
  GammaData g = gamma_of(cfg);
  TorusPoint xi = xi_of(cfg);
  if (cfg.options.window < kMinDeRhamWindow)
    throw InputError("options.window must be at least " + std::to_string(kMinDeRhamWindow));
  MultiplierReport r = multiplier_dimension(g, xi, cfg.options.window);
  json factors = json::array();
  QVector neg;
  for (const auto& m : xi.rep) neg.push_back(-m);
  for (std::size_t i = 0; i < r.factors.size(); ++i) {
    const auto& f = r.factors[i];
    factors.push_back({{"s", pair(g.lambdas[i], neg).str()},
                       {"dim_ker", f.dim_ker},
                       {"dim_coker", f.dim_coker},
                       {"window", f.window},
                       {"stabilized", f.stabilized}});
  }
  return {r.product == 1 && r.stabilized, {{"factors", factors}, {"product", r.product}, {"stabilized", r.stabilized}}};
}

Outcome coinvariants(const RunConfig& cfg) {
  MatrixGroup w = group_of(cfg);
  MatrixGroup stab = stabilizer(w, xi_of(cfg));
  CoinvariantAlgebra alg = coinvariant_algebra(stab);
  json basis = json::array();
  for (const auto& m : alg.basis) basis.push_back(monomial_string(m));
  json dets = json::array();
  for (const auto& a : alg.action) dets.push_back(determinant(a).str());
  json d{{"group_order", w.order()},
         {"stabilizer_order", stab.order()},
         {"reflection_generated", alg.reflection_generated},
         {"dim", alg.dim},
         {"basis", basis},
         {"action_determinants", dets},
         {"invariant_degree_bound", alg.degree_bound}};
  bool passed = true;
  if (alg.reflection_generated) {
    passed = alg.dim == stab.order();
  } else {
    d["open_question"] = "stabilizer is not reflection-generated; dim recorded, not compared";
  }
  return {passed, d};
}

Outcome wprime_check(const RunConfig& cfg) {
  MatrixGroup w = group_of(cfg);
  const auto lambdas = cfg.lambda_family();
  FamilyReport fam = check_lambda_family(w, lambdas, cfg.sigma_or_default());
  if (!fam.w_stable) throw InputError("family not W-stable");
  WPrime wp = wprime(w, lambdas);
  unsigned long prod = 1;
  for (auto m : wp.multiplicities) prod *= factorial(m);
  const mpz_class expected = mpz_class(static_cast<unsigned long>(w.order())) * prod;
  std::vector<std::size_t> coset_sizes;
  bool cosets_ok = true;
  for (const auto& e : w.elements()) {
    std::size_t n = wp.lifts(e, lambdas).size();
    if (n != prod) cosets_ok = false;
    if (std::find(coset_sizes.begin(), coset_sizes.end(), n) == coset_sizes.end()) coset_sizes.push_back(n);
  }
  json distinct = json::array();
  for (const auto& l : wp.distinct) distinct.push_back(l);
  json d{{"distinct", distinct},
         {"multiplicities", wp.multiplicities},
         {"s_lambda_order", wp.s_lambda_order.get_str()},
         {"order", wp.order.get_str()},
         {"expected_order", expected.get_str()},
         {"lift_coset_sizes", coset_sizes},
         {"image_check", wp.image_check},
         {"image_size", wp.image_size},
         {"s_k_lambda_order", wp.s_k_lambda_order},
         {"pr_onto", fam.pr_onto},
         {"span_rank", fam.span_rank},
         {"elementary_divisors", fam.elementary_divisors},
         {"all_sigma_positive", fam.all_sigma_positive}};
  bool image_ok = !fam.pr_onto || wp.image_check;
  if (!image_ok) d["open_question"] = "image of W' differs from S_{k,lambda} although pr is onto";
  return {wp.order == expected && cosets_ok && image_ok, d};
}

Outcome tor_demo(const RunConfig& cfg) {
  TorusPoint xi = xi_of(cfg);
  const std::size_t n = cfg.rank();
  MonodromicModule k = kummer_module(xi);
  std::vector<std::size_t> self = tor(k, k);
  std::vector<std::size_t> binom;
  for (std::size_t i = 0; i <= n; ++i) binom.push_back(binomial(n, i));
  QVector other = xi.rep;
  if (n > 0) other[0] = other[0] + Rational(1, 2);
  std::vector<std::size_t> distinct = tor(k, kummer_module(TorusPoint{other}));
  bool zeros = std::all_of(distinct.begin(), distinct.end(), [](std::size_t x) { return x == 0; });
  std::vector<std::size_t> uni = tor(unipotent_module(xi, 2).module, k);
  return {self == binom && zeros,
          {{"rank", n}, {"self", self}, {"expected_self", binom}, {"distinct_cosets", distinct},
           {"unipotent2_with_kummer", uni}}};
}

Outcome dispatch(const std::string& check, const RunConfig& cfg) {
  if (check == "key-prop") return key_prop(cfg);
  if (check == "unipotent") return unipotent(cfg);
  if (check == "e-theta") return e_theta(cfg);
  if (check == "multiplier") return multiplier(cfg);
  if (check == "coinvariants") return coinvariants(cfg);
  if (check == "wprime") return wprime_check(cfg);
  if (check == "tor-demo") return tor_demo(cfg);
  throw InputError("unknown check '" + check + "'");
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

const std::vector<std::string> kChecks = {"key-prop", "unipotent", "e-theta", "multiplier",
                                          "coinvariants", "wprime", "tor-demo"};

std::size_t RunConfig::rank() const {
  if (root_datum.preset == "SL" || root_datum.preset == "GL") return static_cast<std::size_t>(root_datum.rank);
  return build_root_datum(root_datum, options.cap).rank;
}

std::vector<IntVector> RunConfig::lambda_family() const {
  if (lambdas) {
    for (const auto& l : *lambdas)
      if (l.size() != rank()) throw InputError("cocharacter has wrong rank");
    return *lambdas;
  }
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < rank(); ++i) {
    IntVector e(rank(), 0);
    e[i] = 1;
    out.push_back(e);
  }
  return out;
}

IntVector RunConfig::sigma_or_default() const { return sigma ? *sigma : IntVector(rank(), 1); }

QVector RunConfig::xi_or_default() const { return xi ? *xi : QVector(rank(), Rational(0)); }

RunConfig parse_config(const std::string& text, const std::string& origin) {
  Locations locs;
  json doc;
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw InputError(origin + ": byte " + std::to_string(e.byte) + ": malformed JSON");
    }
  } else {
    try {
      toml::table t = toml::parse(text, origin);
      doc = from_toml(t, "", locs);
    } catch (const toml::parse_error& e) {
      throw InputError(where(e.source()) + ": " + std::string(e.description()));
    }
  }
  Reader rd(origin, locs);
  rd.only_keys(doc, "", {"root_datum", "lambdas", "c", "sigma", "xi", "checks", "options"});
  RunConfig cfg;
  if (doc.contains("root_datum")) cfg.root_datum = rd.root_datum(doc["root_datum"], "root_datum");
  if (doc.contains("lambdas")) {
    std::vector<IntVector> ls;
    const json& a = rd.array(doc["lambdas"], "lambdas");
    for (std::size_t i = 0; i < a.size(); ++i) ls.push_back(rd.int_vector(a[i], Reader::at("lambdas", i)));
    cfg.lambdas = ls;
  }
  if (doc.contains("c")) cfg.c = rd.rational(doc["c"], "c");
  if (doc.contains("sigma")) cfg.sigma = rd.int_vector(doc["sigma"], "sigma");
  if (doc.contains("xi")) cfg.xi = rd.rational_vector(doc["xi"], "xi");
  if (doc.contains("checks")) {
    const json& a = rd.array(doc["checks"], "checks");
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::string c = rd.string(a[i], Reader::at("checks", i));
      if (std::find(kChecks.begin(), kChecks.end(), c) == kChecks.end())
        rd.fail(Reader::at("checks", i), "unknown check '" + c + "'");
      cfg.checks.push_back(c);
    }
  }
  if (doc.contains("options")) {
    const json& o = doc["options"];
    rd.only_keys(o, "options", {"n_max", "window", "convention", "cap"});
    if (o.contains("n_max")) cfg.options.n_max = static_cast<int>(rd.integer(o["n_max"], "options.n_max"));
    if (o.contains("window")) cfg.options.window = static_cast<int>(rd.integer(o["window"], "options.window"));
    if (o.contains("convention")) {
      try {
        cfg.options.convention = parse_convention(rd.string(o["convention"], "options.convention"));
      } catch (const InputError& e) {
        rd.fail("options.convention", e.what());
      }
    }
    if (o.contains("cap")) {
      long cap = rd.integer(o["cap"], "options.cap");
      if (cap < 1) rd.fail("options.cap", "must be positive");
      cfg.options.cap = static_cast<std::size_t>(cap);
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot read config");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

json echo(const RunConfig& cfg) {
  json lambdas = json::array();
  if (cfg.lambdas)
    for (const auto& l : *cfg.lambdas) lambdas.push_back(l);
  json j{{"root_datum", spec_json(cfg.root_datum)},
         {"c", cfg.c.str()},
         {"options",
          {{"n_max", cfg.options.n_max},
           {"window", cfg.options.window},
           {"convention", to_string(cfg.options.convention)},
           {"cap", cfg.options.cap}}}};
  if (cfg.lambdas) j["lambdas"] = lambdas;
  if (cfg.sigma) j["sigma"] = *cfg.sigma;
  if (cfg.xi) j["xi"] = strings(*cfg.xi);
  return j;
}

json run_check(const std::string& check, const RunConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  json report{{"schema", kSchema}, {"version", kVersion}, {"check", check}, {"input", echo(cfg)}};
  try {
    Outcome o = dispatch(check, cfg);
    report["passed"] = o.passed;
    report["details"] = o.details;
  } catch (const ComputationError& e) {
    report["passed"] = false;
    report["details"] = {{"error", e.what()}};
  } catch (const PreconditionError& e) {
    throw InputError(e.what());
  }
  report["timing_ms"] = elapsed_ms(t0);
  return report;
}

std::vector<SuiteCase> suite_cases(const std::string& profile) {
  if (profile != "smoke" && profile != "full") throw InputError("profile must be 'smoke' or 'full'");
  std::vector<SuiteCase> cases;
  auto q = [](std::initializer_list<Rational> v) { return QVector(v); };
  const Rational h(1, 2), t(1, 3), tt(2, 3);
  struct Family {
    std::string name;
    RootDatumSpec spec;
    std::vector<IntVector> lambdas;
    std::vector<QVector> xis;
  };
  std::vector<Family> fams = {
      {"GL2", {"GL", 2, {}, {}}, {{1, 0}, {0, 1}}, {q({0, 0}), q({h, h}), q({t, tt})}},
      {"GL2x2", {"GL", 2, {}, {}}, {{1, 0}, {1, 0}, {0, 1}, {0, 1}}, {q({0, 0})}},
  };
  if (profile == "full")
    fams.push_back({"GL3", {"GL", 3, {}, {}}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                    {q({0, 0, 0}), q({0, 0, h}), q({t, t, t})}});
  auto label = [](const QVector& xi) {
    std::string s;
    for (std::size_t i = 0; i < xi.size(); ++i) s += (i ? "," : "") + xi[i].str();
    return s;
  };
  auto add = [&](const std::string& check, const Family& f, const QVector& xi, const Rational& c) {
    RunConfig cfg;
    cfg.root_datum = f.spec;
    cfg.lambdas = f.lambdas;
    cfg.xi = xi;
    cfg.c = c;
    cases.push_back({check + "/" + f.name + "/xi=" + label(xi) + "/c=" + c.str(), check, cfg});
  };
  for (const auto& f : fams) {
    for (const auto& xi : f.xis) {
      std::vector<Rational> cs{Rational(1)};
      if (f.name == "GL2") cs = {Rational(1), Rational(-1), t};
      for (const auto& c : cs) {
        add("key-prop", f, xi, c);
        add("multiplier", f, xi, c);
      }
      add("unipotent", f, xi, Rational(1));
      add("e-theta", f, xi, Rational(1));
    }
    add("wprime", f, f.xis.front(), Rational(1));
  }
  auto coinv = [&](const std::string& name, RootDatumSpec spec, QVector xi) {
    RunConfig cfg;
    cfg.root_datum = std::move(spec);
    cfg.xi = xi;
    cases.push_back({"coinvariants/" + name + "/xi=" + label(xi), "coinvariants", cfg});
  };
  coinv("GL2", {"GL", 2, {}, {}}, q({0, 0}));
  coinv("GL2", {"GL", 2, {}, {}}, q({t, tt}));
  RunConfig tor1;
  tor1.root_datum = {"GL", 1, {}, {}};
  cases.push_back({"tor-demo/GL1", "tor-demo", tor1});
  RunConfig tor2;
  cases.push_back({"tor-demo/GL2", "tor-demo", tor2});
  if (profile == "full") {
    coinv("GL3", {"GL", 3, {}, {}}, q({0, 0, 0}));
    coinv("GL3", {"GL", 3, {}, {}}, q({0, 0, h}));
    coinv("B2", {"B", 2, {}, {}}, q({0, 0}));
    RunConfig tor3;
    tor3.root_datum = {"GL", 3, {}, {}};
    cases.push_back({"tor-demo/GL3", "tor-demo", tor3});
  }
  return cases;
}

json run_suite(const std::string& profile, const std::vector<SuiteCase>& cases) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<json> reports(cases.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) {
      try {
        reports[i] = run_check(cases[i].check, cases[i].config);
        reports[i]["id"] = cases[i].id;
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  const std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < std::min(n, cases.size()); ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  std::sort(reports.begin(), reports.end(),
            [](const json& a, const json& b) { return a["id"].get<std::string>() < b["id"].get<std::string>(); });
  bool passed = std::all_of(reports.begin(), reports.end(), [](const json& r) { return r["passed"].get<bool>(); });
  std::size_t failed = static_cast<std::size_t>(
      std::count_if(reports.begin(), reports.end(), [](const json& r) { return !r["passed"].get<bool>(); }));
  return {{"schema", kSchema},   {"version", kVersion},       {"check", "suite"},
          {"profile", profile},  {"passed", passed},          {"cases", reports.size()},
          {"failed", failed},    {"reports", reports},        {"timing_ms", elapsed_ms(t0)}};
}

std::string human_summary(const json& report) {
  std::ostringstream os;
  auto line = [&](const json& r, const std::string& name) {
    os << (r["passed"].get<bool>() ? "PASS " : "FAIL ") << name;
    const json& d = r.value("details", json::object());
    if (d.contains("error")) os << "  error: " << d["error"].get<std::string>();
    for (const char* key : {"stabilizer_order", "fiber_dim", "components", "total_dim", "dim", "product", "order",
                            "lifts_checked", "eta_independent", "self"}) {
      if (d.contains(key)) os << "  " << key << "=" << d[key].dump();
    }
    if (d.contains("levels")) os << "  levels=" << d["levels"].size();
    os << "\n";
    if (d.contains("diagnostics"))
      for (const auto& msg : d["diagnostics"]) os << "    " << msg.get<std::string>() << "\n";
    if (d.contains("open_question")) os << "    open question: " << d["open_question"].get<std::string>() << "\n";
  };
  if (report["check"] == "suite") {
    for (const auto& r : report["reports"]) line(r, r["id"].get<std::string>());
    os << report["cases"].get<std::size_t>() - report["failed"].get<std::size_t>() << "/"
       << report["cases"].get<std::size_t>() << " passed (" << report["profile"].get<std::string>() << ")\n";
  } else {
    line(report, report["check"].get<std::string>());
  }
  return os.str();
}

json without_timing(json report) {
  if (report.is_object()) {
    report.erase("timing_ms");
    for (auto& [k, v] : report.items()) v = without_timing(v);
  } else if (report.is_array()) {
    for (auto& v : report) v = without_timing(v);
  }
  return report;
}

}  // namespace mgk::app
