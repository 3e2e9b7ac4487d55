#include "sigtaylor/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "sigtaylor/expansion.hpp"
#include "sigtaylor/io.hpp"
#include "sigtaylor/registry.hpp"
#include "sigtaylor/signature.hpp"
#include "sigtaylor/verify.hpp"

namespace sigtaylor {

using json = nlohmann::ordered_json;

namespace {

// ---- config (de)serialization ----

const char* scheme_name(TimeScheme s) { return s == TimeScheme::forward1 ? "forward1" : "forward2"; }

TimeScheme scheme_from(const std::string& s) {
  if (s == "forward1") return TimeScheme::forward1;
  if (s == "forward2") return TimeScheme::forward2;
  throw InputError("time scheme must be forward1 or forward2");
}

json diff_json(const DiffConfig& d) {
  return {{"h_x", d.h_x},
          {"h_t", d.h_t},
          {"growth_x", d.growth_x},
          {"growth_t", d.growth_t},
          {"scale_steps", d.scale_steps},
          {"time_scheme", scheme_name(d.time_scheme)},
          {"max_order", d.max_order},
          {"max_malliavin_order", d.max_malliavin_order},
          {"use_exact", d.use_exact},
          {"kink_tolerance", d.kink_tolerance}};
}

json mc_json(const MCConfig& m) {
  return {{"n_paths", m.n_paths}, {"seed", m.seed}, {"antithetic", m.antithetic}, {"steps", m.steps}};
}

template <class T>
void read_key(const json& j, const char* key, T& into, std::vector<std::string>& seen) {
  if (!j.contains(key)) return;
  seen.emplace_back(key);
  into = j.at(key).get<T>();
}

void reject_unknown(const json& j, const std::vector<std::string>& seen, const std::string& where) {
  for (const auto& [k, v] : j.items())
    if (std::find(seen.begin(), seen.end(), k) == seen.end()) throw InputError(fmt::format("unknown config key '{}{}'", where, k));
}

// ---- tabular output ----

using Row = std::vector<std::string>;

struct Table {
  Row header;
  std::vector<Row> rows;
};

struct Outcome {
  Table primary;                  ///< written to stdout
  std::optional<Table> report;    ///< written to --report
  json summary = json::object();  ///< part of --json
  int code = 0;
  std::vector<std::string> warnings;
};

void write_table(std::ostream& out, const Table& t) {
  auto line = [&](const Row& r) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "\t" : "") << r[i];
    out << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

json table_json(const Table& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    json o = json::object();
    for (std::size_t i = 0; i < r.size(); ++i) o[t.header[i]] = r[i];
    rows.push_back(o);
  }
  return rows;
}

std::string num(double v) { return format_number(v); }

json num_json(double v) { return std::isfinite(v) ? json(v) : json(format_number(v)); }

Table key_values(const json& summary) {
  Table t{{"quantity", "value"}, {}};
  for (const auto& [k, v] : summary.items()) {
    if (v.is_string())
      t.rows.push_back({k, v.get<std::string>()});
    else if (v.is_number_float())
      t.rows.push_back({k, num(v.get<double>())});
    else
      t.rows.push_back({k, v.dump()});
  }
  return t;
}

std::ofstream open_out(const std::string& file) {
  std::ofstream f(file, std::ios::binary);
  if (!f) throw InputError("cannot write " + file);
  return f;
}

// ---- validation helpers ----

const std::string& need(const std::string& value, const char* flag) {
  if (value.empty()) throw InputError(fmt::format("{} is required", flag));
  return value;
}

void need_range(int v, int lo, int hi, const char* flag) {
  if (v < lo || v > hi) throw InputError(fmt::format("{} must be in [{}, {}]", flag, lo, hi));
}

std::vector<int> parse_orders(const std::string& text) {
  std::vector<int> out;
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw InputError("bad --orders '" + text + "'");
    return v;
  };
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const int a = to_int(text.substr(0, dots));
    const int b = to_int(text.substr(dots + 2));
    if (b < a) throw InputError("bad --orders '" + text + "'");
    for (int k = a; k <= b; ++k) out.push_back(k);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_int(item));
  }
  if (out.empty()) throw InputError("--orders is empty");
  for (int k : out) need_range(k, 0, Signature::kMaxDepth, "--orders");
  return out;
}

// ---- subcommands ----

Outcome cmd_sig(const RunConfig& c) {
  const Path x = read_path_csv(need(c.path, "--path"));
  if (c.method != "exact" && c.method != "strat") throw InputError("--method must be exact or strat");
  std::vector<Word> words;
  int depth = c.depth;
  if (!c.word.empty()) {
    words.push_back(Word::parse(c.word));
    depth = words.back().size();
  }
  need_range(depth, 0, Signature::kMaxDepth, "--depth");
  if (words.empty()) words = enumerate_words(depth);
  const Signature s = c.method == "exact" ? signature(x, depth) : signature_strat(x, depth);
  Outcome o;
  o.primary.header = {"word", "value"};
  for (const auto& w : words) o.primary.rows.push_back({w.str(), num(s[w])});
  o.summary["length"] = x.length();
  o.summary["depth"] = depth;
  return o;
}

Outcome cmd_deriv(const RunConfig& c) {
  const Functional f = make_functional(need(c.func, "--func"));
  const Path x = read_path_csv(need(c.path, "--path"));
  std::vector<Word> words;
  if (!c.word.empty()) {
    words.push_back(Word::parse(c.word));
  } else {
    need_range(c.depth, 0, c.diff.max_order, "--depth");
    words = enumerate_words(c.depth);
  }
  Outcome o;
  o.primary.header = {"word", "value"};
  bool space = false;
  for (const auto& w : words) {
    o.primary.rows.push_back({w.str(), num(delta_word(f, x, w, c.diff))});
    space = space || w.count1() > 0;
  }
  o.report = o.primary;
  if (space) {
    const KinkCheck k = delta_x_checked(f, x, c.diff);
    o.summary["kink_suspect"] = k.kink_suspect;
    if (k.kink_suspect) {
      o.warnings.push_back(fmt::format("kink suspected: one-sided Delta_x {} vs {}", num(k.backward), num(k.forward)));
      o.code = 2;
    }
  }
  return o;
}

Table terms_table(const std::vector<ExpansionTerm>& terms) {
  Table t{{"word", "coefficient", "signature", "product"}, {}};
  for (const auto& e : terms) t.rows.push_back({e.word.str(), num(e.coefficient), num(e.signature), num(e.product)});
  return t;
}

Outcome cmd_fte(const RunConfig& c) {
  const Functional f = make_functional(need(c.func, "--func"));
  const Path y = read_path_csv(need(c.pert, "--pert"));
  need_range(c.order, 0, Signature::kMaxDepth, "--order");
  const ExpansionReport r =
      c.base.empty() ? maclaurin(f, y, c.order, c.diff) : fte(f, read_path_csv(c.base), y, c.order, c.diff);
  Outcome o;
  o.summary["functional"] = r.functional;
  o.summary["base"] = c.base.empty() ? "zero" : c.base;
  o.summary["order"] = r.order;
  o.summary["truncation"] = num_json(r.truncation);
  if (r.exact) o.summary["exact"] = num_json(*r.exact);
  if (r.remainder) o.summary["remainder"] = num_json(*r.remainder);
  o.primary = key_values(o.summary);
  o.report = terms_table(r.terms);
  return o;
}

Outcome cmd_ive(const RunConfig& c) {
  const Path x = read_path_csv(need(c.path, "--path"));
  const Functional g = as_functional(make_payoff(need(c.payoff, "--payoff")), x.length());
  need_range(c.order, 1, c.diff.max_malliavin_order + 1, "--order");
  const IveReport r = ive_expand(g, x, c.order, c.diff);
  Outcome o;
  for (std::size_t k = 0; k < r.order_terms.size(); ++k) o.summary[fmt::format("order_{}", k)] = num_json(r.order_terms[k]);
  o.summary["truncation"] = num_json(r.truncation);
  o.summary["exact"] = num_json(r.exact);
  o.summary["residual"] = num_json(r.residual);
  o.primary = key_values(o.summary);
  return o;
}

Outcome cmd_price(const RunConfig& c) {
  const Payoff g = make_payoff(need(c.payoff, "--payoff"));
  need_range(c.order, 0, c.diff.max_order, "--order");
  if (!(c.horizon > 0)) throw InputError("--T must be positive");
  if (c.sigma_coeff < 0 || c.sigma_pricing < 0) throw InputError("volatilities must be non-negative");
  if (c.mc.n_paths == 0 || c.coeff_mc == 0) throw InputError("Monte Carlo sizes must be positive");
  if (c.mc.steps < 1 || c.coeff_steps < 1) throw InputError("step counts must be positive");
  const BachelierMeasure pricing{c.sigma_pricing, c.x0};
  MCConfig coeff_cfg = c.mc;
  coeff_cfg.n_paths = c.coeff_mc;
  coeff_cfg.steps = c.coeff_steps;
  const SigPriceReport r = sig_price(g, c.sigma_coeff, c.order, pricing, c.horizon, coeff_cfg, c.mc, c.diff);
  MCConfig ref_cfg = c.mc;
  ref_cfg.seed = c.mc.seed + 1;
  const McEstimate mc = mc_price(g, pricing, c.horizon, ref_cfg);

  Outcome o;
  o.summary["payoff"] = g.name;
  o.summary["order"] = c.order;
  o.summary["sig_price"] = num_json(r.price);
  o.summary["sig_price_se"] = num_json(r.std_error);
  o.summary["mc_price"] = num_json(mc.value);
  o.summary["mc_price_se"] = num_json(mc.std_error);
  if (g.closed_form) o.summary["closed_form"] = num_json(g.closed_form(pricing, c.horizon));
  o.summary["kink_suspect"] = r.kink_suspect;
  o.primary = key_values(o.summary);
  Table t{{"word", "coefficient", "expected_signature", "product"}, {}};
  for (const auto& e : r.terms)
    t.rows.push_back({e.word.str(), num(e.coefficient), num(e.expected_signature), num(e.product)});
  o.report = t;
  if (r.kink_suspect) {
    o.warnings.push_back("kink suspected in the embedded payoff; coefficients are unreliable (try lookback_soft)");
    o.code = 2;
  }
  return o;
}

Outcome cmd_hedge(const RunConfig& c, bool order_given) {
  const Functional g = make_functional(need(c.payoff, "--payoff"));
  const DerivTable coeffs = read_coeff_tsv(need(c.coeffs, "--coeffs"));
  const Path x = read_path_csv(need(c.path, "--path"));
  if (coeffs.values.empty()) throw InputError("coefficient table is empty");
  const int K = order_given ? c.order : coeffs.values.rbegin()->first.size() + 1;
  need_range(K, 1, Signature::kMaxDepth + 1, "--order");
  for (const auto& a : enumerate_words(K - 1))
    if (!coeffs.contains(a)) throw InputError(fmt::format("coefficient table lacks word {}", a.str()));
  const HedgeResult h = hedge_error(g, coeffs, x, K);
  Outcome o;
  o.summary["order"] = K;
  o.summary["error"] = num_json(h.error);
  o.summary["slope"] = num_json(h.slope);
  o.primary = key_values(o.summary);
  Table t{{"lambda", "error"}, {}};
  for (const auto& [lambda, e] : h.profile) t.rows.push_back({num(lambda), num(e)});
  o.report = t;
  return o;
}

Outcome cmd_converge(const RunConfig& c) {
  const Functional f = make_functional(need(c.func, "--func"));
  const Path x = read_path_csv(need(c.path, "--path"));
  if (c.n_eps < 1) throw InputError("--n-eps must be positive");
  Outcome o;
  o.primary.header = {"K", "truncation", "remainder", "bound"};
  for (int K : parse_orders(c.orders)) {
    const ExpansionReport r = maclaurin(f, x, K, c.diff);
    std::string bound = "NA";
    try {
      bound = num(remainder_bound(f, x, K, c.n_eps, c.diff, c.safety).sum_bound);
    } catch (const std::out_of_range&) {
    } catch (const NumericalError&) {
    }
    o.primary.rows.push_back({std::to_string(K), num(r.truncation), r.remainder ? num(*r.remainder) : "NA", bound});
  }
  return o;
}

Outcome cmd_verify(const RunConfig& c) {
  need_range(c.depth, 1, 6, "--depth");
  if (c.verify_paths == 0) throw InputError("--paths must be positive");
  Outcome o;
  o.primary.header = {"suite", "checks", "max_rel_error", "tolerance", "status"};
  for (const auto& s : run_identity_suites(c.depth, c.verify_paths, c.mc.seed)) {
    o.primary.rows.push_back({s.name, std::to_string(s.checks), fmt::format("{:.3e}", s.max_error),
                              fmt::format("{:.0e}", s.tolerance), s.pass() ? "pass" : "FAIL"});
    if (!s.pass()) o.code = 2;
  }
  return o;
}

std::optional<std::string> prescan_config(int argc, const char* const* argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) return std::string(argv[i + 1]);
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  return std::nullopt;
}

std::string slurp(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw InputError("cannot open " + file);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string config_to_json(const RunConfig& c) {
  json j = {{"command", c.command},     {"path", c.path},
            {"base", c.base},           {"pert", c.pert},
            {"coeffs", c.coeffs},       {"func", c.func},
            {"payoff", c.payoff},       {"word", c.word},
            {"method", c.method},       {"orders", c.orders},
            {"depth", c.depth},         {"order", c.order},
            {"n_eps", c.n_eps},         {"safety", c.safety},
            {"sigma_coeff", c.sigma_coeff}, {"sigma_pricing", c.sigma_pricing},
            {"x0", c.x0},               {"horizon", c.horizon},
            {"coeff_mc", c.coeff_mc},   {"coeff_steps", c.coeff_steps},
            {"verify_paths", c.verify_paths}, {"diff", diff_json(c.diff)},
            {"mc", mc_json(c.mc)},      {"report", c.report},
            {"json", c.json},           {"verbosity", c.verbosity}};
  return j.dump(2) + "\n";
}

RunConfig config_from_json(std::string_view text) {
  RunConfig c;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("config must be a JSON object");
  try {
    std::vector<std::string> seen;
    read_key(j, "command", c.command, seen);
    read_key(j, "path", c.path, seen);
    read_key(j, "base", c.base, seen);
    read_key(j, "pert", c.pert, seen);
    read_key(j, "coeffs", c.coeffs, seen);
    read_key(j, "func", c.func, seen);
    read_key(j, "payoff", c.payoff, seen);
    read_key(j, "word", c.word, seen);
    read_key(j, "method", c.method, seen);
    read_key(j, "orders", c.orders, seen);
    read_key(j, "depth", c.depth, seen);
    read_key(j, "order", c.order, seen);
    read_key(j, "n_eps", c.n_eps, seen);
    read_key(j, "safety", c.safety, seen);
    read_key(j, "sigma_coeff", c.sigma_coeff, seen);
    read_key(j, "sigma_pricing", c.sigma_pricing, seen);
    read_key(j, "x0", c.x0, seen);
    read_key(j, "horizon", c.horizon, seen);
    read_key(j, "coeff_mc", c.coeff_mc, seen);
    read_key(j, "coeff_steps", c.coeff_steps, seen);
    read_key(j, "verify_paths", c.verify_paths, seen);
    read_key(j, "report", c.report, seen);
    read_key(j, "json", c.json, seen);
    read_key(j, "verbosity", c.verbosity, seen);
    if (j.contains("diff")) {
      seen.emplace_back("diff");
      const json& d = j.at("diff");
      std::vector<std::string> ds;
      std::string scheme = scheme_name(c.diff.time_scheme);
      read_key(d, "h_x", c.diff.h_x, ds);
      read_key(d, "h_t", c.diff.h_t, ds);
      read_key(d, "growth_x", c.diff.growth_x, ds);
      read_key(d, "growth_t", c.diff.growth_t, ds);
      read_key(d, "scale_steps", c.diff.scale_steps, ds);
      read_key(d, "time_scheme", scheme, ds);
      read_key(d, "max_order", c.diff.max_order, ds);
      read_key(d, "max_malliavin_order", c.diff.max_malliavin_order, ds);
      read_key(d, "use_exact", c.diff.use_exact, ds);
      read_key(d, "kink_tolerance", c.diff.kink_tolerance, ds);
      c.diff.time_scheme = scheme_from(scheme);
      reject_unknown(d, ds, "diff.");
    }
    if (j.contains("mc")) {
      seen.emplace_back("mc");
      const json& m = j.at("mc");
      std::vector<std::string> ms;
      read_key(m, "n_paths", c.mc.n_paths, ms);
      read_key(m, "seed", c.mc.seed, ms);
      read_key(m, "antithetic", c.mc.antithetic, ms);
      read_key(m, "steps", c.mc.steps, ms);
      reject_unknown(m, ms, "mc.");
    }
    reject_unknown(j, seen, "");
  } catch (const json::exception& e) {
    throw InputError(std::string("bad config value: ") + e.what());
  }
  return c;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  try {
    if (auto file = prescan_config(argc, argv)) c = config_from_json(slurp(*file));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  CLI::App app{"Functional Taylor expansions, signatures and signature pricing for one-dimensional paths."};
  app.name("sigtaylor");
  app.require_subcommand(0, 1);
  app.failure_message(CLI::FailureMessage::help);
  std::string footer =
      "Paths are CSV files with header t,x; repeated t rows encode jumps.\n"
      "Coefficient tables are TSV rows word<TAB>value (written by deriv --report).\n"
      "Exit codes: 0 success, 1 invalid input, 2 numerical failure (kink flags, failing suites).\n\n"
      "Functionals and payoffs:\n";
  for (const auto& [name, doc] : registry_help()) footer += fmt::format("  {:<22}{}\n", name, doc);
  app.footer(footer);
  std::string config_file, emit_file;
  app.add_option("--config", config_file, "JSON run config; explicit flags override its values");
  app.add_option("--emit-config", emit_file, "write the effective run config as JSON, then run");
  app.add_option("-v,--verbosity", c.verbosity, "extra diagnostics on stderr")->capture_default_str();

  auto diff_opts = [&](CLI::App* s) {
    s->add_option("--h-x", c.diff.h_x, "base spatial step")->capture_default_str();
    s->add_option("--h-t", c.diff.h_t, "base temporal step")->capture_default_str();
    s->add_option("--max-order", c.diff.max_order, "largest finite-difference word length")->capture_default_str();
    s->add_option("--use-exact", c.diff.use_exact, "use closed-form derivatives when available")
        ->capture_default_str();
  };
  auto mc_opts = [&](CLI::App* s) {
    s->add_option("--mc", c.mc.n_paths, "Monte Carlo paths")->capture_default_str();
    s->add_option("--seed", c.mc.seed, "random seed")->capture_default_str();
    s->add_option("--steps", c.mc.steps, "time steps per simulated path")->capture_default_str();
    s->add_option("--antithetic", c.mc.antithetic, "antithetic pairs")->capture_default_str();
  };
  auto outputs = [&](CLI::App* s, const char* report_doc) {
    s->add_option("--report", c.report, report_doc);
    s->add_option("--json", c.json, "JSON report with the config, the summary and the table");
  };

  auto* sig = app.add_subcommand("sig", "truncated signature of a path; stdout TSV: word, value");
  sig->add_option("--path", c.path, "path CSV");
  sig->add_option("--depth", c.depth, "truncation depth")->capture_default_str();
  sig->add_option("--method", c.method, "exact (segment exponentials) or strat (trapezoid sums)")
      ->capture_default_str();
  sig->add_option("--word", c.word, "print a single coordinate, e.g. 0110");
  outputs(sig, "copy of the stdout table");

  auto* deriv = app.add_subcommand("deriv", "functional derivatives Delta_a f(X); stdout TSV: word, value");
  deriv->add_option("--func", c.func, "registered functional");
  deriv->add_option("--path", c.path, "base path CSV");
  deriv->add_option("--word", c.word, "word, rightmost letter applied first; all words up to --depth if absent");
  deriv->add_option("--depth", c.depth, "table depth")->capture_default_str();
  diff_opts(deriv);
  outputs(deriv, "coefficient TSV (word, value) for hedge --coeffs");

  auto* fte_cmd = app.add_subcommand("fte", "functional Taylor expansion f(X + Y); stdout TSV: quantity, value");
  fte_cmd->add_option("--func", c.func, "registered functional");
  fte_cmd->add_option("--base", c.base, "base path CSV (length-zero path at the perturbation start if absent)");
  fte_cmd->add_option("--pert", c.pert, "perturbation path CSV");
  fte_cmd->add_option("--order", c.order, "K: words with |a| < K")->capture_default_str();
  diff_opts(fte_cmd);
  outputs(fte_cmd, "terms TSV: word, coefficient, signature, product");

  auto* ive = app.add_subcommand("ive", "intrinsic value expansion of a payoff; stdout TSV: quantity, value");
  ive->add_option("--payoff", c.payoff, "registered payoff");
  ive->add_option("--path", c.path, "path CSV; its length is the horizon");
  ive->add_option("--order", c.order, "K: Malliavin orders below K")->capture_default_str();
  diff_opts(ive);
  outputs(ive, "copy of the stdout table");

  auto* price = app.add_subcommand("price", "signature price vs Monte Carlo; stdout TSV: quantity, value");
  price->add_option("--payoff", c.payoff, "registered payoff");
  price->add_option("--sigma-coeff", c.sigma_coeff, "volatility of the coefficient embedding")->capture_default_str();
  price->add_option("--sigma-pricing", c.sigma_pricing, "volatility of the pricing measure")->capture_default_str();
  price->add_option("--order", c.order, "K: words with |a| <= K")->capture_default_str();
  price->add_option("--T", c.horizon, "maturity")->capture_default_str();
  price->add_option("--x0", c.x0, "spot")->capture_default_str();
  price->add_option("--coeff-mc", c.coeff_mc, "paths of the coefficient embedding")->capture_default_str();
  price->add_option("--coeff-steps", c.coeff_steps, "steps of the coefficient embedding")->capture_default_str();
  mc_opts(price);
  diff_opts(price);
  outputs(price, "terms TSV: word, coefficient, expected_signature, product");

  auto* hedge = app.add_subcommand("hedge", "static signature hedge error on a path; stdout TSV: quantity, value");
  hedge->add_option("--payoff", c.payoff, "registered functional");
  hedge->add_option("--coeffs", c.coeffs, "coefficient TSV: word, value");
  hedge->add_option("--path", c.path, "tick path CSV");
  auto* hedge_order = hedge->add_option("--order", c.order, "K: hedge with |a| < K (default: longest word + 1)");
  outputs(hedge, "profile TSV: lambda, error");

  auto* converge = app.add_subcommand("converge", "Maclaurin truncation vs order; stdout TSV: K, truncation, remainder, bound");
  converge->add_option("--func", c.func, "registered functional");
  converge->add_option("--path", c.path, "path CSV");
  converge->add_option("--orders", c.orders, "range a..b or list a,b,c")->capture_default_str();
  converge->add_option("--n-eps", c.n_eps, "bump levels for the sampled seminorms")->capture_default_str();
  converge->add_option("--safety", c.safety, "factor on the sampled seminorms")->capture_default_str();
  diff_opts(converge);
  outputs(converge, "copy of the stdout table");

  auto* verify = app.add_subcommand("verify", "identity suites; stdout TSV: suite, checks, max_rel_error, tolerance, status");
  verify->add_option("--depth", c.depth, "word length")->capture_default_str();
  verify->add_option("--paths", c.verify_paths, "random paths per suite")->capture_default_str();
  verify->add_option("--seed", c.mc.seed, "random seed")->capture_default_str();
  outputs(verify, "copy of the stdout table");

  for (auto* s : app.get_subcommands({})) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  for (auto* s : app.get_subcommands()) c.command = s->get_name();
  if (c.command.empty()) {
    err << app.help();
    return 1;
  }

  try {
    if (!emit_file.empty()) open_out(emit_file) << config_to_json(c);
    Outcome o;
    if (c.command == "sig") o = cmd_sig(c);
    else if (c.command == "deriv") o = cmd_deriv(c);
    else if (c.command == "fte") o = cmd_fte(c);
    else if (c.command == "ive") o = cmd_ive(c);
    else if (c.command == "price") o = cmd_price(c);
    else if (c.command == "hedge") o = cmd_hedge(c, hedge_order->count() > 0);
    else if (c.command == "converge") o = cmd_converge(c);
    else if (c.command == "verify") o = cmd_verify(c);
    else throw InputError("unknown command '" + c.command + "'");

    write_table(out, o.primary);
    if (!c.report.empty()) {
      auto f = open_out(c.report);
      write_table(f, o.report ? *o.report : o.primary);
    }
    if (!c.json.empty()) {
      json j;
      j["config"] = json::parse(config_to_json(c));
      j["summary"] = o.summary;
      j["table"] = table_json(o.report ? *o.report : o.primary);
      open_out(c.json) << j.dump(2) << '\n';
    }
    for (const auto& w : o.warnings) err << "warning: " << w << '\n';
    return o.code;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace sigtaylor
