#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "sigtaylor/cli.hpp"
#include "sigtaylor/io.hpp"
#include "sigtaylor/registry.hpp"
#include "sigtaylor/signature.hpp"

using namespace sigtaylor;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "sigtaylor");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() / ("sigtaylor_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name, std::ios::binary) << text;
    return (dir / name).string();
  }
  std::string file(const std::string& name) const { return (dir / name).string(); }
};

std::string slurp(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// value column of a quantity/value table
double quantity(const std::string& out, const std::string& key) {
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(key + "\t", 0) == 0) return std::stod(line.substr(key.size() + 1));
  FAIL("missing quantity " << key);
  return 0.0;
}

const char* kWiggle =
    "t,x\n0,0.1\n0.1,0.25\n0.2,0.2\n0.3,0.05\n0.4,0.12\n0.5,0.3\n0.6,0.26\n0.7,0.18\n0.8,0.22\n0.9,0.35\n1,0.3\n";

}  // namespace

TEST_CASE("path csv") {
  SUBCASE("jumps and round trip") {
    std::istringstream in("t,x\n0,0\n0.5,1\n0.5,2\n1,1.5\n");
    const Path x = parse_path_csv(in);
    CHECK(x.size() == 4);
    CHECK(x.has_jumps());
    CHECK(x.value_at(0.5) == 2.0);
    std::ostringstream out;
    write_path_csv(out, x);
    std::istringstream back(out.str());
    CHECK(parse_path_csv(back) == x);
  }
  SUBCASE("bit-exact decimal round trip") {
    const Path x({0.0, 0.1, 1.0 / 3.0}, {std::sqrt(2.0), -1e-300, 12345.678901234567});
    std::ostringstream out;
    write_path_csv(out, x);
    std::istringstream back(out.str());
    CHECK(parse_path_csv(back) == x);
  }
  SUBCASE("single sample is a point") {
    std::istringstream in("t,x\n0,0.7\n");
    CHECK(parse_path_csv(in).length() == 0.0);
  }
  SUBCASE("rejections") {
    for (const char* bad : {"", "time,x\n0,0\n", "t,x\n", "t,x\n0,a\n", "t,x\n0,1,2\n", "t,x\n0,0\n1,0\n0.5,0\n",
                            "t,x\n0,nan\n", "t,x\n1,0\n2,0\n", "t,x\n0,0\n0,1\n0,2\n"}) {
      std::istringstream in(bad);
      CHECK_THROWS_AS(parse_path_csv(in), InputError);
    }
    CHECK_THROWS_AS(read_path_csv("/nonexistent/p.csv"), InputError);
  }
}

TEST_CASE("coefficient tsv") {
  DerivTable t;
  t.values[Word()] = 1.5;
  t.values[Word::parse("01")] = -0.25;
  t.values[Word::parse("1")] = 1.0 / 3.0;
  std::ostringstream out;
  write_coeff_tsv(out, t);
  std::istringstream back(out.str());
  CHECK(parse_coeff_tsv(back).values == t.values);

  std::istringstream dup("e\t1\ne\t2\n");
  CHECK_THROWS_AS(parse_coeff_tsv(dup), InputError);
  std::istringstream bad_word("012\t1\n");
  CHECK_THROWS_AS(parse_coeff_tsv(bad_word), InputError);
  std::istringstream no_tab("01 1\n");
  CHECK_THROWS_AS(parse_coeff_tsv(no_tab), InputError);
}

TEST_CASE("functional registry") {
  const Path line = Path::line(0.0, 1.0, 1.0);
  const Path x = Path({0.0, 0.5, 1.0}, {0.2, 0.7, 0.4});
  CHECK(make_functional("S:01")(line) == doctest::Approx(0.5));
  CHECK(make_functional("S_01")(line) == doctest::Approx(0.5));
  CHECK(make_functional("terminal")(x) == 0.4);
  CHECK(make_functional("increment")(x) == doctest::Approx(0.2));
  CHECK(make_functional("power:3")(x) == doctest::Approx(0.008));
  CHECK(make_functional("exp_increment")(x) == doctest::Approx(std::exp(0.2)));
  CHECK(make_functional("exp_affine:1,0")(x) == doctest::Approx(std::exp(0.2)));
  CHECK(make_functional("exp_integral")(x) == doctest::Approx(std::exp(0.3)));
  CHECK(make_functional("ito:2")(x) == doctest::Approx(ito_iterated(1.0, 0.2, 2)));
  CHECK(make_functional("lookback")(x) == doctest::Approx(0.5));
  CHECK(make_payoff("call:0.1")(x) == doctest::Approx(0.1));
  CHECK(make_payoff("lookback_soft:0.001")(x) <= 0.5);
  CHECK(make_payoff("lookback")(x) == doctest::Approx(0.5));
  CHECK(make_payoff("power:2").name == "power:2");
  CHECK(static_cast<bool>(make_payoff("square").closed_form));
  for (const char* bad : {"nope", "power:x", "power:-1", "S:012", "exp_affine:1", "lookback_soft:0", "call:"})
    CHECK_THROWS_AS(make_payoff(bad), std::invalid_argument);
  for (const auto& [name, doc] : registry_help()) {
    CHECK(!doc.empty());
    if (name.find(':') == std::string::npos && name.find('[') == std::string::npos) CHECK_NOTHROW(make_payoff(name));
  }
}

TEST_CASE("config json") {
  RunConfig c;
  c.command = "price";
  c.payoff = "lookback";
  c.mc.seed = 123456789012345ULL;
  c.mc.antithetic = false;
  c.diff.time_scheme = TimeScheme::forward1;
  c.diff.h_x = 3.3e-6;
  c.sigma_coeff = 0.35;
  const RunConfig back = config_from_json(config_to_json(c));
  CHECK(config_to_json(back) == config_to_json(c));
  CHECK(back.mc.seed == c.mc.seed);
  CHECK(back.diff.time_scheme == TimeScheme::forward1);

  CHECK(config_from_json("{}").order == RunConfig{}.order);
  CHECK_THROWS_AS(config_from_json("{\"ordr\": 3}"), InputError);
  CHECK_THROWS_AS(config_from_json("{\"mc\": {\"paths\": 3}}"), InputError);
  CHECK_THROWS_AS(config_from_json("{\"order\": \"three\"}"), InputError);
  CHECK_THROWS_AS(config_from_json("[1]"), InputError);
  CHECK_THROWS_AS(config_from_json("{"), InputError);
}

TEST_CASE("sig command") {
  TempDir tmp;
  const std::string line = tmp.write("line.csv", "t,x\n0,0\n1,1\n");
  const Run r = cli({"sig", "--path", line, "--depth", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("word\tvalue\n") == 0);
  CHECK(r.out.find("\n01\t0.5\n") != std::string::npos);
  CHECK(cli({"sig", "--path", line, "--word", "01"}).out == "word\tvalue\n01\t0.5\n");

  const std::string wig = tmp.write("wig.csv", kWiggle);
  const Run exact = cli({"sig", "--path", wig, "--depth", "3"});
  const Run strat = cli({"sig", "--path", wig, "--depth", "3", "--method", "strat"});
  CHECK(exact.code == 0);
  CHECK(strat.code == 0);
  CHECK(quantity(exact.out, "11") == doctest::Approx(quantity(strat.out, "11")).epsilon(1e-12));
  CHECK(quantity(exact.out, "011") == doctest::Approx(quantity(strat.out, "011")).epsilon(0.2));
}

TEST_CASE("validation errors exit with 1") {
  TempDir tmp;
  const std::string line = tmp.write("line.csv", "t,x\n0,0\n1,1\n");
  const Run unknown = cli({"sig", "--path", line, "--bogus"});
  CHECK(unknown.code == 1);
  CHECK(unknown.err.find("Usage") != std::string::npos);
  CHECK(cli({}).code == 1);
  CHECK(cli({"frobnicate"}).code == 1);
  CHECK(cli({"sig"}).code == 1);
  CHECK(cli({"sig", "--path", tmp.file("missing.csv")}).code == 1);
  CHECK(cli({"sig", "--path", tmp.write("bad.csv", "t,x\n0,0\n1,zz\n")}).code == 1);
  CHECK(cli({"sig", "--path", line, "--depth", "13"}).code == 1);
  CHECK(cli({"sig", "--path", line, "--method", "ito"}).code == 1);
  CHECK(cli({"deriv", "--func", "nope", "--path", line, "--word", "1"}).code == 1);
  CHECK(cli({"converge", "--func", "terminal", "--path", line, "--orders", "3..1"}).code == 1);
  CHECK(cli({"sig", "--config", tmp.write("c.json", "{\"bogus\": 1}")}).code == 1);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("deriv command and kink flag") {
  TempDir tmp;
  const std::string base = tmp.write("base.csv", "t,x\n0,0.2\n0.5,0.4\n");
  const Run r = cli({"deriv", "--func", "exp_increment", "--path", base, "--depth", "2", "--report",
                     tmp.file("coeffs.tsv")});
  CHECK(r.code == 0);
  CHECK(quantity(r.out, "11") == doctest::Approx(std::exp(0.2)));
  CHECK(quantity(r.out, "0") == doctest::Approx(0.0));
  CHECK(read_coeff_tsv(tmp.file("coeffs.tsv")).values.size() == 7);

  const Run one = cli({"deriv", "--func", "S:01", "--path", base, "--word", "1"});
  CHECK(one.code == 0);
  CHECK(quantity(one.out, "1") == doctest::Approx(0.5).epsilon(1e-6));

  const std::string flat = tmp.write("flat.csv", "t,x\n0,0\n1,0\n");
  const Run kink = cli({"deriv", "--func", "call", "--path", flat, "--word", "1"});
  CHECK(kink.code == 2);
  CHECK(kink.err.find("kink") != std::string::npos);
}

TEST_CASE("fte, converge and ive commands") {
  TempDir tmp;
  const std::string base = tmp.write("base.csv", "t,x\n0,0.2\n0.5,0.4\n");
  const std::string pert = tmp.write("pert.csv", kWiggle);
  const Run r = cli({"fte", "--func", "S:011", "--base", base, "--pert", pert, "--order", "4", "--report",
                     tmp.file("terms.tsv"), "--json", tmp.file("fte.json")});
  CHECK(r.code == 0);
  CHECK(std::abs(quantity(r.out, "remainder")) <= 1e-9);
  CHECK(slurp(tmp.file("terms.tsv")).find("word\tcoefficient\tsignature\tproduct\n") == 0);
  const auto j = nlohmann::json::parse(slurp(tmp.file("fte.json")));
  CHECK(j.at("summary").at("order") == 4);
  CHECK(j.at("config").at("func") == "S:011");
  CHECK(j.at("table").size() == 15);

  const Run conv = cli({"converge", "--func", "exp_increment", "--path", pert, "--orders", "1..5"});
  CHECK(conv.code == 0);
  std::istringstream rows(conv.out);
  std::string line;
  std::getline(rows, line);
  CHECK(line == "K\ttruncation\tremainder\tbound");
  double prev = INFINITY;
  int n = 0;
  while (std::getline(rows, line)) {
    std::istringstream cols(line);
    double K, trunc, rem, bound;
    cols >> K >> trunc >> rem >> bound;
    CHECK(std::abs(rem) < prev);
    CHECK(std::abs(rem) <= bound);
    prev = std::abs(rem);
    ++n;
  }
  CHECK(n == 5);

  const Run ive = cli({"ive", "--payoff", "terminal", "--path", pert, "--order", "2"});
  CHECK(ive.code == 0);
  CHECK(std::abs(quantity(ive.out, "residual")) <= 1e-9);
  CHECK(quantity(ive.out, "exact") == doctest::Approx(0.3));
}

TEST_CASE("price and hedge commands") {
  TempDir tmp;
  const Run r = cli({"price", "--payoff", "square", "--sigma-coeff", "0.3", "--sigma-pricing", "0.2", "--order", "2",
                     "--mc", "4000", "--steps", "16", "--coeff-mc", "200", "--coeff-steps", "8", "--seed", "5"});
  CHECK(r.code == 0);
  const double price = quantity(r.out, "sig_price");
  const double se = quantity(r.out, "sig_price_se");
  CHECK(quantity(r.out, "closed_form") == doctest::Approx(0.04));
  CHECK(std::abs(price - 0.04) <= 3.0 * se + 1e-3);

  const std::string ticks = tmp.write("ticks.csv", kWiggle);
  const std::string coeffs = tmp.write("c.tsv", "word\tvalue\ne\t0\n0\t0\n1\t0\n00\t0\n01\t1\n10\t0\n11\t0\n");
  const Run h = cli({"hedge", "--payoff", "S:01", "--coeffs", coeffs, "--path", ticks, "--report", tmp.file("p.tsv")});
  CHECK(h.code == 0);
  CHECK(quantity(h.out, "order") == 3);
  CHECK(std::abs(quantity(h.out, "error")) <= 1e-12);
  CHECK(slurp(tmp.file("p.tsv")).find("lambda\terror\n1\t") == 0);
  CHECK(cli({"hedge", "--payoff", "S:01", "--coeffs", coeffs, "--path", ticks, "--order", "4"}).code == 1);
}

TEST_CASE("verify command") {
  const Run r = cli({"verify", "--depth", "4", "--paths", "20", "--seed", "7"});
  CHECK(r.code == 0);
  std::istringstream rows(r.out);
  std::string line;
  std::getline(rows, line);
  int suites = 0;
  while (std::getline(rows, line)) {
    std::istringstream cols(line);
    std::string name, status;
    std::size_t checks;
    double err, tol;
    cols >> name >> checks >> err >> tol >> status;
    CHECK(status == "pass");
    CHECK(err < 1e-8);
    CHECK(checks > 0);
    ++suites;
  }
  CHECK(suites == 5);
}

TEST_CASE("reproducible runs and config round trip") {
  TempDir tmp;
  const std::string base = tmp.write("base.csv", "t,x\n0,0.2\n0.5,0.4\n");
  const std::string pert = tmp.write("pert.csv", kWiggle);
  const std::vector<std::string> args = {"fte",   "--func", "sine_integral", "--base", base, "--pert", pert,
                                         "--order", "3",   "--report",      tmp.file("r1.tsv")};
  const Run a = cli(args);
  auto again = args;
  again.back() = tmp.file("r2.tsv");
  const Run b = cli(again);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(slurp(tmp.file("r1.tsv")) == slurp(tmp.file("r2.tsv")));

  const std::vector<std::string> price = {"price", "--payoff", "exp_integral", "--order", "2", "--mc", "2000",
                                          "--steps", "8", "--coeff-mc", "100", "--coeff-steps", "8", "--seed", "9",
                                          "--emit-config", tmp.file("cfg.json")};
  const Run p1 = cli(price);
  CHECK(p1.code == 0);
  const Run p2 = cli({"--config", tmp.file("cfg.json")});
  const Run p3 = cli({"price", "--config", tmp.file("cfg.json")});
  CHECK(p2.code == 0);
  CHECK(p1.out == p2.out);
  CHECK(p1.out == p3.out);
  const Run p4 = cli({"price", "--config", tmp.file("cfg.json"), "--seed", "10"});
  CHECK(p4.out != p1.out);
  CHECK(config_from_json(slurp(tmp.file("cfg.json"))).mc.seed == 9);
}
