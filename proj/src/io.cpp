#include "sigtaylor/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include <fmt/format.h>

namespace sigtaylor {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& where) {
  const std::string s = trim(text);
  double v = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (s.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v))
    throw InputError(where + ": not a finite number: '" + s + "'");
  return v;
}

std::ifstream open(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw InputError("cannot open " + file.string());
  return in;
}

}  // namespace

Path parse_path_csv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  std::vector<double> t, x;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string row = trim(line);
    if (row.empty()) continue;
    if (!header) {
      std::string h = row;
      if (h.rfind("\xEF\xBB\xBF", 0) == 0) h.erase(0, 3);
      if (h != "t,x") throw InputError(source + ": expected header 't,x'");
      header = true;
      continue;
    }
    const auto comma = row.find(',');
    if (comma == std::string::npos || row.find(',', comma + 1) != std::string::npos)
      throw InputError(fmt::format("{}:{}: expected two columns", source, lineno));
    const std::string where = fmt::format("{}:{}", source, lineno);
    t.push_back(parse_double(row.substr(0, comma), where));
    x.push_back(parse_double(row.substr(comma + 1), where));
  }
  if (!header) throw InputError(source + ": empty file");
  if (t.empty()) throw InputError(source + ": no samples");
  try {
    return Path(std::move(t), std::move(x));
  } catch (const PathError& e) {
    throw InputError(source + ": " + e.what());
  }
}

Path read_path_csv(const std::filesystem::path& file) {
  auto in = open(file);
  return parse_path_csv(in, file.string());
}

void write_path_csv(std::ostream& out, const Path& x) {
  out << "t,x\n";
  for (std::size_t i = 0; i < x.size(); ++i)
    out << format_number(x.times()[i]) << ',' << format_number(x.values()[i]) << '\n';
}

DerivTable parse_coeff_tsv(std::istream& in, const std::string& source) {
  DerivTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string row = trim(line);
    if (row.empty() || row[0] == '#') continue;
    const auto tab = row.find('\t');
    if (tab == std::string::npos) throw InputError(fmt::format("{}:{}: expected 'word<TAB>value'", source, lineno));
    const std::string w = trim(row.substr(0, tab));
    if (w == "word") continue;
    std::string rest = row.substr(tab + 1);
    if (const auto tab2 = rest.find('\t'); tab2 != std::string::npos) rest = rest.substr(0, tab2);
    Word word;
    try {
      word = Word::parse(w);
    } catch (const std::exception& e) {
      throw InputError(fmt::format("{}:{}: {}", source, lineno, e.what()));
    }
    if (!table.values.emplace(word, parse_double(rest, fmt::format("{}:{}", source, lineno))).second)
      throw InputError(fmt::format("{}:{}: duplicate word {}", source, lineno, w));
  }
  return table;
}

DerivTable read_coeff_tsv(const std::filesystem::path& file) {
  auto in = open(file);
  return parse_coeff_tsv(in, file.string());
}

void write_coeff_tsv(std::ostream& out, const DerivTable& table) {
  out << "word\tvalue\n";
  for (const auto& [w, v] : table.values) out << w.str() << '\t' << format_number(v) << '\n';
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{}", v);
}

}  // namespace sigtaylor
