#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "sigtaylor/funcderiv.hpp"
#include "sigtaylor/path.hpp"

namespace sigtaylor {

/// Malformed input file or argument.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// CSV with header `t,x`, one sample per row; repeated t rows encode jumps.
Path parse_path_csv(std::istream& in, const std::string& source = "<stream>");
Path read_path_csv(const std::filesystem::path& file);
void write_path_csv(std::ostream& out, const Path& x);

/// TSV rows `word \t value` (an optional `word\tvalue` header is skipped).
DerivTable parse_coeff_tsv(std::istream& in, const std::string& source = "<stream>");
DerivTable read_coeff_tsv(const std::filesystem::path& file);
void write_coeff_tsv(std::ostream& out, const DerivTable& table);

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double v);

}  // namespace sigtaylor
