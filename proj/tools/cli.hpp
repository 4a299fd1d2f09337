#ifndef STACKMST_TOOLS_CLI_HPP
#define STACKMST_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace stackmst::cli {

/// Exit codes shared by every subcommand.
inline constexpr int exit_ok = 0;
inline constexpr int exit_invalid = 1;
inline constexpr int exit_budget = 2;

/// Runs the stackmst command line. `args` excludes the program name. Input
/// named "-" is read from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

/// FNV-1a 64 of the canonical instance text, as 16 hex digits.
std::string instance_digest(const std::string& canonical_text);

/// RFC 4180 field quoting: fields containing a comma, quote or line break
/// are wrapped in quotes with inner quotes doubled.
std::string csv_field(const std::string& field);

} // namespace stackmst::cli

#endif // STACKMST_TOOLS_CLI_HPP
