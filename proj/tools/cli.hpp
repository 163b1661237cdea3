#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gelfand::cli {

inline constexpr const char* kSchema = "gelfand-lab/1";

enum ExitCode { kOk = 0, kInvalid = 1, kRejected = 2 };

/// Runs one subcommand. `args` excludes the program name. Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

} // namespace gelfand::cli
