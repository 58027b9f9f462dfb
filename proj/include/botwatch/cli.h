#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace botwatch::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 2;      // unreadable input, unwritable output, bad flow file
inline constexpr int kExitConfig = 3;  // bad flags, config, whitelist or scenario spec

/// Runs one command line (args excludes the program name). Reports go to the
/// --out path or to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace botwatch::cli
