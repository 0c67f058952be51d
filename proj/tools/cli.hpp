#pragma once
// The vhf command line, callable in-process (presets and tests use this).

#include <ostream>
#include <string>
#include <vector>

namespace vhf::cli {

/// args excludes the program name. Exit codes: 0 success, 2 domain or
/// usage error, 3 budget exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string sha256_hex(const std::string& data);

/// Directory holding presets (and the field files they reference).
std::string default_preset_dir();

}  // namespace vhf::cli
