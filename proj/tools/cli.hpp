#pragma once

#include <string>
#include <vector>

namespace anoctl {

inline constexpr int schema_version = 1;

// Runs one command line; returns the process exit code.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

} // namespace anoctl
