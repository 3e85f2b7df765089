#pragma once

#include <string>
#include <vector>

namespace newscov {

/// Full command-line entry point, callable in-process for testing.
/// args excludes the program name. Returns the process exit code:
/// 0 success, 1 usage error, 2 data or runtime error.
int run_cli(const std::vector<std::string>& args);

}  // namespace newscov
