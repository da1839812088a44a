#pragma once

#include <string>
#include <vector>

namespace pushout::cli {

// Exit codes: 0 success, 1 domain error (error name on stderr), 2 bad usage.
int run(const std::vector<std::string>& args);

}  // namespace pushout::cli
