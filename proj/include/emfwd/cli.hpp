#pragma once

// Command-line front end. Exposed as a library call so tests can drive it
// in-process. Exit codes: 0 success, 1 validation failure, 2 numerical
// non-convergence (partial results are still written), 64 usage errors.

#include <string>
#include <vector>

namespace emfwd::cli {

int run(const std::vector<std::string>& args);

}  // namespace emfwd::cli
