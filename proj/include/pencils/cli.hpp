#pragma once

#include <string>
#include <vector>

namespace pencils::cli {

// Entry point of the pencil tool. Exit codes: 0 = success and every
// applicable bound verdict holds, 2 = analysis ran but at least one bound
// verdict failed (falsification alert), 1 = usage or input error.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

}  // namespace pencils::cli
