#pragma once

#include <string>
#include <vector>

namespace gradlab::cli {

/// Entry point behind the `gradlab` binary. Exit codes: 0 success, 1 verdict
/// contradicts the field's claims flags, 2 usage errors, 3 runtime failures.
int run_cli(const std::vector<std::string>& args);

}  // namespace gradlab::cli
