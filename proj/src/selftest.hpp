// Condensed invariant suite behind the CLI selftest command.
#pragma once

#include <functional>
#include <string>

namespace lchs {

// Runs every registered invariant; returns the number of failures. The
// report callback receives one line per check ("ok <name>" / "FAIL <name>:
// detail").
int run_selftest(const std::function<void(const std::string&)>& report);

}  // namespace lchs
