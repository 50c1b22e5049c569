#pragma once

#include <string>

#include "thinsets/thinset.hpp"

namespace thinsets {

// Structured set-spec block:
//   {"h1": {"family":"pow","c":1.05}, "h2": {"family":"pow","c":1.05},
//    "psi": {"kappa": 1.0, "mode": "derivative"}, "sign": "plus"}
// Unknown keys are rejected. "h2" defaults to "h1"; psi mode defaults to
// "derivative"; sign defaults to "plus". pow_explog uses "a" instead of "c".
ThinSetSpec parse_set_config(const std::string& json_text);

ThinSetSpec load_set_config(const std::string& path);

}  // namespace thinsets
