#pragma once

// Command-line front end. Every command prints one JSON document.

#include <ostream>
#include <string>
#include <vector>

namespace qforms::cli {

/// Exit status: 0 computed, 1 parse error, 2 precondition error,
/// 3 search exhausted.
int run(const std::vector<std::string>& args, std::ostream& out);

}  // namespace qforms::cli
