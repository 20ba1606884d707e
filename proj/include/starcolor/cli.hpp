#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace starcolor {

// Command-line front end. JSON report on `out`, human-readable notes on
// `err`. Returns the process exit code: 0 answered, 1 verification failure,
// 2 input error, 3 resource budget exceeded, 4 cross-check disagreement.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace starcolor
