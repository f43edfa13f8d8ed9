#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cmap {

// Runs one CLI invocation (args exclude the program name). Exit code 0 on
// success / all checks passing, 1 when a check suite finds a violation,
// 2 on usage or domain errors. `in` backs `--map -` and `--spec -`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            std::istream& in);

} // namespace cmap
