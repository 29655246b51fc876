#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ilconv::cli {

// The whole command-line surface, stream-injected so tests can drive it
// in-process. `args` excludes the program name. Exit codes:
//
//   0  every query answered, nothing failed
//   1  usage (bad flags, unknown subcommand or demo name)
//   2  some query came out Fails
//   3  parse errors in a scenario or expression
//   4  a query was refused at run time (uncertified tail, ...)
//   5  unreadable input file
//
// Parse errors trump refusals, refusals trump failures.
int main_entry(std::vector<std::string> args, std::ostream& out,
               std::ostream& err);

} // namespace ilconv::cli
