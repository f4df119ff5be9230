#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cmdp {

/// Runs one subcommand. Exit code 0 on success, 2 on bad input, 1 when
/// --assert is given and the reported property is false.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cmdp
