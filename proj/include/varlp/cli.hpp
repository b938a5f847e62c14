#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace varlp {

/// Entry point of the `varlp` command; `args` excludes the program name.
/// Returns 0 when everything checked passes, 1 when an inequality is
/// violated and 2 on usage or input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace varlp
