#pragma once

#include <ostream>

namespace sdn5g {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitConfig = 3,
    kExitRuntime = 4,
};

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace sdn5g
