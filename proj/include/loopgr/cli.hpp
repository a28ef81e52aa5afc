#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace loopgr::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kSchema = 2,
    kPrecision = 3,
    kSingular = 4,
    kDomain = 5,
};

// Runs one command line (without the program name). Reads the input
// document from `in` when the input path is "-".
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace loopgr::cli
