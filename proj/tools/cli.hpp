#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace latidx::cli {

// Exit codes: 0 ok, 1 usage or internal error, 2 rejected input (parse,
// validation, not well-rounded), 3 budget exceeded.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace latidx::cli
