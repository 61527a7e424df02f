#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace grz::cli {

/// Exit codes: 0 affirmative, 1 negative answer with witness printed,
/// 2 usage or input error, 3 resource bound exhausted (inconclusive).
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

} // namespace grz::cli
