#ifndef SULCHECK_CLI_HPP
#define SULCHECK_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace sulcheck {

// Exit codes: 0 satisfied, 1 not satisfied / disagreement, 2 usage or
// parse error, 3 resource cap exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sulcheck

#endif
