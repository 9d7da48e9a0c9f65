#ifndef FOON_CLI_HPP
#define FOON_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "foon/model.hpp"

namespace foon {
namespace cli {

// Goal selector `name[:state1,state2,...][#ing1,ing2,...]`, e.g.
// `soup:hot#carrot,onion`. Throws std::invalid_argument on bad syntax.
ObjectNode parse_goal_spec(const std::string &spec);

// Dispatches one command. args excludes the program name. Exit status:
// 0 success, 1 domain failure (no tree, invalid tree, parse errors, I/O),
// 2 usage error. Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

} // namespace cli
} // namespace foon

#endif
