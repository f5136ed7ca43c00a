#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace borsut {

// Exit status: 0 all checks pass, 1 a verification failed, 2 usage or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace borsut
