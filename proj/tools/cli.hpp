#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace ssgh::cli {

// args[0] is the program name. Returns 0 on success, 1 on a domain error and
// 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr);

}  // namespace ssgh::cli
