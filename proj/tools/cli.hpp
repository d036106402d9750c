#pragma once

#include <ostream>

namespace curvcx {

/// Exit codes: 0 success, 1 validation or analysis failure, 2 usage or parse error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace curvcx
