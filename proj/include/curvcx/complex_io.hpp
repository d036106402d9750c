#pragma once

#include <string>

#include "curvcx/core.hpp"

namespace curvcx {

// JSON complex files. Degrees of infinite cells are written as "inf".
// emit_complex(parse_complex(t)) reproduces the cell lists in their order,
// and parse_complex(emit_complex(r)) == r.

RawComplex parse_complex(const std::string& text);
std::string emit_complex(const RawComplex& raw);

RawComplex read_complex_file(const std::string& path);
void write_complex_file(const std::string& path, const RawComplex& raw);

}  // namespace curvcx
