#pragma once

#include <string>

#include "mforge/tensor.hpp"

namespace mforge {

/// Shortest round-trippable decimal text for a double ("%.17g", '.' decimal
/// separator). Used everywhere a report or matrix file is written so that
/// seeded reruns are byte-identical.
std::string format_double(double v);

/// Matrix file format: n lines of n comma-separated decimals, no header.
void write_matrix_csv(const Tensor& m, const std::string& path);

/// Throws ParseError on ragged rows or malformed numbers; the row/column
/// geometry is whatever the file says (callers enforce squareness).
Tensor read_matrix_csv(const std::string& path);

}  // namespace mforge
