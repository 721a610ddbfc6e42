#pragma once

#include <string>

#include "gjb/sample.hpp"

namespace gjb {

// Loads a one-column CSV: one finite real per line, UTF-8. A single leading
// header line is skipped when it does not parse as a number. Blank lines are
// ignored. NaN/infinite/malformed entries raise ParseError with the 1-based
// line number; a file with no data rows raises EmptyFile.
Sample load_csv(const std::string& path);

}  // namespace gjb
