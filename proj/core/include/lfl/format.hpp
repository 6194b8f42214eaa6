#pragma once

#include <string>

namespace lfl {

// Shortest-ish lossless decimal form ("%.17g", '.' radix, no locale): a
// double formatted this way parses back to the identical bits, which is
// what makes CSV outputs byte-reproducible across runs and worker counts.
std::string format_double(double v);

}  // namespace lfl
