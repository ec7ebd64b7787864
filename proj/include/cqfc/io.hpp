#pragma once

#include <string>

#include "cqfc/classical_info.hpp"
#include "cqfc/cq_model.hpp"

namespace cqfc::io {

// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double value);

// Channel files are JSON objects with integer fields "alphabet1",
// "alphabet2", "dim", and a "states" array of alphabet1*alphabet2 matrices
// (first input major). Each matrix is dim rows of dim [re, im] pairs. Every
// entry must form a density matrix; offenders are reported by input pair.
cq::Cq2Channel parse_channel(const std::string& text);
cq::Cq2Channel load_channel(const std::string& path);

// Source files are JSON objects with a rectangular "masses" array, a
// "function" array of the same shape, and an optional "embedding" object
// {"q", "h1", "h2", "g"} whose identity is verified on every
// positive-probability pair.
classical::SourceModel parse_source(const std::string& text);
classical::SourceModel load_source(const std::string& path);

}  // namespace cqfc::io
