#pragma once

#include "cqfc/classical_info.hpp"

namespace cqfc::presets {

// Heavily skewed pair of correlated bits with the parity target function and
// the identity embedding into the binary field. Mirrors
// presets/skewed_pair_source.json.
classical::SourceModel skewed_pair_source();

// The same pair statistics with the OR target function, which no binary
// embedding can represent; uses the ternary embedding g(t) = min(t, 1).
// Mirrors presets/or_source.json.
classical::SourceModel or_source();

}  // namespace cqfc::presets
