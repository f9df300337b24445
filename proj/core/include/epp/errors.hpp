#pragma once

#include <stdexcept>

namespace epp {

// Thrown when a protocol cannot reach its target: gate noise below the
// purification threshold, target fidelity above F_max, and the like.
struct below_threshold_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace epp
