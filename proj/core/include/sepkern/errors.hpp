#pragma once

#include <stdexcept>
#include <string>

namespace sepkern {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Integrand fails an integrability precondition (divergent power on the
// domain, trig atom over an unbounded piece, ...).
struct non_integrable : error {
    using error::error;
};

// Commutator of operators with different integration domains.
struct support_mismatch : error {
    using error::error;
};

// Family parameters outside the admissible set of the family.
struct inadmissible_params : error {
    using error::error;
};

// A kernel factor is not in the required L_p space.
struct membership_error : error {
    using error::error;
};

// The two independent verification routes disagree.
struct consistency_error : error {
    using error::error;
};

} // namespace sepkern
