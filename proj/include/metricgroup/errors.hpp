#pragma once

#include <stdexcept>
#include <string>

namespace mg {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A requested computation exceeds the configured size bounds.
struct TooLarge : Error { using Error::Error; };

// Elements handed in as a subgroup are not closed / not inside the parent.
struct InvalidSubgroup : Error { using Error::Error; };

// A gluing subgroup fails q|_H = 0.
struct NotIsotropic : Error { using Error::Error; };

// The operation needs a nondegenerate form.
struct DegenerateForm : Error { using Error::Error; };

// A floating-point certificate (Gauss sum modulus, root-of-unity snap) failed
// its tolerance even though the exact-arithmetic preconditions held.
struct NumericalInconsistency : Error { using Error::Error; };

// Requested signature does not match the Gauss-Milgram signature of the form.
struct SignatureMismatch : Error { using Error::Error; };

// Lattice realization search exhausted its catalog without a witness.
struct RealizationNotFound : Error { using Error::Error; };

// Two objects that must live over the same group do not.
struct GroupMismatch : Error { using Error::Error; };

// Operation defined only for cyclic groups.
struct NotCyclic : Error { using Error::Error; };

} // namespace mg
