#pragma once

#include <stdexcept>
#include <string>

namespace coxcat {

// Base class for every error the library throws on bad input or a broken
// internal invariant.  Callers that only want "this library failed" can
// catch coxcat::error; finer-grained handlers catch the derived types.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- input / precondition violations -------------------------------------

// A matrix required to be invertible is singular.
struct singular_error : error { using error::error; };

// The zero vector was passed where a root (nonzero) is required.
struct zero_root_error : error { using error::error; };

// Malformed root-system specification (unknown family, rank out of range,
// bad component syntax).
struct invalid_spec_error : error { using error::error; };

// A vector that is not an almost positive root of the system.
struct not_almost_positive_error : error { using error::error; };

// A color outside 1..m.
struct color_range_error : error { using error::error; };

// A vector that is not a root of the system.
struct not_a_root_error : error { using error::error; };

// Two group elements (or a group element and a root) from different
// root systems were combined.
struct mixed_system_error : error { using error::error; };

// m < 1 where a positive divisibility parameter is required.
struct invalid_m_error : error { using error::error; };

// Moebius function requested for an incomparable pair.
struct not_comparable_error : error { using error::error; };

// A chain that is not falling was passed to the falling-chain -> facet map.
struct not_falling_error : error { using error::error; };

// A part mixing negative simples with positive roots, or with repeated
// underlying roots, where a homogeneous part is required.
struct mixed_part_error : error { using error::error; };

// The same almost positive root passed twice to a binary compatibility test.
struct equal_roots_error : error { using error::error; };

// A vertex set that is not a face of the complex.
struct not_a_face_error : error { using error::error; };

// --- internal invariant breaches ------------------------------------------
// These indicate a broken mathematical invariant of the construction itself
// (they map to CLI exit code 3, never 1 or 2).

struct internal_error : error { using error::error; };

// An exact integer division left a remainder where the mathematics promises
// integrality.
struct non_integral_error : internal_error { using internal_error::internal_error; };

// A face-count polynomial carries degrees beyond the rank bound.
struct degree_overflow_error : internal_error { using internal_error::internal_error; };

}  // namespace coxcat
