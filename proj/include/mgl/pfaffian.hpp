#pragma once

#include "mgl/int_matrix.hpp"

#include <vector>

namespace mgl {

/// Pf(A) for an even-dimensional skew-symmetric rational matrix; Pf of the
/// 0x0 matrix is 1. Dimensions up to 8 use memoized first-row expansion,
/// larger ones skew-symmetric elimination.
/// Throws Error(OddDimension) or Error(NotSkew).
Rational pfaffian(const RatMatrix& a);

// The two algorithms behind pfaffian(), exposed so they can be checked
// against each other.
Rational pfaffian_by_expansion(const RatMatrix& a);
Rational pfaffian_by_elimination(const RatMatrix& a);

bool is_skew_symmetric(const RatMatrix& a);

/// Rows and columns `indices` (0-based, taken in the given order).
RatMatrix principal_submatrix(const RatMatrix& a, const std::vector<std::size_t>& indices);

}  // namespace mgl
