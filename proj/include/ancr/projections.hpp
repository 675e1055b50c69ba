#pragma once

#include "ancr/numerics.hpp"

namespace ancr {

// Euclidean projection onto the probability simplex {z : z >= 0, 1'z = 1}.
// Sort-and-threshold, O(n log n).
Vector project_simplex(const Vector& v);

// Euclidean projection onto the nonnegative orthant: elementwise max(v, 0).
Vector project_nonnegative(const Vector& v);

}  // namespace ancr
