#pragma once

#include "gqla/subspace.hpp"

#include <vector>

namespace gqla {

using IntVector = std::vector<mpz_class>;

/// LLL reduction (delta = 0.99) of linearly independent integer vectors, in place.
/// The result is always a basis of the same lattice.
void lll_reduce(std::vector<IntVector>& basis);

/// Columns form an LLL-reduced basis of the integer points of s.
QMat reduced_basis(const QSub& s);
/// The same subspace carried by its reduced basis.
QSub reduced(const QSub& s);

}  // namespace gqla
