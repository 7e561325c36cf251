#pragma once

#include <vector>

#include "zdcm/polynomial.hpp"

namespace zdcm {

/// All roots of p (degree >= 1), with multiplicity: eigenvalues of the
/// balanced companion matrix, then Newton-polished against p itself.
/// Throws EigenSolverFailure if the eigensolver does not converge.
std::vector<cplx> polynomial_roots(const ComplexPolynomial& p);

}  // namespace zdcm
