#pragma once

#include "coplanar/algebra.hpp"
#include "coplanar/report.hpp"

// Identities among the annular maps of (A, phi) that make the fixed-point
// algebras a standard lattice. Every identity is checked on complete bases and
// touches levels up to nmax + 1.
namespace coplanar::lattice {

CheckList verify_diagram_I(const IndexedAlgebra& alg, int nmax, double tol = kDefaultTolerance);
CheckList verify_bimodule_E(const IndexedAlgebra& alg, int nmax, double tol = kDefaultTolerance);
CheckList verify_TL(const IndexedAlgebra& alg, int nmax, double tol = kDefaultTolerance);
CheckList verify_pp(const IndexedAlgebra& alg, int nmax, double tol = kDefaultTolerance);
CheckList verify_commuting_squares(const IndexedAlgebra& alg, int nmax, double tol = kDefaultTolerance);
CheckList verify_phi_infty(const IndexedAlgebra& alg, int nmax, double tol = kDefaultTolerance);
CheckRecord verify_p_blocks(const IndexedAlgebra& alg, double tol = kDefaultTolerance);

// All of the above. Without a delta-form only the diagram (I) checks run and
// the rest are reported as skipped.
CheckList verify_all(const IndexedAlgebra& alg, int nmax, double tol = kDefaultTolerance);

}  // namespace coplanar::lattice
