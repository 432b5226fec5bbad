#pragma once

#include "coplanar/algebra.hpp"
#include "coplanar/linear_map.hpp"

// Generator maps and distinguished elements of the tower of A. None of them
// depend on a coaction. Level m of the second row is A (x) A^{(x)m}.
namespace coplanar::annular {

TowerMap inclusion(const IndexedAlgebra& alg, int n);             // I_n : level n-1 -> n
TowerMap inclusion_second_row(const IndexedAlgebra& alg, int m);  // id (x) I_m : row m-1 -> row m
TowerMap unit_map(const IndexedAlgebra& alg, const SpacePtr& target);  // C -> target, 1 -> 1

TowerMap expectation_tilde(const IndexedAlgebra& alg, int n);      // E~_n : level n -> n-1
TowerMap expectation(const IndexedAlgebra& alg, int n);            // E_n, needs delta
TowerMap expectation_second_row(const IndexedAlgebra& alg, int m);  // id (x) E_m : row m -> row m-1

TowerMap shift(const IndexedAlgebra& alg, int n);          // J_n : level n-1 -> n+1
TowerMap shift_twisted(const IndexedAlgebra& alg, int n);  // J_n^q
TowerMap shift_minus(const IndexedAlgebra& alg, int n);    // J_n^- : level n-1 -> row n-1
TowerMap shift_plus(const IndexedAlgebra& alg, int n);     // J_n^+ : row n-1 -> level n+1
TowerMap expectation_minus(const IndexedAlgebra& alg, int n);  // E_n^- : row n-1 -> level n-1
TowerMap expectation_plus(const IndexedAlgebra& alg, int n);   // E_n^+ : level n+1 -> row n-1, needs delta

TowerMap theta_map(const IndexedAlgebra& alg, int n);
TowerMap multiplication_tangle(const Tensor& x, const Tensor& y);  // p -> x p y

Tensor jones_projection_tilde(const IndexedAlgebra& alg, int n);  // e~_n, n >= 2
Tensor jones_projection(const IndexedAlgebra& alg, int n);        // e_n, needs delta
Tensor d_element(const IndexedAlgebra& alg, int n);               // d_n in row n-1, n >= 2
Tensor f_element(const IndexedAlgebra& alg, int n);               // f_n = I_n ... I_3(e_2)

// Composite of inclusions from level `from` up to level `to`.
TowerMap inclusions(const IndexedAlgebra& alg, int from, int to);
// Composite of expectations E_{from} ... down to level `to`.
TowerMap expectations(const IndexedAlgebra& alg, int from, int to);

// psi (x) phi_m on the second row, as a row vector over its loops.
Eigen::RowVectorXcd second_row_form(const IndexedAlgebra& alg, int m);

}  // namespace coplanar::annular
