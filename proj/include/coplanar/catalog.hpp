#pragma once

#include "coplanar/coaction.hpp"

// Small coactions used throughout the tests and shipped as data files.
namespace coplanar::catalog {

IndexedAlgebra uniform_commutative(int n);

CoactionTable trivial_c2();        // a -> a (x) 1 on C^2, H = C(Z_2)
CoactionTable z2_flip();           // Z_2 swapping the two points of C^2
CoactionTable s3_permutation();    // S_3 permuting the three points of C^3
CoactionTable translation_z2();    // comultiplication of C(Z_2)
CoactionTable m2_inner();          // Z_2 acting on M_2 by Ad(diag(1,-1)), normalised trace

// Flip with a single coefficient perturbed by 0.1 at the identity.
CoactionTable corrupted_flip();
// Flip on C^2 with weights (1/3, 2/3): a coaction that does not preserve phi.
CoactionTable flip_nonuniform();

}  // namespace coplanar::catalog
