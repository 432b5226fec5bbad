#pragma once

#include <vector>

#include "coplanar/coaction.hpp"
#include "coplanar/linear_map.hpp"

namespace coplanar {

// V_n assembled from V by the paired index pattern
// (k1 k2)(k3 k4)...(l4 l3)(l2 l1), with a middle pair (k_n l_n) for odd n.
// Degree 0 gives v_0(1) = 1 (x) 1.
CoactionTable tower_coaction(const CoactionTable& base, int n);

// Coefficients of u_{1,n+1} u_{2,n+1} ... u_{n,n+1} computed as dense
// H-valued matrices over tuples of matrix units, relabelled into loops at the
// end. Meant for small n.
CoactionTable tensor_power_coaction(const CoactionTable& base, int n);

// Largest entry of V_n - W_n over all loops.
Residual table_difference(const CoactionTable& a, const CoactionTable& b);

// Gamma_n = (id (x) h) v_n.
TowerMap gamma(const CoactionTable& vn);

inline constexpr double kRankThreshold = 1e-8;

struct FixedPointSpace {
  int degree = 0;
  std::vector<Tensor> basis;  // orthonormal for phi~_n(y* x)
  int dimension = 0;
  int kernel_dimension = 0;   // dim ker(v_n - (.) (x) 1), computed separately
};

FixedPointSpace fixed_point_basis(const CoactionTable& vn, const TowerMap& gamma_n);
FixedPointSpace fixed_point_basis(const CoactionTable& vn);

// Gamma^2 = Gamma, v_n Gamma = Gamma (x) 1 and rank against the kernel dimension.
CheckList check_gamma(const CoactionTable& vn, const TowerMap& gamma_n, const FixedPointSpace& q,
                      double tol = kDefaultTolerance);

// v_m T - (T (x) id) v_n for a map between levels.
Residual equivariance_residual(const CoactionTable& vn, const CoactionTable& vm, const TowerMap& t);
// v_n(x) - x (x) 1.
Residual fixed_residual(const CoactionTable& vn, const Tensor& x);

// Everything derived from one coaction, built up to a top degree.
class Tower {
 public:
  Tower(const CoactionTable& base, int top);

  const CoactionTable& base() const { return base_; }
  const IndexedAlgebra& algebra() const { return base_.algebra(); }
  int top() const { return static_cast<int>(levels_.size()) - 1; }
  const CoactionTable& v(int n) const { return levels_.at(n); }
  const TowerMap& gamma(int n) const { return gammas_.at(n); }
  const FixedPointSpace& fixed(int n) const { return fixed_.at(n); }
  std::vector<int> poincare() const;

 private:
  CoactionTable base_;
  std::vector<CoactionTable> levels_;
  std::vector<TowerMap> gammas_;
  std::vector<FixedPointSpace> fixed_;
};

// Coaction conditions and phi~_n invariance of every v_n, n = 1..nmax.
CheckList check_tower(const Tower& t, int nmax, double tol = kDefaultTolerance);
// V_n against the tensor-power expansion, n = 1..nmax.
CheckList check_tensor_power(const Tower& t, int nmax, double tol = kDefaultTolerance);
CheckList check_fixed_points(const Tower& t, int nmax, double tol = kDefaultTolerance);
// Equivariance of I_n, E~_n and e~_n.
CheckList check_equivariance(const Tower& t, int nmax, double tol = kDefaultTolerance);
// Gamma_{n+1} J^q_n = J_n Gamma_{n-1}; the tracial and commutative variants.
// Needs v(n+1) in the tower.
CheckList check_weak_equivariance(const Tower& t, int nmax, double tol = kDefaultTolerance);
// I, E, J preserve Q; e_n in Q_n; theta = id on Q; phi_2 = psi_2 on Q_2;
// Q closed under product and adjoint. Needs v(nmax+1).
CheckList check_Q_closure(const Tower& t, int nmax, double tol = kDefaultTolerance);
// theta_n = (id (x) f_1) v_n.
CheckList check_theta_f1(const Tower& t, int nmax, double tol = kDefaultTolerance);
// The corepresentation W on the level-2 labels with v_2 = ad(W).
CheckList check_w_corepresentation(const Tower& t, double tol = kDefaultTolerance);

}  // namespace coplanar
