#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "coplanar/algebra.hpp"
#include "coplanar/report.hpp"

namespace coplanar {

using HElement = Eigen::VectorXcd;
// Element of H (x) H as a dim x dim coefficient matrix.
using HPair = Eigen::MatrixXcd;

// Finite group given by its multiplication table, table[a][b] = ab.
class Group {
 public:
  static Group from_table(std::vector<std::vector<int>> table);
  static Group cyclic(int n);
  static Group symmetric3();

  int order() const { return static_cast<int>(table_.size()); }
  int mul(int a, int b) const { return table_[a][b]; }
  int identity() const { return identity_; }
  int inverse(int a) const { return inverse_[a]; }
  const std::vector<std::vector<int>>& table() const { return table_; }

 private:
  std::vector<std::vector<int>> table_;
  int identity_ = 0;
  std::vector<int> inverse_;
};

enum class HopfKind { FunctionAlgebra, GroupAlgebra, Custom };

struct HopfAxioms {
  double associativity = 0, unit = 0, coassociativity = 0, counit = 0, antipode = 0;
  double comultiplicative = 0, counit_multiplicative = 0, star = 0, coproduct_star = 0, s_star = 0;
  double s_squared = 0;
  bool kac = false;
  double worst() const;
  CheckList records(double tol) const;
};

// Finite-dimensional Hopf *-algebra by structure constants in a fixed basis.
class HopfData {
 public:
  struct Constants {
    int dim = 0;
    std::vector<std::string> labels;
    std::vector<Eigen::MatrixXcd> mult;    // mult[c](a, b): coefficient of e_c in e_a e_b
    HElement unit;
    std::vector<Eigen::MatrixXcd> comult;  // comult[a](b, c): coefficient of e_b (x) e_c in D(e_a)
    HElement counit;
    Eigen::MatrixXcd antipode;             // column a holds S(e_a)
    Eigen::MatrixXcd star;                 // column a holds e_a^*, extended antilinearly
  };

  static HopfData function_algebra(const Group& g);
  static HopfData group_algebra(const Group& g);
  static HopfData custom(Constants constants);

  int dim() const { return c_.dim; }
  HopfKind kind() const { return kind_; }
  const std::optional<Group>& group() const { return group_; }
  const Constants& constants() const { return c_; }
  const std::string& label(int a) const { return c_.labels.at(a); }

  HElement unit() const { return c_.unit; }
  HElement basis(int a) const;
  HElement zero() const { return HElement::Zero(c_.dim); }
  HElement multiply(const HElement& x, const HElement& y) const;
  HPair coproduct(const HElement& x) const;
  Complex counit(const HElement& x) const { return c_.counit.cwiseProduct(x).sum(); }
  HElement antipode(const HElement& x) const { return c_.antipode * x; }
  HElement star(const HElement& x) const { return c_.star * x.conjugate(); }
  // Multiplication in H (x) H.
  HPair multiply_pair(const HPair& x, const HPair& y) const;

  bool commutative(double tol = kDefaultTolerance) const;

 private:
  struct Term {
    int a, b, c;
    Complex coef;
  };
  void index_terms();

  Constants c_;
  HopfKind kind_ = HopfKind::Custom;
  std::optional<Group> group_;
  std::vector<Term> terms_;
};

HopfAxioms check_hopf_axioms(const HopfData& h);

struct HFunctional {
  Eigen::VectorXcd values;  // value on each basis element
  Complex operator()(const HElement& x) const { return (values.transpose() * x)(0); }
};

HFunctional haar(const HopfData& h);

// sigma as a matrix acting on coefficient vectors.
Eigen::MatrixXcd modular_sigma(const HopfData& h);

// f_z. Only the Kac case is supported, where f_z is the counit for every z.
HFunctional character_f(const HopfData& h, double z);

// Consistency of the character family with the counit, the antipode and sigma.
CheckList check_characters(const HopfData& h, double tol = kDefaultTolerance);

}  // namespace coplanar
