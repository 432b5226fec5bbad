#include <cmath>

#include "coplanar/hopf.hpp"
#include "doctest.h"

using namespace coplanar;

namespace {

HopfData::Constants blank(int d) {
  HopfData::Constants c;
  c.dim = d;
  c.mult.assign(d, Eigen::MatrixXcd::Zero(d, d));
  c.comult.assign(d, Eigen::MatrixXcd::Zero(d, d));
  c.unit = HElement::Zero(d);
  c.counit = HElement::Zero(d);
  c.antipode = Eigen::MatrixXcd::Zero(d, d);
  c.star = Eigen::MatrixXcd::Zero(d, d);
  for (int a = 0; a < d; ++a) c.labels.push_back("e" + std::to_string(a));
  return c;
}

// Sweedler's four dimensional algebra on the basis 1, g, x, gx.
HopfData sweedler() {
  auto c = blank(4);
  auto set = [&](int a, int b, int out, double s) { c.mult[out](a, b) = s; };
  for (int b = 0; b < 4; ++b) set(0, b, b, 1.0);
  set(1, 0, 1, 1), set(1, 1, 0, 1), set(1, 2, 3, 1), set(1, 3, 2, 1);
  set(2, 0, 2, 1), set(2, 1, 3, -1);
  set(3, 0, 3, 1), set(3, 1, 2, -1);
  c.unit[0] = 1.0;
  c.comult[0](0, 0) = 1.0;
  c.comult[1](1, 1) = 1.0;
  c.comult[2](2, 0) = 1.0, c.comult[2](1, 2) = 1.0;
  c.comult[3](3, 1) = 1.0, c.comult[3](0, 3) = 1.0;
  c.counit[0] = 1.0, c.counit[1] = 1.0;
  c.antipode(0, 0) = 1.0, c.antipode(1, 1) = 1.0, c.antipode(3, 2) = -1.0, c.antipode(2, 3) = 1.0;
  c.star(0, 0) = 1.0, c.star(1, 1) = 1.0, c.star(2, 2) = 1.0, c.star(3, 3) = -1.0;
  return HopfData::custom(c);
}

}  // namespace

TEST_CASE("group construction") {
  auto s3 = Group::symmetric3();
  CHECK(s3.order() == 6);
  CHECK(s3.identity() == 0);
  bool abelian = true;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) abelian = abelian && s3.mul(a, b) == s3.mul(b, a);
  CHECK_FALSE(abelian);
  CHECK_THROWS_AS(Group::from_table({{0, 1}, {1, 1}}), Error);
  CHECK_THROWS_AS(Group::from_table({{0, 1}, {0, 1}}), Error);
  CHECK_THROWS_AS(Group::from_table({}), Error);
}

TEST_CASE("function algebra of Z_2") {
  auto h = HopfData::function_algebra(Group::cyclic(2));
  auto d = h.coproduct(h.basis(0));
  CHECK(d(0, 0) == Complex(1.0));
  CHECK(d(1, 1) == Complex(1.0));
  CHECK(std::abs(d(0, 1)) == 0.0);
  CHECK(h.counit(h.basis(0)) == Complex(1.0));
  CHECK(h.counit(h.basis(1)) == Complex(0.0));
  auto ax = check_hopf_axioms(h);
  CHECK(ax.worst() < 1e-12);
  CHECK(ax.kac);
  CHECK(h.commutative());
}

TEST_CASE("function algebra of Z_3 and S_3") {
  auto z3 = HopfData::function_algebra(Group::cyclic(3));
  auto d = z3.coproduct(z3.basis(1));
  int terms = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      if (std::abs(d(a, b)) > 0) {
        ++terms;
        CHECK((a + b) % 3 == 1);
      }
  CHECK(terms == 3);

  auto s3 = HopfData::function_algebra(Group::symmetric3());
  auto ax = check_hopf_axioms(s3);
  CHECK(ax.worst() < 1e-12);
  CHECK(ax.kac);
  for (const auto& r : ax.records(1e-9)) CHECK_MESSAGE(r.pass, r.name);
}

TEST_CASE("group algebras") {
  for (auto g : {Group::cyclic(2), Group::cyclic(4), Group::symmetric3()}) {
    auto h = HopfData::group_algebra(g);
    auto ax = check_hopf_axioms(h);
    CHECK(ax.worst() < 1e-12);
    CHECK(ax.kac);
    auto hh = haar(h);
    for (int a = 0; a < g.order(); ++a)
      CHECK(std::abs(hh(h.basis(a)) - (a == g.identity() ? 1.0 : 0.0)) < 1e-10);
  }
  CHECK_FALSE(HopfData::group_algebra(Group::symmetric3()).commutative());
}

TEST_CASE("haar state of a function algebra is the uniform average") {
  for (int n : {2, 3, 5}) {
    auto h = HopfData::function_algebra(Group::cyclic(n));
    auto hh = haar(h);
    for (int a = 0; a < n; ++a) CHECK(std::abs(hh(h.basis(a)) - 1.0 / n) < 1e-10);
    CHECK(std::abs(hh(h.unit()) - 1.0) < 1e-12);
  }
}

TEST_CASE("sigma is the identity and f_z is the counit in the Kac case") {
  for (auto h : {HopfData::function_algebra(Group::symmetric3()), HopfData::group_algebra(Group::symmetric3())}) {
    auto s = modular_sigma(h);
    CHECK((s - Eigen::MatrixXcd::Identity(h.dim(), h.dim())).cwiseAbs().maxCoeff() < 1e-10);
    auto f = character_f(h, 0.7);
    CHECK((f.values - h.constants().counit).cwiseAbs().maxCoeff() == 0.0);
    for (const auto& r : check_characters(h)) CHECK_MESSAGE(r.pass, r.name);
  }
}

TEST_CASE("corrupted comultiplication is caught") {
  auto c = HopfData::function_algebra(Group::cyclic(2)).constants();
  c.comult[0](0, 0) += 0.1;
  auto h = HopfData::custom(c);
  auto ax = check_hopf_axioms(h);
  CHECK(ax.coassociativity >= 0.01);
  bool failed = false;
  for (const auto& r : ax.records(1e-9))
    if (r.name == "coassociativity") failed = !r.pass;
  CHECK(failed);
}

TEST_CASE("custom data of the wrong shape is rejected") {
  auto c = HopfData::function_algebra(Group::cyclic(2)).constants();
  c.counit = HElement::Zero(3);
  CHECK_THROWS_AS(HopfData::custom(c), Error);
}

TEST_CASE("non-Kac input is rejected by the character family") {
  auto h = sweedler();
  auto ax = check_hopf_axioms(h);
  CHECK(ax.associativity < 1e-12);
  CHECK(ax.coassociativity < 1e-12);
  CHECK(ax.antipode < 1e-12);
  CHECK(ax.comultiplicative < 1e-12);
  CHECK_FALSE(ax.kac);
  CHECK(ax.s_squared > 1.0);
  CHECK_THROWS_WITH_AS(character_f(h, 1.0), "non-Kac finite-dimensional input unsupported", Error);
}
