#include <cmath>

#include "coplanar/annular.hpp"
#include "coplanar/catalog.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace coplanar;
namespace an = coplanar::annular;

namespace {

IndexedAlgebra twisted() { return IndexedAlgebra::build({2}, {1.0 / 3.0, 2.0 / 3.0}); }
IndexedAlgebra mixed() { return IndexedAlgebra::build({1, 2}, {0.2, 0.4, 0.4}); }

double map_gap(const TowerMap& a, const TowerMap& b) { return map_difference(a, b).value; }

}  // namespace

TEST_CASE("e_2 on C^2 uniform is half the sum of (jj/ii)") {
  auto alg = catalog::uniform_commutative(2);
  SpacePtr s = alg.level(2);
  Tensor e = an::jones_projection(alg, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(std::abs(e.coeff(*s->find_label({i, i}), *s->find_label({j, j})) - 0.5) < 1e-12);
  CHECK(e.nnz() == 4);
  CHECK(testing_util::diff(e * e, e) < 1e-12);
  Eigen::MatrixXcd dense(e.matrix());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(dense);
  CHECK(std::abs(eig.eigenvalues().maxCoeff() - 1.0) < 1e-12);
  CHECK(std::abs(eig.eigenvalues().sum() - 1.0) < 1e-12);
}

TEST_CASE("expectations are unital") {
  for (const auto& alg : {catalog::uniform_commutative(3), twisted(), mixed()})
    for (int n = 1; n <= 4; ++n) {
      CHECK(testing_util::diff(an::expectation(alg, n).apply(unit(alg, n)), unit(alg, n - 1)) < 1e-12);
      if (n >= 2) {
        Tensor one_row = Tensor::unit(alg.second_row(n - 1));
        CHECK(testing_util::diff(an::expectation_plus(alg, n).apply(unit(alg, n + 1)), one_row) < 1e-12);
        CHECK(testing_util::diff(an::expectation_minus(alg, n).apply(one_row), unit(alg, n - 1)) < 1e-12);
      }
    }
}

TEST_CASE("inclusions and shifts are unital") {
  auto alg = mixed();
  CHECK(testing_util::diff(an::inclusion(alg, 1).apply(unit(alg, 0)), unit(alg, 1)) < 1e-12);
  for (int n = 1; n <= 3; ++n) {
    CHECK(testing_util::diff(an::inclusion(alg, n + 1).apply(unit(alg, n)), unit(alg, n + 1)) < 1e-12);
    CHECK(testing_util::diff(an::shift(alg, n).apply(unit(alg, n - 1)), unit(alg, n + 1)) < 1e-12);
    CHECK(testing_util::diff(an::shift_minus(alg, n).apply(unit(alg, n - 1)), Tensor::unit(alg.second_row(n - 1))) <
          1e-12);
  }
}

TEST_CASE("J+ J- = J") {
  for (const auto& alg : {catalog::uniform_commutative(2), twisted(), mixed()})
    for (int n = 1; n <= 3; ++n)
      CHECK(map_gap(an::shift_plus(alg, n) * an::shift_minus(alg, n), an::shift(alg, n)) < 1e-12);
}

TEST_CASE("E+ J+ = id") {
  for (const auto& alg : {twisted(), mixed()})
    for (int n = 1; n <= 3; ++n)
      CHECK(map_gap(an::expectation_plus(alg, n) * an::shift_plus(alg, n),
                    TowerMap::identity(alg.second_row(n - 1))) < 1e-12);
}

TEST_CASE("Jones projections shift by J") {
  for (const auto& alg : {catalog::uniform_commutative(3), twisted(), mixed()}) {
    for (int n = 4; n <= 5; ++n)
      CHECK(testing_util::diff(an::jones_projection(alg, n), an::shift(alg, n - 1).apply(an::jones_projection(alg, n - 2))) <
            1e-12);
    CHECK(testing_util::diff(an::jones_projection(alg, 3), an::shift_plus(alg, 2).apply(an::d_element(alg, 2))) < 1e-12);
  }
}

TEST_CASE("Jones projections are self-adjoint idempotents") {
  for (const auto& alg : {twisted(), mixed()})
    for (int n = 2; n <= 4; ++n) {
      Tensor e = an::jones_projection(alg, n);
      CHECK(testing_util::diff(e * e, e) < 1e-12);
      CHECK(testing_util::diff(e.adjoint(), e) < 1e-12);
    }
}

TEST_CASE("tilde projection differs from e_n by a power of delta") {
  auto alg = twisted();
  const double d = alg.delta();
  CHECK(testing_util::diff(an::jones_projection_tilde(alg, 2), an::jones_projection(alg, 2)) < 1e-12);
  CHECK(testing_util::diff(an::jones_projection_tilde(alg, 3) * Complex(1.0 / (d * d)), an::jones_projection(alg, 3)) <
        1e-12);
}

TEST_CASE("normalised family needs delta") {
  auto alg = IndexedAlgebra::build({1, 1}, {0.2, 0.8});
  CHECK_THROWS_AS(an::expectation(alg, 2), Error);
  CHECK_THROWS_AS(an::jones_projection(alg, 2), Error);
  CHECK_NOTHROW(an::expectation_tilde(alg, 2));
  CHECK_NOTHROW(an::jones_projection_tilde(alg, 2));
}

TEST_CASE("twisted shift reduces to J for a trace") {
  auto alg = catalog::uniform_commutative(3);
  for (int n = 1; n <= 3; ++n) CHECK(map_gap(an::shift(alg, n), an::shift_twisted(alg, n)) < 1e-12);
  auto tw = twisted();
  CHECK(map_gap(an::shift(tw, 1), an::shift_twisted(tw, 1)) > 0.1);
}

TEST_CASE("multiplication tangle") {
  auto alg = mixed();
  std::mt19937 rng(7);
  SpacePtr s = alg.level(2);
  Tensor x = testing_util::random_tensor(s, rng), y = testing_util::random_tensor(s, rng);
  Tensor x2 = testing_util::random_tensor(s, rng), y2 = testing_util::random_tensor(s, rng);
  Tensor one = unit(alg, 2);
  CHECK(map_gap(an::multiplication_tangle(one, one), TowerMap::identity(s)) < 1e-12);
  CHECK(map_gap(an::multiplication_tangle(x, y) * an::multiplication_tangle(x2, y2),
                an::multiplication_tangle(x * x2, y2 * y)) < 1e-10);
  CHECK_THROWS_AS(an::multiplication_tangle(x, unit(alg, 3)), Error);
}

TEST_CASE("theta map matches theta on tensors") {
  auto alg = twisted();
  std::mt19937 rng(3);
  Tensor x = testing_util::random_tensor(alg.level(3), rng);
  CHECK(testing_util::diff(an::theta_map(alg, 3).apply(x), theta(x)) < 1e-12);
}

TEST_CASE("f_n and d_n sit at the expected levels") {
  auto alg = mixed();
  CHECK(an::f_element(alg, 4).space()->same_as(*alg.level(4)));
  CHECK(an::d_element(alg, 4).space()->same_as(*alg.second_row(3)));
  CHECK(testing_util::diff(an::f_element(alg, 2), an::jones_projection(alg, 2)) < 1e-12);
}
