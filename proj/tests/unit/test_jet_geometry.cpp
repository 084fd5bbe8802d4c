#include <doctest.h>

#include "../support/random.hpp"
#include "helpers.hpp"
#include "supermech/errors.hpp"

using namespace supermech;
using helpers::half;

TEST_CASE("charts and projections") {
  helpers::Super s;
  Chart t1 = s.chart.with_order(1);
  CHECK(t1.coordinates().size() == 4);
  CHECK_THROWS_AS(t1.generator("q", 2), OrderExceeded);
  CHECK_THROWS_AS(t1.generator("p", 0), UndeclaredGenerator);
  CHECK(Projection(3, 2).then(Projection(2, 0)).target == 0);
  CHECK_THROWS_AS(Projection(3, 2).then(Projection(1, 0)), DomainMismatch);
  CHECK_THROWS_AS(Projection(1, 2), OrderExceeded);
}

TEST_CASE("pullbacks identify coordinates") {
  helpers::Super s;
  CHECK(pullback(s.q(1), Projection(3, 1)) == s.q(1));
  CHECK(pullback(s.t(0) * s.t(1), Projection(2, 1)) == s.t(0) * s.t(1));
  CHECK_THROWS_AS(pullback(s.q(2), Projection(3, 1)), OrderExceeded);
}

TEST_CASE("total derivative") {
  helpers::Super s;
  CHECK(total_derivative(s.q(0)) == s.q(1));
  CHECK(total_derivative(s.q(0) * s.q(1)) == s.q(1) * s.q(1) + s.q(0) * s.q(2));
  CHECK(total_derivative(s.t(0) * s.t(1)) == s.t(0) * s.t(2));
  CHECK(total_derivative(s.q(0), 3) == s.q(3));
  CHECK(total_derivative(SuperExpr(7)).is_zero());
}

TEST_CASE("total derivative is an even derivation") {
  helpers::Super s;
  gen::Random rng(21);
  for (int i = 0; i < 50; ++i) {
    SuperExpr a = rng.expr(s.sig, 3);
    SuperExpr b = rng.expr(s.sig, 3);
    CHECK(total_derivative(a * b) == total_derivative(a) * b + a * total_derivative(b));
  }
}

TEST_CASE("lifted functions") {
  helpers::Super s;
  CHECK(lifted_function(s.q(0), 0, 2) == s.q(0));
  CHECK(lifted_function(s.q(0), 2, 2) == s.q(2));
  CHECK(lifted_function(s.q(0) * s.q(0), 1, 1) == (s.q(0) * s.q(1)).scaled(2));
  CHECK_THROWS_AS(lifted_function(s.q(0), 3, 2), OrderExceeded);
  CHECK_THROWS_AS(lifted_function(s.q(1), 0, 2), OrderExceeded);
}

TEST_CASE("lifts of vector fields") {
  helpers::Super s;
  VectorField translation(0, 0, Parity::even);
  translation.set(s.Q(0), 1);
  VectorField lifted = lift_vector_field(translation, 1);
  CHECK(lifted.component(s.Q(0)) == SuperExpr(1));
  CHECK(lifted.component(s.Q(1)).is_zero());

  VectorField dilation(0, 0, Parity::even);
  dilation.set(s.Q(0), s.q(0));
  lifted = lift_vector_field(dilation, 1);
  CHECK(lifted.component(s.Q(1)) == s.q(1));
  CHECK(lifted.source_order() == 1);
  CHECK(lifted.target_order() == 1);

  VectorField odd(0, 0, Parity::odd);
  odd.set(s.Q(0), s.t(0));
  lifted = lift_vector_field(odd, 1);
  CHECK(lifted.component(s.Q(0)) == s.t(0));
  CHECK(lifted.component(s.Q(1)) == s.t(1));
}

TEST_CASE("vector field components must respect parity and order") {
  helpers::Super s;
  VectorField x(0, 1, Parity::even);
  CHECK_THROWS_AS(x.set(s.Q(0), s.t(0)), ParityMismatch);
  CHECK_THROWS_AS(x.set(s.Q(1), s.q(0)), DomainMismatch);
  CHECK_THROWS_AS(x.set(s.Q(0), s.q(2)), OrderExceeded);
  x.set(s.Q(0), s.q(1));
  CHECK_THROWS_AS(x(s.q(1)), DomainMismatch);
  CHECK(x(s.q(0) * s.q(0)) == (s.q(0) * s.q(1)).scaled(2));
}

TEST_CASE("odd fields act as left derivations") {
  helpers::Super s;
  VectorField d(0, 0, Parity::odd);
  d.set(s.T(0), 1);
  CHECK(d(s.t(0) * s.q(0)) == s.q(0));
  VectorField y(1, 1, Parity::odd);
  y.set(s.T(1), 1);
  CHECK(y(s.t(0) * s.t(1)) == -s.t(0));
}

TEST_CASE("vertical lift of functions") {
  helpers::Super s;
  CHECK(vertical_lift_function(s.q(0), 1) == s.q(1));
  CHECK(vertical_lift_function(s.q(1), 2) == half(s.q(2)));
  CHECK(vertical_lift_function(s.t(0) * s.t(1), 2) == -half(s.t(0) * s.t(2)));
  CHECK_THROWS_AS(vertical_lift_function(s.q(2), 2), OrderExceeded);
}

TEST_CASE("Liouville field and vertical endomorphism") {
  helpers::Super s;
  VectorField delta = liouville(s.sig, 2);
  CHECK(delta.component(s.Q(0)).is_zero());
  CHECK(delta.component(s.Q(1)) == s.q(1));
  CHECK(delta.component(s.Q(2)) == s.q(2).scaled(2));
  CHECK(delta.component(s.T(2)) == s.t(2).scaled(2));

  VectorField d0(1, 1, Parity::even);
  d0.set(s.Q(0), 1);
  VectorField image = vertical_endomorphism(d0);
  CHECK(image.component(s.Q(1)) == SuperExpr(1));
  CHECK(image.component(s.Q(0)).is_zero());
}

TEST_CASE("vertical endomorphism is nilpotent of order k+1") {
  helpers::Super s;
  gen::Random rng(22);
  for (int i = 0; i < 20; ++i) {
    const int k = rng.integer(1, 3);
    VectorField y(k, k, Parity::even);
    for (const auto& x : s.sig.coordinates(k)) y.set(x, rng.homogeneous(s.sig, k, x.parity));
    VectorField image = y;
    for (int j = 0; j <= k; ++j) image = vertical_endomorphism(image);
    CHECK(image.components().empty());
  }
}
