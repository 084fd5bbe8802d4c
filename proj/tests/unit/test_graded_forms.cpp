#include <doctest.h>

#include "../support/random.hpp"
#include "helpers.hpp"
#include "supermech/errors.hpp"
#include "supermech/graded_forms.hpp"

using namespace supermech;
using helpers::half;

namespace {

GradedForm d(Generator x) { return GradedForm::differential(x); }

}  // namespace

TEST_CASE("differentials of even coordinates anticommute, odd ones commute") {
  helpers::Super s;
  CHECK(wedge(d(s.Q(1)), d(s.Q(0))) == -wedge(d(s.Q(0)), d(s.Q(1))));
  CHECK(wedge(d(s.Q(0)), d(s.Q(0))).is_zero());
  CHECK(wedge(d(s.T(1)), d(s.T(0))) == wedge(d(s.T(0)), d(s.T(1))));
  CHECK_FALSE(wedge(d(s.T(0)), d(s.T(0))).is_zero());
  CHECK(wedge(d(s.Q(0)), d(s.T(0))) == -wedge(d(s.T(0)), d(s.Q(0))));
}

TEST_CASE("exterior derivative examples") {
  helpers::Super s;
  CHECK(exterior_d(s.q(0)) == d(s.Q(0)));
  CHECK(exterior_d(s.q(1) * d(s.Q(0))) == wedge(d(s.Q(1)), d(s.Q(0))));
  CHECK(exterior_d(s.t(0) * d(s.T(0))) == wedge(d(s.T(0)), d(s.T(0))));
  CHECK(exterior_d(s.t(0) * s.t(1)) == s.t(0) * d(s.T(1)) - s.t(1) * d(s.T(0)));
}

TEST_CASE("interior product examples") {
  helpers::Super s;
  VectorField d0(0, 0, Parity::even);
  d0.set(s.Q(0), 1);
  CHECK(interior(d0, s.q(1) * d(s.Q(0))) == GradedForm::function(s.q(1)));

  CHECK(interior(total_derivative_field(s.sig, 0), d(s.Q(0))) == GradedForm::function(s.q(1)));

  VectorField dtheta(0, 0, Parity::odd);
  dtheta.set(s.T(0), 1);
  CHECK(interior(dtheta, s.t(1) * d(s.T(0))) == GradedForm::function(-s.t(1)));

  VectorField narrow(0, 1, Parity::even);
  CHECK_THROWS_AS(interior(narrow, d(s.Q(1))), DomainMismatch);
}

TEST_CASE("total derivative of forms") {
  helpers::Super s;
  CHECK(total_derivative(0, d(s.Q(0))) == d(s.Q(1)));
  CHECK(total_derivative(1, s.q(1) * d(s.Q(0))) == s.q(2) * d(s.Q(0)) + s.q(1) * d(s.Q(1)));
  CHECK(total_derivative(0, wedge(d(s.T(0)), d(s.T(0)))) ==
        wedge(d(s.T(0)), d(s.T(1))).scaled(2));
  CHECK_THROWS_AS(total_derivative(0, d(s.Q(1))), OrderExceeded);
}

TEST_CASE("transpose of the vertical endomorphism") {
  helpers::Super s;
  CHECK(transpose_vertical_endomorphism(1, d(s.Q(1))) == d(s.Q(0)));
  CHECK(transpose_vertical_endomorphism(2, d(s.Q(2))) == d(s.Q(1)).scaled(2));
  CHECK(transpose_vertical_endomorphism(2, d(s.Q(0))).is_zero());
  CHECK_THROWS_AS(transpose_vertical_endomorphism(1, wedge(d(s.Q(0)), d(s.Q(1)))), DomainMismatch);
}

TEST_CASE("transpose agrees with the endomorphism under contraction") {
  helpers::Super s;
  gen::Random rng(31);
  for (int i = 0; i < 30; ++i) {
    const int k = rng.integer(1, 3);
    VectorField y(k, k, Parity::even);
    for (const auto& x : s.sig.coordinates(k)) y.set(x, rng.homogeneous(s.sig, k, x.parity, 2, 2));
    GradedForm w = rng.form(s.sig, k, 1, Parity::even);
    // <S(Y), w> = <Y, S*(w)>
    CHECK(interior(vertical_endomorphism(y), w) == interior(y, transpose_vertical_endomorphism(k, w)));
  }
}

TEST_CASE("semibasic check forms") {
  helpers::Super s;
  CheckForm c = semibasic_check(s.q(3) * d(s.Q(0)), 0);
  CHECK(c.components.size() == 1);
  CHECK(c.components.at(s.Q(0)) == s.q(3));
  CHECK(c.to_form() == s.q(3) * d(s.Q(0)));
  try {
    semibasic_check(s.q(1) * d(s.Q(1)), 0);
    FAIL("expected NotSemibasic");
  } catch (const NotSemibasic& e) {
    CHECK(e.order == 1);
    CHECK_FALSE(e.odd);
  }
}

TEST_CASE("pairing with check forms") {
  helpers::Super s;
  VectorField t0 = total_derivative_field(s.sig, 0);
  CHECK(pair(t0, semibasic_check(s.q(1) * d(s.Q(0)), 0)) == s.q(1) * s.q(1));
  CHECK(pair(VectorField(0, 3, Parity::even), semibasic_check(s.q(1) * d(s.Q(0)), 0)).is_zero());
  CHECK_THROWS_AS(pair(total_derivative_field(s.sig, 1), semibasic_check(d(s.Q(0)), 0)),
                  DomainMismatch);

  // k = 1, r = 1, l = 0, w = q1 dq0, X = d/dq0
  VectorField x(0, 0, Parity::even);
  x.set(s.Q(0), 1);
  GradedForm w = s.q(1) * d(s.Q(0));
  GradedForm lhs = interior(lift_vector_field(x, 1), w);
  SuperExpr rhs = pair(lift_vector_field(x, 0).widened(1), semibasic_check(w, 0));
  CHECK(lhs == GradedForm::function(s.q(1)));
  CHECK(rhs == s.q(1));
}

TEST_CASE("d squares to zero and commutes with d_T") {
  helpers::Super s;
  gen::Random rng(32);
  for (int i = 0; i < 40; ++i) {
    SuperExpr f = rng.expr(s.sig, 2);
    CHECK(exterior_d(exterior_d(f)).is_zero());
    GradedForm w = rng.form(s.sig, 2, rng.integer(1, 2), rng.coin() ? Parity::odd : Parity::even);
    CHECK(exterior_d(exterior_d(w)).is_zero());
    CHECK(total_derivative(3, exterior_d(w)) == exterior_d(total_derivative(2, w)));
    CHECK(total_derivative(2, exterior_d(f)) == exterior_d(total_derivative(f)));
  }
}

TEST_CASE("Cartan operator reproduces known momenta") {
  helpers::Super s;
  // k = 1
  CHECK(cartan_operator(1, exterior_d(half(s.q(1) * s.q(1)))) == s.q(1) * d(s.Q(0)));
  // k = 2
  CHECK(cartan_operator(2, exterior_d(half(s.q(2) * s.q(2)))) ==
        -(s.q(3) * d(s.Q(0))) + s.q(2) * d(s.Q(1)));
  CHECK_THROWS_AS(cartan_operator(0, d(s.Q(0))), OrderExceeded);
}
