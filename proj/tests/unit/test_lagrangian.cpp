#include <doctest.h>

#include "../support/oracles.hpp"
#include "../support/random.hpp"
#include "helpers.hpp"
#include "supermech/errors.hpp"
#include "supermech/lagrangian.hpp"

using namespace supermech;
using helpers::half;

namespace {

GradedForm d(Generator x) { return GradedForm::differential(x); }

struct Classical {
  Signature sig{{"q"}, {}};
  Chart chart{sig, 8};
  SuperExpr q(int j) const { return chart("q", j); }
  Generator Q(int j) const { return chart.generator("q", j); }
};

SuperLagrangian superparticle(const helpers::Super& s) {
  return {s.sig, 1, half(s.q(1) * s.q(1)) + half(s.t(0) * s.t(1))};
}

VectorField susy_field(const helpers::Super& s, int sign) {
  VectorField x(0, 1, Parity::odd);
  x.set(s.Q(0), s.t(0));
  x.set(s.T(0), s.q(1).scaled(sign));
  return x;
}

}  // namespace

TEST_CASE("Lagrangians must be even functions of order at most k") {
  helpers::Super s;
  CHECK_THROWS_AS(SuperLagrangian(s.sig, 1, s.q(2)), OrderExceeded);
  CHECK_THROWS_AS(SuperLagrangian(s.sig, 1, s.t(0)), ParityMismatch);
  CHECK_THROWS_AS(SuperLagrangian(s.sig, 0, s.q(0)), OrderExceeded);
}

TEST_CASE("classical first-order Lagrangians") {
  Classical c;
  SuperLagrangian free(c.sig, 1, half(c.q(1) * c.q(1)));
  CHECK(cartan_one_form(free) == c.q(1) * d(c.Q(0)));
  CHECK(cartan_two_form(free) == wedge(d(c.Q(0)), d(c.Q(1))));
  CHECK(energy(free) == half(c.q(1) * c.q(1)));
  CHECK(euler_lagrange_form(free) == -(c.q(2) * d(c.Q(0))));

  SuperLagrangian oscillator(c.sig, 1, half(c.q(1) * c.q(1)) - half(c.q(0) * c.q(0)));
  CHECK(cartan_one_form(oscillator) == c.q(1) * d(c.Q(0)));
  CHECK(energy(oscillator) == half(c.q(1) * c.q(1)) + half(c.q(0) * c.q(0)));
  Dynamics dyn = solve_dynamics(oscillator);
  CHECK(dyn.forces().at(c.Q(2)) == -c.q(0));
  CHECK(dyn.constraints().empty());

  SuperLagrangian linear(c.sig, 1, c.q(0));
  CHECK(cartan_two_form(linear).is_zero());
}

TEST_CASE("second-order free Lagrangian") {
  Classical c;
  SuperLagrangian l(c.sig, 2, half(c.q(2) * c.q(2)));
  GradedForm theta = cartan_one_form(l);
  CHECK(theta == -(c.q(3) * d(c.Q(0))) + c.q(2) * d(c.Q(1)));
  CHECK_NOTHROW(semibasic_check(theta, 1));
  CHECK(energy(l) == -(c.q(1) * c.q(3)) + half(c.q(2) * c.q(2)));
  CHECK(euler_lagrange_form(l) == c.q(4) * d(c.Q(0)));
  CHECK(solve_dynamics(l).forces().at(c.Q(4)).is_zero());
}

TEST_CASE("superparticle Cartan data") {
  helpers::Super s;
  CartanData data = cartan_data(superparticle(s));
  CHECK(data.theta == s.q(1) * d(s.Q(0)) + half(s.t(0)) * d(s.T(0)));
  CHECK(data.omega == wedge(d(s.Q(0)), d(s.Q(1))) - wedge(d(s.T(0)), d(s.T(0))).scaled(Rational(1, 2)));
  CHECK(data.energy == half(s.q(1) * s.q(1)));
  CHECK(data.delta == -(s.q(2) * d(s.Q(0))) - s.t(1) * d(s.T(0)));
}

TEST_CASE("superparticle dynamics carries a first-order fermion constraint") {
  helpers::Super s;
  SuperLagrangian l = superparticle(s);
  RegularityReport report = regularity(l);
  CHECK(report.verdict == Regularity::regular);
  CHECK(report.top_orders.at(s.Q(0)) == 2);
  CHECK(report.top_orders.at(s.T(0)) == 1);

  Dynamics dyn = solve_dynamics(l);
  CHECK(dyn.forces().at(s.Q(2)).is_zero());
  CHECK(dyn.forces().at(s.T(2)).is_zero());
  CHECK(dyn.constraints().at(s.T(1)).is_zero());
  CHECK(dynamical_residual(l, dyn).is_zero());
  CHECK(is_sode(dyn.field(), s.sig));
  // off the constraint surface the residual is -theta1 dtheta0
  CartanData data = cartan_data(l);
  CHECK(interior(dyn.field(), data.omega) - exterior_d(data.energy) == -(s.t(1) * d(s.T(0))));
}

TEST_CASE("two fermions coupled through the boson") {
  // L = 1/2 q1^2 + 1/2 theta0 theta1 + 1/2 psi0 psi1 + q0 theta0 psi0
  Signature sig({"q"}, {"theta", "psi"});
  Chart c(sig, 4);
  auto q = [&](int j) { return c("q", j); };
  auto t = [&](int j) { return c("theta", j); };
  auto p = [&](int j) { return c("psi", j); };
  SuperLagrangian l(sig, 1,
                    half(q(1) * q(1)) + half(t(0) * t(1)) + half(p(0) * p(1)) + q(0) * t(0) * p(0));
  auto el = euler_lagrange_expressions(l);
  CHECK(el.at(c.generator("q", 0)) == t(0) * p(0) - q(2));
  CHECK(el.at(c.generator("theta", 0)) == -(t(1) + q(0) * p(0)));
  CHECK(el.at(c.generator("psi", 0)) == -(p(1) - q(0) * t(0)));

  Dynamics dyn = solve_dynamics(l);
  CHECK(dyn.forces().at(c.generator("q", 2)) == t(0) * p(0));
  CHECK(dyn.constraints().at(c.generator("theta", 1)) == -(q(0) * p(0)));
  CHECK(dyn.constraints().at(c.generator("psi", 1)) == q(0) * t(0));
  CHECK(dynamical_residual(l, dyn).is_zero());
  CHECK(is_sode(dyn.field(), sig));
  CHECK(is_constant_of_motion(energy(l), dyn));
}

TEST_CASE("regularity verdicts") {
  helpers::Super s;
  Classical c;
  CHECK(regularity(superparticle(s)).verdict == Regularity::regular);
  CHECK(regularity(SuperLagrangian(c.sig, 1, c.q(1))).verdict == Regularity::degenerate);
  RegularityReport r =
      regularity(SuperLagrangian(c.sig, 1, half(c.q(0) * c.q(0) * c.q(1) * c.q(1))));
  CHECK(r.verdict == Regularity::indeterminate);
  CHECK(r.even_determinant == -(c.q(0) * c.q(0)));
  CHECK_THROWS_AS(solve_dynamics(SuperLagrangian(c.sig, 1, c.q(1))), NotRegular);
  // the fermion alone with no kinetic term
  CHECK(regularity(SuperLagrangian(s.sig, 1, half(s.q(1) * s.q(1)))).verdict ==
        Regularity::degenerate);
}

TEST_CASE("SODE characterisations") {
  helpers::Super s;
  CHECK_FALSE(is_sode(liouville(s.sig, 2), s.sig));
  CHECK(is_sode(solve_dynamics(superparticle(s)).field(), s.sig));
}

TEST_CASE("pipeline matches the Ostrogradski oracle on random even Lagrangians") {
  Classical c;
  gen::Random rng(41);
  for (int i = 0; i < 12; ++i) {
    const int k = rng.integer(1, 3);
    SuperLagrangian l(c.sig, k, rng.even_lagrangian(c.sig, k));
    const int n = 2 * k + 2;
    oracle::Poly lp = oracle::from_expr(l.expr(), n);
    CartanData data = cartan_data(l);
    CheckForm theta = semibasic_check(data.theta, k - 1);
    auto momenta = oracle::ostrogradski_momenta(lp, k);
    for (int j = 0; j < k; ++j) {
      auto it = theta.components.find(c.Q(j));
      SuperExpr component = it == theta.components.end() ? SuperExpr() : it->second;
      CHECK(oracle::from_expr(component, n) == momenta[j]);
    }
    CheckForm delta = semibasic_check(data.delta, 0);
    CHECK(oracle::from_expr(delta.components.at(c.Q(0)), n) == oracle::euler_lagrange(lp, k));
    CHECK(oracle::from_expr(data.energy, n) == oracle::ostrogradski_energy(lp, k));
    Dynamics dyn = solve_dynamics(l);
    CHECK(dynamical_residual(l, dyn).is_zero());
  }
}

TEST_CASE("constants of motion and their witnesses") {
  Classical c;
  SuperLagrangian free(c.sig, 1, half(c.q(1) * c.q(1)));
  Dynamics dyn = solve_dynamics(free);
  CHECK(is_constant_of_motion(c.q(1), dyn));
  CHECK_FALSE(is_constant_of_motion(c.q(0), dyn));
  VectorField x = conservation_witness(c.q(1), free);
  CHECK(x.component(c.Q(0)) == SuperExpr(1));
  CHECK_THROWS_AS(conservation_witness(c.q(0), free), NoWitness);
  CHECK(conservation_witness(SuperExpr(), free).components().empty());

  SuperLagrangian oscillator(c.sig, 1, half(c.q(1) * c.q(1)) - half(c.q(0) * c.q(0)));
  VectorField y = conservation_witness(energy(oscillator), oscillator);
  CHECK(y.component(c.Q(0)) == c.q(1));
}

TEST_CASE("total derivative integration") {
  helpers::Super s;
  gen::Random rng(42);
  for (int i = 0; i < 30; ++i) {
    SuperExpr f = rng.expr(s.sig, 2);
    f -= SuperExpr(f.constant_term());
    SuperExpr v = total_derivative(f);
    CHECK(variational_derivatives(v).empty());
    SuperExpr g = integrate_total_derivative(v);
    CHECK(total_derivative(g) == v);
    CHECK(g == f);
  }
  CHECK_THROWS_AS(integrate_total_derivative(s.q(1) * s.q(1)), NotSymmetry);
  CHECK_THROWS_AS(integrate_total_derivative(SuperExpr(1)), NotSymmetry);
}

TEST_CASE("symmetry checks and Noether charges") {
  Classical c;
  SuperLagrangian free(c.sig, 1, half(c.q(1) * c.q(1)));
  VectorField translation(0, 1, Parity::even);
  translation.set(c.Q(0), 1);
  SuperExpr f = check_symmetry(translation, free);
  CHECK(f.is_zero());
  CHECK(noether_charge(translation, f, free) == c.q(1));

  VectorField dilation(0, 1, Parity::even);
  dilation.set(c.Q(0), c.q(0));
  try {
    check_symmetry(dilation, free);
    FAIL("expected NotSymmetry");
  } catch (const NotSymmetry& e) {
    CHECK(e.certificate.at(c.Q(0)) == c.q(2).scaled(-2));
  }
  CHECK_THROWS_AS(noether_charge(dilation, SuperExpr(), free), NotSymmetry);

  SuperLagrangian second(c.sig, 2, half(c.q(2) * c.q(2)));
  VectorField shift(0, 3, Parity::even);
  shift.set(c.Q(0), 1);
  CHECK(noether_charge(shift, check_symmetry(shift, second), second) == -c.q(3));
}

TEST_CASE("supersymmetry of the superparticle") {
  helpers::Super s;
  SuperLagrangian l = superparticle(s);
  VectorField x = susy_field(s, -1);
  SuperExpr f = check_symmetry(x, l);
  CHECK(f == half(s.q(1) * s.t(0)));
  SuperExpr g = noether_charge(x, f, l);
  CHECK(g == s.q(1) * s.t(0));
  CHECK(is_constant_of_motion(g, solve_dynamics(l)));

  NoetherPair back = noether_inverse(g, l);
  CHECK(back.field == x);
  CHECK(back.f == f);

  // with the opposite sign on theta the variation is not a total derivative
  CHECK_THROWS_AS(check_symmetry(susy_field(s, 1), l), NotSymmetry);
}

TEST_CASE("Noether inverse round trips") {
  Classical c;
  SuperLagrangian oscillator(c.sig, 1, half(c.q(1) * c.q(1)) - half(c.q(0) * c.q(0)));
  NoetherPair pair = noether_inverse(energy(oscillator), oscillator);
  CHECK(pair.f == oscillator.expr());
  CHECK(noether_charge(pair.field, pair.f, oscillator) == energy(oscillator));

  NoetherPair zero = noether_inverse(SuperExpr(), oscillator);
  CHECK(zero.field.components().empty());
  CHECK(zero.f.is_zero());
  CHECK_THROWS_AS(noether_inverse(c.q(0), oscillator), NoWitness);
}
