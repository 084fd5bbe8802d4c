#include "supermech/lagrangian.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "supermech/super_linear.hpp"

namespace supermech {

SuperLagrangian::SuperLagrangian(Signature signature, int order, SuperExpr expr)
    : signature_(std::move(signature)), order_(order), expr_(std::move(expr)) {
  if (order_ < 1) throw OrderExceeded("a super Lagrangian needs order k >= 1");
  if (expr_.max_order() > order_) {
    throw OrderExceeded("Lagrangian depends on jets above its order " + std::to_string(order_));
  }
  for (const auto& g : expr_.generators()) {
    if (!signature_.declares(g)) throw UndeclaredGenerator("Lagrangian uses an undeclared coordinate");
  }
  if (!expr_.is_zero() && parity_of(expr_) != Parity::even) {
    throw ParityMismatch("a super Lagrangian must be even");
  }
}

GradedForm cartan_one_form(const SuperLagrangian& lagrangian) {
  return cartan_operator(lagrangian.order(), exterior_d(lagrangian.expr()));
}

GradedForm cartan_two_form(const SuperLagrangian& lagrangian) {
  return -exterior_d(cartan_one_form(lagrangian));
}

namespace {

SuperExpr energy_from(const SuperLagrangian& lagrangian, const GradedForm& theta) {
  const int k = lagrangian.order();
  CheckForm theta_check = semibasic_check(theta, k - 1);
  VectorField total = total_derivative_field(lagrangian.signature(), k - 1).widened(2 * k - 1);
  return pair(total, theta_check) - lagrangian.expr();
}

GradedForm euler_lagrange_from(const SuperLagrangian& lagrangian, const GradedForm& theta) {
  const int k = lagrangian.order();
  return exterior_d(lagrangian.expr()) - total_derivative(2 * k - 1, theta);
}

}  // namespace

SuperExpr energy(const SuperLagrangian& lagrangian) {
  return energy_from(lagrangian, cartan_one_form(lagrangian));
}

GradedForm euler_lagrange_form(const SuperLagrangian& lagrangian) {
  return euler_lagrange_from(lagrangian, cartan_one_form(lagrangian));
}

CartanData cartan_data(const SuperLagrangian& lagrangian) {
  CartanData out;
  out.theta = cartan_one_form(lagrangian);
  out.omega = -exterior_d(out.theta);
  out.energy = energy_from(lagrangian, out.theta);
  out.delta = euler_lagrange_from(lagrangian, out.theta);
  return out;
}

std::map<Generator, SuperExpr> euler_lagrange_expressions(const SuperLagrangian& lagrangian) {
  CheckForm check = semibasic_check(euler_lagrange_form(lagrangian), 0);
  std::map<Generator, SuperExpr> out;
  for (const auto& base : lagrangian.signature().base_coordinates()) {
    auto it = check.components.find(base);
    out[base] = it == check.components.end() ? SuperExpr() : it->second;
  }
  return out;
}

std::string_view to_string(Regularity r) {
  switch (r) {
    case Regularity::regular:
      return "regular";
    case Regularity::degenerate:
      return "degenerate";
    case Regularity::indeterminate:
      return "indeterminate";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// The Euler-Lagrange system written as E = J (x_top - solution).
// ---------------------------------------------------------------------------

namespace {

struct EulerLagrangeSystem {
  int k = 0;
  std::vector<Generator> bases;  // even bases first
  std::size_t even_count = 0;
  std::map<Generator, SuperExpr> equations;
  RegularityReport report;
  SuperMatrix jacobian;  // rows: equations, columns: unknowns x_{b,top_b}
  std::vector<SuperExpr> remainder;
  std::optional<SuperMatrix> inverse;
  std::map<Generator, SuperExpr> solution;  // x_{b,top_b} -> value
};

Generator top_generator(const EulerLagrangeSystem& sys, Generator base) {
  return base.raised(sys.report.top_orders.at(base));
}

bool mentions_top(const EulerLagrangeSystem& sys, const SuperExpr& e) {
  for (const auto& g : e.generators()) {
    if (g.order >= sys.report.top_orders.at(g.base_coordinate())) return true;
  }
  return false;
}

EulerLagrangeSystem analyse(const SuperLagrangian& lagrangian) {
  EulerLagrangeSystem sys;
  sys.k = lagrangian.order();
  sys.bases = lagrangian.signature().base_coordinates();
  sys.even_count = static_cast<std::size_t>(
      std::count_if(sys.bases.begin(), sys.bases.end(),
                    [](const Generator& g) { return !is_odd(g.parity); }));
  sys.equations = euler_lagrange_expressions(lagrangian);
  auto& report = sys.report;
  const int top_order = 2 * sys.k;

  for (const auto& b : sys.bases) report.top_orders[b] = -1;
  for (const auto& [base, e] : sys.equations) {
    for (const auto& g : e.generators()) {
      int& top = report.top_orders[g.base_coordinate()];
      top = std::max(top, g.order);
    }
  }

  for (const auto& b : sys.bases) {
    const std::string name = lagrangian.signature().name(b);
    int top = report.top_orders[b];
    if (top < 0) {
      report.verdict = Regularity::degenerate;
      report.detail = name + " does not enter the Euler-Lagrange equations";
      return sys;
    }
    if (!is_odd(b.parity) && top < top_order) {
      report.verdict = Regularity::degenerate;
      report.detail = "the equations reach only order " + std::to_string(top) + " in " + name +
                      " (expected " + std::to_string(top_order) + ")";
      return sys;
    }
  }

  const std::size_t n = sys.bases.size();
  sys.jacobian.assign(n, std::vector<SuperExpr>(n));
  sys.remainder.assign(n, SuperExpr());
  bool affine = true;
  for (std::size_t row = 0; row < n; ++row) {
    const Generator e = sys.bases[row];
    SuperExpr rest = sys.equations[e];
    for (std::size_t col = 0; col < n; ++col) {
      const Generator b = sys.bases[col];
      const Generator unknown = top_generator(sys, b);
      // E_e = sum_b J_eb x_b + R_e with the unknown written on the right.
      SuperExpr coefficient = left_partial(sys.equations[e], unknown);
      if (is_odd(b.parity) && !is_odd(e.parity)) coefficient = -coefficient;
      if (mentions_top(sys, coefficient)) affine = false;
      rest -= coefficient * SuperExpr::generator(unknown);
      sys.jacobian[row][col] = coefficient;
    }
    if (mentions_top(sys, rest)) affine = false;
    sys.remainder[row] = rest;
  }
  if (!affine) {
    report.verdict = Regularity::indeterminate;
    report.detail = "the equations are not affine in their highest derivatives";
    return sys;
  }

  SuperMatrix even_block(sys.even_count, std::vector<SuperExpr>(sys.even_count));
  SuperMatrix odd_block(n - sys.even_count, std::vector<SuperExpr>(n - sys.even_count));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i < sys.even_count && j < sys.even_count) {
        even_block[i][j] = sys.jacobian[i][j];
      } else if (i >= sys.even_count && j >= sys.even_count) {
        odd_block[i - sys.even_count][j - sys.even_count] = sys.jacobian[i][j];
      }
    }
  }
  report.even_determinant = determinant(even_block).body();
  report.odd_determinant = determinant(odd_block).body();

  if (report.even_determinant.is_zero() || report.odd_determinant.is_zero()) {
    report.verdict = Regularity::degenerate;
    report.detail = report.even_determinant.is_zero()
                        ? "the even block of the leading Jacobian is singular"
                        : "the odd block of the leading Jacobian is singular";
    return sys;
  }
  if (!report.even_determinant.is_constant() || !report.odd_determinant.is_constant()) {
    report.verdict = Regularity::indeterminate;
    report.detail = "a leading determinant vanishes on a proper subvariety";
    return sys;
  }
  report.verdict = Regularity::regular;

  sys.inverse = invert_supermatrix(sys.jacobian, sys.even_count);
  if (sys.inverse) {
    for (std::size_t i = 0; i < n; ++i) {
      SuperExpr value;
      for (std::size_t j = 0; j < n; ++j) value -= (*sys.inverse)[i][j] * sys.remainder[j];
      sys.solution[top_generator(sys, sys.bases[i])] = value;
    }
  }
  return sys;
}

const EulerLagrangeSystem& require_solved(const EulerLagrangeSystem& sys) {
  if (sys.report.verdict != Regularity::regular) {
    throw NotRegular("Lagrangian is " + std::string(to_string(sys.report.verdict)) + ": " +
                     sys.report.detail);
  }
  if (!sys.inverse) throw SingularSystem("leading-order system could not be inverted");
  for (const auto& [e, equation] : sys.equations) {
    if (!substitute(equation, sys.solution).is_zero()) {
      throw SingularSystem("solution does not satisfy the Euler-Lagrange equations");
    }
  }
  return sys;
}

}  // namespace

RegularityReport regularity(const SuperLagrangian& lagrangian) { return analyse(lagrangian).report; }

// ---------------------------------------------------------------------------
// Dynamics
// ---------------------------------------------------------------------------

Dynamics::Dynamics(Signature signature, int lagrangian_order,
                   std::map<Generator, SuperExpr> forces,
                   std::map<Generator, SuperExpr> constraints)
    : signature_(std::move(signature)),
      lagrangian_order_(lagrangian_order),
      forces_(std::move(forces)),
      constraints_(std::move(constraints)) {
  reduction_ = constraints_;
  reduction_.insert(forces_.begin(), forces_.end());
}

VectorField Dynamics::field() const {
  const int top = order();
  VectorField gamma(top, top, Parity::even);
  for (const auto& x : signature_.coordinates(top)) {
    if (x.order < top) {
      gamma.set(x, SuperExpr::generator(x.raised()));
    } else {
      auto it = forces_.find(x.raised());
      gamma.set(x, it == forces_.end() ? SuperExpr() : it->second);
    }
  }
  return gamma;
}

SuperExpr Dynamics::on_shell(const SuperExpr& e) const { return substitute(e, reduction_); }

GradedForm Dynamics::on_shell(const GradedForm& form) const {
  return form.map_coefficients([&](const SuperExpr& c) { return on_shell(c); });
}

SuperExpr Dynamics::apply(const SuperExpr& g) const { return on_shell(field()(g)); }

Dynamics solve_dynamics(const SuperLagrangian& lagrangian) {
  EulerLagrangeSystem sys = analyse(lagrangian);
  require_solved(sys);
  const int top_order = 2 * sys.k;

  // Prolong x_{b,top_b} = s_b by total differentiation up to order 2k.
  std::map<Generator, SuperExpr> forces;
  std::map<Generator, SuperExpr> constraints;
  for (const auto& b : sys.bases) {
    Generator x = top_generator(sys, b);
    SuperExpr value = sys.solution.at(x);
    for (;;) {
      if (x.order == top_order) {
        forces[x] = value;
        break;
      }
      constraints[x] = value;
      x = x.raised();
      value = substitute(total_derivative(value), sys.solution);
    }
  }

  Dynamics dynamics(lagrangian.signature(), sys.k, std::move(forces), std::move(constraints));
  if (!dynamical_residual(lagrangian, dynamics).is_zero()) {
    throw SingularSystem("the dynamical equation is not satisfied by the solved field");
  }
  if (!is_sode(dynamics.field(), lagrangian.signature())) {
    throw SingularSystem("the solved field is not a SODE");
  }
  return dynamics;
}

GradedForm dynamical_residual(const SuperLagrangian& lagrangian, const Dynamics& dynamics) {
  CartanData data = cartan_data(lagrangian);
  GradedForm residual = interior(dynamics.field(), data.omega) - exterior_d(data.energy);
  return dynamics.on_shell(residual);
}

bool is_sode(const VectorField& field, const Signature& signature) {
  const int k = field.source_order();
  if (k < 1 || field.target_order() != k) {
    throw DomainMismatch("SODE conditions apply to fields on T^k with k >= 1");
  }
  bool jets_match = true;
  for (const auto& x : signature.coordinates(k - 1)) {
    if (field.component(x) != SuperExpr::generator(x.raised())) jets_match = false;
  }
  bool endomorphism_match = vertical_endomorphism(field) == liouville(signature, k);
  if (jets_match != endomorphism_match) {
    throw std::logic_error("SODE characterisations disagree");
  }
  return jets_match;
}

bool is_constant_of_motion(const SuperExpr& g, const Dynamics& dynamics) {
  return dynamics.apply(g).is_zero();
}

// ---------------------------------------------------------------------------
// Noether correspondence
// ---------------------------------------------------------------------------

VectorField conservation_witness(const SuperExpr& g, const SuperLagrangian& lagrangian) {
  const int k = lagrangian.order();
  if (g.max_order() > 2 * k - 1) {
    throw DomainMismatch("a constant of motion must be a function on T^" + std::to_string(2 * k - 1));
  }
  EulerLagrangeSystem sys = analyse(lagrangian);
  require_solved(sys);
  if (g.is_zero()) return VectorField(0, 2 * k - 1, Parity::even);
  const Parity field_parity = parity_of(g);

  // Write T(G) in the deviations u_b = x_{b,top_b} - s_b; the u_b reuse the
  // symbols x_{b,top_b}.
  std::map<Generator, SuperExpr> shift;
  std::map<Generator, SuperExpr> unshift;
  for (const auto& [x, value] : sys.solution) {
    shift[x] = SuperExpr::generator(x) + value;
    unshift[x] = SuperExpr::generator(x) - value;
  }
  SuperExpr shifted = substitute(total_derivative(g), shift);

  std::map<Generator, SuperExpr> quotients;  // keyed by base coordinate
  Monomial rest;
  for (const auto& [m, c] : shifted.terms()) {
    std::optional<Generator> pivot;
    for (const auto& x : SuperExpr::term(c, m).generators()) {
      int top = sys.report.top_orders.at(x.base_coordinate());
      if (x.order > top) throw NoWitness("T(G) involves jets beyond the Euler-Lagrange system");
      if (x.order == top && (!pivot || x.order > pivot->order)) pivot = x;
    }
    if (!pivot) throw NoWitness("T(G) does not vanish on shell, so G is not conserved");
    int sign = m.divide_left(*pivot, rest);
    quotients[pivot->base_coordinate()] += SuperExpr::term(sign < 0 ? Rational(-c) : c, rest);
  }

  VectorField witness(0, 2 * k - 1, field_parity);
  const std::size_t n = sys.bases.size();
  for (std::size_t row = 0; row < n; ++row) {
    const Generator e = sys.bases[row];
    SuperExpr weight;
    for (std::size_t col = 0; col < n; ++col) {
      const Generator b = sys.bases[col];
      auto it = quotients.find(b);
      if (it == quotients.end()) continue;
      // J^{-1}_{be} E_e Q_b, moving E_e to the left of J^{-1}_{be}.
      SuperExpr term = (*sys.inverse)[col][row] * substitute(it->second, unshift);
      bool flip = is_odd(e.parity) && is_odd(b.parity + e.parity);
      weight += flip ? -term : term;
    }
    bool flip = is_odd(field_parity) && is_odd(e.parity);
    SuperExpr component = flip ? weight : -weight;
    if (component.max_order() > 2 * k - 1) {
      throw NoWitness("witness component depends on jets above order " + std::to_string(2 * k - 1));
    }
    witness.set(e, component);
  }

  CheckForm delta_check = semibasic_check(euler_lagrange_form(lagrangian), 0);
  if (!(total_derivative(g) + pair(witness.widened(2 * k), delta_check)).is_zero()) {
    throw NoWitness("no field along tau_{2k-1,0} realises T(G) = -<X, delta L>");
  }
  return witness;
}

std::map<Generator, SuperExpr> variational_derivatives(const SuperExpr& v) {
  std::map<Generator, int> top;
  for (const auto& g : v.generators()) {
    int& order = top.try_emplace(g.base_coordinate(), 0).first->second;
    order = std::max(order, g.order);
  }
  std::map<Generator, SuperExpr> out;
  for (const auto& [base, order] : top) {
    SuperExpr sum;
    for (int j = 0; j <= order; ++j) {
      SuperExpr term = total_derivative(left_partial(v, base.raised(j)), j);
      sum += j % 2 ? -term : term;
    }
    if (!sum.is_zero()) out[base] = sum;
  }
  return out;
}

SuperExpr integrate_total_derivative(const SuperExpr& v) {
  auto certificate = variational_derivatives(v);
  if (!certificate.empty()) {
    throw NotSymmetry("expression is not a total time derivative", std::move(certificate));
  }
  auto fail = [] {
    return NotSymmetry("expression is not a total time derivative of a polynomial", {});
  };

  SuperExpr result;
  SuperExpr rest = v;
  for (int guard = 0; !rest.is_zero(); ++guard) {
    const int n = rest.max_order();
    if (n <= 0 || guard > 10000) throw fail();
    Generator top{};
    for (const auto& g : rest.generators()) {
      if (g.order == n) {
        top = g;
        break;
      }
    }
    SuperExpr slope = left_partial(rest, top);
    if (slope.max_order() >= n) throw fail();

    const Generator below = top.raised(-1);
    SuperExpr antiderivative;
    for (const auto& [m, c] : slope.terms()) {
      if (is_odd(below.parity)) {
        if (m.contains(below)) throw fail();
        antiderivative += SuperExpr::generator(below) * SuperExpr::term(c, m);
      } else {
        antiderivative += (SuperExpr::generator(below) * SuperExpr::term(c, m))
                              .scaled(Rational(1, m.exponent(below) + 1));
      }
    }
    result += antiderivative;
    rest -= total_derivative(antiderivative);
  }
  return result - SuperExpr(result.constant_term());
}

SuperExpr check_symmetry(const VectorField& field, const SuperLagrangian& lagrangian) {
  const int k = lagrangian.order();
  if (field.source_order() != 0 || field.target_order() > 2 * k - 1) {
    throw DomainMismatch("symmetries are fields along tau_{2k-1,0}");
  }
  SuperExpr variation = lift_vector_field(field, k)(lagrangian.expr());
  SuperExpr f = integrate_total_derivative(variation);
  if (total_derivative(f) != variation) throw std::logic_error("total derivative integration failed");
  return f;
}

SuperExpr noether_charge(const VectorField& field, const SuperExpr& f,
                         const SuperLagrangian& lagrangian) {
  const int k = lagrangian.order();
  if (field.source_order() != 0 || field.target_order() > 2 * k - 1) {
    throw DomainMismatch("symmetries are fields along tau_{2k-1,0}");
  }
  SuperExpr variation = lift_vector_field(field, k)(lagrangian.expr());
  SuperExpr defect = variation - total_derivative(f);
  if (!defect.is_zero()) {
    throw NotSymmetry("X^(k) L differs from T(F)", variational_derivatives(defect));
  }
  CheckForm theta_check = semibasic_check(cartan_one_form(lagrangian), k - 1);
  SuperExpr charge = pair(lift_vector_field(field, k - 1), theta_check) - f;
  if (charge.max_order() > 2 * k - 1) {
    throw NotProjectable("Noether charge depends on jets above order " + std::to_string(2 * k - 1));
  }
  if (regularity(lagrangian).verdict == Regularity::regular &&
      !is_constant_of_motion(charge, solve_dynamics(lagrangian))) {
    throw std::logic_error("Noether charge is not conserved");
  }
  return charge;
}

NoetherPair noether_inverse(const SuperExpr& g, const SuperLagrangian& lagrangian) {
  const int k = lagrangian.order();
  VectorField witness = conservation_witness(g, lagrangian);
  CheckForm theta_check = semibasic_check(cartan_one_form(lagrangian), k - 1);
  SuperExpr f = pair(lift_vector_field(witness, k - 1), theta_check) - g;
  if (lift_vector_field(witness, k)(lagrangian.expr()) != total_derivative(f)) {
    throw std::logic_error("recovered pair does not satisfy X^(k) L = T(F)");
  }
  return {witness, f};
}

}  // namespace supermech
