#pragma once

#include <map>
#include <string>

#include "supermech/errors.hpp"
#include "supermech/graded_algebra.hpp"
#include "supermech/graded_forms.hpp"
#include "supermech/jet_geometry.hpp"

namespace supermech {

// An even superfunction on T^k M, k >= 1.
class SuperLagrangian {
 public:
  SuperLagrangian(Signature signature, int order, SuperExpr expr);

  const Signature& signature() const { return signature_; }
  int order() const { return order_; }
  const SuperExpr& expr() const { return expr_; }

 private:
  Signature signature_;
  int order_;
  SuperExpr expr_;
};

// Theta_L = S^(k)(dL), a 1-form on T^{2k-1}.
GradedForm cartan_one_form(const SuperLagrangian& lagrangian);
// Omega_L = -d Theta_L.
GradedForm cartan_two_form(const SuperLagrangian& lagrangian);
// E_L = <T^(k-1), Theta_L check> - L on T^{2k-1}.
SuperExpr energy(const SuperLagrangian& lagrangian);
// delta L = tau^*(dL) - d_{T^(2k-1)} Theta_L, a tau_{2k,0}-semibasic 1-form.
GradedForm euler_lagrange_form(const SuperLagrangian& lagrangian);

struct CartanData {
  GradedForm theta;
  GradedForm omega;
  SuperExpr energy;
  GradedForm delta;
};
CartanData cartan_data(const SuperLagrangian& lagrangian);

// Check-form components of delta L keyed by base coordinate.
std::map<Generator, SuperExpr> euler_lagrange_expressions(const SuperLagrangian& lagrangian);

enum class Regularity { regular, degenerate, indeterminate };
std::string_view to_string(Regularity r);

struct RegularityReport {
  Regularity verdict = Regularity::degenerate;
  // Highest jet order of each base coordinate in the Euler-Lagrange system;
  // -1 when the coordinate does not enter at all.
  std::map<Generator, int> top_orders;
  // Bodies of the determinants of the even-even and odd-odd blocks of the
  // leading-order Jacobian.
  SuperExpr even_determinant;
  SuperExpr odd_determinant;
  std::string detail;
};
RegularityReport regularity(const SuperLagrangian& lagrangian);

// The Lagrangian SODE Gamma on T^{2k-1}, kept as the top-order forces and the
// lower-order constraints coming from odd coordinates of low differential
// order (for example theta_1 = 0 for a first-order fermion).
class Dynamics {
 public:
  Dynamics(Signature signature, int lagrangian_order, std::map<Generator, SuperExpr> forces,
           std::map<Generator, SuperExpr> constraints);

  const Signature& signature() const { return signature_; }
  int lagrangian_order() const { return lagrangian_order_; }
  int order() const { return 2 * lagrangian_order_ - 1; }

  // x_{2k} -> force, i.e. the section gamma.
  const std::map<Generator, SuperExpr>& forces() const { return forces_; }
  // x_m -> value for coordinates of order < 2k fixed by constraints.
  const std::map<Generator, SuperExpr>& constraints() const { return constraints_; }

  VectorField field() const;
  // Restriction to the constraint surface (and the section for x_{2k}).
  SuperExpr on_shell(const SuperExpr& e) const;
  GradedForm on_shell(const GradedForm& form) const;
  // Gamma(g), restricted to the constraint surface.
  SuperExpr apply(const SuperExpr& g) const;

 private:
  Signature signature_;
  int lagrangian_order_;
  std::map<Generator, SuperExpr> forces_;
  std::map<Generator, SuperExpr> constraints_;
  std::map<Generator, SuperExpr> reduction_;
};

// Throws NotRegular unless regularity() says Regular; SingularSystem if the
// leading-order system still cannot be solved.
Dynamics solve_dynamics(const SuperLagrangian& lagrangian);

// i_Gamma Omega_L - dE_L restricted to the constraint surface.
GradedForm dynamical_residual(const SuperLagrangian& lagrangian, const Dynamics& dynamics);

// Gamma on T^k is a SODE iff Gamma(x_j) = x_{j+1} for j < k, equivalently
// S_k(Gamma) = Delta_k. Both conditions are evaluated; disagreement is a bug.
bool is_sode(const VectorField& field, const Signature& signature);

bool is_constant_of_motion(const SuperExpr& g, const Dynamics& dynamics);

// X along tau_{2k-1,0} with T(G) = -<X, (delta L) check>. Throws NoWitness.
VectorField conservation_witness(const SuperExpr& g, const SuperLagrangian& lagrangian);

class NotSymmetry : public Error {
 public:
  NotSymmetry(const std::string& what, std::map<Generator, SuperExpr> certificate)
      : Error(what), certificate(std::move(certificate)) {}
  // Non-vanishing variational derivatives of X^(k) L, keyed by base coordinate.
  std::map<Generator, SuperExpr> certificate;
};

// Graded variational derivatives sum_j (-T)^j d_{x_j} v for every base
// coordinate appearing in v. Empty iff v is a total derivative.
std::map<Generator, SuperExpr> variational_derivatives(const SuperExpr& v);

// F with T(F) = v and no constant term. Throws NotSymmetry when v is not a
// total derivative.
SuperExpr integrate_total_derivative(const SuperExpr& v);

// Returns F with X^(k) L = T(F). Throws NotSymmetry.
SuperExpr check_symmetry(const VectorField& field, const SuperLagrangian& lagrangian);

// G = <X^(k-1), Theta_L check> - F. Throws NotSymmetry when (X, F) does not
// satisfy X^(k) L = T(F), NotProjectable when G depends on orders > 2k-1.
SuperExpr noether_charge(const VectorField& field, const SuperExpr& f,
                         const SuperLagrangian& lagrangian);

struct NoetherPair {
  VectorField field;
  SuperExpr f;
};

// Converse direction: the witness of G together with the F it induces.
NoetherPair noether_inverse(const SuperExpr& g, const SuperLagrangian& lagrangian);

}  // namespace supermech
