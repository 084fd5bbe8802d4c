#include "supermech/report.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "supermech/format.hpp"
#include "supermech/grassmann.hpp"
#include "supermech/lagrangian.hpp"

namespace supermech {

using json = nlohmann::json;

namespace {

constexpr int kSchema = 1;

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json diagnostic(const std::exception& error) {
  return {{"kind", error_kind(error)}, {"message", error.what()}};
}

json expr_map(const std::map<Generator, SuperExpr>& entries, const Signature& sig, bool base_names) {
  json out = json::object();
  for (const auto& [g, e] : entries) {
    out[base_names ? sig.base_name(g) : sig.name(g)] = format_expr(e, sig);
  }
  return out;
}

json form_map(const GradedForm& form, const Signature& sig) {
  json out = json::object();
  for (const auto& [key, c] : form.terms()) out[format_differentials(key, sig)] = format_expr(c, sig);
  return out;
}

json regularity_json(const RegularityReport& report, const Signature& sig) {
  json tops = json::object();
  for (const auto& [base, order] : report.top_orders) tops[sig.base_name(base)] = order;
  return {{"verdict", std::string(to_string(report.verdict))},
          {"detail", report.detail},
          {"top_orders", tops},
          {"even_determinant", format_expr(report.even_determinant, sig)},
          {"odd_determinant", format_expr(report.odd_determinant, sig)}};
}

std::string latex_derive(const ProblemFile& problem, const CartanData& data,
                         const RegularityReport& regularity,
                         const std::optional<Dynamics>& dynamics) {
  const Signature& sig = problem.signature;
  std::ostringstream out;
  out << "% order k = " << problem.order << ", " << to_string(regularity.verdict) << "\n";
  out << "\\begin{align*}\n";
  out << "L &= " << latex_expr(problem.lagrangian, sig) << " \\\\\n";
  out << "\\Theta_L &= " << latex_form(data.theta, sig) << " \\\\\n";
  out << "\\Omega_L &= " << latex_form(data.omega, sig) << " \\\\\n";
  out << "E_L &= " << latex_expr(data.energy, sig) << " \\\\\n";
  out << "\\delta L &= " << latex_form(data.delta, sig);
  if (dynamics) {
    auto line = [&](Generator x, const SuperExpr& value) {
      out << " \\\\\n"
          << latex_expr(SuperExpr::generator(x), sig) << " &= " << latex_expr(value, sig);
    };
    for (const auto& [x, value] : dynamics->constraints()) line(x, value);
    for (const auto& [x, value] : dynamics->forces()) line(x, value);
  }
  out << "\n\\end{align*}\n";
  return out.str();
}

}  // namespace

std::string error_kind(const std::exception& error) {
#define SUPERMECH_KIND(T) \
  if (dynamic_cast<const T*>(&error)) return #T;
  SUPERMECH_KIND(NotSymmetry)
  SUPERMECH_KIND(SyntaxError)
  SUPERMECH_KIND(UnknownCoordinate)
  SUPERMECH_KIND(IndexOutOfRange)
  SUPERMECH_KIND(UndeclaredGenerator)
  SUPERMECH_KIND(MixedParity)
  SUPERMECH_KIND(ZeroExpression)
  SUPERMECH_KIND(ParityMismatch)
  SUPERMECH_KIND(OrderExceeded)
  SUPERMECH_KIND(DomainMismatch)
  SUPERMECH_KIND(NotSemibasic)
  SUPERMECH_KIND(NotRegular)
  SUPERMECH_KIND(SingularSystem)
  SUPERMECH_KIND(NoWitness)
  SUPERMECH_KIND(NotProjectable)
  SUPERMECH_KIND(MissingValue)
  SUPERMECH_KIND(ParityViolation)
  SUPERMECH_KIND(NumericBreakdown)
#undef SUPERMECH_KIND
  return "InternalError";
}

Report parse_failure(const ParseError& error) {
  json out = {{"schema", kSchema},
              {"error",
               {{"kind", error_kind(error)},
                {"line", error.line},
                {"column", error.column},
                {"message", error.what()}}}};
  return {2, dump(out)};
}

Report run_derive(const ProblemFile& problem, Emit emit) {
  const Signature& sig = problem.signature;
  SuperLagrangian lagrangian = problem.super_lagrangian();
  CartanData data = cartan_data(lagrangian);
  RegularityReport regularity_report = regularity(lagrangian);

  json diagnostics = json::array();
  std::optional<Dynamics> dynamics;
  try {
    dynamics = solve_dynamics(lagrangian);
  } catch (const Error& e) {
    diagnostics.push_back(diagnostic(e));
  }

  int code = dynamics ? 0 : 1;
  if (emit == Emit::latex) return {code, latex_derive(problem, data, regularity_report, dynamics)};

  json out;
  out["schema"] = kSchema;
  out["order"] = problem.order;
  out["lagrangian"] = format_expr(problem.lagrangian, sig);
  out["regular"] = dynamics.has_value();
  out["regularity"] = regularity_json(regularity_report, sig);
  out["theta"] = form_map(data.theta, sig);
  out["omega"] = form_map(data.omega, sig);
  out["energy"] = format_expr(data.energy, sig);
  out["euler_lagrange"] = form_map(data.delta, sig);
  out["forces"] = dynamics ? expr_map(dynamics->forces(), sig, false) : json::object();
  out["constraints"] = dynamics ? expr_map(dynamics->constraints(), sig, false) : json::object();
  out["diagnostics"] = diagnostics;
  return {code, dump(out)};
}

Report run_noether(const ProblemFile& problem, const NoetherRequest& request) {
  const Signature& sig = problem.signature;
  const int k = problem.order;
  SuperLagrangian lagrangian = problem.super_lagrangian();
  json out;
  out["schema"] = kSchema;
  json diagnostics = json::array();

  auto conserved = [&](const SuperExpr& g, json& diag) {
    try {
      return is_constant_of_motion(g, solve_dynamics(lagrangian));
    } catch (const Error& e) {
      diag.push_back(diagnostic(e));
      return false;
    }
  };

  if (request.symmetry.has_value() == request.charge.has_value()) {
    out["diagnostics"] = json::array({{{"kind", "UsageError"},
                                       {"message", "give exactly one of --symmetry and --from-charge"}}});
    return {2, dump(out)};
  }

  if (request.symmetry) {
    const SymmetryDecl* decl = problem.find_symmetry(*request.symmetry);
    if (!decl) {
      out["diagnostics"] = json::array(
          {{{"kind", "UsageError"}, {"message", "no symmetry named '" + *request.symmetry + "'"}}});
      return {2, dump(out)};
    }
    VectorField field = symmetry_field(*decl, problem);
    out["symmetry"] = decl->name;
    out["parity"] = std::string(to_string(decl->parity));
    out["field"] = expr_map(decl->components, sig, true);
    try {
      SuperExpr f = check_symmetry(field, lagrangian);
      SuperExpr g = noether_charge(field, f, lagrangian);
      out["is_symmetry"] = true;
      out["F"] = format_expr(f, sig);
      out["charge"] = format_expr(g, sig);
      bool ok = conserved(g, diagnostics);
      out["conserved"] = ok;
      out["diagnostics"] = diagnostics;
      return {ok ? 0 : 1, dump(out)};
    } catch (const NotSymmetry& e) {
      out["is_symmetry"] = false;
      out["certificate"] = expr_map(e.certificate, sig, true);
      diagnostics.push_back(diagnostic(e));
    } catch (const Error& e) {
      out["is_symmetry"] = false;
      diagnostics.push_back(diagnostic(e));
    }
    out["diagnostics"] = diagnostics;
    return {1, dump(out)};
  }

  SuperExpr g;
  try {
    g = parse_expression(*request.charge, sig, 2 * k - 1);
  } catch (const ParseError& e) {
    return parse_failure(e);
  }
  out["charge"] = format_expr(g, sig);
  try {
    NoetherPair pair = noether_inverse(g, lagrangian);
    out["is_symmetry"] = true;
    out["parity"] = std::string(to_string(pair.field.parity()));
    out["field"] = expr_map(pair.field.components(), sig, true);
    out["F"] = format_expr(pair.f, sig);
    SuperExpr recovered = noether_charge(pair.field, pair.f, lagrangian);
    out["recovered_charge"] = format_expr(recovered, sig);
    bool ok = conserved(g, diagnostics) && recovered == g;
    out["conserved"] = ok;
    out["diagnostics"] = diagnostics;
    return {ok ? 0 : 1, dump(out)};
  } catch (const Error& e) {
    out["is_symmetry"] = false;
    out["conserved"] = false;
    diagnostics.push_back(diagnostic(e));
  }
  out["diagnostics"] = diagnostics;
  return {1, dump(out)};
}

Report run_simulate(const ProblemFile& problem, const SimulateOptions& options) {
  const Signature& sig = problem.signature;
  SuperLagrangian lagrangian = problem.super_lagrangian();
  const SimulationSpec spec = problem.simulation.value_or(SimulationSpec{});
  json out;
  out["schema"] = kSchema;
  out["n"] = spec.n;
  out["dt"] = to_double(spec.dt);
  out["t"] = to_double(spec.t_end);
  out["tolerance"] = options.tolerance;
  json diagnostics = json::array();

  try {
    Dynamics dynamics = solve_dynamics(lagrangian);
    std::vector<std::string> names{"energy"};
    std::vector<SuperExpr> quantities{energy(lagrangian)};
    for (const auto& charge : problem.charges) {
      names.push_back("charge:" + charge.name);
      quantities.push_back(charge.expr);
    }
    for (const auto& decl : problem.symmetries) {
      try {
        VectorField field = symmetry_field(decl, problem);
        SuperExpr g = noether_charge(field, check_symmetry(field, lagrangian), lagrangian);
        names.push_back("symmetry:" + decl.name);
        quantities.push_back(g);
      } catch (const Error& e) {
        json d = diagnostic(e);
        d["symmetry"] = decl.name;
        diagnostics.push_back(d);
      }
    }

    Trajectory trajectory =
        integrate(dynamics, initial_state(problem), to_double(spec.dt), to_double(spec.t_end));
    std::vector<double> drift = conservation_report(trajectory, quantities);

    bool passed = trajectory.max_constraint_violation <= options.tolerance;
    json table = json::array();
    for (std::size_t i = 0; i < quantities.size(); ++i) {
      bool ok = drift[i] <= options.tolerance;
      passed = passed && ok;
      table.push_back({{"name", names[i]},
                       {"expr", format_expr(quantities[i], sig)},
                       {"drift", drift[i]},
                       {"within_tolerance", ok}});
    }
    json final_state = json::object();
    for (const auto& [x, value] : trajectory.states.back().values) {
      final_state[sig.name(x)] = value.coefficients();
    }
    out["steps"] = trajectory.states.size() - 1;
    out["drift"] = table;
    out["max_constraint_violation"] = trajectory.max_constraint_violation;
    out["final_state"] = final_state;
    out["passed"] = passed;

    if (options.trajectory_path) {
      std::ofstream file(*options.trajectory_path);
      if (!file) {
        diagnostics.push_back({{"kind", "IoError"},
                               {"message", "cannot write " + *options.trajectory_path}});
        passed = false;
        out["passed"] = false;
      } else {
        write_trajectory(file, trajectory, sig);
      }
    }
    out["diagnostics"] = diagnostics;
    return {passed ? 0 : 1, dump(out)};
  } catch (const Error& e) {
    diagnostics.push_back(diagnostic(e));
  }
  out["passed"] = false;
  out["diagnostics"] = diagnostics;
  return {1, dump(out)};
}

}  // namespace supermech
