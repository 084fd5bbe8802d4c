#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "supermech/grassmann.hpp"
#include "supermech/jet_geometry.hpp"
#include "supermech/lagrangian.hpp"

namespace supermech {

struct SymmetryDecl {
  std::string name;
  Parity parity = Parity::even;
  // Base coordinate -> X(x), a function on T^{2k-1}.
  std::map<Generator, SuperExpr> components;

  bool operator==(const SymmetryDecl&) const = default;
};

struct ChargeDecl {
  std::string name;
  SuperExpr expr;

  bool operator==(const ChargeDecl&) const = default;
};

struct SimulationSpec {
  int n = 2;
  Rational dt = Rational(1, 1000);
  Rational t_end = 1;
  // Initial values as polynomials in eta[1..n]; eta[i] is stored as the odd
  // generator of order i-1 of eta_signature().
  std::map<Generator, SuperExpr> init;

  bool operator==(const SimulationSpec&) const = default;
};

struct ProblemFile {
  Signature signature;
  int order = 0;
  SuperExpr lagrangian;
  std::vector<SymmetryDecl> symmetries;
  std::vector<ChargeDecl> charges;
  std::optional<SimulationSpec> simulation;

  SuperLagrangian super_lagrangian() const { return {signature, order, lagrangian}; }
  const SymmetryDecl* find_symmetry(std::string_view name) const;
  bool operator==(const ProblemFile&) const = default;
};

// Statements are separated by ';' or line breaks; '#' starts a comment.
//   even q x          odd theta          order 2
//   L = 1/2*q[2]^2 - x[0]*q[0]
//   symmetry shift { q -> 1; x -> 0 }
//   charge p = -q[3]
//   simulate { n = 2; dt = 1e-3; t = 1; init q[1] = 1 + eta[1]*eta[2] }
// Throws SyntaxError, UnknownCoordinate or IndexOutOfRange.
ProblemFile parse_problem(std::string_view text);

// Canonical text; parse_problem(print_problem(p)) == p.
std::string print_problem(const ProblemFile& problem);

// A single expression over the declared coordinates with jet indices
// limited to max_order.
SuperExpr parse_expression(std::string_view text, const Signature& signature, int max_order);

const Signature& eta_signature();

VectorField symmetry_field(const SymmetryDecl& symmetry, const ProblemFile& problem);
NumericState initial_state(const ProblemFile& problem);

}  // namespace supermech
