#pragma once

#include <map>
#include <ostream>
#include <vector>

#include "supermech/graded_algebra.hpp"
#include "supermech/lagrangian.hpp"

namespace supermech {

constexpr int kMaxGrassmannGenerators = 8;

// Element of the real Grassmann algebra on eta_1..eta_n. Component `mask`
// multiplies the ordered product of the eta_i with bit i-1 set.
class GrassmannValue {
 public:
  explicit GrassmannValue(int n = 2);
  static GrassmannValue scalar(int n, double c);
  // c * eta_i, 1-based.
  static GrassmannValue generator(int n, int i, double c = 1.0);

  int generators() const { return n_; }
  std::size_t size() const { return coeffs_.size(); }
  double operator[](unsigned mask) const { return coeffs_[mask]; }
  double& operator[](unsigned mask) { return coeffs_[mask]; }
  const std::vector<double>& coefficients() const { return coeffs_; }

  GrassmannValue& operator+=(const GrassmannValue& other);
  GrassmannValue& operator-=(const GrassmannValue& other);
  GrassmannValue& operator*=(double c);
  friend GrassmannValue operator+(GrassmannValue a, const GrassmannValue& b) { return a += b; }
  friend GrassmannValue operator-(GrassmannValue a, const GrassmannValue& b) { return a -= b; }
  friend GrassmannValue operator*(GrassmannValue a, double c) { return a *= c; }
  friend GrassmannValue operator*(const GrassmannValue& a, const GrassmannValue& b);

  double sup_norm() const;
  bool finite() const;
  // True when every nonzero component sits on a subset of the given parity.
  bool supported_on(Parity p) const;

  bool operator==(const GrassmannValue&) const = default;

 private:
  int n_;
  std::vector<double> coeffs_;
};

// Sign of eta_A * eta_B reordered into canonical order (0 if A and B meet).
int merge_sign(unsigned a, unsigned b);

struct NumericState {
  double time = 0.0;
  int n = 2;
  std::map<Generator, GrassmannValue> values;
};

// Throws MissingValue or ParityViolation.
GrassmannValue evaluate(const SuperExpr& e, const NumericState& state);

struct Trajectory {
  std::vector<NumericState> states;
  // Largest sup-norm deviation from the constraint surface seen along the run.
  double max_constraint_violation = 0.0;
};

// Classical RK4 on the coefficients of every coordinate of order <= 2k-1,
// with round(t_end / dt) steps. Constrained coordinates of s0 are overwritten
// by their constraint values first.
Trajectory integrate(const Dynamics& dynamics, NumericState s0, double dt, double t_end);

// max_t |Q(t) - Q(0)|_sup per quantity.
std::vector<double> conservation_report(const Trajectory& trajectory,
                                        const std::vector<SuperExpr>& quantities);

// Tab separated rows: t, coordinate, subset mask, coefficient. Zero
// components are skipped.
void write_trajectory(std::ostream& out, const Trajectory& trajectory, const Signature& signature);

}  // namespace supermech
