#pragma once

#include <map>
#include <vector>

#include "supermech/graded_algebra.hpp"
#include "supermech/jet_geometry.hpp"

namespace supermech {

// Graded differential forms, coefficient written on the left of an ordered
// wedge of coordinate differentials. Sign package: a form of degree p and
// total parity a commutes with one of degree q and parity b up to
// (-1)^{pq + ab}. In particular dq ^ dq = 0 while dtheta ^ dtheta != 0.
class GradedForm {
 public:
  // Sorted differentials; only odd-coordinate differentials may repeat.
  using Differentials = std::vector<Generator>;
  using TermMap = std::map<Differentials, SuperExpr>;

  GradedForm() = default;
  static GradedForm function(const SuperExpr& f);
  static GradedForm differential(Generator x);
  // coefficient * dx_1 ^ ... ^ dx_p for differentials in any order.
  static GradedForm monomial(const SuperExpr& coefficient, const Differentials& raw);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Throws DomainMismatch for inhomogeneous degree; 0 for the zero form.
  int degree() const;
  // Largest jet order among coefficients and differentials (-1 if constant).
  int max_order() const;
  int max_differential_order() const;

  GradedForm& operator+=(const GradedForm& other);
  GradedForm& operator-=(const GradedForm& other);
  GradedForm scaled(const Rational& c) const;
  friend GradedForm operator+(GradedForm a, const GradedForm& b) { return a += b; }
  friend GradedForm operator-(GradedForm a, const GradedForm& b) { return a -= b; }
  friend GradedForm operator-(const GradedForm& a) { return a.scaled(-1); }
  // f ^ w
  friend GradedForm operator*(const SuperExpr& f, const GradedForm& w);

  template <typename Fn>
  GradedForm map_coefficients(Fn&& fn) const {
    GradedForm out;
    for (const auto& [key, coefficient] : terms_) out.add(key, fn(coefficient));
    return out;
  }

  bool operator==(const GradedForm&) const = default;

 private:
  void add(const Differentials& key, const SuperExpr& coefficient);
  TermMap terms_;
};

GradedForm wedge(const GradedForm& a, const GradedForm& b);

// df = sum_x dx * d_x f.
GradedForm exterior_d(const SuperExpr& f);
GradedForm exterior_d(const GradedForm& form);

// i_X, degree -1 and parity |X|; i_X(f dx) = (-1)^{|X||f|} f X(x).
// Throws DomainMismatch when a differential lies outside the field's source.
GradedForm interior(const VectorField& field, const GradedForm& form);

// d_{T^(r)}: even derivation extending T^(r) with dx_j -> dx_{j+1}.
GradedForm total_derivative(int r, const GradedForm& form);

// S*_k on 1-forms: dx_{j+1} -> (j+1) dx_j, dx_0 -> 0.
GradedForm transpose_vertical_endomorphism(int k, const GradedForm& form);

// S^(k) = sum_{l=1}^k (-1)^{l+1}/l! tau^* d_T^{l-1} S*_k^l.
GradedForm cartan_operator(int k, const GradedForm& form);

// A tau_{k,level}-semibasic 1-form seen as a 1-form along the projection.
struct CheckForm {
  int level = 0;
  std::map<Generator, SuperExpr> components;

  GradedForm to_form() const;
  bool operator==(const CheckForm&) const = default;
};

// Throws NotSemibasic naming the first differential of order > level.
CheckForm semibasic_check(const GradedForm& form, int level);

// <X, w>: contraction of a field along tau_{k,level} with a check form along
// the same projection. Throws DomainMismatch otherwise.
SuperExpr pair(const VectorField& field, const CheckForm& form);

}  // namespace supermech
