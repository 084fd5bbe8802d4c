#pragma once

#include <map>
#include <string_view>
#include <vector>

#include "supermech/graded_algebra.hpp"

namespace supermech {

// Coordinate model of T^kM: the base coordinates of the signature together
// with their jets x_j, 0 <= j <= k. Charts of different order share symbols,
// so inclusions and projections never rename anything.
class Chart {
 public:
  Chart(Signature signature, int order);

  const Signature& signature() const { return signature_; }
  int order() const { return order_; }
  Chart with_order(int order) const { return Chart(signature_, order); }

  std::vector<Generator> coordinates() const { return signature_.coordinates(order_); }
  bool declares(Generator g) const { return signature_.declares(g) && g.order <= order_; }

  Generator generator(std::string_view name, int order) const;
  SuperExpr operator()(std::string_view name, int order) const {
    return SuperExpr::generator(generator(name, order));
  }

 private:
  Signature signature_;
  int order_;
};

// tau_{source,target}: T^source M -> T^target M.
struct Projection {
  int source;
  int target;

  Projection(int source, int target);
  // tau_{k,l} o tau_{l,j} = tau_{k,j}
  Projection then(const Projection& next) const;
};

// Pullback along a projection. Throws OrderExceeded when e is not a function
// on T^target.
SuperExpr pullback(const SuperExpr& e, const Projection& projection);

// Total time derivative T(x_j) = x_{j+1}, extended as an even derivation.
SuperExpr total_derivative(const SuperExpr& e, int times = 1);

// f^k_j: j total derivatives of a function on M, seen on T^k.
SuperExpr lifted_function(const SuperExpr& f, int j, int k);

// A supervector field along tau_{target,source}: maps functions on
// T^source to functions on T^target. Stored by its coordinate components;
// components of an even (odd) field carry the parity of their coordinate
// (the opposite parity).
class VectorField {
 public:
  VectorField(int source_order, int target_order, Parity parity);

  int source_order() const { return source_; }
  int target_order() const { return target_; }
  Parity parity() const { return parity_; }

  void set(Generator x, const SuperExpr& component);
  const SuperExpr& component(Generator x) const;
  const std::map<Generator, SuperExpr>& components() const { return components_; }

  // X(f) = sum_x X(x) * d_x f with left partials.
  SuperExpr operator()(const SuperExpr& f) const;

  // tau^* o X, viewing the components on a higher order chart.
  VectorField widened(int target_order) const;
  // X o tau^*, forgetting components of order above source_order.
  VectorField restricted(int source_order) const;

  VectorField& operator+=(const VectorField& other);
  VectorField scaled(const SuperExpr& factor) const;

  bool operator==(const VectorField& other) const;

 private:
  int source_;
  int target_;
  Parity parity_;
  std::map<Generator, SuperExpr> components_;
};

// d/dx on T^order.
VectorField coordinate_field(Generator x, int order);

// T^(k): the total derivative as a field along tau_{k+1,k}.
VectorField total_derivative_field(const Signature& signature, int k);

// X^(l) for X along tau_{k,0}: a field along tau_{k+l,l} with
// X^(l)(x_j) = T^j(X(x)).
VectorField lift_vector_field(const VectorField& field, int l);

// f^V on T^k for f on T^{k-1}.
SuperExpr vertical_lift_function(const SuperExpr& f, int k);

// X^V on T^k for X along tau_{k,k-1}: X^V(x_{j+1}) = (j+1) X(x_j).
VectorField vertical_lift_field(const VectorField& field);

// Delta_k = (T^(k-1))^V.
VectorField liouville(const Signature& signature, int k);

// S_k(Y) = (Y o tau^*_{k,k-1})^V for a field Y on T^k.
VectorField vertical_endomorphism(const VectorField& field);

}  // namespace supermech
