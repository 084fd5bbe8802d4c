#include "supermech/jet_geometry.hpp"

#include <algorithm>
#include <string>

#include "supermech/errors.hpp"

namespace supermech {

Chart::Chart(Signature signature, int order) : signature_(std::move(signature)), order_(order) {
  if (order < 0) throw OrderExceeded("chart order must be non-negative");
}

Generator Chart::generator(std::string_view name, int order) const {
  auto base = signature_.base(name);
  if (!base) throw UndeclaredGenerator("unknown coordinate '" + std::string(name) + "'");
  if (order < 0 || order > order_) {
    throw OrderExceeded(std::string(name) + "[" + std::to_string(order) +
                        "] is not a coordinate of T^" + std::to_string(order_));
  }
  return base->raised(order);
}

Projection::Projection(int source, int target) : source(source), target(target) {
  if (target < 0 || target > source) {
    throw OrderExceeded("projection tau_{" + std::to_string(source) + "," +
                        std::to_string(target) + "} needs 0 <= target <= source");
  }
}

Projection Projection::then(const Projection& next) const {
  if (next.source != target) throw DomainMismatch("projections do not compose");
  return {source, next.target};
}

SuperExpr pullback(const SuperExpr& e, const Projection& projection) {
  if (e.max_order() > projection.target) {
    throw OrderExceeded("expression of order " + std::to_string(e.max_order()) +
                        " is not a function on T^" + std::to_string(projection.target));
  }
  return e;
}

namespace {

SuperExpr total_derivative_once(const SuperExpr& e) {
  SuperExpr out;
  for (const auto& g : e.generators()) {
    out += SuperExpr::generator(g.raised()) * left_partial(e, g);
  }
  return out;
}

}  // namespace

SuperExpr total_derivative(const SuperExpr& e, int times) {
  SuperExpr out = e;
  for (int i = 0; i < times && !out.is_zero(); ++i) out = total_derivative_once(out);
  return out;
}

SuperExpr lifted_function(const SuperExpr& f, int j, int k) {
  if (f.max_order() > 0) throw OrderExceeded("lifted_function expects a function on M");
  if (j < 0 || j > k) {
    throw OrderExceeded("f^k_j needs 0 <= j <= k (got j=" + std::to_string(j) +
                        ", k=" + std::to_string(k) + ")");
  }
  return pullback(total_derivative(f, j), Projection(k, j));
}

// ---------------------------------------------------------------------------
// VectorField
// ---------------------------------------------------------------------------

VectorField::VectorField(int source_order, int target_order, Parity parity)
    : source_(source_order), target_(target_order), parity_(parity) {
  if (source_order < 0 || target_order < source_order) {
    throw DomainMismatch("a field along tau_{k,l} needs 0 <= l <= k");
  }
}

void VectorField::set(Generator x, const SuperExpr& component) {
  if (x.order > source_) {
    throw DomainMismatch("coordinate order " + std::to_string(x.order) +
                         " exceeds the field's source order " + std::to_string(source_));
  }
  if (component.max_order() > target_) {
    throw OrderExceeded("component is not a function on T^" + std::to_string(target_));
  }
  if (component.is_zero()) {
    components_.erase(x);
    return;
  }
  Parity expected = x.parity + parity_;
  for (const auto& [m, c] : component.terms()) {
    if (m.parity() != expected) {
      throw ParityMismatch("component parity does not match a " +
                           std::string(to_string(parity_)) + " field");
    }
  }
  components_[x] = component;
}

const SuperExpr& VectorField::component(Generator x) const {
  static const SuperExpr zero;
  auto it = components_.find(x);
  return it == components_.end() ? zero : it->second;
}

SuperExpr VectorField::operator()(const SuperExpr& f) const {
  if (f.max_order() > source_) {
    throw DomainMismatch("function of order " + std::to_string(f.max_order()) +
                         " is outside the domain T^" + std::to_string(source_));
  }
  SuperExpr out;
  for (const auto& [x, value] : components_) {
    if (!f.contains(x)) continue;
    out += value * left_partial(f, x);
  }
  return out;
}

VectorField VectorField::widened(int target_order) const {
  if (target_order < target_) throw OrderExceeded("cannot narrow the target of a field");
  VectorField out = *this;
  out.target_ = target_order;
  return out;
}

VectorField VectorField::restricted(int source_order) const {
  if (source_order > source_) throw DomainMismatch("cannot enlarge the source of a field");
  VectorField out(source_order, target_, parity_);
  for (const auto& [x, value] : components_) {
    if (x.order <= source_order) out.components_.emplace(x, value);
  }
  return out;
}

VectorField& VectorField::operator+=(const VectorField& other) {
  if (other.source_ != source_ || other.parity_ != parity_) {
    throw DomainMismatch("cannot add fields along different projections or of different parity");
  }
  target_ = std::max(target_, other.target_);
  for (const auto& [x, value] : other.components_) {
    SuperExpr sum = component(x) + value;
    if (sum.is_zero()) {
      components_.erase(x);
    } else {
      components_[x] = sum;
    }
  }
  return *this;
}

VectorField VectorField::scaled(const SuperExpr& factor) const {
  Parity factor_parity = factor.is_zero() ? Parity::even : parity_of(factor);
  VectorField out(source_, std::max(target_, factor.max_order()), parity_ + factor_parity);
  for (const auto& [x, value] : components_) out.set(x, factor * value);
  return out;
}

bool VectorField::operator==(const VectorField& other) const {
  if (components_.empty() && other.components_.empty()) return true;
  return parity_ == other.parity_ && components_ == other.components_;
}

VectorField coordinate_field(Generator x, int order) {
  VectorField out(order, order, x.parity);
  out.set(x, SuperExpr(1));
  return out;
}

VectorField total_derivative_field(const Signature& signature, int k) {
  VectorField out(k, k + 1, Parity::even);
  for (const auto& x : signature.coordinates(k)) out.set(x, SuperExpr::generator(x.raised()));
  return out;
}

VectorField lift_vector_field(const VectorField& field, int l) {
  if (field.source_order() != 0) {
    throw DomainMismatch("lifts are defined for fields along tau_{k,0}");
  }
  if (l < 0) throw OrderExceeded("lift order must be non-negative");
  const int k = field.target_order();
  VectorField out(l, k + l, field.parity());
  for (const auto& [x, value] : field.components()) {
    SuperExpr jet = value;
    for (int j = 0; j <= l; ++j) {
      if (j > 0) jet = total_derivative(jet);
      out.set(x.raised(j), jet);
    }
  }
  return out;
}

SuperExpr vertical_lift_function(const SuperExpr& f, int k) {
  if (k < 1) throw OrderExceeded("vertical lifts need k >= 1");
  SuperExpr lifted_base = pullback(f, Projection(k, k - 1));
  SuperExpr out;
  for (const auto& g : lifted_base.generators()) {
    SuperExpr term = left_partial(lifted_base, g) * SuperExpr::generator(g.raised());
    out += term.scaled(Rational(1, g.order + 1));
  }
  return out;
}

VectorField vertical_lift_field(const VectorField& field) {
  const int k = field.source_order() + 1;
  if (field.target_order() != k) {
    throw DomainMismatch("vertical lifts take fields along tau_{k,k-1}");
  }
  VectorField out(k, k, field.parity());
  for (const auto& [x, value] : field.components()) {
    out.set(x.raised(), value.scaled(Rational(x.order + 1)));
  }
  return out;
}

VectorField liouville(const Signature& signature, int k) {
  if (k < 1) throw OrderExceeded("the Liouville field needs k >= 1");
  return vertical_lift_field(total_derivative_field(signature, k - 1));
}

VectorField vertical_endomorphism(const VectorField& field) {
  const int k = field.source_order();
  if (k < 1 || field.target_order() != k) {
    throw DomainMismatch("S_k acts on fields on T^k with k >= 1");
  }
  return vertical_lift_field(field.restricted(k - 1));
}

}  // namespace supermech
