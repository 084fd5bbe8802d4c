#include "supermech/graded_forms.hpp"

#include <algorithm>
#include <string>

#include "supermech/errors.hpp"

namespace supermech {

namespace {

// Sorts raw differentials; returns the sign of the reordering or 0 when an
// even-coordinate differential repeats.
int canonicalize(GradedForm::Differentials& diffs) {
  int sign = 1;
  for (std::size_t i = 1; i < diffs.size(); ++i) {
    for (std::size_t j = i; j > 0 && diffs[j] < diffs[j - 1]; --j) {
      if (!(is_odd(diffs[j].parity) && is_odd(diffs[j - 1].parity))) sign = -sign;
      std::swap(diffs[j], diffs[j - 1]);
    }
  }
  for (std::size_t i = 1; i < diffs.size(); ++i) {
    if (diffs[i] == diffs[i - 1] && !is_odd(diffs[i].parity)) return 0;
  }
  return sign;
}

Parity parity_of_differentials(const GradedForm::Differentials& diffs) {
  Parity p = Parity::even;
  for (const auto& x : diffs) p = p + x.parity;
  return p;
}

}  // namespace

GradedForm GradedForm::function(const SuperExpr& f) {
  GradedForm out;
  out.add({}, f);
  return out;
}

GradedForm GradedForm::differential(Generator x) {
  GradedForm out;
  out.add({x}, SuperExpr(1));
  return out;
}

GradedForm GradedForm::monomial(const SuperExpr& coefficient, const Differentials& raw) {
  Differentials key = raw;
  int sign = canonicalize(key);
  GradedForm out;
  if (sign != 0) out.add(key, sign < 0 ? -coefficient : coefficient);
  return out;
}

void GradedForm::add(const Differentials& key, const SuperExpr& coefficient) {
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int GradedForm::degree() const {
  if (terms_.empty()) return 0;
  auto degree = terms_.begin()->first.size();
  for (const auto& [key, c] : terms_) {
    if (key.size() != degree) throw DomainMismatch("form is not homogeneous in degree");
  }
  return static_cast<int>(degree);
}

int GradedForm::max_order() const {
  int order = -1;
  for (const auto& [key, c] : terms_) {
    order = std::max(order, c.max_order());
    for (const auto& x : key) order = std::max(order, x.order);
  }
  return order;
}

int GradedForm::max_differential_order() const {
  int order = -1;
  for (const auto& [key, c] : terms_) {
    for (const auto& x : key) order = std::max(order, x.order);
  }
  return order;
}

GradedForm& GradedForm::operator+=(const GradedForm& other) {
  for (const auto& [key, c] : other.terms_) add(key, c);
  return *this;
}

GradedForm& GradedForm::operator-=(const GradedForm& other) {
  for (const auto& [key, c] : other.terms_) add(key, -c);
  return *this;
}

GradedForm GradedForm::scaled(const Rational& c) const {
  return map_coefficients([&](const SuperExpr& e) { return e.scaled(c); });
}

GradedForm operator*(const SuperExpr& f, const GradedForm& w) {
  return w.map_coefficients([&](const SuperExpr& e) { return f * e; });
}

GradedForm wedge(const GradedForm& a, const GradedForm& b) {
  GradedForm out;
  for (const auto& [left_key, f] : a.terms()) {
    bool left_odd = is_odd(parity_of_differentials(left_key));
    for (const auto& [right_key, g] : b.terms()) {
      GradedForm::Differentials raw = left_key;
      raw.insert(raw.end(), right_key.begin(), right_key.end());
      // Moving g to the left past the left differentials.
      SuperExpr moved = left_odd ? g.part(Parity::even) - g.part(Parity::odd) : g;
      out += GradedForm::monomial(f * moved, raw);
    }
  }
  return out;
}

GradedForm exterior_d(const SuperExpr& f) {
  GradedForm out;
  for (const auto& [m, c] : f.terms()) {
    SuperExpr term = SuperExpr::term(c, m);
    for (const auto& x : term.generators()) {
      SuperExpr partial = left_partial(term, x);
      // dx * d_x f, with the coefficient moved to the left of dx.
      bool flip = is_odd(x.parity) && is_odd(m.parity() + x.parity);
      out += GradedForm::monomial(flip ? -partial : partial, {x});
    }
  }
  return out;
}

GradedForm exterior_d(const GradedForm& form) {
  GradedForm out;
  for (const auto& [key, f] : form.terms()) {
    out += wedge(exterior_d(f), GradedForm::monomial(SuperExpr(1), key));
  }
  return out;
}

GradedForm interior(const VectorField& field, const GradedForm& form) {
  if (form.max_differential_order() > field.source_order()) {
    throw DomainMismatch("form has differentials outside the source T^" +
                         std::to_string(field.source_order()) + " of the field");
  }
  GradedForm out;
  for (const auto& [key, f] : form.terms()) {
    // i_X(f ^ A) = (-1)^{|X||f|} f ^ i_X(A)
    SuperExpr coefficient =
        is_odd(field.parity()) ? f.part(Parity::even) - f.part(Parity::odd) : f;
    int sign = 1;
    for (std::size_t i = 0; i < key.size(); ++i) {
      const SuperExpr& value = field.component(key[i]);
      if (!value.is_zero()) {
        GradedForm::Differentials prefix(key.begin(), key.begin() + static_cast<long>(i));
        GradedForm::Differentials suffix(key.begin() + static_cast<long>(i) + 1, key.end());
        GradedForm piece = wedge(GradedForm::monomial(SuperExpr(1), prefix),
                                 wedge(GradedForm::function(value),
                                       GradedForm::monomial(SuperExpr(1), suffix)));
        out += coefficient * (sign < 0 ? -piece : piece);
      }
      // passing dx_i costs (-1)^{1 + |X||x_i|}
      if (!(is_odd(field.parity()) && is_odd(key[i].parity))) sign = -sign;
    }
  }
  return out;
}

GradedForm total_derivative(int r, const GradedForm& form) {
  if (form.max_order() > r) {
    throw OrderExceeded("d_T^(" + std::to_string(r) + ") applied to a form of order " +
                        std::to_string(form.max_order()));
  }
  GradedForm out;
  for (const auto& [key, f] : form.terms()) {
    out += GradedForm::monomial(total_derivative(f), key);
    for (std::size_t i = 0; i < key.size(); ++i) {
      GradedForm::Differentials raised = key;
      raised[i] = raised[i].raised();
      out += GradedForm::monomial(f, raised);
    }
  }
  return out;
}

GradedForm transpose_vertical_endomorphism(int k, const GradedForm& form) {
  if (form.degree() > 1 || (!form.is_zero() && form.degree() != 1)) {
    throw DomainMismatch("S* acts on 1-forms");
  }
  if (form.max_order() > k) {
    throw OrderExceeded("S*_" + std::to_string(k) + " applied to a form of order " +
                        std::to_string(form.max_order()));
  }
  GradedForm out;
  for (const auto& [key, f] : form.terms()) {
    const Generator& x = key.front();
    if (x.order == 0) continue;
    out += GradedForm::monomial(f.scaled(Rational(x.order)), {x.raised(-1)});
  }
  return out;
}

GradedForm cartan_operator(int k, const GradedForm& form) {
  if (k < 1) throw OrderExceeded("the Cartan operator needs k >= 1");
  GradedForm out;
  GradedForm transposed = form;
  for (int l = 1; l <= k; ++l) {
    transposed = transpose_vertical_endomorphism(k, transposed);
    GradedForm term = transposed;
    for (int i = 0; i + 1 < l; ++i) term = total_derivative(k + i, term);
    Rational weight = Rational(l % 2 ? 1 : -1) / factorial(l);
    out += term.scaled(weight);
  }
  return out;
}

GradedForm CheckForm::to_form() const {
  GradedForm out;
  for (const auto& [x, f] : components) out += GradedForm::monomial(f, {x});
  return out;
}

CheckForm semibasic_check(const GradedForm& form, int level) {
  if (!form.is_zero() && form.degree() != 1) {
    throw DomainMismatch("semibasic check applies to 1-forms");
  }
  CheckForm out;
  out.level = level;
  for (const auto& [key, f] : form.terms()) {
    const Generator& x = key.front();
    if (x.order > level) {
      throw NotSemibasic("differential of order " + std::to_string(x.order) +
                             " is not semibasic at level " + std::to_string(level),
                         x.base, is_odd(x.parity), x.order);
    }
    out.components[x] = f;
  }
  return out;
}

SuperExpr pair(const VectorField& field, const CheckForm& form) {
  if (field.source_order() != form.level) {
    throw DomainMismatch("field along tau_{k," + std::to_string(field.source_order()) +
                         "} paired with a check form along tau_{k," +
                         std::to_string(form.level) + "}");
  }
  SuperExpr out;
  for (const auto& [x, f] : form.components) {
    const SuperExpr& value = field.component(x);
    if (value.is_zero()) continue;
    SuperExpr signed_f = is_odd(field.parity()) ? f.part(Parity::even) - f.part(Parity::odd) : f;
    out += signed_f * value;
  }
  return out;
}

}  // namespace supermech
