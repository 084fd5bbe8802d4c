#include "supermech/graded_algebra.hpp"

#include <algorithm>

#include "supermech/errors.hpp"

namespace supermech {

std::string_view to_string(Parity p) { return is_odd(p) ? "odd" : "even"; }

// ---------------------------------------------------------------------------
// Monomial
// ---------------------------------------------------------------------------

Monomial Monomial::of(Generator g) {
  Monomial m;
  if (is_odd(g.parity)) {
    m.odd_.push_back(g);
  } else {
    m.even_.emplace_back(g, 1);
  }
  return m;
}

int Monomial::degree() const {
  int d = static_cast<int>(odd_.size());
  for (const auto& [g, e] : even_) d += e;
  return d;
}

int Monomial::max_order() const {
  int order = -1;
  for (const auto& [g, e] : even_) order = std::max(order, g.order);
  for (const auto& g : odd_) order = std::max(order, g.order);
  return order;
}

int Monomial::exponent(Generator g) const {
  if (is_odd(g.parity)) {
    return std::binary_search(odd_.begin(), odd_.end(), g) ? 1 : 0;
  }
  auto it = std::lower_bound(even_.begin(), even_.end(), g,
                             [](const EvenFactor& f, const Generator& x) { return f.first < x; });
  return (it != even_.end() && it->first == g) ? it->second : 0;
}

int Monomial::multiply(const Monomial& a, const Monomial& b, Monomial& out) {
  out.even_.clear();
  out.odd_.clear();

  // Even factors commute freely.
  auto ia = a.even_.begin();
  auto ib = b.even_.begin();
  while (ia != a.even_.end() || ib != b.even_.end()) {
    if (ib == b.even_.end() || (ia != a.even_.end() && ia->first < ib->first)) {
      out.even_.push_back(*ia++);
    } else if (ia == a.even_.end() || ib->first < ia->first) {
      out.even_.push_back(*ib++);
    } else {
      out.even_.emplace_back(ia->first, ia->second + ib->second);
      ++ia;
      ++ib;
    }
  }

  // Merge the odd runs; every element of b that overtakes k remaining
  // elements of a contributes (-1)^k.
  int sign = 1;
  std::size_t i = 0;
  std::size_t j = 0;
  out.odd_.reserve(a.odd_.size() + b.odd_.size());
  while (i < a.odd_.size() || j < b.odd_.size()) {
    if (j == b.odd_.size()) {
      out.odd_.push_back(a.odd_[i++]);
    } else if (i == a.odd_.size()) {
      out.odd_.push_back(b.odd_[j++]);
    } else if (a.odd_[i] == b.odd_[j]) {
      return 0;
    } else if (a.odd_[i] < b.odd_[j]) {
      out.odd_.push_back(a.odd_[i++]);
    } else {
      if ((a.odd_.size() - i) % 2) sign = -sign;
      out.odd_.push_back(b.odd_[j++]);
    }
  }
  return sign;
}

int Monomial::divide_left(Generator g, Monomial& out) const {
  out = *this;
  if (is_odd(g.parity)) {
    auto it = std::lower_bound(out.odd_.begin(), out.odd_.end(), g);
    if (it == out.odd_.end() || *it != g) return 0;
    auto position = it - out.odd_.begin();
    out.odd_.erase(it);
    return position % 2 ? -1 : 1;
  }
  auto it = std::lower_bound(out.even_.begin(), out.even_.end(), g,
                             [](const EvenFactor& f, const Generator& x) { return f.first < x; });
  if (it == out.even_.end() || it->first != g) return 0;
  if (--it->second == 0) out.even_.erase(it);
  return 1;
}

// ---------------------------------------------------------------------------
// SuperExpr
// ---------------------------------------------------------------------------

namespace {

// mpq_class(num, den) skips normalisation; equality assumes canonical form.
Rational canonical(Rational c) {
  c.canonicalize();
  return c;
}

}  // namespace

SuperExpr::SuperExpr(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, canonical(c));
}

SuperExpr SuperExpr::generator(Generator g) { return term(1, Monomial::of(g)); }

SuperExpr SuperExpr::term(const Rational& c, const Monomial& m) {
  SuperExpr e;
  e.add_term(m, c);
  return e;
}

void SuperExpr::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, canonical(c));
  if (!inserted) {
    it->second += canonical(c);
    if (it->second == 0) terms_.erase(it);
  }
}

bool SuperExpr::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
}

Rational SuperExpr::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

int SuperExpr::max_order() const {
  int order = -1;
  for (const auto& [m, c] : terms_) order = std::max(order, m.max_order());
  return order;
}

bool SuperExpr::contains(Generator g) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [&](const auto& t) { return t.first.contains(g); });
}

std::set<Generator> SuperExpr::generators() const {
  std::set<Generator> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [g, e] : m.even()) out.insert(g);
    for (const auto& g : m.odd()) out.insert(g);
  }
  return out;
}

SuperExpr SuperExpr::body() const {
  SuperExpr out;
  for (const auto& [m, c] : terms_) {
    if (m.odd().empty()) out.terms_.emplace(m, c);
  }
  return out;
}

SuperExpr SuperExpr::part(Parity p) const {
  SuperExpr out;
  for (const auto& [m, c] : terms_) {
    if (m.parity() == p) out.terms_.emplace(m, c);
  }
  return out;
}

SuperExpr& SuperExpr::operator+=(const SuperExpr& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

SuperExpr& SuperExpr::operator-=(const SuperExpr& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

SuperExpr& SuperExpr::operator*=(const SuperExpr& other) {
  *this = *this * other;
  return *this;
}

SuperExpr SuperExpr::scaled(const Rational& c) const {
  if (c == 0) return {};
  SuperExpr out = *this;
  const Rational factor = canonical(c);
  for (auto& [m, coeff] : out.terms_) coeff *= factor;
  return out;
}

SuperExpr operator*(const SuperExpr& a, const SuperExpr& b) {
  SuperExpr out;
  Monomial product;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      int sign = Monomial::multiply(ma, mb, product);
      if (sign == 0) continue;
      Rational c = ca * cb;
      if (sign < 0) c = -c;
      out.add_term(product, c);
    }
  }
  return out;
}

SuperExpr operator-(SuperExpr a) {
  for (auto& [m, c] : a.terms_) c = -c;
  return a;
}

SuperExpr pow(const SuperExpr& base, int exponent) {
  SuperExpr result(1);
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

Parity parity_of(const SuperExpr& e) {
  if (e.is_zero()) throw ZeroExpression("parity of the zero expression is undefined");
  Parity p = e.terms().begin()->first.parity();
  for (const auto& [m, c] : e.terms()) {
    if (m.parity() != p) throw MixedParity("expression mixes even and odd terms");
  }
  return p;
}

SuperExpr left_partial(const SuperExpr& e, Generator x) {
  SuperExpr out;
  Monomial reduced;
  for (const auto& [m, c] : e.terms()) {
    int exponent = m.exponent(x);
    if (exponent == 0) continue;
    int sign = m.divide_left(x, reduced);
    Rational coeff = c * exponent;
    if (sign < 0) coeff = -coeff;
    out.add_term(reduced, coeff);
  }
  return out;
}

SuperExpr substitute(const SuperExpr& e, const std::map<Generator, SuperExpr>& assignment) {
  for (const auto& [g, value] : assignment) {
    if (value.is_zero()) continue;
    for (const auto& [m, c] : value.terms()) {
      if (m.parity() != g.parity) {
        throw ParityMismatch("substituted value does not have the parity of its generator");
      }
    }
  }
  auto image = [&](Generator g) {
    auto it = assignment.find(g);
    return it == assignment.end() ? SuperExpr::generator(g) : it->second;
  };

  SuperExpr out;
  for (const auto& [m, c] : e.terms()) {
    SuperExpr product(c);
    for (const auto& [g, exponent] : m.even()) {
      product *= pow(image(g), exponent);
      if (product.is_zero()) break;
    }
    for (const auto& g : m.odd()) {
      if (product.is_zero()) break;
      product *= image(g);
    }
    out += product;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Signature
// ---------------------------------------------------------------------------

Signature::Signature(std::vector<std::string> even_names, std::vector<std::string> odd_names)
    : even_(std::move(even_names)), odd_(std::move(odd_names)) {}

bool Signature::declares(Generator g) const {
  const auto& names = is_odd(g.parity) ? odd_ : even_;
  return g.base >= 0 && g.base < static_cast<int>(names.size()) && g.order >= 0;
}

std::optional<Generator> Signature::base(std::string_view name) const {
  for (std::size_t i = 0; i < even_.size(); ++i) {
    if (even_[i] == name) return Generator{Parity::even, static_cast<int>(i), 0};
  }
  for (std::size_t i = 0; i < odd_.size(); ++i) {
    if (odd_[i] == name) return Generator{Parity::odd, static_cast<int>(i), 0};
  }
  return std::nullopt;
}

const std::string& Signature::base_name(Generator g) const {
  if (!declares(g)) throw UndeclaredGenerator("generator is not declared by the signature");
  return is_odd(g.parity) ? odd_[g.base] : even_[g.base];
}

std::vector<Generator> Signature::base_coordinates() const { return coordinates(0); }

std::vector<Generator> Signature::coordinates(int order) const {
  std::vector<Generator> out;
  for (int i = 0; i < static_cast<int>(even_.size()); ++i) {
    for (int j = 0; j <= order; ++j) out.push_back({Parity::even, i, j});
  }
  for (int i = 0; i < static_cast<int>(odd_.size()); ++i) {
    for (int j = 0; j <= order; ++j) out.push_back({Parity::odd, i, j});
  }
  return out;
}

std::string Signature::name(Generator g) const {
  return base_name(g) + "[" + std::to_string(g.order) + "]";
}

SuperExpr normalize(std::span<const RawTerm> raw, const Signature& signature, int max_order) {
  SuperExpr out;
  for (const auto& term : raw) {
    Monomial acc;
    Monomial next;
    int sign = 1;
    for (const auto& g : term.factors) {
      if (!signature.declares(g) || g.order > max_order) {
        throw UndeclaredGenerator("term references an undeclared generator");
      }
      int s = Monomial::multiply(acc, Monomial::of(g), next);
      sign *= s;
      if (sign == 0) break;
      acc = next;
    }
    if (sign == 0) continue;
    out.add_term(acc, sign < 0 ? Rational(-term.coefficient) : term.coefficient);
  }
  return out;
}

}  // namespace supermech
