#pragma once

// Classical higher-order mechanics for one even coordinate, written against a
// dense polynomial type of its own so that it shares no arithmetic with the
// library.

#include <map>
#include <stdexcept>
#include <vector>

#include "supermech/graded_algebra.hpp"

namespace oracle {

using supermech::Rational;

// Polynomial in q_0..q_{n-1}; a term is keyed by its exponent vector.
struct Poly {
  int n = 0;
  std::map<std::vector<int>, Rational> terms;

  explicit Poly(int n = 0) : n(n) {}

  static Poly constant(int n, const Rational& c) {
    Poly p(n);
    if (c != 0) p.terms[std::vector<int>(n, 0)] = c;
    return p;
  }
  static Poly variable(int n, int j) {
    Poly p(n);
    std::vector<int> e(n, 0);
    e.at(j) = 1;
    p.terms[e] = 1;
    return p;
  }

  void add(const std::vector<int>& e, const Rational& c) {
    Rational& slot = terms[e];
    slot += c;
    if (slot == 0) terms.erase(e);
  }
  Poly operator+(const Poly& o) const {
    Poly out = *this;
    for (const auto& [e, c] : o.terms) out.add(e, c);
    return out;
  }
  Poly operator-(const Poly& o) const { return *this + o.scaled(-1); }
  Poly scaled(const Rational& s) const {
    Poly out(n);
    for (const auto& [e, c] : terms) out.add(e, c * s);
    return out;
  }
  Poly operator*(const Poly& o) const {
    Poly out(n);
    for (const auto& [a, ca] : terms) {
      for (const auto& [b, cb] : o.terms) {
        std::vector<int> e(n);
        for (int i = 0; i < n; ++i) e[i] = a[i] + b[i];
        out.add(e, ca * cb);
      }
    }
    return out;
  }
  bool operator==(const Poly& o) const { return terms == o.terms; }
};

inline Poly partial(const Poly& p, int j) {
  Poly out(p.n);
  for (const auto& [e, c] : p.terms) {
    if (e[j] == 0) continue;
    std::vector<int> d = e;
    --d[j];
    out.add(d, c * e[j]);
  }
  return out;
}

// d/dt with q_j' = q_{j+1}; the top variable must not occur.
inline Poly total(const Poly& p) {
  Poly out(p.n);
  for (int j = 0; j < p.n; ++j) {
    Poly d = partial(p, j);
    if (d.terms.empty()) continue;
    if (j + 1 >= p.n) throw std::out_of_range("oracle total derivative leaves the jet range");
    out = out + Poly::variable(p.n, j + 1) * d;
  }
  return out;
}

inline Poly minus_total(const Poly& p, int times) {
  Poly out = p;
  for (int i = 0; i < times; ++i) out = total(out).scaled(-1);
  return out;
}

// sum_j (-d/dt)^j dL/dq_j
inline Poly euler_lagrange(const Poly& lagrangian, int k) {
  Poly out(lagrangian.n);
  for (int j = 0; j <= k; ++j) out = out + minus_total(partial(lagrangian, j), j);
  return out;
}

// p_j = sum_l (-d/dt)^l dL/dq_{j+l+1}, j = 0..k-1
inline std::vector<Poly> ostrogradski_momenta(const Poly& lagrangian, int k) {
  std::vector<Poly> out;
  for (int j = 0; j < k; ++j) {
    Poly p(lagrangian.n);
    for (int l = 0; j + l + 1 <= k; ++l) p = p + minus_total(partial(lagrangian, j + l + 1), l);
    out.push_back(p);
  }
  return out;
}

// H = sum_j p_j q_{j+1} - L
inline Poly ostrogradski_energy(const Poly& lagrangian, int k) {
  auto momenta = ostrogradski_momenta(lagrangian, k);
  Poly out = lagrangian.scaled(-1);
  for (int j = 0; j < k; ++j) out = out + momenta[j] * Poly::variable(lagrangian.n, j + 1);
  return out;
}

// Reads a SuperExpr in the single even coordinate 0 as a Poly.
inline Poly from_expr(const supermech::SuperExpr& e, int n) {
  Poly out(n);
  for (const auto& [m, c] : e.terms()) {
    if (!m.odd().empty()) throw std::invalid_argument("oracle expects even expressions");
    std::vector<int> exponents(n, 0);
    for (const auto& [g, power] : m.even()) {
      if (g.base != 0) throw std::invalid_argument("oracle expects one coordinate");
      exponents.at(g.order) = power;
    }
    out.add(exponents, c);
  }
  return out;
}

}  // namespace oracle
