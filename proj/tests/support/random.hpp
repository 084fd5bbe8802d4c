#pragma once

#include <random>
#include <vector>

#include "supermech/graded_algebra.hpp"
#include "supermech/graded_forms.hpp"

namespace gen {

using namespace supermech;

class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool coin() { return integer(0, 1) == 1; }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

  Rational coefficient() {
    int num = integer(-4, 4);
    if (num == 0) num = 1;
    Rational out(num, integer(1, 3));
    out.canonicalize();
    return out;
  }

  Generator generator(const Signature& sig, int max_order) {
    auto bases = sig.base_coordinates();
    Generator base = bases[static_cast<std::size_t>(integer(0, static_cast<int>(bases.size()) - 1))];
    return base.raised(integer(0, max_order));
  }

  // Random polynomial with up to `terms` terms of degree <= max_degree.
  SuperExpr expr(const Signature& sig, int max_order, int terms = 3, int max_degree = 3) {
    SuperExpr out;
    for (int t = 0; t < terms; ++t) {
      SuperExpr term(coefficient());
      int degree = integer(0, max_degree);
      for (int d = 0; d < degree; ++d) term *= SuperExpr::generator(generator(sig, max_order));
      out += term;
    }
    return out;
  }

  // Random expression whose every term has parity p (possibly zero).
  SuperExpr homogeneous(const Signature& sig, int max_order, Parity p, int terms = 3,
                        int max_degree = 3) {
    return expr(sig, max_order, terms, max_degree).part(p);
  }

  // Even polynomial Lagrangian of degree <= 3 in q_0..q_k with a guaranteed
  // top-order quadratic part, so that it is regular.
  SuperExpr even_lagrangian(const Signature& sig, int k) {
    const Generator q{Parity::even, 0, 0};
    SuperExpr top = SuperExpr::generator(q.raised(k));
    SuperExpr out = (top * top).scaled(Rational(integer(1, 3), 2));
    int extra = integer(1, 4);
    for (int t = 0; t < extra; ++t) {
      SuperExpr term(coefficient());
      int degree = integer(1, 3);
      bool has_top = false;
      for (int d = 0; d < degree; ++d) {
        int order = integer(0, k);
        // keep the equations affine in the highest derivative
        if (order == k) {
          if (has_top) order = k - 1;
          has_top = true;
        }
        term *= SuperExpr::generator(q.raised(order));
      }
      out += term;
    }
    (void)sig;
    return out;
  }

  // Homogeneous form of degree p and total parity a.
  GradedForm form(const Signature& sig, int max_order, int degree, Parity a, int terms = 2) {
    GradedForm out;
    for (int t = 0; t < terms; ++t) {
      GradedForm::Differentials key;
      Parity diff_parity = Parity::even;
      for (int d = 0; d < degree; ++d) {
        Generator x = generator(sig, max_order);
        key.push_back(x);
        diff_parity = diff_parity + x.parity;
      }
      SuperExpr coefficient = homogeneous(sig, max_order, a + diff_parity, 2, 2);
      out += GradedForm::monomial(coefficient, key);
    }
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gen
