#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "supermech/rational.hpp"

namespace supermech {

enum class Parity : std::uint8_t { even = 0, odd = 1 };

constexpr Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}
constexpr bool is_odd(Parity p) { return p == Parity::odd; }

// (-1)^{|a||b|}
constexpr int koszul_sign(Parity a, Parity b) { return (is_odd(a) && is_odd(b)) ? -1 : 1; }

std::string_view to_string(Parity p);

// A jet coordinate x^base_order. Even and odd coordinates are indexed
// separately, so (parity, base) identifies the base coordinate on M.
struct Generator {
  Parity parity = Parity::even;
  int base = 0;
  int order = 0;

  auto operator<=>(const Generator&) const = default;

  Generator raised(int by = 1) const { return {parity, base, order + by}; }
  Generator base_coordinate() const { return {parity, base, 0}; }
};

// Product of even powers and a strictly increasing run of distinct odd
// generators. The even block always sits to the left of the odd block.
class Monomial {
 public:
  using EvenFactor = std::pair<Generator, int>;

  Monomial() = default;
  static Monomial of(Generator g);

  const std::vector<EvenFactor>& even() const { return even_; }
  const std::vector<Generator>& odd() const { return odd_; }

  Parity parity() const { return odd_.size() % 2 ? Parity::odd : Parity::even; }
  int degree() const;
  bool is_unit() const { return even_.empty() && odd_.empty(); }
  // -1 for the unit monomial.
  int max_order() const;
  int exponent(Generator g) const;
  bool contains(Generator g) const { return exponent(g) > 0; }

  // Product a*b in canonical form. Returns the Koszul sign of the reordering,
  // or 0 when a repeated odd generator annihilates the product.
  static int multiply(const Monomial& a, const Monomial& b, Monomial& out);

  // Moves one factor g to the far left and removes it. Returns the sign
  // picked up on the way (0 if g is absent).
  int divide_left(Generator g, Monomial& out) const;

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

 private:
  std::vector<EvenFactor> even_;
  std::vector<Generator> odd_;
};

// Canonical-form supercommutative polynomial with exact coefficients.
class SuperExpr {
 public:
  using TermMap = std::map<Monomial, Rational>;

  SuperExpr() = default;
  SuperExpr(const Rational& c);  // NOLINT(google-explicit-constructor)
  SuperExpr(long c) : SuperExpr(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  SuperExpr(int c) : SuperExpr(Rational(c)) {}   // NOLINT(google-explicit-constructor)

  static SuperExpr generator(Generator g);
  static SuperExpr term(const Rational& c, const Monomial& m);

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  // -1 for constants.
  int max_order() const;
  bool contains(Generator g) const;
  std::set<Generator> generators() const;

  // Setting every odd generator to zero.
  SuperExpr body() const;
  SuperExpr part(Parity p) const;

  SuperExpr& operator+=(const SuperExpr& other);
  SuperExpr& operator-=(const SuperExpr& other);
  SuperExpr& operator*=(const SuperExpr& other);
  SuperExpr scaled(const Rational& c) const;

  friend SuperExpr operator+(SuperExpr a, const SuperExpr& b) { return a += b; }
  friend SuperExpr operator-(SuperExpr a, const SuperExpr& b) { return a -= b; }
  friend SuperExpr operator*(const SuperExpr& a, const SuperExpr& b);
  friend SuperExpr operator-(SuperExpr a);

  bool operator==(const SuperExpr&) const = default;

  void add_term(const Monomial& m, const Rational& c);

 private:
  TermMap terms_;
};

SuperExpr pow(const SuperExpr& base, int exponent);

// Common parity of all terms. Throws MixedParity or ZeroExpression.
Parity parity_of(const SuperExpr& e);

// Left derivative: for odd x the factor is moved to the leftmost position
// before it is removed.
SuperExpr left_partial(const SuperExpr& e, Generator x);

// Homomorphic substitution. Values must carry the parity of the generator
// they replace (zero is allowed). Throws ParityMismatch.
SuperExpr substitute(const SuperExpr& e, const std::map<Generator, SuperExpr>& assignment);

// Declared base coordinates. Names are shared by every chart order.
class Signature {
 public:
  Signature() = default;
  Signature(std::vector<std::string> even_names, std::vector<std::string> odd_names);

  const std::vector<std::string>& even_names() const { return even_; }
  const std::vector<std::string>& odd_names() const { return odd_; }

  bool declares(Generator g) const;
  std::optional<Generator> base(std::string_view name) const;
  const std::string& base_name(Generator g) const;
  std::vector<Generator> base_coordinates() const;
  // Coordinates x_j with 0 <= j <= order, sorted.
  std::vector<Generator> coordinates(int order) const;
  // "q[2]"
  std::string name(Generator g) const;

  bool operator==(const Signature&) const = default;

 private:
  std::vector<std::string> even_;
  std::vector<std::string> odd_;
};

// Raw product of factors in the order written.
struct RawTerm {
  Rational coefficient;
  std::vector<Generator> factors;
};

// Brings an arbitrary list of products into canonical form. Factors must be
// declared by the signature with jet order <= max_order.
SuperExpr normalize(std::span<const RawTerm> raw, const Signature& signature,
                    int max_order);

}  // namespace supermech
