#include "supermech/format.hpp"

#include <array>
#include <string_view>
#include <vector>

namespace supermech {

namespace {

struct Style {
  std::string (*factor)(Generator, int exponent, const Signature&);
  std::string (*coefficient)(const Rational& magnitude);
  std::string_view times;
};

std::string plain_factor(Generator g, int exponent, const Signature& signature) {
  std::string out = signature.name(g);
  if (exponent > 1) out += "^" + std::to_string(exponent);
  return out;
}

std::string plain_coefficient(const Rational& magnitude) { return to_string(magnitude); }

bool is_greek(std::string_view name) {
  static constexpr std::array<std::string_view, 24> letters = {
      "alpha", "beta", "gamma", "delta", "epsilon", "zeta",  "eta",   "theta",
      "iota",  "kappa", "lambda", "mu",   "nu",      "xi",    "pi",    "rho",
      "sigma", "tau",  "upsilon", "phi",  "chi",     "psi",   "omega", "vartheta"};
  for (auto letter : letters) {
    if (name == letter) return true;
  }
  return false;
}

std::string latex_name(Generator g, const Signature& signature) {
  const std::string& base = signature.base_name(g);
  std::string head = is_greek(base) ? "\\" + base : (base.size() > 1 ? "\\mathrm{" + base + "}" : base);
  return head + "_{" + std::to_string(g.order) + "}";
}

std::string latex_factor(Generator g, int exponent, const Signature& signature) {
  std::string out = latex_name(g, signature);
  if (exponent > 1) out = "{" + out + "}^{" + std::to_string(exponent) + "}";
  return out;
}

std::string latex_coefficient(const Rational& magnitude) {
  if (magnitude.get_den() == 1) return magnitude.get_num().get_str();
  return "\\frac{" + magnitude.get_num().get_str() + "}{" + magnitude.get_den().get_str() + "}";
}

constexpr Style kPlain{plain_factor, plain_coefficient, "*"};
constexpr Style kLatex{latex_factor, latex_coefficient, " "};

std::string render(const SuperExpr& e, const Signature& signature, const Style& style) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : e.terms()) {
    const bool negative = c < 0;
    const Rational magnitude = abs(c);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;

    std::vector<std::string> factors;
    for (const auto& [g, exponent] : m.even()) factors.push_back(style.factor(g, exponent, signature));
    for (const auto& g : m.odd()) factors.push_back(style.factor(g, 1, signature));
    if (factors.empty() || magnitude != 1) factors.insert(factors.begin(), style.coefficient(magnitude));
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i > 0) out += style.times;
      out += factors[i];
    }
  }
  return out;
}

std::string render_form(const GradedForm& form, const Signature& signature, const Style& style,
                        bool latex) {
  if (form.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [key, c] : form.terms()) {
    if (!first) out += " + ";
    first = false;
    std::string differentials;
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (i > 0) differentials += latex ? " \\wedge " : "^";
      differentials += latex ? "\\mathrm{d}" + latex_name(key[i], signature)
                             : "d" + signature.name(key[i]);
    }
    std::string coefficient = render(c, signature, style);
    if (key.empty()) {
      out += c.size() > 1 ? "(" + coefficient + ")" : coefficient;
    } else if (c == SuperExpr(1)) {
      out += differentials;
    } else {
      if (c.size() > 1 || coefficient.front() == '-') coefficient = "(" + coefficient + ")";
      out += coefficient + std::string(style.times) + differentials;
    }
  }
  return out;
}

}  // namespace

std::string format_expr(const SuperExpr& e, const Signature& signature) {
  return render(e, signature, kPlain);
}

std::string format_differentials(const GradedForm::Differentials& key, const Signature& signature) {
  std::string out;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i > 0) out += "^";
    out += "d" + signature.name(key[i]);
  }
  return out;
}

std::string format_form(const GradedForm& form, const Signature& signature) {
  return render_form(form, signature, kPlain, false);
}

std::string latex_expr(const SuperExpr& e, const Signature& signature) {
  return render(e, signature, kLatex);
}

std::string latex_form(const GradedForm& form, const Signature& signature) {
  return render_form(form, signature, kLatex, true);
}

}  // namespace supermech
