#include "supermech/super_linear.hpp"

#include <stdexcept>

namespace supermech {

namespace {

SuperMatrix block(const SuperMatrix& m, std::size_t row0, std::size_t rows, std::size_t col0,
                  std::size_t cols) {
  SuperMatrix out(rows, std::vector<SuperExpr>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) out[i][j] = m[row0 + i][col0 + j];
  }
  return out;
}

SuperMatrix subtract(const SuperMatrix& a, const SuperMatrix& b) {
  SuperMatrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) out[i][j] -= b[i][j];
  }
  return out;
}

SuperMatrix negate(SuperMatrix m) {
  for (auto& row : m) {
    for (auto& e : row) e = -e;
  }
  return m;
}

SuperMatrix minor_of(const SuperMatrix& m, std::size_t row, std::size_t col) {
  SuperMatrix out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i == row) continue;
    std::vector<SuperExpr> r;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j != col) r.push_back(m[i][j]);
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

SuperMatrix identity_matrix(std::size_t n) {
  SuperMatrix out(n, std::vector<SuperExpr>(n));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = SuperExpr(1);
  return out;
}

SuperMatrix multiply(const SuperMatrix& a, const SuperMatrix& b) {
  if (a.empty()) return {};
  std::size_t inner = b.size();
  std::size_t cols = b.empty() ? 0 : b.front().size();
  SuperMatrix out(a.size(), std::vector<SuperExpr>(cols));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != inner) throw std::invalid_argument("matrix dimensions do not agree");
    for (std::size_t j = 0; j < cols; ++j) {
      for (std::size_t k = 0; k < inner; ++k) {
        if (a[i][k].is_zero() || b[k][j].is_zero()) continue;
        out[i][j] += a[i][k] * b[k][j];
      }
    }
  }
  return out;
}

SuperExpr determinant(const SuperMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return SuperExpr(1);
  if (n == 1) return m[0][0];
  SuperExpr out;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    SuperExpr cofactor = m[0][j] * determinant(minor_of(m, 0, j));
    if (j % 2) {
      out -= cofactor;
    } else {
      out += cofactor;
    }
  }
  return out;
}

std::optional<SuperExpr> invert_even(const SuperExpr& e) {
  SuperExpr body = e.body();
  if (!body.is_constant() || body.is_zero()) return std::nullopt;
  Rational inverse_body = 1 / body.constant_term();
  SuperExpr nilpotent = (e - body).scaled(-inverse_body);
  // (c + n)^{-1} = c^{-1} sum_m (-n/c)^m
  SuperExpr sum(1);
  SuperExpr power(1);
  for (;;) {
    power *= nilpotent;
    if (power.is_zero()) break;
    sum += power;
  }
  return sum.scaled(inverse_body);
}

std::optional<SuperMatrix> invert_even_matrix(const SuperMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return SuperMatrix{};
  auto inverse_det = invert_even(determinant(m));
  if (!inverse_det) return std::nullopt;
  SuperMatrix out(n, std::vector<SuperExpr>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      SuperExpr cofactor = n == 1 ? SuperExpr(1) : determinant(minor_of(m, j, i));
      if ((i + j) % 2) cofactor = -cofactor;
      out[i][j] = cofactor * *inverse_det;
    }
  }
  return out;
}

std::optional<SuperMatrix> invert_supermatrix(const SuperMatrix& m, std::size_t even_count) {
  const std::size_t n = m.size();
  const std::size_t odd_count = n - even_count;
  SuperMatrix a = block(m, 0, even_count, 0, even_count);
  SuperMatrix b = block(m, 0, even_count, even_count, odd_count);
  SuperMatrix c = block(m, even_count, odd_count, 0, even_count);
  SuperMatrix d = block(m, even_count, odd_count, even_count, odd_count);

  auto a_inv = invert_even_matrix(a);
  if (!a_inv) return std::nullopt;
  SuperMatrix a_inv_b = multiply(*a_inv, b);
  SuperMatrix c_a_inv = multiply(c, *a_inv);
  SuperMatrix schur = even_count == 0 ? d : subtract(d, multiply(c, a_inv_b));
  auto s_inv = invert_even_matrix(schur);
  if (!s_inv) return std::nullopt;

  SuperMatrix top_right = negate(multiply(a_inv_b, *s_inv));
  SuperMatrix bottom_left = negate(multiply(*s_inv, c_a_inv));
  SuperMatrix top_left = *a_inv;
  if (odd_count > 0) {
    SuperMatrix correction = multiply(multiply(a_inv_b, *s_inv), c_a_inv);
    for (std::size_t i = 0; i < even_count; ++i) {
      for (std::size_t j = 0; j < even_count; ++j) top_left[i][j] += correction[i][j];
    }
  }

  SuperMatrix out(n, std::vector<SuperExpr>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i < even_count && j < even_count) {
        out[i][j] = top_left[i][j];
      } else if (i < even_count) {
        out[i][j] = top_right[i][j - even_count];
      } else if (j < even_count) {
        out[i][j] = bottom_left[i - even_count][j];
      } else {
        out[i][j] = (*s_inv)[i - even_count][j - even_count];
      }
    }
  }
  return out;
}

}  // namespace supermech
