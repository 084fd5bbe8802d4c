#pragma once

#include <optional>
#include <vector>

#include "supermech/graded_algebra.hpp"

namespace supermech {

// Dense matrix of superexpressions; products keep the left-to-right order of
// the factors, so odd entries are handled correctly.
using SuperMatrix = std::vector<std::vector<SuperExpr>>;

SuperMatrix identity_matrix(std::size_t n);
SuperMatrix multiply(const SuperMatrix& a, const SuperMatrix& b);

// Laplace expansion. Only meaningful when the entries commute pairwise
// (for example when they are all even).
SuperExpr determinant(const SuperMatrix& m);

// Inverse of an even element whose body is a nonzero constant; the nilpotent
// remainder is summed as a finite geometric series.
std::optional<SuperExpr> invert_even(const SuperExpr& e);

// Inverse of a matrix with even entries whose determinant has a nonzero
// constant body.
std::optional<SuperMatrix> invert_even_matrix(const SuperMatrix& m);

// Inverse of the block supermatrix [[A, B], [C, D]] where the first
// `even_count` rows and columns index even equations and unknowns. A and D
// carry even entries, B and C odd ones.
std::optional<SuperMatrix> invert_supermatrix(const SuperMatrix& m, std::size_t even_count);

}  // namespace supermech
