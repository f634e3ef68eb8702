#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <optional>
#include <utility>
#include <vector>

#include "ncsaito/rational.hpp"

namespace ncsaito {

using RatMatrix = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

struct RrefResult {
    RatMatrix mat;
    std::vector<Eigen::Index> pivots;  // pivot column per pivot row, ascending
};

// Reduced row-echelon form with deterministic pivoting (first nonzero entry,
// scanning rows top to bottom). rank = pivots.size().
RrefResult rref(const RatMatrix& m);

Eigen::Index rank(const RatMatrix& m);

// Columns form a basis of ker(m); empty matrix (cols = 0) for trivial kernel.
RatMatrix kernel(const RatMatrix& m);

// Exact solution of m x = b with free variables set to zero.
// Throws Error(Inconsistent) when b is not in the column space.
RatVector solve(const RatMatrix& m, const RatVector& b);
std::optional<RatVector> try_solve(const RatMatrix& m, const RatVector& b);

RatMatrix inverse(const RatMatrix& m);  // throws Inconsistent when singular

// Characteristic polynomial det(t I - m), coefficients c[0] + c[1] t + ...
// + c[n] t^n with c[n] = 1 (Faddeev-LeVerrier, exact).
std::vector<Rat> char_poly(const RatMatrix& m);

// Rational roots with multiplicities of a rational-coefficient polynomial,
// found by divisor enumeration on the cleared integer form.
std::vector<std::pair<Rat, int>> rational_roots(const std::vector<Rat>& coeffs);

struct JordanData {
    RatMatrix transform;                     // P, invertible
    std::vector<std::pair<Rat, int>> blocks; // (eigenvalue, size), in order

    RatMatrix jordan_matrix() const;  // block diagonal J with 1s on the superdiagonal
};

// P and blocks with P^{-1} M P = J, eigenvalues rational.
// Throws Error(NonRationalSpectrum) when the characteristic polynomial has an
// irreducible non-linear factor over Q.
JordanData rational_jordan_form(const RatMatrix& m);

}  // namespace ncsaito
