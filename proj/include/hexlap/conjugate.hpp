#pragma once

#include <utility>

#include "hexlap/alpha.hpp"
#include "hexlap/grid.hpp"
#include "hexlap/stencil.hpp"

namespace hexlap {

struct SupportError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Position-side conjugate operator A_H = offdiag(A_{2,H}; A_{1,H}):
// output P2 component = A_{1,H} f_1, output P1 component = A_{2,H} f_2,
// with A_{2,H} = A_{1,H}^*. Position factors Q act before the shifts and
// read centred box coordinates. Requires a Dirichlet box; the input must
// vanish on the 3-cell boundary margin (SupportError otherwise).
FieldVector conjugate_position_apply(const FieldVector& f, const TruncationBox& box);

// A_{1,H} alone: takes the P1 half (length N^2, cell-major), returns the P2
// half. No support check; entries near the boundary are truncated values.
Eigen::VectorXcd a1h_apply_half(const Eigen::VectorXcd& f1, const TruncationBox& box);
Eigen::VectorXcd a2h_apply_half(const Eigen::VectorXcd& f2, const TruncationBox& box);

// A_H assembled on a Dirichlet box (truncated at the boundary like any
// stencil; use interior data for exact values).
AssembledOperator conjugate_matrix(const TruncationBox& box);

// Lambda(n)^s as a diagonal, centred coordinates, same on both sublattices.
Eigen::VectorXd lambda_diagonal(const TruncationBox& box, double s = 1.0);
FieldVector weight_apply(double s, const FieldVector& f, const TruncationBox& box);

// Torus side. a_hat_apply realizes (i/2)(grad(b).grad + div grad(b) .) with
// b = beta^{5/2}: derivatives of the test function are spectral, the
// coefficient fields are closed-form. a_hat_apply_numeric instead samples
// b and obtains all coefficients by spectral differentiation; it is the
// independent route used to cross-check the closed forms.
GridC a_hat_apply(const GridC& g);
GridC a_hat_apply_numeric(const GridC& g);

// A_F = P A_D P^{-1} acting on C^2-valued grid data (g1, g2). At grid
// points with beta below the degeneracy tolerance the output is 0 by the
// continuity extension (power-of-two grids never contain such points).
std::pair<GridC, GridC> conjugate_fourier_apply(const GridC& g1, const GridC& g2);

// Largest max-norm defect of F(A_H f) - A_F(F f) over a compactly
// supported two-component field given on [-K,K]^2 (cell-major, P1 then P2),
// evaluated on the M x M grid by direct Fourier sums.
double fourier_intertwining_defect(int K, int M,
                                   const std::function<Complex(long, long, Sublattice)>& f);

}  // namespace hexlap
