#pragma once

#include <utility>
#include <vector>

#include "hexlap/fields.hpp"
#include "hexlap/stencil.hpp"

namespace hexlap {

// Unperturbed hexagonal Laplacian:
//   P2 -> P1 block (1/3)(id + U1 + U2), P1 -> P2 block (1/3)(id + U1* + U2*).
StencilOperator laplacian_hex();

// Metric-weighted Laplacian: (1/3) E(edge) / m(output site) per coupling.
StencilOperator weighted_laplacian(const MetricField& mf);

// Diagonal gauge transform f -> f / sqrt(m) and its inverse, as operators
// between the weighted and unweighted spaces.
std::pair<StencilOperator, StencilOperator> gauge_transform(const MetricField& mf);

// T^{-1} Delta_{m,E} T: coupling weight (1/3) E(edge)/(sqrt(m_out) sqrt(m_in)).
StencilOperator tilde_delta(const MetricField& mf);

// D_i = Delta_{i,H} - tilde(Delta)_i, exposed with its three-part split:
// the vertical-edge (L), U1-direction (T) and U2-direction (S) terms.
struct PerturbationPart {
  StencilOperator full;
  StencilOperator L, T, S;
};
// first: D_1 (P1 -> P2 block), second: D_2 (P2 -> P1 block).
std::pair<PerturbationPart, PerturbationPart> perturbation_di(const MetricField& mf);

// Gauge-fixed Hamiltonian tilde(Delta) + V(Q) assembled on the box.
AssembledOperator hamiltonian(const MetricField& mf, const PotentialField& V);

// Diagonal potential as a stencil.
StencilOperator potential_stencil(const PotentialField& V);

// All eigenvalues of a Hermitian assembled operator (dense solve).
Eigen::VectorXd dense_eigenvalues(const AssembledOperator& A);

// Eigen decomposition (values ascending, matching eigenvector columns).
struct DenseSpectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};
DenseSpectrum dense_spectrum(const AssembledOperator& A);

// Max row 1-norm of a stencil over sites with max(|n1c|,|n2c|) == radius
// (centred coordinates); the decay diagnostic for the compact parts.
double row_norm_at_radius(const StencilOperator& st, const TruncationBox& box, long radius);

}  // namespace hexlap
