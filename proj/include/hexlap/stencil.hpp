#pragma once

#include <complex>
#include <functional>
#include <vector>
#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "hexlap/lattice.hpp"

namespace hexlap {

using Complex = std::complex<double>;
using FieldVector = Eigen::VectorXcd;
using SparseMatrixC = Eigen::SparseMatrix<Complex>;

// Coefficient of one stencil term, evaluated at the output site (raw box
// coordinates; the box is passed along so coefficients can re-centre).
using StencilCoeff = std::function<Complex(const TruncationBox&, const LatticeSite&)>;

// One term: out(site) += c(site) * f(site + (o1, o2) on sublattice `from`),
// restricted to terms whose `to` matches the output site's sublattice.
struct StencilTerm {
  int o1 = 0;
  int o2 = 0;
  Sublattice from = Sublattice::P1;
  Sublattice to = Sublattice::P2;
  StencilCoeff coeff;
};

struct StencilOperator {
  std::vector<StencilTerm> terms;

  StencilOperator& add(int o1, int o2, Sublattice from, Sublattice to, StencilCoeff c) {
    terms.push_back({o1, o2, from, to, std::move(c)});
    return *this;
  }
  StencilOperator& add_const(int o1, int o2, Sublattice from, Sublattice to, Complex value) {
    return add(o1, o2, from, to,
               [value](const TruncationBox&, const LatticeSite&) { return value; });
  }
  int reach() const;
};

struct AssembledOperator {
  TruncationBox box;
  SparseMatrixC matrix;
  bool hermitian_hint = false;

  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(matrix); }
  double hermiticity_defect() const;
};

// Matrix-free action. Dirichlet: couplings reaching outside the box are
// dropped; periodic: wrapped.
FieldVector apply(const StencilOperator& st, const TruncationBox& box, const FieldVector& f);

AssembledOperator assemble(const StencilOperator& st, const TruncationBox& box,
                           bool hermitian_hint = false);

// Largest |eigenvalue| of a Hermitian operator by power iteration.
double power_iteration_norm(const std::function<FieldVector(const FieldVector&)>& op,
                            long dim, int iters = 200, unsigned seed = 7);
double power_iteration_norm(const AssembledOperator& A, int iters = 200, unsigned seed = 7);

}  // namespace hexlap
