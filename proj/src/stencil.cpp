#include "hexlap/stencil.hpp"

#include <algorithm>
#include <random>

namespace hexlap {

int StencilOperator::reach() const {
  int r = 0;
  for (const auto& t : terms) r = std::max({r, std::abs(t.o1), std::abs(t.o2)});
  return r;
}

double AssembledOperator::hermiticity_defect() const {
  SparseMatrixC d = SparseMatrixC(matrix.adjoint()) - matrix;
  double m = 0.0;
  for (int k = 0; k < d.outerSize(); ++k)
    for (SparseMatrixC::InnerIterator it(d, k); it; ++it)
      m = std::max(m, std::abs(it.value()));
  return m;
}

FieldVector apply(const StencilOperator& st, const TruncationBox& box, const FieldVector& f) {
  FieldVector out = FieldVector::Zero(box.dim());
  for (long idx = 0; idx < box.dim(); ++idx) {
    const LatticeSite site = box.site_of(idx);
    Complex acc = 0.0;
    for (const auto& t : st.terms) {
      if (t.to != site.tag) continue;
      const LatticeSite in{site.n1 + t.o1, site.n2 + t.o2, t.from};
      const long j = box.index_or_drop(in);
      if (j < 0) continue;
      acc += t.coeff(box, site) * f[j];
    }
    out[idx] = acc;
  }
  return out;
}

AssembledOperator assemble(const StencilOperator& st, const TruncationBox& box,
                           bool hermitian_hint) {
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(size_t(box.dim()) * st.terms.size());
  for (long idx = 0; idx < box.dim(); ++idx) {
    const LatticeSite site = box.site_of(idx);
    for (const auto& t : st.terms) {
      if (t.to != site.tag) continue;
      const LatticeSite in{site.n1 + t.o1, site.n2 + t.o2, t.from};
      const long j = box.index_or_drop(in);
      if (j < 0) continue;
      const Complex c = t.coeff(box, site);
      if (c != Complex(0.0)) trips.emplace_back(int(idx), int(j), c);
    }
  }
  SparseMatrixC M(box.dim(), box.dim());
  M.setFromTriplets(trips.begin(), trips.end());
  M.makeCompressed();
  return {box, std::move(M), hermitian_hint};
}

double power_iteration_norm(const std::function<FieldVector(const FieldVector&)>& op,
                            long dim, int iters, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  FieldVector v(dim);
  for (long i = 0; i < dim; ++i) v[i] = Complex(gauss(rng), gauss(rng));
  v.normalize();
  double lambda = 0.0;
  for (int k = 0; k < iters; ++k) {
    FieldVector w = op(v);
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    const double next = nw;  // |<v, Av>| <= ||Av|| with equality at convergence
    w /= nw;
    if (k > 10 && std::abs(next - lambda) < 1e-12 * std::max(1.0, next)) {
      lambda = next;
      break;
    }
    lambda = next;
    v.swap(w);
  }
  return lambda;
}

double power_iteration_norm(const AssembledOperator& A, int iters, unsigned seed) {
  return power_iteration_norm([&](const FieldVector& v) { return FieldVector(A.matrix * v); },
                              A.box.dim(), iters, seed);
}

}  // namespace hexlap
