#include "hexlap/operators.hpp"

#include <cmath>
#include <Eigen/Dense>

namespace hexlap {

namespace {

// Couplings of the two off-diagonal blocks. For an output P1 site the three
// P2 inputs sit at offsets {(0,0), (-1,0), (0,-1)}; for an output P2 site the
// P1 inputs sit at {(0,0), (1,0), (0,1)}. The edge joining output and input
// is slot `s` of the P2 cell involved (the input cell for P1 outputs, the
// output cell for P2 outputs).
struct Coupling {
  int o1, o2, slot;
};
constexpr Coupling kToP1[3] = {{0, 0, 0}, {-1, 0, 1}, {0, -1, 2}};
constexpr Coupling kToP2[3] = {{0, 0, 0}, {1, 0, 1}, {0, 1, 2}};

LatticeSite input_site(const LatticeSite& out, const Coupling& c) {
  return {out.n1 + c.o1, out.n2 + c.o2, other(out.tag)};
}

// P2 cell owning the edge of coupling c at output site `out`.
std::pair<long, long> edge_cell(const LatticeSite& out, const Coupling& c) {
  if (out.tag == Sublattice::P1) return {out.n1 + c.o1, out.n2 + c.o2};
  return {out.n1, out.n2};
}

}  // namespace

StencilOperator laplacian_hex() {
  StencilOperator st;
  for (const auto& c : kToP1)
    st.add_const(c.o1, c.o2, Sublattice::P2, Sublattice::P1, 1.0 / 3.0);
  for (const auto& c : kToP2)
    st.add_const(c.o1, c.o2, Sublattice::P1, Sublattice::P2, 1.0 / 3.0);
  return st;
}

StencilOperator weighted_laplacian(const MetricField& mf) {
  StencilOperator st;
  auto add_block = [&st, &mf](Sublattice to, const Coupling (&cs)[3]) {
    for (const auto& c : cs) {
      st.add(c.o1, c.o2, other(to), to,
             [&mf, c](const TruncationBox&, const LatticeSite& out) -> Complex {
               auto [e1, e2] = edge_cell(out, c);
               return mf.edge(e1, e2, c.slot) / (3.0 * mf.m_at(out));
             });
    }
  };
  add_block(Sublattice::P1, kToP1);
  add_block(Sublattice::P2, kToP2);
  return st;
}

std::pair<StencilOperator, StencilOperator> gauge_transform(const MetricField& mf) {
  StencilOperator T, Tinv;
  for (Sublattice t : {Sublattice::P1, Sublattice::P2}) {
    T.add(0, 0, t, t, [&mf](const TruncationBox&, const LatticeSite& s) -> Complex {
      return 1.0 / std::sqrt(mf.m_at(s));
    });
    Tinv.add(0, 0, t, t, [&mf](const TruncationBox&, const LatticeSite& s) -> Complex {
      return std::sqrt(mf.m_at(s));
    });
  }
  return {T, Tinv};
}

StencilOperator tilde_delta(const MetricField& mf) {
  StencilOperator st;
  auto add_block = [&st, &mf](Sublattice to, const Coupling (&cs)[3]) {
    for (const auto& c : cs) {
      st.add(c.o1, c.o2, other(to), to,
             [&mf, c](const TruncationBox&, const LatticeSite& out) -> Complex {
               auto [e1, e2] = edge_cell(out, c);
               const LatticeSite in = input_site(out, c);
               return mf.edge(e1, e2, c.slot) /
                      (3.0 * std::sqrt(mf.m_at(out)) * std::sqrt(mf.m_at(in)));
             });
    }
  };
  add_block(Sublattice::P1, kToP1);
  add_block(Sublattice::P2, kToP2);
  return st;
}

std::pair<PerturbationPart, PerturbationPart> perturbation_di(const MetricField& mf) {
  auto one_block = [&mf](Sublattice to) {
    PerturbationPart part;
    const Coupling* cs = (to == Sublattice::P1) ? kToP1 : kToP2;
    StencilOperator* split[3] = {&part.L, &part.T, &part.S};
    for (int k = 0; k < 3; ++k) {
      const Coupling c = cs[k];
      StencilCoeff coeff = [&mf, c](const TruncationBox&, const LatticeSite& out) -> Complex {
        auto [e1, e2] = edge_cell(out, c);
        const LatticeSite in = input_site(out, c);
        return (1.0 - mf.edge(e1, e2, c.slot) /
                          (std::sqrt(mf.m_at(out)) * std::sqrt(mf.m_at(in)))) /
               3.0;
      };
      part.full.add(c.o1, c.o2, other(to), to, coeff);
      split[k]->add(c.o1, c.o2, other(to), to, coeff);
    }
    return part;
  };
  // D_1 maps P1 data to the P2 component, D_2 the other way round.
  return {one_block(Sublattice::P2), one_block(Sublattice::P1)};
}

StencilOperator potential_stencil(const PotentialField& V) {
  StencilOperator st;
  for (Sublattice t : {Sublattice::P1, Sublattice::P2}) {
    st.add(0, 0, t, t, [&V](const TruncationBox&, const LatticeSite& s) -> Complex {
      return V.at(s);
    });
  }
  return st;
}

AssembledOperator hamiltonian(const MetricField& mf, const PotentialField& V) {
  StencilOperator st = tilde_delta(mf);
  for (const auto& term : potential_stencil(V).terms) st.terms.push_back(term);
  return assemble(st, mf.box, /*hermitian_hint=*/true);
}

namespace {
bool is_real(const SparseMatrixC& M) {
  for (int k = 0; k < M.outerSize(); ++k)
    for (SparseMatrixC::InnerIterator it(M, k); it; ++it)
      if (it.value().imag() != 0.0) return false;
  return true;
}
}  // namespace

Eigen::VectorXd dense_eigenvalues(const AssembledOperator& A) {
  if (is_real(A.matrix)) {
    Eigen::MatrixXd M = A.dense().real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A.dense(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

DenseSpectrum dense_spectrum(const AssembledOperator& A) {
  if (is_real(A.matrix)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A.dense().real());
    return {es.eigenvalues(), es.eigenvectors().cast<Complex>()};
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A.dense());
  return {es.eigenvalues(), es.eigenvectors()};
}

double row_norm_at_radius(const StencilOperator& st, const TruncationBox& box, long radius) {
  double best = 0.0;
  for (long idx = 0; idx < box.dim(); ++idx) {
    const LatticeSite s = box.site_of(idx);
    if (std::max(std::labs(box.centered1(s)), std::labs(box.centered2(s))) != radius) continue;
    double row = 0.0;
    for (const auto& t : st.terms) {
      if (t.to != s.tag) continue;
      const LatticeSite in{s.n1 + t.o1, s.n2 + t.o2, t.from};
      if (box.index_or_drop(in) < 0) continue;
      row += std::abs(t.coeff(box, s));
    }
    best = std::max(best, row);
  }
  return best;
}

}  // namespace hexlap
