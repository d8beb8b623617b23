#include <doctest.h>

#include <random>

#include <Eigen/Dense>

#include "hexlap/hypotheses.hpp"
#include "hexlap/lap.hpp"

using namespace hexlap;

namespace {

FieldVector random_field(long dim, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  FieldVector f(dim);
  for (long i = 0; i < dim; ++i) f[i] = Complex(g(rng), g(rng));
  return f;
}

FieldVector gaussian_bump(const TruncationBox& box, double width) {
  FieldVector f(box.dim());
  for (long i = 0; i < box.dim(); ++i) {
    const LatticeSite s = box.site_of(i);
    const double r2 = double(box.centered1(s) * box.centered1(s) +
                             box.centered2(s) * box.centered2(s));
    f[i] = std::exp(-r2 / (2.0 * width * width));
  }
  f.normalize();
  return f;
}

}  // namespace

TEST_CASE("resolvent bounds from the spectral theorem") {
  const TruncationBox box(12, BoundaryCondition::Periodic);
  const AssembledOperator D = assemble(laplacian_hex(), box, true);
  const FieldVector rhs = random_field(box.dim(), 1);

  const FieldVector x1 = resolvent_solve(D, Complex(0.0, 2.0), rhs);
  CHECK(x1.norm() <= rhs.norm() / 2.0 + 1e-12);

  const FieldVector x2 = resolvent_solve(D, Complex(5.0, 0.0), rhs);
  CHECK(x2.norm() <= rhs.norm() / 4.0 + 1e-12);
}

TEST_CASE("sparse solve agrees with a dense oracle on a random Hermitian operator") {
  const TruncationBox box(5, BoundaryCondition::Periodic);  // dimension 50
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd M(box.dim(), box.dim());
  for (long r = 0; r < box.dim(); ++r)
    for (long c = 0; c < box.dim(); ++c) M(r, c) = Complex(g(rng), g(rng));
  M = 0.5 * (M + M.adjoint()).eval();
  AssembledOperator A{box, M.sparseView(), true};

  const FieldVector rhs = random_field(box.dim(), 2);
  const Complex z(0.3, 0.05);
  const FieldVector x = resolvent_solve(A, z, rhs);
  const Eigen::MatrixXcd shifted =
      M - z * Eigen::MatrixXcd::Identity(box.dim(), box.dim());
  const FieldVector dense = shifted.fullPivLu().solve(rhs);
  CHECK((x - dense).norm() < 1e-9 * dense.norm());
}

TEST_CASE("weighted resolvent norm: off-spectrum bound and s-monotonicity") {
  const TruncationBox box(16, BoundaryCondition::Dirichlet);
  const AssembledOperator D = assemble(laplacian_hex(), box, true);

  const double far = weighted_resolvent_norm(D, 5.0, 1e-3, 0.6);
  CHECK(far <= std::pow(2.0, -0.6) / 4.0 + 1e-6);

  const double s06 = weighted_resolvent_norm(D, 0.6, 0.05, 0.6);
  const double s10 = weighted_resolvent_norm(D, 0.6, 0.05, 1.0);
  const double s14 = weighted_resolvent_norm(D, 0.6, 0.05, 1.4);
  CHECK(s10 <= s06 * (1.0 + 1e-6));
  CHECK(s14 <= s10 * (1.0 + 1e-6));
}

TEST_CASE("evolution: identity, eigenvector phases, dense oracle, reversal") {
  const TruncationBox box(8, BoundaryCondition::Periodic);
  const AssembledOperator D = assemble(laplacian_hex(), box, true);
  const FieldVector f = random_field(box.dim(), 3).normalized();

  CHECK((evolve(D, f, 0.0) - f).norm() == 0.0);

  const DenseSpectrum sp = dense_spectrum(D);
  const FieldVector v = sp.vectors.col(10);
  const double lam = sp.values[10];
  const double t = 7.3;
  const FieldVector vt = evolve(D, v, t);
  CHECK((vt - std::exp(Complex(0.0, -t * lam)) * v).norm() < 1e-9);

  // dense propagation oracle
  Eigen::VectorXcd phases(sp.values.size());
  for (long k = 0; k < sp.values.size(); ++k)
    phases[k] = std::exp(Complex(0.0, -t * sp.values[k]));
  const FieldVector dense =
      sp.vectors * phases.asDiagonal() * (sp.vectors.adjoint() * f);
  CHECK((evolve(D, f, t) - dense).norm() < 1e-8);

  // time reversal for a real initial state on the real operator
  FieldVector fr(box.dim());
  for (long i = 0; i < box.dim(); ++i) fr[i] = std::abs(f[i]);
  const FieldVector fwd = evolve(D, fr, 4.0);
  const FieldVector bwd = evolve(D, fr, -4.0);
  CHECK((bwd - fwd.conjugate()).norm() < 1e-9);
}

TEST_CASE("unitarity of the propagator over a long horizon") {
  const TruncationBox box(16, BoundaryCondition::Dirichlet);
  const AssembledOperator D = assemble(laplacian_hex(), box, true);
  FieldVector psi = gaussian_bump(box, 2.0);
  const Propagator prop(D, 1.0);
  for (int k = 0; k < 100; ++k) psi = prop.step(psi);
  CHECK(std::abs(psi.norm() - 1.0) < 1e-9);
}

TEST_CASE("band projection and the propagation integral") {
  const TruncationBox box(12, BoundaryCondition::Dirichlet);
  const AssembledOperator D = assemble(laplacian_hex(), box, true);
  const EnergyInterval I{0.5, 0.9, 0.05};

  // a state orthogonal to the range of E_I integrates to ~0
  const DenseSpectrum sp = dense_spectrum(D);
  long out_idx = 0;
  while (sp.values[out_idx] >= 0.5 && sp.values[out_idx] <= 0.9) ++out_idx;
  const FieldVector f = sp.vectors.col(out_idx);
  const PropagationRecord rec = propagation_integral(D, I, f, 0.6, 10.0, 0.5);
  CHECK(rec.total < 1e-18);

  // a projected state keeps a non-decreasing partial integral
  const FieldVector g = band_project(D, I, gaussian_bump(box, 2.0));
  if (g.norm() > 1e-8) {
    const PropagationRecord r2 = propagation_integral(D, I, g.normalized(), 0.6, 20.0, 0.5);
    for (size_t k = 1; k < r2.partial_integral.size(); ++k)
      CHECK(r2.partial_integral[k] >= r2.partial_integral[k - 1] - 1e-12);
  }
}

TEST_CASE("pointwise decay of a localized state") {
  const TruncationBox box(32, BoundaryCondition::Dirichlet);
  const AssembledOperator D = assemble(laplacian_hex(), box, true);
  FieldVector delta = FieldVector::Zero(box.dim());
  const long origin = box.flat_index({16, 16, Sublattice::P1});
  delta[origin] = 1.0;
  const DecayTrace tr = pointwise_decay(D, delta, origin, 24.0, 0.5);
  CHECK(tr.early_max == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tr.late_max < 0.2);
}
