#include <doctest.h>

#include <random>

#include <algorithm>

#include "hexlap/hypotheses.hpp"
#include "hexlap/operators.hpp"
#include "hexlap/symbol.hpp"

using namespace hexlap;

namespace {

FieldVector delta_at(const TruncationBox& box, const LatticeSite& s) {
  FieldVector f = FieldVector::Zero(box.dim());
  f[box.flat_index(s)] = 1.0;
  return f;
}

FieldVector random_field(const TruncationBox& box, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  FieldVector f(box.dim());
  for (long i = 0; i < f.size(); ++i) f[i] = Complex(g(rng), g(rng));
  return f;
}

}  // namespace

TEST_CASE("hexagonal Laplacian stencil on deltas") {
  const TruncationBox box(8, BoundaryCondition::Periodic);
  const StencilOperator lap = laplacian_hex();

  FieldVector out = apply(lap, box, delta_at(box, {0, 0, Sublattice::P2}));
  CHECK(std::abs(out[box.flat_index({0, 0, Sublattice::P1})] - Complex(1.0 / 3.0)) < 1e-15);

  // (1,0,P2) is not adjacent to (0,0,P1): both directions vanish.
  out = apply(lap, box, delta_at(box, {0, 0, Sublattice::P1}));
  CHECK(std::abs(out[box.flat_index({1, 0, Sublattice::P2})]) < 1e-15);
  out = apply(lap, box, delta_at(box, {1, 0, Sublattice::P2}));
  CHECK(std::abs(out[box.flat_index({0, 0, Sublattice::P1})]) < 1e-15);
  // its unit-distance partner (-1,0,P2) carries the 1/3 coupling
  out = apply(lap, box, delta_at(box, {-1, 0, Sublattice::P2}));
  CHECK(std::abs(out[box.flat_index({0, 0, Sublattice::P1})] - Complex(1.0 / 3.0)) < 1e-15);
}

TEST_CASE("constant vector is fixed by the Laplacian on a periodic box") {
  const TruncationBox box(6, BoundaryCondition::Periodic);
  const FieldVector ones = FieldVector::Ones(box.dim());
  CHECK((apply(laplacian_hex(), box, ones) - ones).norm() < 1e-14);
}

TEST_CASE("assembled Laplacian: Hermitian, bipartite, symbol spectrum") {
  const TruncationBox box(4, BoundaryCondition::Periodic);
  const AssembledOperator D = assemble(laplacian_hex(), box, true);
  CHECK(D.hermiticity_defect() < 1e-15);

  // sublattice sign flip anticommutes with the Laplacian
  Eigen::VectorXcd sigma(box.dim());
  for (long i = 0; i < box.dim(); ++i)
    sigma[i] = box.site_of(i).tag == Sublattice::P1 ? 1.0 : -1.0;
  const Eigen::MatrixXcd Dd = D.dense();
  const Eigen::MatrixXcd flipped =
      sigma.asDiagonal() * Dd * sigma.asDiagonal();
  CHECK((flipped + Dd).norm() < 1e-14);

  // eigenvalues match the two dispersion branches over the dual grid
  std::vector<double> oracle;
  for (int m1 = 0; m1 < box.N; ++m1)
    for (int m2 = 0; m2 < box.N; ++m2) {
      const double b = beta({2 * M_PI * m1 / box.N, 2 * M_PI * m2 / box.N});
      oracle.push_back(std::sqrt(std::max(b, 0.0)) / 3.0);
      oracle.push_back(-std::sqrt(std::max(b, 0.0)) / 3.0);
    }
  std::sort(oracle.begin(), oracle.end());
  const Eigen::VectorXd ev = dense_eigenvalues(D);
  REQUIRE(ev.size() == long(oracle.size()));
  for (long k = 0; k < ev.size(); ++k)
    CHECK(ev[k] == doctest::Approx(oracle[size_t(k)]).epsilon(1e-12));
}

TEST_CASE("weighted Laplacian specializations") {
  const TruncationBox box(6, BoundaryCondition::Periodic);
  const MetricField trivial = MetricField::trivial(box);
  const Eigen::MatrixXcd base = assemble(laplacian_hex(), box).dense();
  CHECK((assemble(weighted_laplacian(trivial), box).dense() - base).norm() < 1e-14);

  // one edge with eps = 1 doubles exactly one coupling
  const MetricField one_edge = MetricField::make(
      box, [](const LatticeSite&) { return 0.0; },
      [](const LatticeSite& a, const LatticeSite& b) {
        auto is = [](const LatticeSite& s, long n1, long n2, Sublattice t) {
          return s.n1 == n1 && s.n2 == n2 && s.tag == t;
        };
        return (is(a, 0, 0, Sublattice::P2) && is(b, 0, 0, Sublattice::P1)) ||
                       (is(b, 0, 0, Sublattice::P2) && is(a, 0, 0, Sublattice::P1))
                   ? 1.0
                   : 0.0;
      });
  const Eigen::MatrixXcd M1 = assemble(weighted_laplacian(one_edge), box).dense();
  Eigen::MatrixXcd diff = M1 - base;
  long nonzeros = 0;
  for (long r = 0; r < diff.rows(); ++r)
    for (long c = 0; c < diff.cols(); ++c)
      if (std::abs(diff(r, c)) > 1e-14) ++nonzeros;
  CHECK(nonzeros == 2);  // the coupling and its transpose partner
  const long p1 = box.flat_index(box.canonical({box.N / 2, box.N / 2, Sublattice::P1}));
  const long p2 = box.flat_index(box.canonical({box.N / 2, box.N / 2, Sublattice::P2}));
  CHECK(std::abs(M1(p1, p2) - Complex(2.0 / 3.0)) < 1e-14);

  // m = 2 halves every coupling
  const MetricField doubled = MetricField::make(
      box, [](const LatticeSite&) { return 1.0; },
      [](const LatticeSite&, const LatticeSite&) { return 0.0; });
  CHECK((assemble(weighted_laplacian(doubled), box).dense() - 0.5 * base).norm() < 1e-14);
}

TEST_CASE("gauge transform is unitary between the weighted spaces") {
  const TruncationBox box(6, BoundaryCondition::Periodic);

  const MetricField id = MetricField::trivial(box);
  auto [T1, T1inv] = gauge_transform(id);
  const FieldVector f = random_field(box, 3);
  CHECK((apply(T1, box, f) - f).norm() < 1e-15);

  const MetricField four = MetricField::make(
      box, [](const LatticeSite&) { return 3.0; },
      [](const LatticeSite&, const LatticeSite&) { return 0.0; });
  auto [T4, T4inv] = gauge_transform(four);
  CHECK((apply(T4, box, f) - 0.5 * f).norm() < 1e-14);

  // random m in [0.5, 2]: <Tf, Tg>_m = <f, g> on 100 random pairs
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> um(0.5, 2.0);
  std::vector<double> mvals(size_t(box.dim()));
  // deterministic per-site values through a hash of the flat index
  const MetricField rnd = MetricField::make(
      box,
      [&box](const LatticeSite& s) {
        const double t = std::sin(7.1 * double(s.n1) + 3.3 * double(s.n2) +
                                  (s.tag == Sublattice::P1 ? 0.0 : 1.7));
        (void)box;
        return 0.25 + 0.5 * (t + 1.0);  // m in [1.25 - 1, ...]: eta in (-0.75, 0.75)
      },
      [](const LatticeSite&, const LatticeSite&) { return 0.0; });
  auto [T, Tinv] = gauge_transform(rnd);
  double worst = 0.0;
  for (unsigned k = 0; k < 100; ++k) {
    const FieldVector a = random_field(box, 100 + k), b = random_field(box, 300 + k);
    const FieldVector Ta = apply(T, box, a), Tb = apply(T, box, b);
    Complex lhs = 0.0;
    for (long i = 0; i < box.dim(); ++i)
      lhs += rnd.m[i] * std::conj(Ta[i]) * Tb[i];
    const Complex rhs = a.dot(b);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("gauge-fixed Laplacian: conjugation identity and Hermiticity") {
  const TruncationBox box(8, BoundaryCondition::Periodic);
  const PerturbationProfile prof = PerturbationProfile::golden();
  const MetricField mf = MetricField::make(box, prof.eta_fn(), prof.eps_fn());

  CHECK((assemble(tilde_delta(MetricField::trivial(box)), box).dense() -
         assemble(laplacian_hex(), box).dense())
            .norm() < 1e-14);

  auto [T, Tinv] = gauge_transform(mf);
  const Eigen::MatrixXcd lhs = assemble(tilde_delta(mf), box).dense();
  const Eigen::MatrixXcd rhs = assemble(Tinv, box).dense() *
                               assemble(weighted_laplacian(mf), box).dense() *
                               assemble(T, box).dense();
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(assemble(tilde_delta(mf), box, true).hermiticity_defect() < 1e-12);
}

TEST_CASE("compact perturbation parts") {
  const TruncationBox box(8, BoundaryCondition::Periodic);
  const MetricField trivial = MetricField::trivial(box);
  auto [d1t, d2t] = perturbation_di(trivial);
  CHECK(assemble(d1t.full, box).matrix.norm() < 1e-15);
  CHECK(assemble(d2t.full, box).matrix.norm() < 1e-15);

  const PerturbationProfile prof = PerturbationProfile::golden();
  const MetricField mf = MetricField::make(box, prof.eta_fn(), prof.eps_fn());
  auto [d1, d2] = perturbation_di(mf);
  const Eigen::MatrixXcd D = assemble(d1.full, box).dense() + assemble(d2.full, box).dense();
  const Eigen::MatrixXcd want =
      assemble(laplacian_hex(), box).dense() - assemble(tilde_delta(mf), box).dense();
  CHECK((D - want).cwiseAbs().maxCoeff() < 1e-12);

  // L + T + S recovers the full block
  const Eigen::MatrixXcd split = assemble(d1.L, box).dense() + assemble(d1.T, box).dense() +
                                 assemble(d1.S, box).dense();
  CHECK((split - assemble(d1.full, box).dense()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("perturbation row norms decay with the profile") {
  const TruncationBox box(48, BoundaryCondition::Dirichlet);
  const MetricField mf = MetricField::make(
      box,
      [](const LatticeSite& s) {
        return 1.0 / (1.0 + double(s.n1 * s.n1 + s.n2 * s.n2));
      },
      [](const LatticeSite&, const LatticeSite&) { return 0.0; });
  auto [d1, d2] = perturbation_di(mf);
  const double near = std::max(row_norm_at_radius(d1.full, box, 5),
                               row_norm_at_radius(d2.full, box, 5));
  const double far = std::max(row_norm_at_radius(d1.full, box, 20),
                              row_norm_at_radius(d2.full, box, 20));
  CHECK(far < near);
}

TEST_CASE("Hamiltonian assembly") {
  const TruncationBox box(2, BoundaryCondition::Periodic);
  const AssembledOperator H =
      hamiltonian(MetricField::trivial(box), PotentialField::zero(box));
  const Eigen::VectorXd ev = dense_eigenvalues(H);
  const std::vector<double> want{-1.0, -1.0 / 3, -1.0 / 3, -1.0 / 3,
                                 1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0};
  REQUIRE(ev.size() == 8);
  for (long k = 0; k < 8; ++k)
    CHECK(ev[k] == doctest::Approx(want[size_t(k)]).epsilon(1e-12));

  // constant potential shifts the spectrum
  const TruncationBox box8(8, BoundaryCondition::Periodic);
  const double c = 0.37;
  const AssembledOperator Hc =
      hamiltonian(MetricField::trivial(box8),
                  PotentialField::make(box8, [c](const LatticeSite&) { return c; }));
  const AssembledOperator H0 =
      hamiltonian(MetricField::trivial(box8), PotentialField::zero(box8));
  const Eigen::VectorXd e1 = dense_eigenvalues(Hc), e0 = dense_eigenvalues(H0);
  CHECK((e1 - (e0.array() + c).matrix()).cwiseAbs().maxCoeff() < 1e-12);

  // norm bound via power iteration
  const PerturbationProfile prof = PerturbationProfile::golden();
  const MetricField mf = MetricField::make(box8, prof.eta_fn(), prof.eps_fn());
  const PotentialField V = PotentialField::make(box8, prof.V_fn());
  const AssembledOperator Hp = hamiltonian(mf, V);
  const double vmax = V.V.cwiseAbs().maxCoeff();
  const double metric_slack =
      mf.E.maxCoeff() / mf.m.minCoeff();  // coarse bound on the weighted couplings
  CHECK(power_iteration_norm(Hp) <= 1.0 * metric_slack + vmax + 1e-9);
}

TEST_CASE("matrix-free apply agrees with assembly") {
  const TruncationBox box(16, BoundaryCondition::Periodic);
  const PerturbationProfile prof = PerturbationProfile::golden();
  const MetricField mf = MetricField::make(box, prof.eta_fn(), prof.eps_fn());
  const StencilOperator st = tilde_delta(mf);
  const AssembledOperator A = assemble(st, box);
  double worst = 0.0;
  for (unsigned k = 0; k < 50; ++k) {
    const FieldVector f = random_field(box, 1000 + k);
    worst = std::max(worst, (apply(st, box, f) - FieldVector(A.matrix * f)).norm());
  }
  CHECK(worst < 1e-12);

  // delta input reproduces one stencil column
  const FieldVector col = apply(st, box, delta_at(box, {3, 3, Sublattice::P1}));
  CHECK((col - FieldVector(A.matrix.col(box.flat_index({3, 3, Sublattice::P1})))).norm() <
        1e-14);
}

TEST_CASE("Dirichlet boundary drops couplings") {
  const TruncationBox box(4, BoundaryCondition::Dirichlet);
  const AssembledOperator D = assemble(laplacian_hex(), box);
  const Eigen::MatrixXcd M = D.dense();
  auto row_nnz = [&](const LatticeSite& s) {
    long n = 0;
    const long r = box.flat_index(s);
    for (long c = 0; c < box.dim(); ++c)
      if (std::abs(M(r, c)) > 0) ++n;
    return n;
  };
  CHECK(row_nnz({2, 2, Sublattice::P1}) == 3);
  CHECK(row_nnz({0, 0, Sublattice::P1}) == 1);  // two couplings leave the box
}
