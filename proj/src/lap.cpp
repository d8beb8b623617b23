#include "hexlap/lap.hpp"

#include <cmath>
#include <random>
#include <Eigen/SparseLU>

#include "hexlap/conjugate.hpp"

namespace hexlap {

struct ResolventSolver::Impl {
  SparseMatrixC shifted;
  SparseMatrixC shifted_adj;
  Eigen::SparseLU<SparseMatrixC> lu;
  Eigen::SparseLU<SparseMatrixC> lu_adj;
};

ResolventSolver::ResolventSolver(const AssembledOperator& H, Complex z)
    : impl_(std::make_unique<Impl>()) {
  SparseMatrixC id(H.box.dim(), H.box.dim());
  id.setIdentity();
  impl_->shifted = H.matrix - z * id;
  impl_->shifted_adj = impl_->shifted.adjoint();
  impl_->lu.compute(impl_->shifted);
  if (impl_->lu.info() != Eigen::Success)
    throw SolverStall("ResolventSolver: factorization failed");
  impl_->lu_adj.compute(impl_->shifted_adj);
  if (impl_->lu_adj.info() != Eigen::Success)
    throw SolverStall("ResolventSolver: adjoint factorization failed");
}

ResolventSolver::~ResolventSolver() = default;
ResolventSolver::ResolventSolver(ResolventSolver&&) noexcept = default;

FieldVector ResolventSolver::solve(const FieldVector& rhs) const {
  FieldVector x = impl_->lu.solve(rhs);
  const double res = (impl_->shifted * x - rhs).norm();
  if (!(res <= 1e-10 * std::max(rhs.norm(), 1e-300)))
    throw SolverStall("ResolventSolver: residual target missed");
  return x;
}

FieldVector ResolventSolver::solve_adjoint(const FieldVector& rhs) const {
  FieldVector x = impl_->lu_adj.solve(rhs);
  const double res = (impl_->shifted_adj * x - rhs).norm();
  if (!(res <= 1e-10 * std::max(rhs.norm(), 1e-300)))
    throw SolverStall("ResolventSolver: adjoint residual target missed");
  return x;
}

FieldVector resolvent_solve(const AssembledOperator& H, Complex z, const FieldVector& rhs) {
  return ResolventSolver(H, z).solve(rhs);
}

double weighted_resolvent_norm(const AssembledOperator& H, double lambda, double rho, double s) {
  if (!(rho > 0.0)) throw std::invalid_argument("weighted_resolvent_norm: rho must be > 0");
  const ResolventSolver solver(H, Complex(lambda, rho));
  const Eigen::VectorXd w = lambda_diagonal(H.box, -s);
  auto T = [&](const FieldVector& v) {
    return FieldVector(w.cast<Complex>().cwiseProduct(
        solver.solve(w.cast<Complex>().cwiseProduct(v))));
  };
  auto Tadj = [&](const FieldVector& v) {
    return FieldVector(w.cast<Complex>().cwiseProduct(
        solver.solve_adjoint(w.cast<Complex>().cwiseProduct(v))));
  };
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  FieldVector v(H.box.dim());
  for (long i = 0; i < v.size(); ++i) v[i] = Complex(gauss(rng), gauss(rng));
  v.normalize();
  double sigma = 0.0;
  for (int it = 0; it < 300; ++it) {
    FieldVector tv = T(v);
    const double next = tv.norm();
    FieldVector u = Tadj(tv);
    const double un = u.norm();
    if (un == 0.0) return 0.0;
    v = u / un;
    if (it > 3 && std::abs(next - sigma) <= 1e-4 * std::max(next, 1e-300)) {
      sigma = next;
      break;
    }
    sigma = next;
  }
  return sigma;
}

ResolventCurve resolvent_curve(const AssembledOperator& H, double lambda, double s,
                               double rho_start) {
  ResolventCurve curve;
  curve.lambda = lambda;
  curve.s = s;
  const double floor = std::max(1e-3, 4.0 / (double(H.box.N) * H.box.N));
  for (double rho = rho_start; rho >= floor * (1.0 - 1e-12); rho /= 2.0) {
    curve.rho.push_back(rho);
    curve.norms.push_back(weighted_resolvent_norm(H, lambda, rho, s));
  }
  if (curve.norms.size() >= 2) {
    const double last = curve.norms.back();
    const double prev = curve.norms[curve.norms.size() - 2];
    curve.plateau_flag = (last - prev) <= kPlateauRelGrowth * std::abs(prev);
  }
  return curve;
}

namespace {

double bessel_j(int k, double x) {
  if (x >= 0.0) return std::cyl_bessel_j(double(k), x);
  const double v = std::cyl_bessel_j(double(k), -x);
  return (k % 2 == 0) ? v : -v;
}

std::vector<Complex> chebyshev_coefficients(double scaled_time) {
  const int degree = int(std::ceil(1.1 * std::abs(scaled_time))) + 40;
  std::vector<Complex> c(size_t(degree) + 1);
  Complex ik(1.0, 0.0);  // (-i)^k
  for (int k = 0; k <= degree; ++k) {
    const double jk = bessel_j(k, scaled_time);
    c[size_t(k)] = (k == 0 ? 1.0 : 2.0) * ik * jk;
    ik *= Complex(0.0, -1.0);
  }
  if (std::abs(c.back()) > 1e-13)
    throw std::runtime_error("chebyshev_coefficients: series tail not negligible");
  return c;
}

FieldVector chebyshev_apply(const AssembledOperator& H, double scale,
                            const std::vector<Complex>& coeff, const FieldVector& f) {
  FieldVector tkm1 = f;
  FieldVector tk = (H.matrix * f) / scale;
  FieldVector out = coeff[0] * tkm1;
  if (coeff.size() > 1) out += coeff[1] * tk;
  for (size_t k = 2; k < coeff.size(); ++k) {
    FieldVector tkp1 = 2.0 / scale * (H.matrix * tk) - tkm1;
    out += coeff[k] * tkp1;
    tkm1.swap(tk);
    tk.swap(tkp1);
  }
  return out;
}

double spectral_scale(const AssembledOperator& H) {
  return power_iteration_norm(H) * 1.001 + 1e-12;
}

}  // namespace

FieldVector evolve(const AssembledOperator& H, const FieldVector& f, double t) {
  if (t == 0.0) return f;
  const double scale = spectral_scale(H);
  return chebyshev_apply(H, scale, chebyshev_coefficients(scale * t), f);
}

Propagator::Propagator(const AssembledOperator& H, double dt)
    : H_(H), scale_(spectral_scale(H)), coeff_(chebyshev_coefficients(scale_ * dt)) {}

FieldVector Propagator::step(const FieldVector& f) const {
  return chebyshev_apply(H_, scale_, coeff_, f);
}

FieldVector band_project(const AssembledOperator& H, const EnergyInterval& I,
                         const FieldVector& f, int cheb_degree) {
  if (H.box.dim() <= kDenseEigensolveCap) {
    const DenseSpectrum sp = dense_spectrum(H);
    FieldVector out = FieldVector::Zero(f.size());
    for (long k = 0; k < sp.values.size(); ++k)
      if (sp.values[k] >= I.a && sp.values[k] <= I.b)
        out += sp.vectors.col(k) * (sp.vectors.col(k).adjoint() * f);
    return out;
  }
  // Jackson-damped Chebyshev expansion of the indicator of [a, b].
  const double scale = spectral_scale(H);
  const double ta = std::acos(std::clamp(I.a / scale, -1.0, 1.0));
  const double tb = std::acos(std::clamp(I.b / scale, -1.0, 1.0));
  std::vector<Complex> c(size_t(cheb_degree) + 1);
  const double Np = double(cheb_degree + 1);
  for (int k = 0; k <= cheb_degree; ++k) {
    const double raw = (k == 0) ? (ta - tb) / M_PI
                                : 2.0 * (std::sin(k * ta) - std::sin(k * tb)) / (k * M_PI);
    const double jackson =
        ((Np - k) * std::cos(M_PI * k / Np) + std::sin(M_PI * k / Np) / std::tan(M_PI / Np)) /
        Np;
    c[size_t(k)] = raw * jackson;
  }
  return chebyshev_apply(H, scale, c, f);
}

PropagationRecord propagation_integral(const AssembledOperator& H, const EnergyInterval& I,
                                       const FieldVector& f, double s, double T, double dt) {
  PropagationRecord rec;
  rec.interval = I;
  rec.horizon = T;
  const Eigen::VectorXd w = lambda_diagonal(H.box, -s);
  FieldVector psi = band_project(H, I, f);
  const Propagator prop(H, dt);
  const int steps = int(std::llround(T / dt));
  auto integrand = [&](const FieldVector& v) {
    return w.cast<Complex>().cwiseProduct(v).squaredNorm();
  };
  double acc = 0.0;
  double prev = integrand(psi);
  const int quarter = std::max(steps / 4, 1);
  for (int k = 1; k <= steps; ++k) {
    psi = prop.step(psi);
    const double cur = integrand(psi);
    acc += 0.5 * (prev + cur) * dt;
    prev = cur;
    if (k % quarter == 0 || k == steps) {
      rec.checkpoint_t.push_back(k * dt);
      rec.partial_integral.push_back(acc);
    }
  }
  rec.total = acc;
  if (rec.partial_integral.size() >= 2 && rec.total > 0.0) {
    const double before_last_quarter =
        rec.partial_integral[rec.partial_integral.size() - 2];
    rec.saturation_flag = (rec.total - before_last_quarter) < 0.05 * rec.total;
  }
  return rec;
}

DecayTrace pointwise_decay(const AssembledOperator& H, const FieldVector& f, long site_index,
                           double T, double dt) {
  DecayTrace tr;
  const Propagator prop(H, dt);
  FieldVector psi = f;
  const int steps = int(std::llround(T / dt));
  for (int k = 0; k <= steps; ++k) {
    tr.t.push_back(k * dt);
    tr.amplitude.push_back(std::abs(psi[site_index]));
    if (k < steps) psi = prop.step(psi);
  }
  const size_t q = tr.amplitude.size() / 4;
  for (size_t k = 0; k < tr.amplitude.size(); ++k) {
    if (k <= q) tr.early_max = std::max(tr.early_max, tr.amplitude[k]);
    if (k >= 3 * q) tr.late_max = std::max(tr.late_max, tr.amplitude[k]);
  }
  return tr;
}

}  // namespace hexlap
