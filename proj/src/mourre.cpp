#include "hexlap/mourre.hpp"

#include <cmath>
#include <sstream>
#include <Eigen/Dense>

namespace hexlap {

double EnergyInterval::distance_to_thresholds() const {
  double d = std::numeric_limits<double>::infinity();
  for (double k : thresholds()) {
    if (k >= a && k <= b) return 0.0;
    d = std::min({d, std::abs(a - k), std::abs(b - k)});
  }
  return d;
}

void EnergyInterval::validate() const {
  if (!(a < b)) throw std::invalid_argument("EnergyInterval: need a < b");
  if (a < -1.0 || b > 1.0) throw std::invalid_argument("EnergyInterval: [a,b] must lie in [-1,1]");
  if (threshold_margin > 0.0 && distance_to_thresholds() < threshold_margin)
    throw std::invalid_argument("EnergyInterval: too close to a threshold");
}

InteriorCommutator commutator_matrix(const AssembledOperator& H, const AssembledOperator& A,
                                     int margin) {
  const TruncationBox& box = H.box;
  if (box.bc != BoundaryCondition::Dirichlet)
    throw std::invalid_argument("commutator_matrix: Dirichlet box required");
  std::vector<long> sites;
  for (long idx = 0; idx < box.dim(); ++idx) {
    const LatticeSite s = box.site_of(idx);
    const long m = std::min({s.n1, s.n2, long(box.N) - 1 - s.n1, long(box.N) - 1 - s.n2});
    if (m >= margin) sites.push_back(idx);
  }
  const SparseMatrixC C = Complex(0, 1) * (H.matrix * A.matrix - A.matrix * H.matrix);
  InteriorCommutator out;
  out.sites = sites;
  const long d = long(sites.size());
  out.commutator.resize(d, d);
  out.h_interior.resize(d, d);
  const Eigen::MatrixXcd Cd = Eigen::MatrixXcd(C);
  const Eigen::MatrixXcd Hd = H.dense();
  for (long r = 0; r < d; ++r)
    for (long c = 0; c < d; ++c) {
      out.commutator(r, c) = Cd(sites[r], sites[c]);
      out.h_interior(r, c) = Hd(sites[r], sites[c]);
    }
  return out;
}

double mourre_symbol(const Momentum& x) {
  return (5.0 / 12.0) * beta(x) * grad_beta(x).squaredNorm();
}

namespace {

// Pointwise [sqrt(beta), i A-hat] g; the sqrt(beta) factor is differentiated
// in closed form (its gradient is analytic away from the band-touching
// points), the test function spectrally.
GridC sqrt_beta_commutator(const GridC& g) {
  const int M = int(g.rows());
  const GridC d1 = spectral_derivative(g, 0), d2 = spectral_derivative(g, 1);
  GridC out(M, M);
  const Complex I(0.0, 1.0);
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b) {
      const Momentum x{grid_coordinate(a, M), grid_coordinate(b, M)};
      const double bet = beta(x);
      if (bet <= kDiracTol) {
        out(a, b) = 0.0;
        continue;
      }
      const double sb = std::sqrt(bet);
      const Vector2d gb = grad_beta(x);
      const double bc1 = 2.5 * std::pow(bet, 1.5) * gb[0];
      const double bc2 = 2.5 * std::pow(bet, 1.5) * gb[1];
      const double divb = 2.5 * (1.5 * sb * gb.squaredNorm() + std::pow(bet, 1.5) *
                                                                   laplacian_beta(x));
      // sqrt(beta) (i A g) with A g = i b.grad g + (i/2) div(b) g
      const Complex lhs1 =
          sb * (I * (bc1 * d1(a, b) + bc2 * d2(a, b)) + 0.5 * I * divb * g(a, b));
      // i A (sqrt(beta) g), grad(sqrt(beta) g) through the product rule
      const Complex h1 = (gb[0] / (2.0 * sb)) * g(a, b) + sb * d1(a, b);
      const Complex h2 = (gb[1] / (2.0 * sb)) * g(a, b) + sb * d2(a, b);
      const Complex lhs2 = I * (bc1 * h1 + bc2 * h2) + 0.5 * I * divb * sb * g(a, b);
      out(a, b) = I * (lhs1 - lhs2);
    }
  return out;
}

}  // namespace

double commutator_symbol_check(int M) {
  std::vector<GridC> tests = {plane_wave(M, 0, 0), plane_wave(M, 1, 2), plane_wave(M, -2, 1)};
  double defect = 0.0;
  for (const GridC& g : tests) {
    const GridC lhs = sqrt_beta_commutator(g);
    for (int a = 0; a < M; ++a)
      for (int b = 0; b < M; ++b) {
        const Momentum x{grid_coordinate(a, M), grid_coordinate(b, M)};
        const double rhs = 1.25 * beta(x) * grad_beta(x).squaredNorm();
        defect = std::max(defect, std::abs(lhs(a, b) - rhs * g(a, b)));
      }
  }
  return defect;
}

double commutator_symbol_check_matrix(int M) {
  // [F, i A_F] on (g1, g2): F A_F and A_F F composed on the grid, with
  // F(x) acting pointwise.
  std::vector<std::pair<GridC, GridC>> tests = {
      {plane_wave(M, 0, 0), plane_wave(M, 1, -1)},
      {plane_wave(M, 2, 1), plane_wave(M, 0, 0)}};
  double defect = 0.0;
  for (const auto& [g1, g2] : tests) {
    auto apply_F = [M](const GridC& a, const GridC& b) {
      GridC o1(M, M), o2(M, M);
      for (int r = 0; r < M; ++r)
        for (int c = 0; c < M; ++c) {
          const Momentum x{grid_coordinate(r, M), grid_coordinate(c, M)};
          const Matrix2c F = symbol_matrix(x);
          o1(r, c) = F(0, 1) * b(r, c);
          o2(r, c) = F(1, 0) * a(r, c);
        }
      return std::make_pair(o1, o2);
    };
    auto [af1, af2] = conjugate_fourier_apply(g1, g2);
    auto [fa1, fa2] = apply_F(af1, af2);
    auto [fg1, fg2] = apply_F(g1, g2);
    auto [afg1, afg2] = conjugate_fourier_apply(fg1, fg2);
    const Complex I(0.0, 1.0);
    for (int r = 0; r < M; ++r)
      for (int c = 0; c < M; ++c) {
        const Momentum x{grid_coordinate(r, M), grid_coordinate(c, M)};
        const double rhs = mourre_symbol(x);
        defect = std::max(defect, std::abs(I * (fa1(r, c) - afg1(r, c)) - rhs * g1(r, c)));
        defect = std::max(defect, std::abs(I * (fa2(r, c) - afg2(r, c)) - rhs * g2(r, c)));
      }
  }
  return defect;
}

double mourre_constant(const EnergyInterval& I, int M) {
  I.validate();
  const double lo = std::min(std::abs(I.a), std::abs(I.b));
  const double hi = std::max(std::abs(I.a), std::abs(I.b));
  const bool straddles = I.a < 0.0 && I.b > 0.0;
  double c = std::numeric_limits<double>::infinity();
  bool hit = false;
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b) {
      const Momentum x{grid_coordinate(a, M), grid_coordinate(b, M)};
      const double disp = std::sqrt(std::max(beta(x), 0.0)) / 3.0;
      const bool inside = straddles ? disp <= hi : (disp >= lo && disp <= hi);
      if (!inside) continue;
      hit = true;
      c = std::min(c, mourre_symbol(x));
    }
  if (!hit) throw EmptyPreimage("mourre_constant: no grid point maps into the interval");
  return c;
}

Eigen::MatrixXcd spectral_projection(const AssembledOperator& H, const EnergyInterval& I) {
  const DenseSpectrum sp = dense_spectrum(H);
  const long d = sp.values.size();
  Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(d, d);
  for (long k = 0; k < d; ++k)
    if (sp.values[k] >= I.a && sp.values[k] <= I.b)
      E += sp.vectors.col(k) * sp.vectors.col(k).adjoint();
  return E;
}

MourreReport mourre_check(const AssembledOperator& H, const AssembledOperator& A,
                          const EnergyInterval& I, int M, int margin) {
  I.validate();
  MourreReport rep;
  rep.interval = I;
  rep.N = H.box.N;
  rep.M = M;
  rep.c_symbol = mourre_constant(I, M);

  const InteriorCommutator ic = commutator_matrix(H, A, margin);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      0.5 * (ic.h_interior + ic.h_interior.adjoint()));
  std::vector<long> keep;
  for (long k = 0; k < es.eigenvalues().size(); ++k)
    if (es.eigenvalues()[k] >= I.a && es.eigenvalues()[k] <= I.b) keep.push_back(k);
  rep.rank = long(keep.size());
  if (keep.empty()) throw DegenerateProjection("mourre_check: projection has rank 0");

  Eigen::MatrixXcd V(ic.commutator.rows(), keep.size());
  for (size_t c = 0; c < keep.size(); ++c) V.col(long(c)) = es.eigenvectors().col(keep[c]);
  const Eigen::MatrixXcd Cp = V.adjoint() * ic.commutator * V;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> esc(0.5 * (Cp + Cp.adjoint()));
  rep.c_matrix = esc.eigenvalues().minCoeff();
  return rep;
}

std::string mourre_report_json(const MourreReport& r) {
  std::ostringstream os;
  os.precision(12);
  os << "{\"schema_version\":1,\"interval\":[" << r.interval.a << "," << r.interval.b
     << "],\"threshold_margin\":" << r.interval.threshold_margin
     << ",\"c_symbol\":" << r.c_symbol << ",\"c_matrix\":" << r.c_matrix
     << ",\"rank\":" << r.rank << ",\"N\":" << r.N << ",\"M\":" << r.M << "}";
  return os.str();
}

}  // namespace hexlap
