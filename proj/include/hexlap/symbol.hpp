#pragma once

#include <complex>
#include <vector>
#include <Eigen/Core>

namespace hexlap {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Vector2d = Eigen::Vector2d;

// Momentum on the torus [-pi, pi]^2.
struct Momentum {
  double x1 = 0.0;
  double x2 = 0.0;
};

// beta(x) = |1 + e^{i x1} + e^{i x2}|^2 = 3 + 2(cos x1 + cos x2 + cos(x1 - x2)).
double beta(const Momentum& x);

// Gradient of beta: (-2 sin x1 - 2 sin(x1-x2), -2 sin x2 + 2 sin(x1-x2)).
Vector2d grad_beta(const Momentum& x);

// Laplacian of beta: -2(cos x1 + cos x2 + 2 cos(x1-x2)).
double laplacian_beta(const Momentum& x);

// The momentum-space symbol of the hexagonal Laplacian,
//   F(x) = (1/3) [[0, 1 + e^{-i x1} + e^{-i x2}], [1 + e^{i x1} + e^{i x2}, 0]].
// Hermitian, trace-free, det F = -beta/9, eigenvalues +-sqrt(beta)/3.
Matrix2c symbol_matrix(const Momentum& x);

// beta below this is treated as a band-touching (Dirac) point; the inverse
// eigenvector matrix has 1/sqrt(beta) entries and is not usable there.
inline constexpr double kDiracTol = 1e-12;

struct EigenData {
  Matrix2c D = Matrix2c::Zero();
  Matrix2c P = Matrix2c::Identity();
  Matrix2c Pinv = Matrix2c::Identity();
  bool dirac_flag = false;
};

// Closed-form diagonalization F = P D P^{-1} with D = diag(+sqrt(beta)/3,
// -sqrt(beta)/3). At a Dirac point only dirac_flag is set and D = F = 0.
EigenData eigendecomposition(const Momentum& x);

struct CriticalPoint {
  Momentum x;
  double sqrt_beta_value;
};

// The nine critical points of sqrt(beta) away from its zeros:
// {(-pi,-pi), (-pi,pi), (pi,-pi), (pi,pi), (-pi,0), (pi,0), (0,-pi), (0,pi),
//  (0,0)}, with value set {1, 3}.
std::vector<CriticalPoint> critical_points();

// Thresholds {-1, -1/3, 0, 1/3, 1}: +-(critical values of sqrt(beta))/3
// together with the band-touching energy 0.
std::vector<double> thresholds();

// Canonical grid sample x_m = -pi + 2 pi m / M, m in {0..M-1}.
inline double grid_coordinate(int m, int M) {
  return -M_PI + 2.0 * M_PI * double(m) / double(M);
}

struct DispersionSample {
  Momentum x;
  double beta_value;
  double lambda_plus;
  double lambda_minus;
};

// Both dispersion branches +-sqrt(beta)/3 on the M x M momentum grid.
std::vector<DispersionSample> dispersion_grid(int M);

}  // namespace hexlap
