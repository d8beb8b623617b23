#include "hexlap/symbol.hpp"

#include <cmath>
#include <stdexcept>

namespace hexlap {

double beta(const Momentum& x) {
  return 3.0 + 2.0 * (std::cos(x.x1) + std::cos(x.x2) + std::cos(x.x1 - x.x2));
}

Vector2d grad_beta(const Momentum& x) {
  const double s12 = std::sin(x.x1 - x.x2);
  return {-2.0 * std::sin(x.x1) - 2.0 * s12, -2.0 * std::sin(x.x2) + 2.0 * s12};
}

double laplacian_beta(const Momentum& x) {
  return -2.0 * (std::cos(x.x1) + std::cos(x.x2) + 2.0 * std::cos(x.x1 - x.x2));
}

Matrix2c symbol_matrix(const Momentum& x) {
  const Complex w = 1.0 + std::exp(Complex(0, x.x1)) + std::exp(Complex(0, x.x2));
  Matrix2c F;
  F << 0.0, std::conj(w) / 3.0, w / 3.0, 0.0;
  return F;
}

EigenData eigendecomposition(const Momentum& x) {
  EigenData e;
  const double b = beta(x);
  if (b <= kDiracTol) {
    e.dirac_flag = true;
    e.D.setZero();
    return e;
  }
  const double sb = std::sqrt(b);
  const Complex w = 1.0 + std::exp(Complex(0, x.x1)) + std::exp(Complex(0, x.x2));
  const Complex phi = w / sb;  // modulus 1
  e.D << sb / 3.0, 0.0, 0.0, -sb / 3.0;
  e.P << 1.0, 1.0, phi, -phi;
  e.Pinv << 0.5, 0.5 / phi, 0.5, -0.5 / phi;
  return e;
}

std::vector<CriticalPoint> critical_points() {
  const double pi = M_PI;
  std::vector<CriticalPoint> out;
  const double xs[9][2] = {{-pi, -pi}, {-pi, pi}, {pi, -pi}, {pi, pi}, {-pi, 0},
                           {pi, 0},    {0, -pi},  {0, pi},   {0, 0}};
  for (auto& c : xs) {
    Momentum m{c[0], c[1]};
    out.push_back({m, std::sqrt(beta(m))});
  }
  return out;
}

std::vector<double> thresholds() {
  return {-1.0, -1.0 / 3.0, 0.0, 1.0 / 3.0, 1.0};
}

std::vector<DispersionSample> dispersion_grid(int M) {
  if (M < 2) throw std::invalid_argument("dispersion_grid: M must be >= 2");
  std::vector<DispersionSample> out;
  out.reserve(size_t(M) * M);
  for (int m1 = 0; m1 < M; ++m1)
    for (int m2 = 0; m2 < M; ++m2) {
      Momentum x{grid_coordinate(m1, M), grid_coordinate(m2, M)};
      const double b = beta(x);
      const double sb3 = std::sqrt(std::max(b, 0.0)) / 3.0;
      out.push_back({x, b, sb3, -sb3});
    }
  return out;
}

}  // namespace hexlap
