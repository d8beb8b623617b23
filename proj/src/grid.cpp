#include "hexlap/grid.hpp"

#include <unsupported/Eigen/FFT>

namespace hexlap {

namespace {

// One-dimensional spectral derivative of each column of g.
GridC columnwise_derivative(const GridC& g) {
  const int M = int(g.rows());
  Eigen::FFT<double> fft;
  GridC out(g.rows(), g.cols());
  std::vector<Complex> in(M), freq(M);
  for (int c = 0; c < int(g.cols()); ++c) {
    for (int r = 0; r < M; ++r) in[r] = g(r, c);
    fft.fwd(freq, in);
    for (int b = 0; b < M; ++b) {
      long k = (b <= M / 2 - 1) ? b : b - M;
      if (2 * b == M) k = 0;  // drop the unmatched Nyquist mode
      freq[b] *= Complex(0.0, double(k));
    }
    fft.inv(in, freq);
    for (int r = 0; r < M; ++r) out(r, c) = in[r];
  }
  return out;
}

}  // namespace

GridC spectral_derivative(const GridC& g, int axis) {
  if (axis == 0) return columnwise_derivative(g);
  return columnwise_derivative(g.transpose()).transpose();
}

GridC sample_grid(int M, const std::function<Complex(const Momentum&)>& f) {
  GridC out(M, M);
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b)
      out(a, b) = f({grid_coordinate(a, M), grid_coordinate(b, M)});
  return out;
}

GridC plane_wave(int M, int k1, int k2) {
  return sample_grid(M, [k1, k2](const Momentum& x) {
    return std::exp(Complex(0.0, k1 * x.x1 + k2 * x.x2));
  });
}

}  // namespace hexlap
