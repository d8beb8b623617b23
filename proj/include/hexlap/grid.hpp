#pragma once

#include <Eigen/Core>

#include "hexlap/symbol.hpp"

namespace hexlap {

// Scalar function sampled on the M x M momentum grid x_m = -pi + 2 pi m / M,
// entry (m1, m2) = g(x_{m1}, x_{m2}).
using GridC = Eigen::MatrixXcd;

// d/dx_axis by FFT. Exact for trigonometric polynomials of degree < M/2.
GridC spectral_derivative(const GridC& g, int axis);

// Samples of a closed-form function on the grid.
GridC sample_grid(int M, const std::function<Complex(const Momentum&)>& f);

// Plane wave e^{i (k1 x1 + k2 x2)}.
GridC plane_wave(int M, int k1, int k2);

}  // namespace hexlap
