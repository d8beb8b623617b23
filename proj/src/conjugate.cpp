#include "hexlap/conjugate.hpp"

#include <cmath>

namespace hexlap {

namespace {

struct OperatorCoeffs {
  Complex c0[7][7];
  Complex c1[7][7];
  Complex c2[7][7];
};

const OperatorCoeffs& coeffs() {
  static const OperatorCoeffs oc = [] {
    const ConjugateCoefficients& cc = conjugate_coefficients();
    const Complex p1(0.0, 2.5), p0(0.0, -5.0 / 8.0);
    OperatorCoeffs o;
    for (int a = 0; a < 7; ++a)
      for (int b = 0; b < 7; ++b) {
        o.c0[a][b] = p0 * double(cc.c0[a][b]);
        o.c1[a][b] = p1 * double(cc.q1[a][b]);
        o.c2[a][b] = p1 * double(cc.q2[a][b]);
      }
    return o;
  }();
  return oc;
}

}  // namespace

Eigen::VectorXcd a1h_apply_half(const Eigen::VectorXcd& f1, const TruncationBox& box) {
  const OperatorCoeffs& oc = coeffs();
  const int N = box.N;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(long(N) * N);
  for (long n1 = 0; n1 < N; ++n1)
    for (long n2 = 0; n2 < N; ++n2) {
      const double t1 = double(n1 - N / 2), t2 = double(n2 - N / 2);
      Complex acc = 0.0;
      for (int i = -3; i <= 3; ++i) {
        const long s1 = n1 - i;
        if (s1 < 0 || s1 >= N) continue;
        for (int j = -3; j <= 3; ++j) {
          const long s2 = n2 - j;
          if (s2 < 0 || s2 >= N) continue;
          const Complex k = oc.c0[i + 3][j + 3] + oc.c1[i + 3][j + 3] * (t1 - i) +
                            oc.c2[i + 3][j + 3] * (t2 - j);
          acc += k * f1[s1 * N + s2];
        }
      }
      out[n1 * N + n2] = acc;
    }
  return out;
}

Eigen::VectorXcd a2h_apply_half(const Eigen::VectorXcd& f2, const TruncationBox& box) {
  const OperatorCoeffs& oc = coeffs();
  const int N = box.N;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(long(N) * N);
  for (long m1 = 0; m1 < N; ++m1)
    for (long m2 = 0; m2 < N; ++m2) {
      const double t1 = double(m1 - N / 2), t2 = double(m2 - N / 2);
      Complex acc = 0.0;
      for (int i = -3; i <= 3; ++i) {
        const long s1 = m1 + i;
        if (s1 < 0 || s1 >= N) continue;
        for (int j = -3; j <= 3; ++j) {
          const long s2 = m2 + j;
          if (s2 < 0 || s2 >= N) continue;
          const Complex k = oc.c0[i + 3][j + 3] + oc.c1[i + 3][j + 3] * t1 +
                            oc.c2[i + 3][j + 3] * t2;
          acc -= k * f2[s1 * N + s2];
        }
      }
      out[m1 * N + m2] = acc;
    }
  return out;
}

FieldVector conjugate_position_apply(const FieldVector& f, const TruncationBox& box) {
  if (box.bc != BoundaryCondition::Dirichlet)
    throw std::invalid_argument("conjugate_position_apply: position factors need a Dirichlet box");
  const int N = box.N;
  const long cells = long(N) * N;
  for (long idx = 0; idx < box.dim(); ++idx) {
    if (f[idx] == Complex(0.0)) continue;
    const LatticeSite s = box.site_of(idx);
    const long margin = std::min({s.n1, s.n2, long(N) - 1 - s.n1, long(N) - 1 - s.n2});
    if (margin < 3)
      throw SupportError("conjugate_position_apply: input touches the 3-cell boundary margin");
  }
  FieldVector out(box.dim());
  out.tail(cells) = a1h_apply_half(f.head(cells), box);
  out.head(cells) = a2h_apply_half(f.tail(cells), box);
  return out;
}

AssembledOperator conjugate_matrix(const TruncationBox& box) {
  if (box.bc != BoundaryCondition::Dirichlet)
    throw std::invalid_argument("conjugate_matrix: position factors need a Dirichlet box");
  const OperatorCoeffs& oc = coeffs();
  StencilOperator st;
  for (int i = -3; i <= 3; ++i)
    for (int j = -3; j <= 3; ++j) {
      const Complex k0 = oc.c0[i + 3][j + 3], k1 = oc.c1[i + 3][j + 3],
                    k2 = oc.c2[i + 3][j + 3];
      if (k0 == Complex(0.0) && k1 == Complex(0.0) && k2 == Complex(0.0)) continue;
      st.add(-i, -j, Sublattice::P1, Sublattice::P2,
             [k0, k1, k2, i, j](const TruncationBox& b, const LatticeSite& out) {
               return k0 + k1 * double(b.centered1(out) - i) +
                      k2 * double(b.centered2(out) - j);
             });
      st.add(i, j, Sublattice::P2, Sublattice::P1,
             [k0, k1, k2](const TruncationBox& b, const LatticeSite& out) {
               return -(k0 + k1 * double(b.centered1(out)) + k2 * double(b.centered2(out)));
             });
    }
  return assemble(st, box, /*hermitian_hint=*/true);
}

Eigen::VectorXd lambda_diagonal(const TruncationBox& box, double s) {
  Eigen::VectorXd d(box.dim());
  for (long idx = 0; idx < box.dim(); ++idx) {
    const LatticeSite site = box.site_of(idx);
    d[idx] = std::pow(lambda_weight(double(box.centered1(site)), double(box.centered2(site))), s);
  }
  return d;
}

FieldVector weight_apply(double s, const FieldVector& f, const TruncationBox& box) {
  return lambda_diagonal(box, s).cast<Complex>().cwiseProduct(f);
}

namespace {

// Closed-form coefficient fields of (i/2)(grad(b).grad + div grad(b) .).
double b_coeff(const Momentum& x, int axis) {
  const double b = beta(x);
  return 2.5 * std::pow(b, 1.5) * grad_beta(x)[axis];
}

double divb_coeff(const Momentum& x) {
  const double b = beta(x);
  return 2.5 * (1.5 * std::sqrt(b) * grad_beta(x).squaredNorm() +
                std::pow(b, 1.5) * laplacian_beta(x));
}

}  // namespace

GridC a_hat_apply(const GridC& g) {
  const int M = int(g.rows());
  const GridC d1 = spectral_derivative(g, 0), d2 = spectral_derivative(g, 1);
  GridC out(M, M);
  const Complex I(0.0, 1.0);
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b) {
      const Momentum x{grid_coordinate(a, M), grid_coordinate(b, M)};
      out(a, b) = I * (b_coeff(x, 0) * d1(a, b) + b_coeff(x, 1) * d2(a, b)) +
                  0.5 * I * divb_coeff(x) * g(a, b);
    }
  return out;
}

GridC a_hat_apply_numeric(const GridC& g) {
  const int M = int(g.rows());
  const GridC bs = sample_grid(M, [](const Momentum& x) {
    return Complex(std::pow(beta(x), 2.5), 0.0);
  });
  const GridC b1 = spectral_derivative(bs, 0), b2 = spectral_derivative(bs, 1);
  const GridC divb = spectral_derivative(b1, 0) + spectral_derivative(b2, 1);
  const GridC d1 = spectral_derivative(g, 0), d2 = spectral_derivative(g, 1);
  const Complex I(0.0, 1.0);
  return (I * (b1.cwiseProduct(d1) + b2.cwiseProduct(d2)) + 0.5 * I * divb.cwiseProduct(g))
      .eval();
}

std::pair<GridC, GridC> conjugate_fourier_apply(const GridC& g1, const GridC& g2) {
  const int M = int(g1.rows());
  const Complex I(0.0, 1.0);
  const GridC d1g1 = spectral_derivative(g1, 0), d2g1 = spectral_derivative(g1, 1);
  const GridC d1g2 = spectral_derivative(g2, 0), d2g2 = spectral_derivative(g2, 1);
  GridC out1(M, M), out2(M, M);
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b) {
      const Momentum x{grid_coordinate(a, M), grid_coordinate(b, M)};
      const double bet = beta(x);
      if (bet <= kDiracTol) {
        out1(a, b) = 0.0;
        out2(a, b) = 0.0;
        continue;
      }
      const double sb = std::sqrt(bet);
      const Complex e1 = std::exp(Complex(0.0, x.x1)), e2 = std::exp(Complex(0.0, x.x2));
      const Complex w = 1.0 + e1 + e2;
      const Complex phi = w / sb;
      const Vector2d gb = grad_beta(x);
      // d_k conj(phi) = conj( i e_k / sqrt(beta) - w d_k beta / (2 beta^{3/2}) )
      const Complex dphi1 = std::conj(I * e1 / sb - w * gb[0] / (2.0 * bet * sb));
      const Complex dphi2 = std::conj(I * e2 / sb - w * gb[1] / (2.0 * bet * sb));
      const Complex phib = std::conj(phi);
      // A-hat(phib * g2) with the product differentiated through phib.
      const Complex h1 = dphi1 * g2(a, b) + phib * d1g2(a, b);
      const Complex h2 = dphi2 * g2(a, b) + phib * d2g2(a, b);
      out1(a, b) = I * (b_coeff(x, 0) * h1 + b_coeff(x, 1) * h2) +
                   0.5 * I * divb_coeff(x) * phib * g2(a, b);
      // phi * A-hat(g1)
      out2(a, b) = phi * (I * (b_coeff(x, 0) * d1g1(a, b) + b_coeff(x, 1) * d2g1(a, b)) +
                          0.5 * I * divb_coeff(x) * g1(a, b));
    }
  return {out1, out2};
}

double fourier_intertwining_defect(int K, int M,
                                   const std::function<Complex(long, long, Sublattice)>& f) {
  const OperatorCoeffs& oc = coeffs();
  const long R = K + 3;
  const long side = 2 * R + 1;
  auto idx = [R, side](long n1, long n2) { return (n1 + R) * side + (n2 + R); };

  Eigen::VectorXcd f1 = Eigen::VectorXcd::Zero(side * side);
  Eigen::VectorXcd f2 = Eigen::VectorXcd::Zero(side * side);
  for (long n1 = -K; n1 <= K; ++n1)
    for (long n2 = -K; n2 <= K; ++n2) {
      f1[idx(n1, n2)] = f(n1, n2, Sublattice::P1);
      f2[idx(n1, n2)] = f(n1, n2, Sublattice::P2);
    }

  // A_H on the full plane (true integer coordinates).
  Eigen::VectorXcd a1 = Eigen::VectorXcd::Zero(side * side);  // P2 component
  Eigen::VectorXcd a2 = Eigen::VectorXcd::Zero(side * side);  // P1 component
  for (long n1 = -R; n1 <= R; ++n1)
    for (long n2 = -R; n2 <= R; ++n2) {
      Complex s1 = 0.0, s2 = 0.0;
      for (int i = -3; i <= 3; ++i)
        for (int j = -3; j <= 3; ++j) {
          const Complex k0 = oc.c0[i + 3][j + 3], k1 = oc.c1[i + 3][j + 3],
                        k2 = oc.c2[i + 3][j + 3];
          if (n1 - i >= -R && n1 - i <= R && n2 - j >= -R && n2 - j <= R)
            s1 += (k0 + k1 * double(n1 - i) + k2 * double(n2 - j)) * f1[idx(n1 - i, n2 - j)];
          if (n1 + i >= -R && n1 + i <= R && n2 + j >= -R && n2 + j <= R)
            s2 -= (k0 + k1 * double(n1) + k2 * double(n2)) * f2[idx(n1 + i, n2 + j)];
        }
      a1[idx(n1, n2)] = s1;
      a2[idx(n1, n2)] = s2;
    }

  // Direct Fourier sums F h (x) = (1/2pi) sum h(n) e^{-i<n,x>}.
  auto transform = [&](const Eigen::VectorXcd& h) {
    GridC out(M, M);
    for (int a = 0; a < M; ++a)
      for (int b = 0; b < M; ++b) {
        const double x1 = grid_coordinate(a, M), x2 = grid_coordinate(b, M);
        Complex acc = 0.0;
        for (long n1 = -R; n1 <= R; ++n1)
          for (long n2 = -R; n2 <= R; ++n2) {
            const Complex v = h[idx(n1, n2)];
            if (v != Complex(0.0)) acc += v * std::exp(Complex(0.0, -(n1 * x1 + n2 * x2)));
          }
        out(a, b) = acc / (2.0 * M_PI);
      }
    return out;
  };

  const GridC g1 = transform(f1), g2 = transform(f2);
  auto [af1, af2] = conjugate_fourier_apply(g1, g2);
  const GridC lhs1 = transform(a2);  // P1 component of A_H f
  const GridC lhs2 = transform(a1);  // P2 component
  double defect = 0.0;
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b)
      defect = std::max({defect, std::abs(lhs1(a, b) - af1(a, b)),
                         std::abs(lhs2(a, b) - af2(a, b))});
  return defect;
}

}  // namespace hexlap
