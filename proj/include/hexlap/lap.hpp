#pragma once

#include <memory>
#include <vector>

#include "hexlap/mourre.hpp"
#include "hexlap/operators.hpp"

namespace hexlap {

struct SolverStall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Direct sparse solve of (H - z) x = rhs; relative residual must reach
// 1e-10 or SolverStall is thrown.
FieldVector resolvent_solve(const AssembledOperator& H, Complex z, const FieldVector& rhs);

// Factorization cache for sweeps over many right-hand sides.
class ResolventSolver {
 public:
  ResolventSolver(const AssembledOperator& H, Complex z);
  ~ResolventSolver();
  ResolventSolver(ResolventSolver&&) noexcept;

  FieldVector solve(const FieldVector& rhs) const;          // (H - z)^{-1} rhs
  FieldVector solve_adjoint(const FieldVector& rhs) const;  // (H - z)^{-*} rhs

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Largest singular value of Lambda^{-s} (H - lambda - i rho)^{-1} Lambda^{-s},
// power iteration on the normal operator to relative accuracy 1e-4.
double weighted_resolvent_norm(const AssembledOperator& H, double lambda, double rho, double s);

struct ResolventCurve {
  double lambda = 0.0;
  double s = 0.0;
  std::vector<double> rho;    // strictly decreasing
  std::vector<double> norms;
  bool plateau_flag = false;
};

// Geometric rho sweep from rho_start down to the finite-size floor
// max(1e-3, 4/N^2). Plateau: relative growth over the final halving below
// kPlateauRelGrowth.
inline constexpr double kPlateauRelGrowth = 0.05;
ResolventCurve resolvent_curve(const AssembledOperator& H, double lambda, double s,
                               double rho_start = 1e-1);

// Chebyshev time evolution e^{-itH} f. Degree ceil(1.1 |t| ||H||) + 40.
FieldVector evolve(const AssembledOperator& H, const FieldVector& f, double t);

// Reusable fixed-step propagator.
class Propagator {
 public:
  Propagator(const AssembledOperator& H, double dt);
  FieldVector step(const FieldVector& f) const;

 private:
  const AssembledOperator& H_;
  double scale_;
  std::vector<Complex> coeff_;
};

// Approximate spectral projection onto [a, b]: dense when the dimension
// allows it, Jackson-damped Chebyshev filter otherwise.
inline constexpr long kDenseEigensolveCap = 8192;
FieldVector band_project(const AssembledOperator& H, const EnergyInterval& I,
                         const FieldVector& f, int cheb_degree = 800);

struct PropagationRecord {
  EnergyInterval interval{0.0, 0.0, 0.0};
  double horizon = 0.0;
  std::vector<double> checkpoint_t;
  std::vector<double> partial_integral;  // non-decreasing
  double total = 0.0;
  bool saturation_flag = false;  // last quarter contributes < 5 %
};

PropagationRecord propagation_integral(const AssembledOperator& H, const EnergyInterval& I,
                                       const FieldVector& f, double s, double T, double dt);

struct DecayTrace {
  std::vector<double> t;
  std::vector<double> amplitude;  // |psi(site, t)|
  double early_max = 0.0;         // over the first quarter of the horizon
  double late_max = 0.0;          // over the last quarter
};

DecayTrace pointwise_decay(const AssembledOperator& H, const FieldVector& f, long site_index,
                           double T, double dt);

}  // namespace hexlap
