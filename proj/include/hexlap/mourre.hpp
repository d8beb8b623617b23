#pragma once

#include <string>
#include <vector>

#include "hexlap/conjugate.hpp"
#include "hexlap/operators.hpp"

namespace hexlap {

struct EmptyPreimage : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateProjection : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Energy window [a, b] within the band [-1, 1]; threshold_margin is the
// required distance from {-1, -1/3, 0, 1/3, 1} for positivity statements.
struct EnergyInterval {
  double a, b;
  double threshold_margin = 0.0;

  double distance_to_thresholds() const;
  void validate() const;  // a < b, [a,b] in [-1,1], margin respected
};

// Interior compression of i(HA - AH) together with the compressed H: rows
// and columns restricted to sites at least `margin` cells from the
// boundary of a Dirichlet box. Both operators must live on the same box.
struct InteriorCommutator {
  std::vector<long> sites;      // flat indices of the interior subspace
  Eigen::MatrixXcd commutator;  // i (H A - A H) compressed
  Eigen::MatrixXcd h_interior;  // H compressed
};
InteriorCommutator commutator_matrix(const AssembledOperator& H, const AssembledOperator& A,
                                     int margin = 4);

// Max grid defect of [sqrt(beta(Q)), i A-hat] g - (5/4) beta |grad beta|^2 g
// over a small set of trigonometric test functions.
double commutator_symbol_check(int M);

// Same for the matrix version: [F, i A_F] minus (5/12) beta |grad beta|^2 Id
// applied to C^2-valued test data.
double commutator_symbol_check_matrix(int M);

// The commutator symbol (5/12) beta |grad beta|^2 at x: the scalar both
// dispersion branches see.
double mourre_symbol(const Momentum& x);

// c_symbol: minimum of the commutator symbol over the M x M grid points
// whose dispersion value sqrt(beta)/3 falls in |I|. Throws EmptyPreimage if
// no grid point qualifies.
double mourre_constant(const EnergyInterval& I, int M);

// Spectral projection E_I(H) (dense eigensolve).
Eigen::MatrixXcd spectral_projection(const AssembledOperator& H, const EnergyInterval& I);

struct MourreReport {
  EnergyInterval interval;
  double c_symbol = 0.0;
  double c_matrix = 0.0;
  long rank = 0;
  int N = 0;
  int M = 0;
};

// Projected-commutator positivity check: smallest eigenvalue of
// E_I [H, iA] E_I restricted to range(E_I), E_I taken from the interior
// compression of H. Throws DegenerateProjection when rank(E_I) = 0.
MourreReport mourre_check(const AssembledOperator& H, const AssembledOperator& A,
                          const EnergyInterval& I, int M, int margin = 4);

std::string mourre_report_json(const MourreReport& r);

}  // namespace hexlap
