#pragma once

#include <array>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hexlap {

// Integer coefficient grid on offsets (i, j) in [-3, 3]^2, stored at
// [i + 3][j + 3].
using AlphaGrid = std::array<std::array<int, 7>, 7>;

inline int grid_at(const AlphaGrid& g, int i, int j) {
  if (i < -3 || i > 3 || j < -3 || j > 3) return 0;
  return g[i + 3][j + 3];
}

// The four shift-polynomial coefficient tables of the conjugate operator,
// indexed by (l1, l2) in {0,1}^2. Scalar prefactors: -5i/8 for the (0,0)
// table, +5i/2 for the other three.
struct CoeffTable {
  AlphaGrid t[2][2]{};

  int at(int l1, int l2, int i, int j) const { return grid_at(t[l1][l2], i, j); }

  // The published coefficient lists, transcribed verbatim (golden data).
  static const CoeffTable& published();
};

inline std::complex<double> alpha_prefactor(int l1, int l2) {
  if (l1 == 0 && l2 == 0) return {0.0, -5.0 / 8.0};
  return {0.0, 5.0 / 2.0};
}

// Laurent polynomial in the two commuting shifts, integer coefficients.
using LaurentPoly = std::map<std::pair<int, int>, long>;

LaurentPoly lp_mul(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly lp_add(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly lp_scale(long c, const LaurentPoly& a);

// Brute-force expansion of the factored product forms of the conjugate
// operator, one table per (l1, l2):
//   (1,0): W (U1* - U1)            (0,1): W (U2* - U2)
//   (1,1): W (U1* U2 - U1 U2*)
//   (0,0): 3 (1+U1*+U2*) D + 2 W S
// with W = (1+U1*+U2*)^2 (1+U1+U2), D the squared-difference bracket and
// S = U1*+U1+U2*+U2+2(U1*U2+U1U2*).
CoeffTable expanded_tables();

struct AlphaMismatchError : std::runtime_error {
  int l1, l2, i, j;
  AlphaMismatchError(int l1_, int l2_, int i_, int j_, const std::string& msg)
      : std::runtime_error(msg), l1(l1_), l2(l2_), i(i_), j(j_) {}
};

// One cell where the published (0,0) list disagrees with the expansion of
// its own product form. The product form is the operative definition (it is
// the one consistent with the Fourier-side operator); the published list is
// kept verbatim because the companion sum tables are built from it.
struct AlphaErratum {
  int i, j;
  int published;
  int expansion;
};
const std::vector<AlphaErratum>& known_r00_errata();

// Re-expands the product forms and compares against `table` cell by cell.
// Deviations are tolerated only where they reproduce the known errata
// exactly; the first unexplained cell raises AlphaMismatchError.
void alpha_self_check(const CoeffTable& table);

// Returns the published tables after running the self-check.
const CoeffTable& alpha_tables();

// Integer coefficient grids of the operator actually applied:
//   A_{1,H} = (5i/2) [ q1(U) Q1 + q2(U) Q2 ] - (5i/8) c0(U),
// Q factors acting before the shifts. q1 = table(1,0) + table(1,1),
// q2 = table(0,1) - table(1,1), c0 = the expanded (0,0) bracket.
struct ConjugateCoefficients {
  AlphaGrid q1{}, q2{}, c0{};
};
const ConjugateCoefficients& conjugate_coefficients();

}  // namespace hexlap
