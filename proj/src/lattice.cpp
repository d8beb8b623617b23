#include "hexlap/lattice.hpp"

#include <cmath>

namespace hexlap {

namespace {
const double kSqrt3 = std::sqrt(3.0);
}

EuclideanPoint embed(const LatticeSite& site) {
  // p_tag + n1 * v1 + n2 * v2
  EuclideanPoint p = site.tag == Sublattice::P1 ? EuclideanPoint(0.5, -0.5 * kSqrt3)
                                                : EuclideanPoint(1.0, 0.0);
  p.x() += 1.5 * site.n1;
  p.y() += 0.5 * kSqrt3 * site.n1 + kSqrt3 * site.n2;
  return p;
}

std::array<LatticeSite, 3> neighbors(const LatticeSite& s) {
  if (s.tag == Sublattice::P1) {
    return {LatticeSite{s.n1, s.n2, Sublattice::P2},
            LatticeSite{s.n1 - 1, s.n2, Sublattice::P2},
            LatticeSite{s.n1, s.n2 - 1, Sublattice::P2}};
  }
  return {LatticeSite{s.n1, s.n2, Sublattice::P1},
          LatticeSite{s.n1 + 1, s.n2, Sublattice::P1},
          LatticeSite{s.n1, s.n2 + 1, Sublattice::P1}};
}

}  // namespace hexlap
