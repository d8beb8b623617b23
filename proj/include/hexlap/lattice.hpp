#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <Eigen/Core>

namespace hexlap {

// The two sublattices of the honeycomb lattice. P1 sits at (1/2, -sqrt(3)/2),
// P2 at (1, 0); translations are generated by v1 = (3/2, sqrt(3)/2) and
// v2 = (0, sqrt(3)), so every edge has unit length.
enum class Sublattice : std::uint8_t { P1 = 0, P2 = 1 };

inline Sublattice other(Sublattice t) {
  return t == Sublattice::P1 ? Sublattice::P2 : Sublattice::P1;
}

struct LatticeSite {
  long n1 = 0;
  long n2 = 0;
  Sublattice tag = Sublattice::P1;

  friend bool operator==(const LatticeSite&, const LatticeSite&) = default;
};

using EuclideanPoint = Eigen::Vector2d;

EuclideanPoint embed(const LatticeSite& site);

// The three nearest neighbours, all on the opposite sublattice:
//   P1 (n1,n2) -> (n1,n2), (n1-1,n2), (n1,n2-1) on P2
//   P2 (n1,n2) -> (n1,n2), (n1+1,n2), (n1,n2+1) on P1
// Each is at Euclidean distance 1 from the input site.
std::array<LatticeSite, 3> neighbors(const LatticeSite& site);

enum class BoundaryCondition : std::uint8_t { Periodic, Dirichlet };

struct OutOfBoxError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite N x N truncation of the coordinate plane, 2 N^2 sites in total.
// Flat layout: index = tag_offset + n1 * N + n2 with tag_offset in {0, N^2}.
struct TruncationBox {
  int N = 0;
  BoundaryCondition bc = BoundaryCondition::Periodic;

  TruncationBox(int size, BoundaryCondition b) : N(size), bc(b) {
    if (size <= 0) throw std::invalid_argument("TruncationBox: N must be positive");
  }

  long dim() const { return 2L * N * N; }
  bool contains(const LatticeSite& s) const {
    return s.n1 >= 0 && s.n1 < N && s.n2 >= 0 && s.n2 < N;
  }

  // Mathematical modulo, result in {0..N-1} also for negative input.
  long wrap(long k) const {
    long r = k % N;
    return r < 0 ? r + N : r;
  }

  // Canonical representative: identity under Dirichlet, coordinate wrap
  // under periodic boundary conditions.
  LatticeSite canonical(const LatticeSite& s) const {
    if (bc == BoundaryCondition::Periodic) return {wrap(s.n1), wrap(s.n2), s.tag};
    return s;
  }

  // Returns -1 for a Dirichlet site outside the box (dropped coupling).
  long index_or_drop(const LatticeSite& s) const {
    LatticeSite c = canonical(s);
    if (!contains(c)) return -1;
    return (c.tag == Sublattice::P2 ? long(N) * N : 0L) + c.n1 * N + c.n2;
  }

  long flat_index(const LatticeSite& s) const {
    long idx = index_or_drop(s);
    if (idx < 0) throw OutOfBoxError("flat_index: site outside Dirichlet box");
    return idx;
  }

  LatticeSite site_of(long index) const {
    if (index < 0 || index >= dim()) throw OutOfBoxError("site_of: index out of range");
    Sublattice tag = index < long(N) * N ? Sublattice::P1 : Sublattice::P2;
    long rem = index % (long(N) * N);
    return {rem / N, rem % N, tag};
  }

  // Coordinates re-centred at the box middle. Position-dependent data
  // (perturbation profiles, the weight Lambda, Q factors) always reads
  // these, so the origin of the profile sits in the middle of the box.
  long centered1(const LatticeSite& s) const { return s.n1 - N / 2; }
  long centered2(const LatticeSite& s) const { return s.n2 - N / 2; }
};

// <x> = sqrt(1/2 + x^2)
inline double half_bracket(double x) { return std::sqrt(0.5 + x * x); }

// Lambda(n1, n2) = <n1> + <n2>, the weight entering all decay estimates.
inline double lambda_weight(double n1, double n2) {
  return half_bracket(n1) + half_bracket(n2);
}

}  // namespace hexlap
