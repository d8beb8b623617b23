#pragma once

#include <functional>
#include <stdexcept>
#include <Eigen/Core>

#include "hexlap/lattice.hpp"

namespace hexlap {

// Pointwise data given in centred box coordinates.
using SiteFn = std::function<double(const LatticeSite&)>;
// Symmetric pair data (edge weights), centred coordinates.
using EdgeFn = std::function<double(const LatticeSite&, const LatticeSite&)>;

// Every edge joins a P2 site n with one of (n, P1), (n+e1, P1), (n+e2, P1);
// we store edge weights on the owning P2 unit cell under that slot index.
inline constexpr int kEdgeOffsets[3][2] = {{0, 0}, {1, 0}, {0, 1}};

// Sampled metric m = 1 + eta on sites and E = 1 + eps on edges.
struct MetricField {
  TruncationBox box;
  Eigen::VectorXd m;   // site weights, flat box indexing
  Eigen::MatrixXd E;   // N^2 rows (P2 cell), 3 slot columns

  static MetricField make(const TruncationBox& box, const SiteFn& eta, const EdgeFn& eps);
  static MetricField trivial(const TruncationBox& box);

  double m_at(const LatticeSite& s) const { return m[box.flat_index(s)]; }
  // Edge weight for slot `slot` of the P2 cell holding (n1, n2).
  double edge(long n1, long n2, int slot) const {
    const LatticeSite c = box.canonical({n1, n2, Sublattice::P2});
    if (!box.contains(c)) throw OutOfBoxError("MetricField::edge: cell outside box");
    return E(c.n1 * box.N + c.n2, slot);
  }

  double min_m() const { return m.minCoeff(); }
  double min_E() const { return E.minCoeff(); }
};

struct PotentialField {
  TruncationBox box;
  Eigen::VectorXd V;

  static PotentialField make(const TruncationBox& box, const SiteFn& v);
  static PotentialField zero(const TruncationBox& box);

  double at(const LatticeSite& s) const { return V[box.flat_index(s)]; }
};

}  // namespace hexlap
