#include "hexlap/fields.hpp"

namespace hexlap {

MetricField MetricField::make(const TruncationBox& box, const SiteFn& eta, const EdgeFn& eps) {
  MetricField f{box, Eigen::VectorXd(box.dim()),
                Eigen::MatrixXd(long(box.N) * box.N, 3)};
  for (long idx = 0; idx < box.dim(); ++idx) {
    LatticeSite s = box.site_of(idx);
    LatticeSite c{box.centered1(s), box.centered2(s), s.tag};
    f.m[idx] = 1.0 + eta(c);
  }
  for (long n1 = 0; n1 < box.N; ++n1)
    for (long n2 = 0; n2 < box.N; ++n2)
      for (int slot = 0; slot < 3; ++slot) {
        LatticeSite a{box.centered1({n1, n2, Sublattice::P2}),
                      box.centered2({n1, n2, Sublattice::P2}), Sublattice::P2};
        LatticeSite b{a.n1 + kEdgeOffsets[slot][0], a.n2 + kEdgeOffsets[slot][1],
                      Sublattice::P1};
        f.E(n1 * box.N + n2, slot) = 1.0 + 0.5 * (eps(a, b) + eps(b, a));
      }
  if (f.min_m() <= 0.0) throw std::invalid_argument("MetricField: inf m must be > 0");
  if (f.min_E() <= 0.0) throw std::invalid_argument("MetricField: inf E must be > 0");
  return f;
}

MetricField MetricField::trivial(const TruncationBox& box) {
  return make(
      box, [](const LatticeSite&) { return 0.0; },
      [](const LatticeSite&, const LatticeSite&) { return 0.0; });
}

PotentialField PotentialField::make(const TruncationBox& box, const SiteFn& v) {
  PotentialField f{box, Eigen::VectorXd(box.dim())};
  for (long idx = 0; idx < box.dim(); ++idx) {
    LatticeSite s = box.site_of(idx);
    f.V[idx] = v({box.centered1(s), box.centered2(s), s.tag});
  }
  return f;
}

PotentialField PotentialField::zero(const TruncationBox& box) {
  return make(box, [](const LatticeSite&) { return 0.0; });
}

}  // namespace hexlap
