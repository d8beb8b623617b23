#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hexlap/fields.hpp"
#include "hexlap/lattice.hpp"

namespace hexlap {

enum class ProfileKind { PowerLaw, CompactBump, Oscillatory };

// Closed-form decay profile on lattice coordinates (tag-independent).
//   PowerLaw:    a * Lambda(n)^{-delta}
//   CompactBump: a * max(0, 1 - Lambda(n)/8)^2
//   Oscillatory: a * (-1)^{n1}   (defeats difference decay on purpose)
struct ProfileSpec {
  ProfileKind kind = ProfileKind::PowerLaw;
  double amplitude = 0.0;
  double delta = 0.0;
  double gamma = 0.5;

  double value(const LatticeSite& s) const;
};

// Bundled perturbation: metric eta, potential V, and the edge weight
// eps(a, b) = eps_scale * (eta(a) + eta(b)) / 2.
struct PerturbationProfile {
  ProfileSpec eta;
  ProfileSpec V;
  double eps_scale = 0.5;

  double eta_at(const LatticeSite& s) const { return eta.value(s); }
  double V_at(const LatticeSite& s) const { return V.value(s); }
  double eps_at(const LatticeSite& a, const LatticeSite& b) const {
    return eps_scale * 0.5 * (eta.value(a) + eta.value(b));
  }

  SiteFn eta_fn() const;
  SiteFn V_fn() const;
  EdgeFn eps_fn() const;

  PerturbationProfile scaled(double theta) const;

  // The blessed end-to-end fixture: power laws with decay exponent
  // 1 + gamma + 0.1, passing every checker at gamma = 0.5.
  static PerturbationProfile golden(double gamma = 0.5);
};

// J_{k,h,b}: first entry tag-swapped and shifted by -(-1)^i b in direction h
// (h = 1 -> n1, h = 2 -> n2, h = 0 -> no shift), the remaining k-1 entries
// are the unchanged input site.
std::vector<LatticeSite> J_map(int k, int h, int b, const LatticeSite& site);

// k-tuple functional fed to the difference checkers (k = 1: potential-like,
// k = 2: edge-like).
using TupleFn = std::function<double(const std::vector<LatticeSite>&)>;

TupleFn tuple_fn_site(const std::function<double(const LatticeSite&)>& g);  // k = 1
TupleFn tuple_fn_edge(const EdgeFn& g);                                     // k = 2

struct HypothesisReport {
  std::string id;
  int k = 0;
  double gamma = 0.0;
  long R = 0;
  double sup = 0.0;
  std::vector<double> annulus_max;  // index r-1 holds the radius-r maximum
  bool consistent = false;          // trend over the outer half of the window
};

// Finite-window decay trend: non-increasing annulus maxima over the outer
// half of the window and outer values bounded by 10x the inner maximum.
bool trend_consistent(const std::vector<double>& annulus_max);

// Weighted first-difference sup of the long-range hypothesis, both tag
// orientations, h in {1,2}, all (l1,l2) in {0,1}^2, window radius R.
HypothesisReport check_H3k(const TupleFn& G, int k, double gamma, long R);

struct BasicReport {
  double inf_eta = 0.0;   // window infimum, must stay > -1
  double inf_eps = 0.0;   // same for the edge perturbation
  HypothesisReport eta_decay, eps_decay, v_decay;
  bool pass = false;
};
BasicReport check_basic(const PerturbationProfile& p, long R);

struct DerivedReports {
  HypothesisReport h4, h5, h6, h8;
  bool h7_vanishing = false;   // decay along rays in b
  double chain_lhs = 0.0;      // sup Lambda^gamma |G| over the window
  double chain_rhs = 0.0;      // (3 + (2 sqrt 2)^gamma / gamma) * max constant
  bool chain_ok = false;
  bool pass = false;
};
DerivedReports check_derived(const TupleFn& G, int k, double gamma, long R);

std::string hypothesis_report_json(const HypothesisReport& r);

}  // namespace hexlap
