#include "hexlap/hypotheses.hpp"

#include <cmath>
#include <sstream>

namespace hexlap {

double ProfileSpec::value(const LatticeSite& s) const {
  const double lam = lambda_weight(double(s.n1), double(s.n2));
  switch (kind) {
    case ProfileKind::PowerLaw:
      return amplitude * std::pow(lam, -delta);
    case ProfileKind::CompactBump: {
      const double t = 1.0 - lam / 8.0;
      return t > 0.0 ? amplitude * t * t : 0.0;
    }
    case ProfileKind::Oscillatory:
      return (s.n1 % 2 == 0) ? amplitude : -amplitude;
  }
  return 0.0;
}

SiteFn PerturbationProfile::eta_fn() const {
  return [p = *this](const LatticeSite& s) { return p.eta_at(s); };
}
SiteFn PerturbationProfile::V_fn() const {
  return [p = *this](const LatticeSite& s) { return p.V_at(s); };
}
EdgeFn PerturbationProfile::eps_fn() const {
  return [p = *this](const LatticeSite& a, const LatticeSite& b) { return p.eps_at(a, b); };
}

PerturbationProfile PerturbationProfile::scaled(double theta) const {
  PerturbationProfile p = *this;
  p.eta.amplitude *= theta;
  p.V.amplitude *= theta;
  return p;
}

PerturbationProfile PerturbationProfile::golden(double gamma) {
  PerturbationProfile p;
  p.eta = {ProfileKind::PowerLaw, 0.5, 1.0 + gamma + 0.1, gamma};
  p.V = {ProfileKind::PowerLaw, 0.4, 1.0 + gamma + 0.1, gamma};
  p.eps_scale = 0.5;
  return p;
}

std::vector<LatticeSite> J_map(int k, int h, int b, const LatticeSite& site) {
  if (k < 1) throw std::invalid_argument("J_map: k must be >= 1");
  if (h < 0 || h > 2) throw std::invalid_argument("J_map: h must be 0, 1 or 2");
  const int i = site.tag == Sublattice::P1 ? 1 : 2;
  const long shift = -long(i % 2 == 0 ? 1 : -1) * b;  // -(-1)^i b
  LatticeSite first{site.n1 + (h == 1 ? shift : 0), site.n2 + (h == 2 ? shift : 0),
                    other(site.tag)};
  std::vector<LatticeSite> out;
  out.reserve(k);
  out.push_back(first);
  for (int r = 1; r < k; ++r) out.push_back(site);
  return out;
}

TupleFn tuple_fn_site(const std::function<double(const LatticeSite&)>& g) {
  return [g](const std::vector<LatticeSite>& t) { return g(t.at(0)); };
}

TupleFn tuple_fn_edge(const EdgeFn& g) {
  return [g](const std::vector<LatticeSite>& t) { return g(t.at(0), t.at(1)); };
}

bool trend_consistent(const std::vector<double>& a) {
  if (a.size() < 3) return false;
  const size_t half = a.size() / 2;
  double inner_max = 0.0;
  for (size_t r = 0; r < half; ++r) inner_max = std::max(inner_max, a[r]);
  double prev = a[half];
  for (size_t r = half; r < a.size(); ++r) {
    if (a[r] > prev * (1.0 + 1e-9) + 1e-15) return false;
    if (inner_max > 0.0 && a[r] > 10.0 * inner_max) return false;
    prev = a[r];
  }
  return true;
}

namespace {

// max over (l1,l2) in {0,1}^2 of <n1 l1 - n2 l2>.
double l_weight(long n1, long n2) {
  double w = half_bracket(0.0);
  w = std::max(w, half_bracket(double(n1)));
  w = std::max(w, half_bracket(double(-n2)));
  w = std::max(w, half_bracket(double(n1 - n2)));
  return w;
}

struct WindowScan {
  double sup = 0.0;
  std::vector<double> annulus_max;
};

WindowScan scan(long R, const std::function<double(long, long)>& value) {
  WindowScan ws;
  ws.annulus_max.assign(size_t(R), 0.0);
  for (long n1 = -R; n1 <= R; ++n1)
    for (long n2 = -R; n2 <= R; ++n2) {
      const long r = std::max(std::labs(n1), std::labs(n2));
      const double v = value(n1, n2);
      ws.sup = std::max(ws.sup, v);
      if (r >= 1) ws.annulus_max[size_t(r - 1)] = std::max(ws.annulus_max[size_t(r - 1)], v);
    }
  return ws;
}

}  // namespace

HypothesisReport check_H3k(const TupleFn& G, int k, double gamma, long R) {
  if (R < 8) throw std::invalid_argument("check_H3k: window radius must be >= 8");
  auto value = [&](long n1, long n2) {
    const double w = std::pow(lambda_weight(double(n1), double(n2)), gamma) * l_weight(n1, n2);
    double best = 0.0;
    for (int h = 1; h <= 2; ++h) {
      // both tag orientations of the displayed difference
      const double dA = std::abs(G(J_map(k, h, 1, {n1, n2, Sublattice::P1})) -
                                 G(J_map(k, h, 0, {n1, n2, Sublattice::P2})));
      const double dB = std::abs(G(J_map(k, h, 1, {n1, n2, Sublattice::P2})) -
                                 G(J_map(k, h, 0, {n1, n2, Sublattice::P1})));
      best = std::max({best, dA, dB});
    }
    return w * best;
  };
  const WindowScan ws = scan(R, value);
  HypothesisReport rep;
  rep.id = "H3," + std::to_string(k);
  rep.k = k;
  rep.gamma = gamma;
  rep.R = R;
  rep.sup = ws.sup;
  rep.annulus_max = ws.annulus_max;
  rep.consistent = trend_consistent(ws.annulus_max);
  return rep;
}

BasicReport check_basic(const PerturbationProfile& p, long R) {
  BasicReport rep;
  rep.inf_eta = std::numeric_limits<double>::infinity();
  rep.inf_eps = std::numeric_limits<double>::infinity();
  auto abs_eta = [&](long n1, long n2) {
    double v = std::min(p.eta_at({n1, n2, Sublattice::P1}), p.eta_at({n1, n2, Sublattice::P2}));
    rep.inf_eta = std::min(rep.inf_eta, v);
    return std::max(std::abs(p.eta_at({n1, n2, Sublattice::P1})),
                    std::abs(p.eta_at({n1, n2, Sublattice::P2})));
  };
  auto abs_eps = [&](long n1, long n2) {
    double worst = 0.0;
    for (int slot = 0; slot < 3; ++slot) {
      const LatticeSite a{n1, n2, Sublattice::P2};
      const LatticeSite b{n1 + kEdgeOffsets[slot][0], n2 + kEdgeOffsets[slot][1],
                          Sublattice::P1};
      const double v = p.eps_at(a, b);
      rep.inf_eps = std::min(rep.inf_eps, v);
      worst = std::max(worst, std::abs(v));
    }
    return worst;
  };
  auto abs_v = [&](long n1, long n2) {
    return std::max(std::abs(p.V_at({n1, n2, Sublattice::P1})),
                    std::abs(p.V_at({n1, n2, Sublattice::P2})));
  };

  auto fill = [&](const char* id, const std::function<double(long, long)>& f) {
    const WindowScan ws = scan(R, f);
    HypothesisReport hr;
    hr.id = id;
    hr.k = 0;
    hr.gamma = 0.0;
    hr.R = R;
    hr.sup = ws.sup;
    hr.annulus_max = ws.annulus_max;
    hr.consistent = trend_consistent(ws.annulus_max);
    return hr;
  };
  rep.eta_decay = fill("H0", abs_eta);
  rep.eps_decay = fill("H1", abs_eps);
  rep.v_decay = fill("H2", abs_v);
  rep.pass = rep.inf_eta > -1.0 && rep.inf_eps > -1.0 && rep.eta_decay.consistent &&
             rep.eps_decay.consistent && rep.v_decay.consistent;
  return rep;
}

DerivedReports check_derived(const TupleFn& G, int k, double gamma, long R) {
  DerivedReports rep;

  auto weighted = [&](long n1, long n2, double diff) {
    return std::pow(lambda_weight(double(n1), double(n2)), gamma) * l_weight(n1, n2) * diff;
  };

  // H4: tag difference at b = 0.
  auto h4v = [&](long n1, long n2) {
    double best = 0.0;
    for (int h = 1; h <= 2; ++h)
      best = std::max(best, std::abs(G(J_map(k, h, 0, {n1, n2, Sublattice::P1})) -
                                     G(J_map(k, h, 0, {n1, n2, Sublattice::P2}))));
    return weighted(n1, n2, best);
  };
  // H5: b = 0 at one tag against b = 1 at the other, displaced along h'.
  auto h5v = [&](long n1, long n2) {
    double best = 0.0;
    for (int h = 1; h <= 2; ++h) {
      const int hp = 3 - h;
      for (int jtag = 1; jtag <= 2; ++jtag) {
        const Sublattice ti = jtag == 1 ? Sublattice::P2 : Sublattice::P1;
        const Sublattice tj = jtag == 1 ? Sublattice::P1 : Sublattice::P2;
        const long sh = -long(jtag % 2 == 0 ? 1 : -1);  // -(-1)^j
        const LatticeSite moved{n1 + (hp == 1 ? sh : 0), n2 + (hp == 2 ? sh : 0), tj};
        best = std::max(best, std::abs(G(J_map(k, h, 0, {n1, n2, ti})) -
                                       G(J_map(k, h, 1, moved))));
      }
    }
    return weighted(n1, n2, best);
  };
  // H6: b = 0 against b = 1 at the same tag.
  auto h6v = [&](long n1, long n2) {
    double best = 0.0;
    for (int h = 1; h <= 2; ++h)
      for (Sublattice t : {Sublattice::P1, Sublattice::P2})
        best = std::max(best, std::abs(G(J_map(k, h, 0, {n1, n2, t})) -
                                       G(J_map(k, h, 1, {n1, n2, t}))));
    return weighted(n1, n2, best);
  };
  // H8: plain weighted size at b = 0 (no <n l> factor).
  auto h8v = [&](long n1, long n2) {
    double best = 0.0;
    for (Sublattice t : {Sublattice::P1, Sublattice::P2})
      best = std::max(best, std::abs(G(J_map(k, 1, 0, {n1, n2, t}))));
    return std::pow(lambda_weight(double(n1), double(n2)), gamma) * best;
  };

  auto fill = [&](const char* id, const std::function<double(long, long)>& f) {
    const WindowScan ws = scan(R, f);
    HypothesisReport hr;
    hr.id = id;
    hr.k = k;
    hr.gamma = gamma;
    hr.R = R;
    hr.sup = ws.sup;
    hr.annulus_max = ws.annulus_max;
    hr.consistent = trend_consistent(ws.annulus_max);
    return hr;
  };
  rep.h4 = fill("H4", h4v);
  rep.h5 = fill("H5", h5v);
  rep.h6 = fill("H6", h6v);
  rep.h8 = fill("H8", h8v);

  // H7: decay along rays in the shift parameter b.
  rep.h7_vanishing = true;
  for (Sublattice t : {Sublattice::P1, Sublattice::P2})
    for (int h = 1; h <= 2; ++h) {
      double early = 0.0, late = 0.0;
      for (int b = 0; b < 64; ++b) {
        const double v = std::abs(G(J_map(k, h, b, {0, 0, t})));
        (b < 32 ? early : late) = std::max(b < 32 ? early : late, v);
      }
      if (early > 0.0 && late > 0.5 * early) rep.h7_vanishing = false;
    }

  // Telescoping chain bound: sup Lambda^gamma |G| against
  // (3 + (2 sqrt 2)^gamma / gamma) times the larger mixed constant.
  auto mixed = [&](int sigma) {
    double best = 0.0;
    for (long n1 = -R; n1 <= R; ++n1)
      for (long n2 = -R; n2 <= R; ++n2)
        for (int h = 1; h <= 2; ++h) {
          const double d = std::abs(G(J_map(k, h, 0, {n1, n2, Sublattice::P1})) -
                                    G(J_map(k, h, sigma, {n1, n2, Sublattice::P2})));
          best = std::max(best, weighted(n1, n2, d));
        }
    return best;
  };
  rep.chain_lhs = rep.h8.sup;
  rep.chain_rhs =
      (3.0 + std::pow(2.0 * std::sqrt(2.0), gamma) / gamma) * std::max(mixed(0), mixed(1));
  rep.chain_ok = rep.chain_lhs <= rep.chain_rhs;

  rep.pass = rep.h4.consistent && rep.h5.consistent && rep.h6.consistent &&
             rep.h8.consistent && rep.h7_vanishing && rep.chain_ok;
  return rep;
}

std::string hypothesis_report_json(const HypothesisReport& r) {
  std::ostringstream os;
  os.precision(12);
  os << "{\"schema_version\":1,\"id\":\"" << r.id << "\",\"k\":" << r.k
     << ",\"gamma\":" << r.gamma << ",\"R\":" << r.R << ",\"sup\":" << r.sup
     << ",\"consistent\":" << (r.consistent ? "true" : "false") << ",\"annulus_max\":[";
  for (size_t i = 0; i < r.annulus_max.size(); ++i)
    os << (i ? "," : "") << r.annulus_max[i];
  os << "]}";
  return os.str();
}

}  // namespace hexlap
