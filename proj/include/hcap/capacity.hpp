#pragma once

// Half-plane capacity, disk capacity and conformal radius: closed forms for the
// canonical families, Monte Carlo estimators for everything else.

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dyadic.hpp"
#include "geometry.hpp"
#include "hyperbolic.hpp"
#include "mobius.hpp"
#include "wos.hpp"

namespace hcap {

// ---------------------------------------------------------------------------
// Canonical hulls with closed-form maps

enum class CanonicalKind { halfdisk, vslit, ring };

struct CanonicalHull {
  CanonicalKind kind = CanonicalKind::halfdisk;
  double param = 1.0;  // r, h or rho
  double shift = 0.0;  // real translation (half-plane kinds)
  double scale = 1.0;

  static CanonicalHull half_disk(double r, double t = 0.0, double s = 1.0) { return checked({CanonicalKind::halfdisk, r, t, s}); }
  static CanonicalHull slit(double h, double t = 0.0, double s = 1.0) { return checked({CanonicalKind::vslit, h, t, s}); }
  static CanonicalHull ring(double rho) { return checked({CanonicalKind::ring, rho, 0.0, 1.0}); }

  bool halfplane() const { return kind != CanonicalKind::ring; }
  /// Radius r or height h after scaling.
  double size() const { return param * scale; }

  HalfPlaneHull hull() const {
    if (!halfplane()) throw DomainError("ring is a disk-space set");
    return HalfPlaneHull({kind == CanonicalKind::halfdisk ? make_halfdisk(shift, size()) : make_vslit(shift, size())});
  }
  DiskCompact disk() const {
    if (halfplane()) throw DomainError("not a disk-space set");
    return DiskCompact({make_ring(param)});
  }

  /// Hydrodynamically normalized map of the complement.
  std::complex<double> g(std::complex<double> z) const {
    const std::complex<double> u = z - shift;
    const double s = size();
    if (kind == CanonicalKind::halfdisk) return z + s * s / u;
    if (kind == CanonicalKind::vslit) {
      std::complex<double> w = std::sqrt(u * u + s * s);
      if (w.imag() < 0.0 || (w.imag() == 0.0 && (w.real() < 0.0) != (u.real() < 0.0))) w = -w;
      return shift + w;
    }
    throw DomainError("ring has no half-plane map");
  }

  std::complex<double> g_prime(std::complex<double> z) const {
    const std::complex<double> u = z - shift;
    const double s = size();
    if (kind == CanonicalKind::halfdisk) return 1.0 - s * s / (u * u);
    if (kind == CanonicalKind::vslit) return u / (g(z) - shift);
    throw DomainError("ring has no half-plane map");
  }

 private:
  static CanonicalHull checked(CanonicalHull c) {
    if (!(c.param > 0.0) || !(c.scale > 0.0) || !std::isfinite(c.shift)) throw DomainError("canonical parameters must be positive");
    if (c.kind == CanonicalKind::ring && !(c.param > 0.5 && c.param < 1.0)) throw DomainError("ring radius must lie in (1/2, 1)");
    return c;
  }
};

inline double hcap_exact(const CanonicalHull& c) {
  const double s = c.size();
  switch (c.kind) {
    case CanonicalKind::halfdisk: return s * s;
    case CanonicalKind::vslit: return 0.5 * s * s;
    case CanonicalKind::ring: break;
  }
  throw DomainError("hcap is defined for half-plane kinds");
}

inline double dcap_exact(const CanonicalHull& c) {
  if (c.kind != CanonicalKind::ring) throw DomainError("closed-form dcap only for rings");
  return -std::log(c.param);
}

/// crad(H \ A, z) = 2 Im g(z) / |g'(z)|.
inline double crad_exact(const CanonicalHull& c, Point z) {
  const std::complex<double> w = to_complex(z);
  return 2.0 * c.g(w).imag() / std::abs(c.g_prime(w));
}

/// Residuals of the map estimates at i for a hull of radius eps about the origin.
struct MapResiduals {
  double eps = 0.0;
  double h = 0.0;
  double g_residual = 0.0;        // |g(i) - i + ih|
  double gprime_residual = 0.0;   // |1/g'(i) - 1 + h|
  double max_displacement = 0.0;  // max |g(z) - z| over the test grid
  double c1() const { return g_residual / (h * eps); }
  double c2() const { return gprime_residual / (h * eps); }
};

inline MapResiduals map_residuals(const CanonicalHull& c, int grid = 64) {
  MapResiduals m;
  m.eps = c.size();
  m.h = hcap_exact(c);
  const std::complex<double> i{0.0, 1.0};
  m.g_residual = std::abs(c.g(i) - i + i * m.h);
  m.gprime_residual = std::abs(1.0 / c.g_prime(i) - 1.0 + m.h);
  // circles about the foot, outside the hull so that no point lies on the cut
  for (double f : {1.05, 1.5, 2.0, 4.0, 16.0}) {
    for (int k = 0; k < grid; ++k) {
      const double th = kPi * (k + 0.5) / grid;
      const std::complex<double> z = c.shift + f * m.eps * std::complex<double>(std::cos(th), std::sin(th));
      m.max_displacement = std::max(m.max_displacement, std::abs(c.g(z) - z));
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Monte Carlo estimators

inline double halfplane_eps(const HalfPlaneHull& a) { return 1e-4 * (a.scale() + 1.0); }

/// dcap of the complement of any disk-space domain, -E log|B_tau| from 0.
template <DomainOracle D>
Estimate dcap_of_domain(const D& dom, const WalkConfig& cfg) {
  Estimate e = expected_log_modulus(dom, cfg);
  e.mean = -e.mean;
  return e;
}

inline Estimate dcap_mc(const DiskCompact& b, const WalkConfig& cfg) {
  return dcap_of_domain(DiskDomain(b), cfg);
}

struct HcapResult {
  Estimate estimate;             // fitted h, or the raw largest-y value if the fit was rejected
  std::vector<double> y_grid;
  std::vector<Estimate> per_y;   // y * E Im B_tau from xc + iy
  double bias_coefficient = 0.0; // c in h + c / y^2
  double bias_coefficient_se = 0.0;
  double max_residual_sigma = 0.0;
  bool fit_rejected = false;
};

inline std::vector<double> default_y_grid(const HalfPlaneHull& a) {
  const double s = a.scale();
  return {8.0 * s, 16.0 * s, 32.0 * s, 64.0 * s};
}

/// Weighted least squares fit of v_i = h + c x_i with weights 1/se_i^2.
struct LineFit {
  double h, c, h_se, c_se;
};

inline LineFit weighted_line_fit(const std::vector<double>& x, const std::vector<double>& v, const std::vector<double>& se) {
  double s0 = 0, s1 = 0, s2 = 0, t0 = 0, t1 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = 1.0 / (se[i] * se[i]);
    s0 += w, s1 += w * x[i], s2 += w * x[i] * x[i];
    t0 += w * v[i], t1 += w * x[i] * v[i];
  }
  const double det = s0 * s2 - s1 * s1;
  if (!(det > 0.0)) throw EstimatorError("degenerate y grid");
  return {(s2 * t0 - s1 * t1) / det, (s0 * t1 - s1 * t0) / det, std::sqrt(s2 / det), std::sqrt(s0 / det)};
}

/// hcap(A) from heights at x_c + iy over the grid, extrapolated in 1/y^2.
inline HcapResult hcap_mc(const HalfPlaneHull& a, std::vector<double> y_grid, const WalkConfig& cfg) {
  HcapResult r;
  r.y_grid = std::move(y_grid);
  if (r.y_grid.size() < 3) throw DomainError("y grid needs at least 3 heights");
  const double reach = a.empty() ? 0.0 : a.radius_about_center();
  for (double y : r.y_grid)
    if (!(y > 2.0 * reach)) throw DomainError("every grid height must exceed twice the hull radius");
  r.estimate = {0.0, 0.0, cfg.n_walks, cfg.eps_stop, cfg.seed, "empty hull", 0};
  if (a.empty()) {
    r.per_y.assign(r.y_grid.size(), r.estimate);
    return r;
  }
  const HalfPlaneDomain dom(a);
  std::vector<double> x, v, se;
  for (std::size_t k = 0; k < r.y_grid.size(); ++k) {
    const double y = r.y_grid[k];
    WalkConfig c = cfg;
    c.seed = derive_seed(cfg.seed, 0x4863ULL + k);
    Estimate e = expected_height(dom, {a.center_x(), y}, c);
    e.mean *= y;
    e.std_error *= y;
    e.bias_note = "O(1/y^2) bias at y = " + std::to_string(y);
    r.per_y.push_back(e);
    x.push_back(1.0 / (y * y));
    v.push_back(e.mean);
    se.push_back(std::max(e.std_error, 1e-300));
  }
  const LineFit f = weighted_line_fit(x, v, se);
  for (std::size_t k = 0; k < x.size(); ++k)
    r.max_residual_sigma = std::max(r.max_residual_sigma, std::abs(v[k] - f.h - f.c * x[k]) / se[k]);
  r.bias_coefficient = f.c;
  r.bias_coefficient_se = f.c_se;
  Estimate out = r.per_y.back();
  if (r.max_residual_sigma > 5.0) {
    r.fit_rejected = true;
    out.bias_note = "fit rejected: raw value at largest y";
  } else {
    out.mean = f.h;
    out.std_error = f.h_se;
    out.bias_note = "weighted fit h + c/y^2 over the y grid";
  }
  out.seed = cfg.seed;
  std::uint64_t flagged = 0;
  for (const Estimate& e : r.per_y) flagged += e.flagged;
  out.flagged = flagged;
  r.estimate = out;
  return r;
}

inline HcapResult hcap_mc(const HalfPlaneHull& a, const WalkConfig& cfg) { return hcap_mc(a, default_y_grid(a), cfg); }

/// Ratio of means with a delta-method standard error, from per-walk X, Y and XY.
inline Estimate ratio_estimate(const EnsembleStats& st, std::size_t ix, std::size_t iy, std::size_t ixy, double scale) {
  const double n = static_cast<double>(st.n);
  const double mx = st.mean[ix], my = st.mean[iy];
  Estimate e;
  e.n_walks = st.n;
  e.flagged = st.flagged;
  if (my == 0.0) return e;
  const double vx = st.std_error[ix] * st.std_error[ix];
  const double vy = st.std_error[iy] * st.std_error[iy];
  const double cov = (st.mean[ixy] - mx * my) / std::max(n - 1.0, 1.0);
  const double rr = mx / my;
  e.mean = scale * rr;
  e.std_error = scale * std::sqrt(std::max(0.0, (vx - 2.0 * rr * cov + rr * rr * vy) / (my * my)));
  return e;
}

/// dcap(T_y(A)) and y E Im B_tau from one ensemble of half-plane walks started at iy.
/// By conformal invariance the disk walk from 0 in D \ T_y(A) is T_y of the
/// half-plane walk, so -log|T_y(B_tau)| samples the disk log functional.
struct TransportSample {
  double y = 0.0;
  Estimate dcap;            // dcap(T_y(A))
  Estimate height;          // y E Im B_tau, an estimate of hcap with O(1/y^2) bias
  Estimate paired_ratio;    // y^2 dcap / height
  Estimate crad;            // 2y exp(-dcap)
  Estimate expansion;       // y^2 (1 - crad/2y) / height
};

inline TransportSample transport_sample(const HalfPlaneHull& a, double y, const WalkConfig& cfg) {
  TransportSample t;
  t.y = y;
  if (a.empty()) throw DomainError("empty hull: the limit ratio is 0/0");
  const Point start{0.0, y};
  if (set_contains(a.shapes(), start) || min_distance(start, a.shapes()) <= 0.0)
    throw DomainError("iy must lie outside the hull");
  const TransportMap map(y);
  const HalfPlaneDomain dom(a);
  const double y2 = y * y;
  // outputs: l, m, l*m, e = 1 - exp(-l) pathwise is not the same as 1 - exp(-E l); kept separately below
  const auto st = walk_ensemble(
      dom, start, cfg, 3,
      [&](const WalkResult& w, std::span<double> out) {
        if (w.label.kind == BoundaryKind::real_axis) return;
        const double l = -std::log(norm(map(w.terminal)));
        const double m = y * w.terminal.y;
        out[0] = w.weight * l;
        out[1] = w.weight * m;
        out[2] = w.weight * w.weight * l * m;
      },
      true);
  t.dcap = make_estimate(st, 0, cfg, "transport to the disk; projection bias O(eps_stop)");
  t.height = make_estimate(st, 1, cfg, "O(1/y^2) bias");
  t.paired_ratio = ratio_estimate(st, 0, 1, 2, y2);
  t.paired_ratio.eps_stop = cfg.eps_stop;
  t.paired_ratio.seed = cfg.seed;
  t.paired_ratio.bias_note = "ratio of means from the same walks";
  const double cr = 2.0 * y * std::exp(-t.dcap.mean);
  t.crad = {cr, cr * t.dcap.std_error, st.n, cfg.eps_stop, cfg.seed, "2y exp(-dcap)", st.flagged};
  // y^2 (1 - exp(-d)) / m, error propagated through the paired ratio
  const double d = t.dcap.mean;
  const double factor = d > 0.0 ? (1.0 - std::exp(-d)) / d : 1.0;
  t.expansion = t.paired_ratio;
  t.expansion.mean *= factor;
  t.expansion.std_error *= factor;
  t.expansion.bias_note = "y^2 (1 - crad/2y) / hcap from the same walks";
  return t;
}

inline Estimate dcap_transport(const HalfPlaneHull& a, double y, const WalkConfig& cfg) {
  if (a.empty()) return {0.0, 0.0, cfg.n_walks, cfg.eps_stop, cfg.seed, "empty hull", 0};
  return transport_sample(a, y, cfg).dcap;
}

/// crad(H \ A, iy) = 2y exp(-dcap(T_y(A))).
inline Estimate crad_halfplane(const HalfPlaneHull& a, double y, const WalkConfig& cfg) {
  if (!(y > 0.0)) throw DomainError("height must be positive");
  if (a.empty()) return {2.0 * y, 0.0, cfg.n_walks, cfg.eps_stop, cfg.seed, "crad(H, iy) = 2y", 0};
  return transport_sample(a, y, cfg).crad;
}

/// Layer decomposition of the dcap ensemble.
struct LayerSum {
  Estimate dcap;
  std::vector<Estimate> omega;  // omega[n] = hits on B cap D_n; the last entry collects n > n_max
  double lower = 0.0;           // mean of per-walk lower brackets
  double upper = 0.0;
  std::uint64_t violations = 0; // walks outside their own bracket (by more than 2 eps_stop)
  int n_max = 0;
};

inline LayerSum dcap_layer_sum(const DiskDomain& dom, const WalkConfig& cfg, int n_max = 20) {
  const std::size_t layers = static_cast<std::size_t>(n_max) + 2;
  const double slack = 2.0 * cfg.eps_stop;
  const auto st = walk_ensemble(dom, {0.0, 0.0}, cfg, 4 + layers, [&](const WalkResult& w, std::span<double> out) {
    if (w.label.kind != BoundaryKind::obstacle) return;
    const double r = norm(w.terminal);
    const double l = -std::log(r);
    const int n = layer_index(w.terminal);
    if (n < 0) return;
    const double lo = std::ldexp(1.0, -(n + 1)), hi = 2.0 * std::numbers::ln2 * std::ldexp(1.0, -n);
    out[0] = l;
    out[1] = lo;
    out[2] = hi;
    out[3] = (l < lo - slack || l > hi + slack) ? 1.0 : 0.0;
    out[4 + std::min<std::size_t>(static_cast<std::size_t>(n), layers - 1)] = 1.0;
  });
  LayerSum s;
  s.n_max = n_max;
  s.dcap = make_estimate(st, 0, cfg, "projection bias O(eps_stop)");
  s.lower = st.mean[1];
  s.upper = st.mean[2];
  s.violations = static_cast<std::uint64_t>(std::llround(st.mean[3] * static_cast<double>(st.n)));
  for (std::size_t k = 0; k < layers; ++k) s.omega.push_back(make_estimate(st, 4 + k, cfg, "layer hit frequency"));
  return s;
}

inline LayerSum dcap_layer_sum(const DiskCompact& b, const WalkConfig& cfg, int n_max = 20) {
  return dcap_layer_sum(DiskDomain(b), cfg, n_max);
}

// ---------------------------------------------------------------------------
// Report

struct NamedBounds {
  std::string name;
  AreaBounds bounds;
};

struct NamedValue {
  std::string name;
  double value;
};

struct CapacityReport {
  Space space = Space::halfplane;
  std::optional<Estimate> hcap;
  std::optional<double> hcap_closed_form;
  std::optional<HcapResult> hcap_detail;
  std::optional<Estimate> dcap;
  std::optional<double> dcap_closed_form;
  std::optional<Estimate> crad;  // crad(H \ A, i) or crad(D \ B, 0)
  std::vector<NamedBounds> areas;
  std::vector<NamedValue> ratios;
};

struct CapacityOptions {
  WalkConfig walks;
  std::optional<std::vector<double>> y_grid;
  QuadOptions quad;
  bool exact = false;
};

/// Recognizes the canonical one-shape sets that have closed forms.
inline std::optional<CanonicalHull> as_canonical(std::span<const Shape> shapes) {
  if (shapes.size() != 1) return std::nullopt;
  if (const auto* d = std::get_if<HalfDisk>(&shapes[0])) return CanonicalHull::half_disk(d->r, d->c);
  if (const auto* v = std::get_if<VSlit>(&shapes[0])) return CanonicalHull::slit(v->h, v->x);
  if (const auto* a = std::get_if<ArcBox>(&shapes[0]); a && a->full_ring() && a->rho > 0.5) return CanonicalHull::ring(a->rho);
  return std::nullopt;
}

inline double safe_ratio(double num, double den) { return den != 0.0 ? num / den : std::numeric_limits<double>::quiet_NaN(); }

inline CapacityReport capacity_report(const HalfPlaneHull& a, const CapacityOptions& opt) {
  CapacityReport r;
  r.space = Space::halfplane;
  const auto canon = as_canonical(a.shapes());
  if (opt.exact) {
    if (!canon) throw DomainError("--exact needs a single half-disk or slit");
    r.hcap_closed_form = hcap_exact(*canon);
    if (!set_contains(a.shapes(), {0.0, 1.0})) r.crad = Estimate{crad_exact(*canon, {0.0, 1.0}), 0.0, 0, 0.0, 0, "closed form", 0};
  } else {
    HcapResult h = hcap_mc(a, opt.y_grid.value_or(default_y_grid(a)), opt.walks);
    r.hcap = h.estimate;
    r.hcap_detail = std::move(h);
  }
  if (a.empty()) return r;
  const AreaBounds n = neighborhood_area(a, 1.0, opt.quad);
  r.areas.push_back({"neighborhood", n});
  r.areas.push_back({"whitney_cover", whitney_cover_area(a.shapes())});
  const double lip = lipschitz_majorant_area(a.shapes());
  r.areas.push_back({"lipschitz_majorant", {lip, lip, 0, true}});
  const double h = r.hcap ? r.hcap->mean : *r.hcap_closed_form;
  r.ratios.push_back({"hcap/neighborhood", safe_ratio(h, n.mid())});
  r.ratios.push_back({"hcap/whitney_cover", safe_ratio(h, r.areas[1].bounds.mid())});
  r.ratios.push_back({"hcap/lipschitz_majorant", safe_ratio(h, lip)});
  return r;
}

inline CapacityReport capacity_report(const DiskCompact& b, const CapacityOptions& opt) {
  CapacityReport r;
  r.space = Space::disk;
  const auto canon = as_canonical(b.shapes());
  if (opt.exact) {
    if (!canon) throw DomainError("--exact needs a single ring");
    r.dcap_closed_form = dcap_exact(*canon);
  } else {
    r.dcap = dcap_mc(b, opt.walks);
  }
  const double d = r.dcap ? r.dcap->mean : *r.dcap_closed_form;
  r.crad = Estimate{std::exp(-d), std::exp(-d) * (r.dcap ? r.dcap->std_error : 0.0), opt.walks.n_walks,
                    opt.walks.eps_stop, opt.walks.seed, "exp(-dcap)", 0};
  if (b.empty()) return r;
  const AreaBounds n = neighborhood_area(b, 1.0, opt.quad);
  const DyadicCover q = dyadic_cover(b.shapes());
  r.areas.push_back({"neighborhood", n});
  r.areas.push_back({"set", {b.area(), b.area(), 0, true}});
  r.areas.push_back({"dyadic_cover", q.area});
  r.ratios.push_back({"dcap/neighborhood", safe_ratio(d, n.mid())});
  r.ratios.push_back({"dcap/set", safe_ratio(d, b.area())});
  r.ratios.push_back({"dcap/dyadic_cover", safe_ratio(d, q.area.mid())});
  return r;
}

}  // namespace hcap
