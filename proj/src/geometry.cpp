#include "qlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace qlab {

namespace {

using cxd = std::complex<double>;

cxd to_d(const Complex& z) { return cxd(z.re().to_double(), z.im().to_double()); }

double seg_point_dist(cxd a, cxd b, cxd p) {
  cxd ab = b - a;
  double L2 = std::norm(ab);
  if (L2 == 0.0) return std::abs(p - a);
  double s = std::clamp(((p - a) * std::conj(ab)).real() / L2, 0.0, 1.0);
  return std::abs(p - (a + s * ab));
}

bool segs_properly_intersect(cxd a, cxd b, cxd c, cxd d) {
  auto cross = [](cxd u, cxd v) { return u.real() * v.imag() - u.imag() * v.real(); };
  double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

double seg_seg_dist(cxd a, cxd b, cxd c, cxd d) {
  if (segs_properly_intersect(a, b, c, d)) return 0.0;
  return std::min(std::min(seg_point_dist(a, b, c), seg_point_dist(a, b, d)),
                  std::min(seg_point_dist(c, d, a), seg_point_dist(c, d, b)));
}

}  // namespace

TwoCutGeometry two_cut_geometry(const Complex& t, const PrecisionContext& ctx, bool classify) {
  mpfr_prec_t wp = ctx.prec_bits;
  TwoCutGeometry g;
  g.t = t.with_prec(wp);
  Complex two(Real(2L, wp), Real(0L, wp));
  g.a2 = sqrt(-two - g.t);
  g.b2 = sqrt(two - g.t);
  g.ell_star = ldexp2(g.t * g.t, -2) - Real(0.5, wp);
  g.prec = wp;
  g.region = classify ? classify_region(t, ctx) : Region::unknown;
  return g;
}

Complex R_sqrt(const Complex& z, const TwoCutGeometry& g) {
  mpfr_prec_t wp = std::max(z.prec(), g.prec);
  Complex m = g.cut_mid().with_prec(wp), d = g.cut_half().with_prec(wp);
  Complex one(Real(1L, wp), Real(0L, wp));
  Complex zm = z.with_prec(wp) - m, zp = z.with_prec(wp) + m;
  Complex d2 = d * d;
  // (z -/+ m) sqrt(1 - d^2/(z -/+ m)^2): cut exactly on the chord of length 2|d|
  Complex phi = zm.is_zero() ? sqrt(zm * zm - d2) : zm * sqrt(one - d2 / (zm * zm));
  Complex psi = zp.is_zero() ? sqrt(zp * zp - d2) : zp * sqrt(one - d2 / (zp * zp));
  return phi * psi;
}

Complex Q_sqrt(const Complex& z, const TwoCutGeometry& g) {
  return ldexp2(z * R_sqrt(z, g), -1);
}

Real cut_distance(const Complex& z, const TwoCutGeometry& g) {
  cxd p = to_d(z), a2 = to_d(g.a2), b2 = to_d(g.b2);
  double d = std::min(seg_point_dist(a2, b2, p), seg_point_dist(-b2, -a2, p));
  return Real(d, 64);
}

void require_off_cut(const Complex& z, const TwoCutGeometry& g, const PrecisionContext& ctx) {
  double scale = std::max(1.0, abs(g.b2).to_double());
  double tol = scale * std::max(1e-13, std::pow(2.0, -(double)ctx.prec_bits / 3));
  if (cut_distance(z, g).to_double() < tol)
    throw OnCutError("evaluation point within tolerance of a branch cut");
}

std::vector<Segment> contour_barriers(const TwoCutGeometry& g, bool include_tail_ray,
                                      bool include_It, const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  std::vector<Segment> bars;
  Real big(1e6, wp);
  if (include_tail_ray) {
    // contour tail towards e^{i pi} infinity, realized as a long segment
    bars.push_back({-g.b2 - Complex(big, Real(0L, wp)), -g.b2});
  }
  bars.push_back({-g.b2, -g.a2});
  if (include_It) bars.push_back({-g.a2, g.a2});
  bars.push_back({g.a2, g.b2});
  return bars;
}

std::vector<Complex> plan_path(const Complex& from, const Complex& to,
                               const std::vector<Segment>& barriers,
                               const PrecisionContext& ctx) {
  cxd zf = to_d(from), zt = to_d(to);
  std::vector<std::pair<cxd, cxd>> bars;
  bars.reserve(barriers.size());
  double scale = 1.0;
  for (const auto& s : barriers) {
    bars.emplace_back(to_d(s.a), to_d(s.b));
    scale = std::max(scale, std::abs(bars.back().second));
  }
  double clear = 1e-7 * scale;

  auto polyline_ok = [&](const std::vector<cxd>& pts) {
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
      cxd a = pts[i], b = pts[i + 1];
      bool first_seg = (i == 0);
      bool final_seg = (i + 2 == pts.size());
      // the endpoints themselves may sit on a barrier (branch point anchor,
      // boundary-value targets): shrink those ends before the clearance test
      cxd aa = first_seg ? a + (b - a) * 1e-4 : a;
      cxd bb = final_seg ? b + (a - b) * 1e-4 : b;
      for (const auto& bar : bars) {
        double d = seg_seg_dist(aa, bb, bar.first, bar.second);
        double allowed = (first_seg || final_seg) ? clear * 1e-3 : clear;
        if (d < allowed) return false;
      }
    }
    return true;
  };

  std::vector<std::vector<cxd>> candidates;
  candidates.push_back({zf, zt});
  double r_out = 1.3 * std::max({std::abs(zf), std::abs(zt), 1.7 * scale}) + 1.0;
  double af = std::arg(zf), at = std::arg(zt);
  // big arc from the angle of `from` to approach angles near `to`
  for (int k = 0; k < 12; ++k) {
    double approach = at + ((k % 2 == 0) ? 1 : -1) * 0.35 * ((k + 1) / 2);
    std::vector<cxd> pts{zf, std::polar(r_out, af)};
    double a0 = af, a1 = approach;
    while (a1 - a0 > M_PI) a1 -= 2 * M_PI;
    while (a0 - a1 > M_PI) a1 += 2 * M_PI;
    int steps = std::max(1, (int)std::ceil(std::fabs(a1 - a0) / 0.26));
    for (int s = 1; s <= steps; ++s)
      pts.push_back(std::polar(r_out, a0 + (a1 - a0) * s / steps));
    pts.push_back(zt);
    candidates.push_back(std::move(pts));
  }
  for (auto& cand : candidates) {
    if (!polyline_ok(cand)) continue;
    std::vector<Complex> out;
    out.reserve(cand.size());
    mpfr_prec_t wp = ctx.prec_bits;
    out.push_back(from.with_prec(wp));
    for (size_t i = 1; i + 1 < cand.size(); ++i)
      out.emplace_back(Real(cand[i].real(), wp), Real(cand[i].imag(), wp));
    out.push_back(to.with_prec(wp));
    return out;
  }
  throw NumericError("plan_path: no collision-free polyline found");
}

namespace {

// W(z) = (z^2 + t + R^{1/2}(z))/2; never zero off the cuts
Complex eta_W(const Complex& z, const TwoCutGeometry& g) {
  Complex u = z * z + g.t.with_prec(z.prec());
  return ldexp2(u + R_sqrt(z, g), -1);
}

}  // namespace

Complex eta_log_continued(const std::vector<Complex>& path, const TwoCutGeometry& g,
                          const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  Real pi = Real::pi(wp);
  Complex w_prev = eta_W(path.front().with_prec(wp), g);
  Real theta = arg(w_prev);  // anchor must be in the principal-branch zone
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    // adaptive subdivision: keep the argument increment below pi/2 per step
    struct Item { Complex a, b; int depth; };
    std::vector<Item> stack{{path[i].with_prec(wp), path[i + 1].with_prec(wp), 0}};
    while (!stack.empty()) {
      Item it = stack.back();
      stack.pop_back();
      Complex w_next = eta_W(it.b, g);
      Real dtheta = arg(w_next / w_prev);
      if (abs(dtheta) > ldexp2(pi, -1)) {
        if (it.depth > 48) throw NumericError("eta_log_continued: subdivision limit");
        Complex mid = ldexp2(it.a + it.b, -1);
        stack.push_back({mid, it.b, it.depth + 1});
        stack.push_back({it.a, mid, it.depth + 1});
        continue;
      }
      theta += dtheta;
      w_prev = w_next;
    }
  }
  return Complex(log(abs(w_prev)), theta);
}

Complex eta_b2(const Complex& z, const TwoCutGeometry& g, const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  Complex zz = z.with_prec(wp);
  require_off_cut(zz, g, ctx);
  // anchor on the normalization ray beyond b2, where W ~ z^2 has principal arg
  Real ra = abs(g.b2) * Real(2L, wp) + Real(5L, wp);
  Complex anchor = g.b2 + Complex(ra) * (g.b2 / Complex(abs(g.b2)));
  std::vector<Segment> bars = contour_barriers(g, true, true, ctx);
  std::vector<Complex> path = plan_path(anchor, zz, bars, ctx);
  Complex lg = eta_log_continued(path, g, ctx);
  Complex u = zz * zz + g.t.with_prec(wp);
  Complex val = -ldexp2(u * R_sqrt(zz, g), -2) + lg;
  check_finite(val, "eta_b2");
  return val;
}

Real re_eta(const Complex& z, const TwoCutGeometry& g) {
  // real part is branch-free: Re eta = Re(-(1/4) u R^{1/2}) + log|W|
  Complex u = z * z + g.t.with_prec(z.prec());
  Complex S = R_sqrt(z, g);
  return -ldexp2((u * S).re(), -2) + log(abs(ldexp2(u + S, -1)));
}

namespace {

// +1 if z lies to the left of the oriented contour (-inf -> -b2 -> -a2 -> a2
// -> b2 -> +inf), judged from the nearest contour segment
int contour_side(const Complex& z, const TwoCutGeometry& g) {
  cxd p = to_d(z), a2 = to_d(g.a2), b2 = to_d(g.b2);
  cxd tail = -b2 - cxd(1e6, 0), head = b2 + cxd(1e6, 0) * (b2 / std::abs(b2));
  std::pair<cxd, cxd> segs[5] = {{tail, -b2}, {-b2, -a2}, {-a2, a2}, {a2, b2}, {b2, head}};
  double best = 1e300;
  double side = 0;
  for (auto& s : segs) {
    double dloc = seg_point_dist(s.first, s.second, p);
    if (dloc < best) {
      best = dloc;
      cxd dir = s.second - s.first;
      cxd rel = p - s.first;
      side = dir.real() * rel.imag() - dir.imag() * rel.real();
    }
  }
  return side >= 0 ? +1 : -1;
}

}  // namespace

Complex eta_e(const Complex& z, Endpoint e, const TwoCutGeometry& g,
              const PrecisionContext& ctx) {
  Complex base = eta_b2(z, g, ctx);
  if (e == Endpoint::b2) return base;
  mpfr_prec_t wp = ctx.prec_bits;
  Real pi = Real::pi(wp);
  int side = contour_side(z, g);  // eta_{b2} = eta_e + side-signed shift
  Real shift = (e == Endpoint::minus_b2) ? ldexp2(pi, 1) : pi;
  if (side < 0) shift = -shift;
  return base - Complex(Real(0L, wp), shift);
}

Complex g_fun(const Complex& z, const TwoCutGeometry& g, const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  Complex zz = z.with_prec(wp);
  Complex z2 = zz * zz;
  Complex V = ldexp2(z2 * z2, -2) + ldexp2(g.t.with_prec(wp) * z2, -1);
  return ldexp2(V + g.ell_star.with_prec(wp) + eta_b2(zz, g, ctx), -1);
}

Complex szego(const Complex& z, const TwoCutGeometry& g, SzegoKind kind,
              const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  Complex zz = z.with_prec(wp);
  require_off_cut(zz, g, ctx);
  Complex z2 = zz * zz;
  Complex V = ldexp2(z2 * z2, -2) + ldexp2(g.t.with_prec(wp) * z2, -1);
  Complex u = z2 + g.t.with_prec(wp);
  Complex val = exp(ldexp2(V, -1) - ldexp2(u * R_sqrt(zz, g), -3));
  if (kind == SzegoKind::D_norm) val = val * exp(ldexp2(g.ell_star.with_prec(wp), -1));
  check_finite(val, "szego");
  return val;
}

Complex cut_point(int cut, const Real& s, const TwoCutGeometry& g) {
  mpfr_prec_t wp = g.prec;
  Real ss = s.with_prec(wp);
  if (cut == 2) return g.a2 + Complex(ss) * (g.b2 - g.a2);
  return -g.b2 + Complex(ss) * (g.b2 - g.a2);
}

namespace {

// sign sigma in phi_left = sigma * i d sin(theta) on the cut carrying the
// factor's branch; probed once at the chord midpoint
int side_sign_probe(int cut, const TwoCutGeometry& g, const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  Complex d = g.cut_half().with_prec(wp);
  Complex m = g.cut_mid().with_prec(wp);
  Complex dir = (g.b2 - g.a2) / Complex(abs(g.b2 - g.a2));
  Complex nhat = Complex(Real(0L, wp), Real(1L, wp)) * dir;  // left normal
  Real eps = abs(d) * Real(1e-9, wp);
  Complex center = (cut == 2) ? m : -m;
  Complex probe_pt = center + Complex(eps) * nhat;
  Complex zc = (cut == 2) ? probe_pt - m : probe_pt + m;
  Complex one(Real(1L, wp), Real(0L, wp));
  Complex factor = zc * sqrt(one - d * d / (zc * zc));
  Complex ratio = factor / (Complex(Real(0L, wp), Real(1L, wp)) * d);
  return ratio.re().sign() >= 0 ? +1 : -1;
}

}  // namespace

Complex R_sqrt_oncut(int cut, const Real& s, int side, const TwoCutGeometry& g,
                     const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  Real ss = s.with_prec(wp);
  if (!(ss > Real(0L, wp)) || !(ss < Real(1L, wp)))
    throw std::invalid_argument("R_sqrt_oncut: parameter must be interior to (0,1)");
  Complex z = cut_point(cut, ss, g).with_prec(wp);
  Complex m = g.cut_mid().with_prec(wp), d = g.cut_half().with_prec(wp);
  Real cth = ldexp2(ss, 1) - Real(1L, wp);               // cos(theta) = 2s - 1
  Real sth = sqrt(Real(1L, wp) - cth * cth);             // sin(theta) >= 0
  int sigma = side_sign_probe(cut, g, ctx) * (side >= 0 ? +1 : -1);
  Complex singular = Complex(Real((long)sigma, wp)) * Complex(Real(0L, wp), sth) * d;
  Complex one(Real(1L, wp), Real(0L, wp));
  if (cut == 2) {
    Complex zp = z + m;  // regular factor psi
    Complex psi = zp * sqrt(one - d * d / (zp * zp));
    return singular * psi;
  }
  Complex zm = z - m;  // regular factor phi
  Complex phi = zm * sqrt(one - d * d / (zm * zm));
  return phi * singular;
}

Complex density_param(int cut, const Real& s, const TwoCutGeometry& g,
                      const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  Complex z = cut_point(cut, s, g);
  Complex Rp = R_sqrt_oncut(cut, s, +1, g, ctx);
  Complex Qp = ldexp2(z * Rp, -1);
  Complex i_pi(Real(0L, wp), Real::pi(wp));
  return Qp / i_pi;
}

Complex density(const Complex& x_on_cut, const TwoCutGeometry& g, const PrecisionContext& ctx) {
  // project on both chords, pick the closer one
  cxd p = to_d(x_on_cut), a2 = to_d(g.a2), b2 = to_d(g.b2);
  cxd ab = b2 - a2;
  double L2 = std::norm(ab);
  double s2 = std::clamp(((p - a2) * std::conj(ab)).real() / L2, 0.0, 1.0);
  double d2 = std::abs(p - (a2 + s2 * ab));
  double s1 = std::clamp(((p + b2) * std::conj(ab)).real() / L2, 0.0, 1.0);
  double d1 = std::abs(p - (-b2 + s1 * ab));
  double scale = std::max(1.0, std::abs(b2));
  if (std::min(d1, d2) > 1e-9 * scale)
    throw OffCutError("density: point is not on a realized cut");
  int cut = (d2 <= d1) ? 2 : 1;
  double s = (cut == 2) ? s2 : s1;
  return density_param(cut, Real(s, ctx.prec_bits), g, ctx);
}

std::vector<Complex> critical_directions(const Complex& e, const TwoCutGeometry& g,
                                         const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  // at a simple zero e of Q, Q'(e) = (1/2) e^3 (e^2 - c^2) where c^2 is the
  // non-vanishing quadratic pair; trajectory prongs at angles
  // phi_j = (-arg Q'(e) - pi + 2 pi j)/3
  Complex a2s = g.a2 * g.a2, b2s = g.b2 * g.b2;
  Complex e2 = (e * e).with_prec(wp);
  Complex other = (abs(e2 - a2s) < abs(e2 - b2s)) ? b2s : a2s;
  Complex qp = ldexp2(pow_si(e.with_prec(wp), 3) * (e2 - other.with_prec(wp)), -1);
  Real aq = arg(qp);
  Real pi = Real::pi(wp);
  std::vector<Complex> dirs;
  for (int j = 0; j < 3; ++j) {
    Real phi = (-aq - pi + ldexp2(pi, 1) * Real((long)j, wp)) / Real(3L, wp);
    dirs.emplace_back(cos(phi), sin(phi));
  }
  return dirs;
}

Trajectory trace_trajectory(const Complex& start, const Complex& direction,
                            const TwoCutGeometry& g, const PrecisionContext& ctx,
                            bool orthogonal, double escape_radius, long max_steps,
                            double snap_radius) {
  mpfr_prec_t wp = std::min<mpfr_prec_t>(ctx.prec_bits, 128);  // tracing needs no more
  double scale = std::max(1.0, abs(g.b2).to_double());
  if (escape_radius <= 0) escape_radius = 3.0 + 2.0 * scale;
  double snap = snap_radius * scale;

  std::vector<Complex> crit{Complex(0.0, 0.0, wp), g.a2.with_prec(wp), -g.a2.with_prec(wp),
                            g.b2.with_prec(wp), -g.b2.with_prec(wp)};
  auto nearest_crit = [&](const Complex& z, double* dist) -> Complex {
    double best = 1e300;
    Complex who = crit[0];
    for (const auto& c : crit) {
      double dd = abs(z - c).to_double();
      if (dd < best) { best = dd; who = c; }
    }
    *dist = best;
    return who;
  };

  Complex vprev = (direction / Complex(abs(direction))).with_prec(wp);
  auto field = [&](const Complex& z, const Complex& ref) -> Complex {
    Complex q = Q_sqrt(z, g).with_prec(wp);
    Complex dir = orthogonal ? Complex(Real(1L, wp), Real(0L, wp)) / q
                             : Complex(Real(0L, wp), Real(1L, wp)) / q;
    Complex v = dir / Complex(abs(dir));
    // continuity of the direction field
    Real dot = (v * ref.conj()).re();
    if (dot.sign() < 0) v = -v;
    return v;
  };

  Trajectory traj;
  double d0;
  nearest_crit(start.with_prec(wp), &d0);
  Complex z = start.with_prec(wp) + Complex(Real(std::max(4.0 * snap, 1e-6 * scale), wp)) * vprev;
  traj.points.push_back(start.with_prec(wp));
  traj.points.push_back(z);
  double h = 1e-3 * scale;
  const double hmax = 0.02 * scale;

  for (long step = 0; step < max_steps; ++step) {
    double dist;
    Complex cc = nearest_crit(z, &dist);
    if (dist < snap && step > 2) {
      traj.end = Trajectory::End::hit_critical;
      traj.hit = cc;
      traj.points.push_back(cc);
      return traj;
    }
    if (abs(z).to_double() > escape_radius) {
      traj.end = Trajectory::End::escaped;
      traj.points.push_back(z);
      return traj;
    }
    h = std::min({h * 1.4, hmax, std::max(dist / 3.0, snap / 2.0)});
    for (;;) {
      Real hh(h, wp);
      Complex k1 = field(z, vprev);
      Complex k2 = field(z + ldexp2(Complex(hh) * k1, -1), k1);
      Complex k3 = field(z + ldexp2(Complex(hh) * k2, -1), k2);
      Complex k4 = field(z + Complex(hh) * k3, k3);
      Complex znew = z + Complex(hh) * (k1 + ldexp2(k2, 1) + ldexp2(k3, 1) + k4) / Real(6L, wp);
      Complex vnew = field(znew, k4);
      if (abs(vnew - k1).to_double() > 0.35 && h > 1e-13 * scale) {
        h *= 0.5;
        continue;
      }
      vprev = vnew;
      z = znew;
      break;
    }
    traj.length += h;
    if (step % 8 == 0) traj.points.push_back(z);
  }
  throw StepLimit("trace_trajectory: step limit reached");
}

Region classify_region(const Complex& t, const PrecisionContext& ctx) {
  PrecisionContext cctx(std::min<mpfr_prec_t>(ctx.prec_bits, 128));
  TwoCutGeometry g = two_cut_geometry(t, cctx, false);
  double scale = std::max(1.0, abs(g.b2).to_double());
  if (abs(g.a2).to_double() < 1e-9 * scale || abs(g.b2).to_double() < 1e-9 * scale)
    return Region::boundary;

  double reta0 = re_eta(cctx.C(0.0), g).to_double();
  double margin = 1e-6 * std::max(1.0, abs(g.t).to_double());

  bool hitB = false, hit0 = false, hitA = false;
  try {
    for (const Complex& dir : critical_directions(g.a2, g, cctx)) {
      Trajectory tr;
      try {
        tr = trace_trajectory(g.a2, dir, g, cctx, false, 0, 60000, 1e-7);
      } catch (const StepLimit&) {
        continue;
      }
      if (tr.end != Trajectory::End::hit_critical) continue;
      double hb = std::min(abs(tr.hit - g.b2).to_double(), abs(tr.hit + g.b2).to_double());
      double h0 = abs(tr.hit).to_double();
      double ha = std::min(abs(tr.hit - g.a2).to_double(), abs(tr.hit + g.a2).to_double());
      if (hb < 1e-6 * scale) hitB = true;
      else if (h0 < 1e-6 * scale) hit0 = true;
      else if (ha < 1e-6 * scale) hitA = true;
    }
  } catch (const NumericError&) {
    return Region::unknown;
  }

  if (hit0 && hitB) return Region::boundary;
  if (hitB && reta0 < -margin) return Region::O2;
  if (hit0) return Region::O1;
  if (hitB && reta0 > margin) return Region::O3;
  if (std::fabs(reta0) <= margin) return Region::boundary;
  (void)hitA;
  return Region::unknown;
}

std::vector<SignChartSample> sign_chart(const Complex& t, double x0, double x1, double y0,
                                        double y1, int nx, int ny,
                                        const PrecisionContext& ctx) {
  if ((long)nx * (long)ny > 10000000L)
    throw std::invalid_argument("sign_chart: grid too large");
  PrecisionContext cctx(std::min<mpfr_prec_t>(ctx.prec_bits, 128));
  TwoCutGeometry g = two_cut_geometry(t, cctx, false);
  std::vector<SignChartSample> out;
  out.reserve((size_t)(nx + 1) * (ny + 1));
  double cell = std::hypot((x1 - x0) / std::max(nx, 1), (y1 - y0) / std::max(ny, 1));
  for (int iy = 0; iy <= ny; ++iy) {
    for (int ix = 0; ix <= nx; ++ix) {
      double x = x0 + (x1 - x0) * ix / std::max(nx, 1);
      double y = y0 + (y1 - y0) * iy / std::max(ny, 1);
      Complex z = cctx.C(x, y);
      bool near = cut_distance(z, g).to_double() < 1.5 * cell;
      double v = re_eta(z, g).to_double();
      out.push_back({x, y, v, near});
    }
  }
  return out;
}

}  // namespace qlab
