#include "qlab/surface.hpp"

#include <cmath>
#include <algorithm>

#include "qlab/quadrature.hpp"

namespace qlab {

namespace {

// alpha loop: both lifts of the arc through 0, traversed a2 -> -a2 on sheet 0;
// parametrize z = a2 cos(pi s) (endpoint square roots cancel against sin)
Complex alpha_period_integral(const TwoCutGeometry& g, const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  Real pi = Real::pi(wp);
  LineIntegrand f = [&](const Real& s) -> Complex {
    Real th = pi * s.with_prec(wp);
    Complex z = g.a2 * Complex(cos(th));
    Complex dz = -(g.a2) * Complex(sin(th) * pi);
    return dz / R_sqrt(z, g);
  };
  return ldexp2(de_integral_01(f, ctx, ctx.series_tol_exp2 / 2), 1);
}

// beta loop around the cut [-b2,-a2]: smooth reduced integrand
// 2 i / (sigma phi(z(theta))) with z(theta) = -m + d cos(theta)
Complex beta_period_integral(const TwoCutGeometry& g, int sigma, const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  Real pi = Real::pi(wp);
  Complex m = g.cut_mid().with_prec(wp), d = g.cut_half().with_prec(wp);
  Complex one(Real(1L, wp), Real(0L, wp));
  LineIntegrand f = [&](const Real& s) -> Complex {
    Real th = pi * s.with_prec(wp);
    Complex z = -m + d * Complex(cos(th));
    Complex zm = z - m;  // phi is the factor regular on this cut
    Complex phi = zm * sqrt(one - d * d / (zm * zm));
    Complex two_i(Real(0L, wp), Real(2L, wp));
    return two_i * Complex(pi) / (Complex(Real((long)sigma, wp)) * phi);
  };
  return de_integral_01(f, ctx, ctx.series_tol_exp2 / 2);
}

// integral of dz/R^{1/2} along the polyline; the first leg may start at the
// branch point b2 (regularized by the quadratic substitution)
Complex abel_raw_along(const std::vector<Complex>& path, const TwoCutGeometry& g,
                       const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  Complex total(Real(0L, wp), Real(0L, wp));
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    Complex z0 = path[i].with_prec(wp), z1 = path[i + 1].with_prec(wp);
    bool from_b2 = (i == 0) && (abs(z0 - g.b2) < Real(1e-30, wp) * max(Real(1L, wp), abs(g.b2)));
    if (from_b2) {
      Complex delta = z1 - z0;
      LineIntegrand f = [&](const Real& tau) -> Complex {
        Real tw = tau.with_prec(wp);
        Complex z = z0 + delta * Complex(tw * tw);
        Complex dz = ldexp2(delta * Complex(tw), 1);
        return dz / R_sqrt(z, g);
      };
      total += de_integral_01(f, ctx, ctx.series_tol_exp2 / 2);
    } else {
      total += segment_integral([&](const Complex& z) {
        return Complex(Real(1L, wp), Real(0L, wp)) / R_sqrt(z, g);
      }, z0, z1, ctx, ctx.series_tol_exp2 / 2);
    }
  }
  return total;
}

// tail from p0 out to infinity along direction p0/|p0|
Complex abel_tail_to_infinity(const Complex& p0, const TwoCutGeometry& g,
                              const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  LineIntegrand f = [&](const Real& v) -> Complex {
    Real vw = v.with_prec(wp);
    if (vw.is_zero()) return Complex(Real(0L, wp), Real(0L, wp));
    Complex z = p0 / Complex(vw);
    Complex dz_dv = p0 / Complex(vw * vw);
    return dz_dv / R_sqrt(z, g);
  };
  return de_integral_01(f, ctx, ctx.series_tol_exp2 / 2);
}

int cut1_side_sign(const TwoCutGeometry& g, const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  Complex d = g.cut_half().with_prec(wp), m = g.cut_mid().with_prec(wp);
  Complex dir = (g.b2 - g.a2) / Complex(abs(g.b2 - g.a2));
  Complex nhat = Complex(Real(0L, wp), Real(1L, wp)) * dir;
  Real eps = abs(d) * Real(1e-9, wp);
  Complex probe_pt = -m + Complex(eps) * nhat;
  Complex zc = probe_pt + m;
  Complex one(Real(1L, wp), Real(0L, wp));
  Complex factor = zc * sqrt(one - d * d / (zc * zc));
  Complex ratio = factor / (Complex(Real(0L, wp), Real(1L, wp)) * d);
  return ratio.re().sign() >= 0 ? +1 : -1;
}

}  // namespace

SurfaceData surface_data(const TwoCutGeometry& geometry, const PrecisionContext& ctx) {
  if (geometry.region == Region::O1 || geometry.region == Region::O3)
    throw NumericError("surface_data: two-cut (O2) geometry required");
  SurfaceData sd;
  sd.geometry = geometry;
  mpfr_prec_t wp = ctx.prec_bits;

  sd.alpha_period = alpha_period_integral(geometry, ctx);
  sd.alpha_norm = Complex(Real(1L, wp), Real(0L, wp)) / sd.alpha_period;

  int sigma = cut1_side_sign(geometry, ctx);
  Complex braw = sd.alpha_norm * beta_period_integral(geometry, sigma, ctx);
  sd.beta_sign = (braw.im().sign() > 0) ? +1 : -1;  // right pair <=> Im B > 0
  sd.B = (sd.beta_sign > 0) ? braw : -braw;

  // A(inf^{(0)}): radially out from b2, then the tail
  Real r_out = abs(geometry.b2) * Real(2L, wp) + Real(3L, wp);
  Complex e_hat = geometry.b2 / Complex(abs(geometry.b2));
  Complex p0 = geometry.b2 + Complex(r_out) * e_hat;
  {
    std::vector<Complex> leg{geometry.b2, p0};
    Complex raw = abel_raw_along(leg, geometry, ctx) + abel_tail_to_infinity(p0, geometry, ctx);
    sd.abel_inf0 = sd.alpha_norm * raw;
  }
  sd.abel_inf1 = -sd.abel_inf0;

  // A(0^{(0)}): target offset to the left of the oriented arc through 0
  Complex a_hat = geometry.a2 / Complex(abs(geometry.a2));
  Complex nhat = Complex(Real(0L, wp), Real(1L, wp)) * a_hat;
  Real eps = Real::two_pow(-(long)ctx.prec_bits / 2, wp) * max(Real(1L, wp), abs(geometry.a2));
  Complex target = Complex(eps) * nhat;
  std::vector<Segment> bars = contour_barriers(geometry, false, true, ctx);
  std::vector<Complex> path = plan_path(geometry.b2, target, bars, ctx);
  sd.abel_zero0 = sd.alpha_norm * abel_raw_along(path, geometry, ctx);
  // mirror path lands on the opposite side of alpha on sheet 1; correcting to
  // the same side adds the beta-period
  sd.abel_zero1 = -sd.abel_zero0 + sd.B;
  return sd;
}

Complex abel_map(const Complex& z, int sheet, const SurfaceData& sd,
                 const PrecisionContext& ctx) {
  require_off_cut(z, sd.geometry, ctx);
  std::vector<Segment> bars = contour_barriers(sd.geometry, false, true, ctx);
  std::vector<Complex> path = plan_path(sd.geometry.b2, z, bars, ctx);
  Complex raw = sd.alpha_norm * abel_raw_along(path, sd.geometry, ctx);
  return (sheet == 0) ? raw : -raw;
}

ThetaEvaluator make_theta_evaluator(const Complex& B, const PrecisionContext& ctx) {
  if (!(B.im() > Real(0L, B.prec())))
    throw std::invalid_argument("make_theta_evaluator: Im B must be positive");
  double imb = B.im().to_double();
  double need = (-(double)ctx.series_tol_exp2) * 0.6931471805599453;  // ln(1/tol)
  long K = (long)std::ceil(std::sqrt(need / (3.141592653589793 * imb))) + 2;
  return ThetaEvaluator{B.with_prec(ctx.prec_bits), K};
}

Complex riemann_theta(const Complex& x, const ThetaEvaluator& th, const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  Real pi = Real::pi(wp);
  Complex ipi(Real(0L, wp), pi);
  Complex xx = x.with_prec(wp);
  Complex sum(Real(1L, wp), Real(0L, wp));
  for (long k = 1; k <= th.trunc_K; ++k) {
    Real kk(k, wp);
    Complex quad = exp(ipi * th.B * Complex(kk * kk));
    Complex osc = ldexp2(ipi, 1) * xx * Complex(kk);
    sum += quad * (exp(osc) + exp(-osc));
  }
  check_finite(sum, "riemann_theta");
  return sum;
}

ThetaRatioValue theta_ratio(const Complex& z, int sheet, const SurfaceData& sd,
                            const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  ThetaRatioValue out;
  out.near_pole = (sheet == 0) &&
                  (abs(z).to_double() < 1e-4 * std::max(1.0, abs(sd.geometry.a2).to_double()));
  Complex az = abel_map(z, sheet, sd, ctx);
  ThetaEvaluator th = make_theta_evaluator(sd.B, ctx);
  Complex shift = ldexp2(sd.B + Real(1L, wp), -1);
  Complex num = riemann_theta(az - sd.abel_zero1 - shift, th, ctx);
  Complex den = riemann_theta(az - sd.abel_zero0 - shift, th, ctx);
  out.value = num / den;
  return out;
}

Complex theta_ratio_infinity(int sheet, const SurfaceData& sd, const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  Complex az = (sheet == 0) ? sd.abel_inf0 : sd.abel_inf1;
  ThetaEvaluator th = make_theta_evaluator(sd.B, ctx);
  Complex shift = ldexp2(sd.B + Real(1L, wp), -1);
  Complex num = riemann_theta(az - sd.abel_zero1 - shift, th, ctx);
  Complex den = riemann_theta(az - sd.abel_zero0 - shift, th, ctx);
  return num / den;
}

Complex quartic_root_gamma(const Complex& z, const TwoCutGeometry& g,
                           const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  Complex zz = z.with_prec(wp);
  require_off_cut(zz, g, ctx);
  // principal-square-root pairing puts each factor's cut exactly on one chord
  Complex q1 = sqrt((zz - g.b2) / (zz - g.a2));
  Complex q2 = sqrt((zz + g.a2) / (zz + g.b2));
  return sqrt(q1 * q2);
}

Complex fun_A(const Complex& z, const TwoCutGeometry& g, const PrecisionContext& ctx) {
  Complex gam = quartic_root_gamma(z, g, ctx);
  return ldexp2(gam + Complex(Real(1L, ctx.prec_bits), Real(0L, ctx.prec_bits)) / gam, -1);
}

Complex fun_B(const Complex& z, const TwoCutGeometry& g, const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  Complex gam = quartic_root_gamma(z, g, ctx);
  Complex diff = gam - Complex(Real(1L, wp), Real(0L, wp)) / gam;
  return diff / Complex(Real(0L, wp), Real(2L, wp));
}

}  // namespace qlab
