#include "qlab/moments.hpp"

#include "qlab/pcf.hpp"
#include "qlab/quadrature.hpp"

namespace qlab {

namespace {

// e^{N t^2/8} D_{-1/2-k}(sqrt(N/2) t)
Complex weighted_pcf(unsigned long k, const ModelPoint& point, const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  Complex t = point.t.with_prec(wp);
  Real N = point.N.with_prec(wp);
  Complex arg = Complex(sqrt(ldexp2(N, -1))) * t;
  Complex nu = Complex(Real(-0.5, wp) - Real((long)k, wp));
  Complex pref = exp(ldexp2(Complex(N) * t * t, -3));
  return pref * pcf_D(nu, arg, ctx);
}

}  // namespace

Complex quartic_weight(const Real& s, const ModelPoint& point, const PrecisionContext& ctx) {
  mpfr_prec_t wp = std::max(ctx.prec_bits, s.prec());
  Real ss = s.with_prec(wp);
  Complex t = point.t.with_prec(wp);
  Real N = point.N.with_prec(wp);
  Complex v = Complex(ldexp2(pow_si(ss, 4), -2)) + ldexp2(t * Complex(ss * ss), -1);
  return exp(-(Complex(N) * v));
}

Complex mu0(const ModelPoint& point, const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  Real N = point.N.with_prec(wp);
  Real pref = pow(Real(2L, wp), Real(0.25, wp)) * sqrt(Real::pi(wp)) /
              pow(N, Real(0.25, wp));
  Complex r = Complex(pref) * weighted_pcf(0, point, ctx);
  check_finite(r, "mu0");
  return r;
}

Complex mu2k_closed(unsigned long k, const ModelPoint& point, const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  Real N = point.N.with_prec(wp);
  Real ex = Real(0.25, wp) + ldexp2(Real((long)k, wp), -1);  // k/2 + 1/4
  Real pref = pow(Real(2L, wp), ex) * sqrt(Real::pi(wp)) * pochhammer(Real(0.5, wp), k) /
              pow(N, ex);
  Complex r = Complex(pref) * weighted_pcf(k, point, ctx);
  check_finite(r, "mu2k_closed");
  return r;
}

MomentTable moment_table(const ModelPoint& point, unsigned long m, const PrecisionContext& ctx) {
  if (m < 2) throw std::invalid_argument("moment_table: need m >= 2");
  mpfr_prec_t wp = ctx.prec_bits;
  Complex t = point.t.with_prec(wp);
  Real N = point.N.with_prec(wp);
  std::vector<Complex> mu(2 * m + 1, Complex(Real(0L, wp), Real(0L, wp)));
  mu[0] = mu0(point, ctx);
  mu[2] = mu2k_closed(1, point, ctx);  // = -(2/N) d mu_0/dt via the D_{-3/2} identity
  for (unsigned long k = 0; k + 4 <= 2 * m; k += 2) {
    // N mu_{k+4} = (k+1) mu_k - N t mu_{k+2}
    mu[k + 4] = (Real((long)k + 1, wp) * mu[k] - Complex(N) * t * mu[k + 2]) / N;
  }
  return MomentTable{point, std::move(mu), MomentProvenance::recursion};
}

MomentTable moment_table_closed(const ModelPoint& point, unsigned long m,
                                const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  std::vector<Complex> mu(2 * m + 1, Complex(Real(0L, wp), Real(0L, wp)));
  for (unsigned long k = 0; 2 * k <= 2 * m; ++k) mu[2 * k] = mu2k_closed(k, point, ctx);
  return MomentTable{point, std::move(mu), MomentProvenance::closed_form};
}

Complex moment_quadrature_oracle(unsigned long k, const ModelPoint& point,
                                 const PrecisionContext& ctx) {
  // the quartic term dominates every e^{-N t s^2/2} on the real axis, so the
  // contour never needs deformation
  LineIntegrand f = [&](const Real& s) -> Complex {
    Complex w = quartic_weight(s, point, ctx);
    return Complex(pow_si(s.with_prec(ctx.prec_bits), (long)k)) * w;
  };
  return de_integral_line(f, ctx, ctx.series_tol_exp2);
}

}  // namespace qlab
