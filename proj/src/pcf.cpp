#include "qlab/pcf.hpp"

#include <algorithm>
#include <vector>

namespace qlab {

namespace {

bool is_nonpositive_integer(const Complex& z) {
  return z.im().is_zero() && mpfr_integer_p(z.re().raw()) && z.re().sign() <= 0;
}

// log Gamma(w) by the Stirling asymptotic series; requires Re w large enough
// relative to the working precision (the caller shifts).  B_{2k} computed
// from zeta(2k): B_2k = (-1)^{k+1} 2 (2k)! zeta(2k) / (2pi)^{2k}.
Complex log_gamma_stirling(const Complex& w, mpfr_prec_t wp, int* ok) {
  Real pi = Real::pi(wp);
  Complex lw = log(w);
  Complex acc = (w - Real(0.5, wp)) * lw - w + Complex(ldexp2(log(ldexp2(pi, 1)), -1));
  Complex w2 = w * w;
  Complex wpow = w;  // w^{2k-1}
  Real tol = Real::two_pow(-(long)wp, wp);
  Real scale = max(abs(acc), Real(1L, wp));
  Real fact(1L, wp);        // (2k)!
  Real two_pi_pow(1L, wp);  // (2pi)^{2k}
  Real prev_mag(0L, wp);
  *ok = 0;
  for (unsigned long k = 1; k <= (unsigned long)wp; ++k) {
    fact = fact * Real((long)(2 * k - 1), wp) * Real((long)(2 * k), wp);
    two_pi_pow = two_pi_pow * ldexp2(pi, 1) * ldexp2(pi, 1);
    Real b2k = ldexp2(fact * zeta_ui(2 * k, wp) / two_pi_pow, 1);
    if (k % 2 == 0) b2k = -b2k;
    Complex term = Complex(b2k / (Real((long)(2 * k), wp) * Real((long)(2 * k - 1), wp))) / wpow;
    acc += term;
    Real m = abs(term);
    if (m < tol * scale) {
      *ok = 1;
      break;
    }
    if (k > 4 && m > prev_mag) break;  // series started diverging: shift was too small
    prev_mag = m;
    wpow *= w2;
  }
  return acc;
}

Complex gamma_cx_impl(const Complex& z0, mpfr_prec_t wp) {
  Complex z = z0.with_prec(wp);
  if (is_nonpositive_integer(z))
    throw PoleAtNonPositiveInteger("gamma_fn: pole at z = " + z.str(8));
  Real half(0.5, wp);
  if (z.re() < half) {
    // reflection: Gamma(z) = pi / (sin(pi z) Gamma(1-z))
    Real pi = Real::pi(wp);
    Complex s = sin(Complex(pi) * z);
    Complex g = gamma_cx_impl(Complex(Real(1L, wp)) - z, wp);
    return Complex(pi) / (s * g);
  }
  long sigma = std::max(24L, (long)(0.16 * (double)wp) + 8);
  for (int attempt = 0; attempt < 3; ++attempt) {
    long m = 0;
    if (z.re() < Real(sigma, wp)) m = (Real(sigma, wp) - z.re()).to_long() + 1;
    Complex w = z + Real(m, wp);
    int ok = 0;
    Complex lg = log_gamma_stirling(w, wp, &ok);
    if (ok) {
      Complex g = exp(lg);
      for (long j = 0; j < m; ++j) g /= (z + Real(j, wp));
      return g;
    }
    sigma = sigma * 2;
  }
  throw NonConvergence("gamma_fn: Stirling series failed to converge");
}

}  // namespace

Complex gamma_fn(const Complex& z, const PrecisionContext& ctx) {
  if (is_nonpositive_integer(z))
    throw PoleAtNonPositiveInteger("gamma_fn: pole at z = " + z.str(8));
  mpfr_prec_t wp = ctx.prec_bits + 32;
  if (z.im().is_zero()) {
    Real g = gamma_real(z.re().with_prec(wp));
    return Complex(g.with_prec(ctx.prec_bits), Real(0L, ctx.prec_bits));
  }
  Complex g = gamma_cx_impl(z, wp);
  check_finite(g, "gamma_fn");
  return g.with_prec(ctx.prec_bits);
}

Complex rgamma_fn(const Complex& z, const PrecisionContext& ctx) {
  if (is_nonpositive_integer(z)) return ctx.czero();
  return ctx.cone() / gamma_fn(z, ctx);
}

Real pochhammer(const Real& a, unsigned long k) {
  Real r(1L, a.prec());
  for (unsigned long j = 0; j < k; ++j) r *= (a + Real((long)j, a.prec()));
  return r;
}

Complex kummer_m(const Complex& a, const Complex& b, const Complex& w,
                 mpfr_prec_t wp, Real* max_mag) {
  Complex aw = a.with_prec(wp), bw = b.with_prec(wp), ww = w.with_prec(wp);
  Complex term(Real(1L, wp), Real(0L, wp));
  Complex sum = term;
  Real tol = Real::two_pow(-(long)wp - 4, wp);
  Real mm(1L, wp);
  Real wabs = abs(ww);
  int small_streak = 0;
  const unsigned long kmax = 200000;
  for (unsigned long k = 0; k < kmax; ++k) {
    Real kk((long)k, wp);
    term *= (aw + Complex(kk)) * ww / ((bw + Complex(kk)) * Complex(kk + Real(1L, wp)));
    if (term.is_zero()) break;  // terminating series (a a nonpositive integer)
    sum += term;
    Real m = abs(term);
    if (m > mm) mm = m;
    if (Real((long)k, wp) > wabs && m < tol * max(abs(sum), Real(1L, wp))) {
      if (++small_streak >= 3) break;
    } else {
      small_streak = 0;
    }
    if (k + 1 == kmax) throw NonConvergence("kummer_m: series did not converge");
  }
  if (max_mag) *max_mag = mm;
  return sum;
}

namespace {

// M(a,b,w) with the Kummer transform applied when Re w < 0:
// M(a,b,w) = e^w M(b-a, b, -w).  Keeps all series terms non-cancelling in w.
Complex kummer_m_stable(const Complex& a, const Complex& b, const Complex& w,
                        mpfr_prec_t wp, Real* max_mag) {
  if (w.re().sign() < 0) {
    Complex m = kummer_m(b - a, b, -w, wp, max_mag);
    Complex ew = exp(w.with_prec(wp));
    if (max_mag) *max_mag = *max_mag * abs(ew);
    return ew * m;
  }
  return kummer_m(a, b, w, wp, max_mag);
}

}  // namespace

Complex pcf_D(const Complex& nu, const Complex& z, const PrecisionContext& ctx) {
  check_finite(nu, "pcf_D(nu)");
  check_finite(z, "pcf_D(z)");
  // D_nu(z) = U(a, z), a = -nu - 1/2;
  // U(a,z) = sqrt(pi) 2^{-1/4-a/2}/Gamma(3/4+a/2) w1 - sqrt(pi) 2^{1/4-a/2}/Gamma(1/4+a/2) w2,
  // w1 = e^{-z^2/4} M(a/2+1/4, 1/2, z^2/2), w2 = z e^{-z^2/4} M(a/2+3/4, 3/2, z^2/2).
  int extra = 16;
  for (int attempt = 0; attempt <= ctx.max_escalations; ++attempt, extra += 32) {
    mpfr_prec_t wp = ctx.prec_bits + extra;
    PrecisionContext wctx(wp, ctx.series_tol_exp2 - 8);
    Complex a = -(nu.with_prec(wp)) - Real(0.5, wp);
    Complex zz = z.with_prec(wp);
    Complex w = ldexp2(Real(1L, wp), -1) * zz * zz;  // z^2/2

    Real mm1(0L, wp), mm2(0L, wp);
    Complex m1 = kummer_m_stable(ldexp2(Real(1L, wp), -1) * a + Real(0.25, wp),
                                 Complex(Real(0.5, wp)), w, wp, &mm1);
    Complex m2 = kummer_m_stable(ldexp2(Real(1L, wp), -1) * a + Real(0.75, wp),
                                 Complex(Real(1.5, wp)), w, wp, &mm2);

    Real sqrt_pi = sqrt(Real::pi(wp));
    Complex ln2 = Complex(log(Real(2L, wp)));
    Complex k1 = Complex(sqrt_pi) * exp((Complex(Real(-0.25, wp)) - ldexp2(Real(1L, wp), -1) * a) * ln2) *
                 rgamma_fn(Complex(Real(0.75, wp)) + ldexp2(Real(1L, wp), -1) * a, wctx);
    Complex k2 = Complex(sqrt_pi) * exp((Complex(Real(0.25, wp)) - ldexp2(Real(1L, wp), -1) * a) * ln2) *
                 rgamma_fn(Complex(Real(0.25, wp)) + ldexp2(Real(1L, wp), -1) * a, wctx);

    Complex t1 = k1 * m1;
    Complex t2 = k2 * zz * m2;
    Complex combo = t1 - t2;
    Complex result = exp(-ldexp2(w, -1)) * combo;
    check_finite(result, "pcf_D");

    // cancellation estimate: compare the largest intermediate magnitude with
    // the combination magnitude
    Real big = max(max(abs(t1), abs(t2)), max(abs(k1) * mm1, abs(k2) * abs(zz) * mm2));
    long cancel_bits = 0;
    if (!combo.is_zero() && !big.is_zero())
      cancel_bits = big.exponent2() - abs(combo).exponent2();
    if (cancel_bits < (long)extra - 8 || combo.is_zero())
      return result.with_prec(ctx.prec_bits);
    // else escalate and retry
  }
  throw NonConvergence("pcf_D: cancellation exceeded escalation cap; raise prec_bits");
}

Complex pcf_D_prime(const Complex& nu, const Complex& z, const PrecisionContext& ctx) {
  Complex d0 = pcf_D(nu, z, ctx);
  Complex d1 = pcf_D(nu + Real(1L, nu.prec()), z, ctx);
  return ldexp2(z, -1) * d0 - d1;
}

}  // namespace qlab
