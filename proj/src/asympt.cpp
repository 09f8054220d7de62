#include "qlab/asympt.hpp"

#include <algorithm>

#include "qlab/orthopoly.hpp"
#include "qlab/painleve4.hpp"

namespace qlab {

Complex predict_gamma_sq(unsigned long n, const TwoCutGeometry& g) {
  Complex diff = g.a2 - g.b2;
  Complex d2 = diff * diff;
  if (n % 2 == 0) return ldexp2(d2, -2);
  return Complex(Real(4L, g.prec), Real(0L, g.prec)) / d2;
}

Complex predict_h(unsigned long n, const Real& Nn, const TwoCutGeometry& g,
                  const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  Complex diff = g.a2 - g.b2;
  Complex parity = (n % 2 == 0) ? ldexp2(diff, -1)
                                : Complex(Real(2L, wp), Real(0L, wp)) / diff;
  Real two_pi = ldexp2(Real::pi(wp), 1);
  return Complex(two_pi) * exp(Complex(Nn.with_prec(wp)) * g.ell_star) * parity;
}

std::pair<Complex, Complex> predict_subleading_constants(const TwoCutGeometry& g) {
  Complex d = g.a2 - g.b2;
  Complex even = ldexp2(d * d, -3);
  Complex odd = ldexp2(Real(3L, g.prec) * (g.a2 * g.a2 + g.b2 * g.b2) +
                           ldexp2(g.a2 * g.b2, 1),
                       -3);
  return {even, odd};
}

Complex predict_pn_outer(const Complex& z, unsigned long n, long Nn_minus_n,
                         const TwoCutGeometry& g, const SurfaceData& sd,
                         const PrecisionContext& ctx) {
  Complex gn = exp(Complex(Real((long)n, ctx.prec_bits)) * g_fun(z, g, ctx));
  Complex d_factor = (Nn_minus_n == 0)
                         ? Complex(Real(1L, ctx.prec_bits), Real(0L, ctx.prec_bits))
                         : pow_si(szego(z, g, SzegoKind::D_norm, ctx), Nn_minus_n);
  Complex val = gn * d_factor * fun_A(z, g, ctx);
  if (n % 2 == 1) {
    Complex th_inf = theta_ratio_infinity(0, sd, ctx);
    ThetaRatioValue th_z = theta_ratio(z, 0, sd, ctx);
    val = val * th_inf / th_z.value;
  }
  return val;
}

namespace {

// branch of sqrt(x^2-4) analytic off [-2,2] with sqrt(x^2-4) ~ -x at infinity
Complex sqrt_x2m4(const Complex& x, mpfr_prec_t wp) {
  Complex two(Real(2L, wp), Real(0L, wp));
  return -(sqrt(x - two) * sqrt(x + two));
}

}  // namespace

Complex predict_p4(const Complex& x, AsymQuantity kind, const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  Complex xx = x.with_prec(wp);
  Complex s = sqrt_x2m4(xx, wp);
  switch (kind) {
    case AsymQuantity::p4_f0: return xx + s;
    case AsymQuantity::p4_f1: return Complex(Real(4L, wp), Real(0L, wp)) / (xx + s);
    case AsymQuantity::p4_f2: return Complex(Real(0L, wp), Real(0L, wp));
    case AsymQuantity::p4_sigma_even: return ldexp2(xx - s, -1);
    case AsymQuantity::p4_sigma_odd: return ldexp2(-xx + s, -1);
    default: throw std::invalid_argument("predict_p4: not a scaled-limit quantity");
  }
}

Real fit_decay_exponent(const std::vector<std::pair<unsigned long, Real>>& errors,
                        unsigned long n_min, const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  // least squares on log err = c - p log n
  Real sx(0L, wp), sy(0L, wp), sxx(0L, wp), sxy(0L, wp);
  long count = 0;
  for (const auto& [n, err] : errors) {
    if (n < n_min || err.is_zero()) continue;
    Real lx = log(Real((long)n, wp));
    Real ly = log(err.with_prec(wp));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  if (count < 3) throw NumericError("fit_decay_exponent: not enough samples");
  Real cnt((long)count, wp);
  Real slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  return -slope;
}

AsymptoticReport error_table(AsymQuantity q, const Complex& t, unsigned long n_max,
                             NSequence nseq, const PrecisionContext& ctx,
                             const Complex* z_outer) {
  mpfr_prec_t wp = ctx.prec_bits;
  TwoCutGeometry geom = two_cut_geometry(t, ctx, false);
  AsymptoticReport rep;
  rep.quantity = q;
  auto Nn_of = [&](unsigned long n) -> Real {
    long off = (nseq == NSequence::alternating) ? ((n % 2 == 0) ? 1 : -1) : 0;
    return Real((long)n + off, wp);
  };

  switch (q) {
    case AsymQuantity::gamma_sq: {
      for (unsigned long n = 2; n <= n_max; ++n) {
        ModelPoint pt(t.with_prec(wp), Nn_of(n));
        OPSequence seq = op_sequence(pt, n + 1, ctx);
        Real err = abs(seq.gamma_sq_at(n) - predict_gamma_sq(n, geom));
        rep.errors.emplace_back(n, err);
      }
      break;
    }
    case AsymQuantity::h_n: {
      for (unsigned long n = 2; n <= n_max; ++n) {
        ModelPoint pt(t.with_prec(wp), Nn_of(n));
        OPSequence seq = op_sequence(pt, n, ctx);
        // growth comparison in the log: |log|h_n| - log|h_n^pred||
        Real err = abs(log(abs(seq.h_at(n))) - log(abs(predict_h(n, Nn_of(n), geom, ctx))));
        rep.errors.emplace_back(n, err);
      }
      break;
    }
    case AsymQuantity::p_sub_even: {
      auto consts = predict_subleading_constants(geom);
      for (unsigned long n = 2; 2 * n <= n_max; ++n) {
        ModelPoint pt(t.with_prec(wp), Nn_of(2 * n));
        OPSequence seq = op_sequence(pt, 2 * n, ctx);
        Complex pred = Complex(Real((long)n, wp)) * t.with_prec(wp) + consts.first;
        rep.errors.emplace_back(2 * n, abs(seq.p_nm2_at(2 * n) - pred));
      }
      break;
    }
    case AsymQuantity::p_sub_odd: {
      auto consts = predict_subleading_constants(geom);
      for (unsigned long n = 2; 2 * n - 1 <= n_max; ++n) {
        ModelPoint pt(t.with_prec(wp), Nn_of(2 * n));
        OPSequence seq = op_sequence(pt, 2 * n - 1, ctx);
        Complex pred = Complex(Real((long)n, wp)) * t.with_prec(wp) + consts.second;
        rep.errors.emplace_back(2 * n - 1, abs(seq.p_nm2_at(2 * n - 1) - pred));
      }
      break;
    }
    case AsymQuantity::P_outer: {
      if (!z_outer) throw std::invalid_argument("error_table: P_outer needs a z sample");
      SurfaceData sd = surface_data(geom, ctx);
      for (unsigned long n = 4; n <= n_max; n += 2) {  // keep runtime modest
        ModelPoint pt(t.with_prec(wp), Nn_of(n));
        OPSequence seq = op_sequence(pt, n, ctx);
        MonicPolynomial p = build_pn(seq, n, ctx);
        long dn = (long)Nn_of(n).to_long() - (long)n;
        Complex pred = predict_pn_outer(*z_outer, n, dn, geom, sd, ctx);
        rep.errors.emplace_back(n, abs(p.eval(z_outer->with_prec(wp)) / pred -
                                       Complex(Real(1L, wp), Real(0L, wp))));
      }
      break;
    }
    case AsymQuantity::p4_f0:
    case AsymQuantity::p4_f1:
    case AsymQuantity::p4_f2: {
      int comp = (q == AsymQuantity::p4_f0) ? 0 : (q == AsymQuantity::p4_f1) ? 1 : 2;
      Complex x = t.with_prec(wp);  // here `t` carries the scaled x argument
      Complex lim = predict_p4(x, q, ctx);
      for (unsigned long n = 2; n <= n_max; ++n) {
        Real rn((long)n, wp);
        Complex arg = x * Complex(sqrt(ldexp2(rn, -1)));  // 2^{-1/2} n^{1/2} x
        P4Triple tr = tower(n, 0, arg, ctx);
        Complex scaled = tr.f[(size_t)comp] * Complex(sqrt(ldexp2(Real(1L, wp) / rn, 1)));
        rep.errors.emplace_back(n, abs(scaled - lim));
      }
      break;
    }
    case AsymQuantity::p4_sigma_even:
    case AsymQuantity::p4_sigma_odd: {
      int family = (q == AsymQuantity::p4_sigma_even) ? 0 : 1;
      Complex x = t.with_prec(wp);
      Complex lim = predict_p4(x, q, ctx);
      for (unsigned long n = 2; n <= n_max; ++n) {
        Real rn((long)n, wp);
        Complex arg = x * Complex(sqrt(ldexp2(rn, -1)));
        Complex sig = sigma_tau_route(family, n, arg, ctx);  // sigma_{n-1,m,0}
        Complex scaled = sig * Complex(sqrt(ldexp2(Real(1L, wp) / rn, 1)));
        rep.errors.emplace_back(n, abs(scaled - lim));
      }
      break;
    }
  }

  unsigned long n_min = std::max<unsigned long>(4, n_max / 4);
  std::vector<std::pair<unsigned long, Real>> ev, od;
  for (const auto& e : rep.errors)
    (e.first % 2 == 0 ? ev : od).push_back(e);
  rep.decay_fit = fit_decay_exponent(rep.errors, n_min, ctx);
  rep.decay_fit_even = ev.size() >= 3 ? fit_decay_exponent(ev, n_min, ctx) : rep.decay_fit;
  rep.decay_fit_odd = od.size() >= 3 ? fit_decay_exponent(od, n_min, ctx) : rep.decay_fit;
  return rep;
}

}  // namespace qlab
