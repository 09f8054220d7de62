#include "qlab/orthopoly.hpp"

#include <algorithm>

#include "qlab/quadrature.hpp"

namespace qlab {

Complex MonicPolynomial::eval(const Complex& z) const {
  mpfr_prec_t wp = std::max(z.prec(), coeffs.empty() ? (mpfr_prec_t)64 : coeffs[0].prec());
  Complex acc(Real(0L, wp), Real(0L, wp));
  for (size_t k = coeffs.size(); k-- > 0;) acc = acc * z + coeffs[k];
  return acc;
}

Complex MonicPolynomial::eval_derivative(const Complex& z) const {
  mpfr_prec_t wp = std::max(z.prec(), coeffs.empty() ? (mpfr_prec_t)64 : coeffs[0].prec());
  Complex acc(Real(0L, wp), Real(0L, wp));
  for (size_t k = coeffs.size(); k-- > 1;)
    acc = acc * z + coeffs[k] * Real((long)k, wp);
  return acc;
}

MonicPolynomial build_pn(const OPSequence& seq, unsigned long n, const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  Complex zero(Real(0L, wp), Real(0L, wp));
  Complex one(Real(1L, wp), Real(0L, wp));
  for (unsigned long k = 0; k < n; ++k)
    if (!seq.degree_full.at(k + 1))
      throw DegenerateDegree((int)k + 1, "build_pn: degenerate degree in recurrence range");
  std::vector<Complex> pm1{};       // P_{-1} = 0
  std::vector<Complex> p0{one};     // P_0 = 1
  for (unsigned long k = 0; k < n; ++k) {
    // P_{k+1} = z P_k - gamma_k^2 P_{k-1}
    std::vector<Complex> p1(k + 2, zero);
    for (size_t j = 0; j < p0.size(); ++j) p1[j + 1] = p0[j];
    const Complex& g = seq.gamma_sq_at(k);
    for (size_t j = 0; j < pm1.size(); ++j) p1[j] -= g * pm1[j];
    pm1 = std::move(p0);
    p0 = std::move(p1);
  }
  // parity coefficients are exactly zero by construction of the recurrence,
  // but enforce against accumulated dust
  for (size_t j = (n % 2 == 0) ? 1 : 0; j < p0.size(); j += 2) p0[j] = zero;
  return MonicPolynomial{n, std::move(p0), seq.point};
}

MonicPolynomial build_pn(const ModelPoint& point, unsigned long n, const PrecisionContext& ctx) {
  OPSequence seq = op_sequence(point, std::max<unsigned long>(n, 2), ctx);
  return build_pn(seq, n, ctx);
}

MonicPolynomial build_pn_determinant(const ModelPoint& point, unsigned long n,
                                     const PrecisionContext& ctx) {
  MomentTable tab = moment_table(point, std::max<unsigned long>(2, n), ctx);
  HankelFamily fam = hankel_dets(point, n, ctx);
  if (fam.is_zero((long)n - 1))
    throw DegenerateDegree((int)n, "build_pn_determinant: H_{n-1} vanishes");
  mpfr_prec_t wp = ctx.prec_bits;
  std::vector<Complex> coeffs(n + 1, Complex(Real(0L, wp), Real(0L, wp)));
  for (unsigned long k = 0; k <= n; ++k) {
    if ((n - k) % 2 != 0) continue;  // parity zeros
    std::vector<std::vector<Complex>> M(n);
    for (size_t i = 0; i < n; ++i) {
      M[i].reserve(n);
      for (size_t j = 0; j <= n; ++j)
        if (j != k) M[i].push_back(tab.mu.at(i + j));
    }
    Complex minor = (n == 0) ? Complex(Real(1L, wp), Real(0L, wp)) : det_lu(std::move(M));
    coeffs[k] = ((n + k) % 2 == 0 ? minor : -minor) / fam.at((long)n - 1);
  }
  coeffs[n] = Complex(Real(1L, wp), Real(0L, wp));
  return MonicPolynomial{n, std::move(coeffs), point};
}

Complex orthogonality_residual(const ModelPoint& point, unsigned long n, unsigned long k,
                               const PrecisionContext& ctx) {
  MonicPolynomial p = build_pn(point, n, ctx);
  LineIntegrand f = [&](const Real& s) -> Complex {
    Complex zs(s.with_prec(ctx.prec_bits));
    return Complex(pow_si(s.with_prec(ctx.prec_bits), (long)k)) * p.eval(zs) *
           quartic_weight(s, point, ctx);
  };
  return de_integral_line(f, ctx, ctx.series_tol_exp2);
}

std::vector<Complex> rescale_pn_coeffs(const std::vector<Complex>& coeffs, const Real& N,
                                       RescaleDirection dir, const PrecisionContext& ctx) {
  // to_unit_N: coefficients of P_n(.; N^{1/2} t, 1) from those of P_n(.;t,N):
  // q_k = p_k * N^{(n-k)/4}
  mpfr_prec_t wp = ctx.prec_bits;
  Real Nw = N.with_prec(wp);
  size_t n = coeffs.size() - 1;
  std::vector<Complex> out(coeffs.size(), Complex(Real(0L, wp), Real(0L, wp)));
  for (size_t k = 0; k < coeffs.size(); ++k) {
    Real e = ldexp2(Real((long)(n - k), wp), -2);  // (n-k)/4
    Real f = pow(Nw, e);
    out[k] = (dir == RescaleDirection::to_unit_N) ? coeffs[k] * f : coeffs[k] / f;
  }
  return out;
}

Complex rescale_gamma_sq(const Complex& value, const Real& N, RescaleDirection dir,
                         const PrecisionContext& ctx) {
  Real s = sqrt(N.with_prec(ctx.prec_bits));
  return (dir == RescaleDirection::to_unit_N) ? value * s : value / s;
}

Complex rescale_p_sub(const Complex& value, const Real& N, RescaleDirection dir,
                      const PrecisionContext& ctx) {
  return rescale_gamma_sq(value, N, dir, ctx);
}

std::vector<Complex> freud_sn_coeffs(const std::vector<Complex>& pn_coeffs, const Real& N,
                                     const PrecisionContext& ctx) {
  // S_n(y; -N^{1/2} t, -1/2) = (2^{-1/2}N^{1/4})^{n} P_n(2^{1/2}N^{-1/4} y; t, N):
  // s_k = p_k * (2^{-1/2} N^{1/4})^{n-k}
  mpfr_prec_t wp = ctx.prec_bits;
  Real c = pow(N.with_prec(wp), Real(0.25, wp)) / sqrt(Real(2L, wp));
  size_t n = pn_coeffs.size() - 1;
  std::vector<Complex> out(pn_coeffs.size(), Complex(Real(0L, wp), Real(0L, wp)));
  for (size_t k = 0; k < pn_coeffs.size(); ++k)
    out[k] = pn_coeffs[k] * pow_si(c, (long)(n - k));
  return out;
}

std::vector<Complex> pn_zeros(const MonicPolynomial& poly, const PrecisionContext& ctx) {
  const unsigned long n = poly.degree;
  mpfr_prec_t wp = ctx.prec_bits + 32;
  if (n == 0) return {};
  // Cauchy-type radius from the largest coefficient magnitude
  Real radius(1L, wp);
  for (size_t k = 0; k < n; ++k) {
    Real a = abs(poly.coeffs[k]).with_prec(wp);
    if (a.is_zero()) continue;
    Real r = pow(a, Real(1L, wp) / Real((long)(n - k), wp));
    radius = max(radius, r);
  }
  radius = radius * Real(1.2, wp) + Real(0.5, wp);

  Real pi = Real::pi(wp);
  std::vector<Complex> z;
  z.reserve(n);
  for (unsigned long k = 0; k < n; ++k) {
    // ring start, small irrational angle offset so no start point is a root
    Real ang = ldexp2(pi, 1) * Real((long)k, wp) / Real((long)n, wp) + Real(0.35, wp);
    z.emplace_back(radius * cos(ang), radius * sin(ang));
  }
  Real tol = Real::two_pow(-(long)ctx.prec_bits + 8, wp);
  const int iter_cap = 600;
  for (int it = 0; it < iter_cap; ++it) {
    Real worst(0L, wp);
    for (unsigned long i = 0; i < n; ++i) {
      Complex p = poly.eval(z[i]);
      Complex dp = poly.eval_derivative(z[i]);
      if (dp.is_zero()) { z[i] += Complex(Real(1e-3, wp), Real(1e-3, wp)); continue; }
      Complex w = p / dp;
      Complex s(Real(0L, wp), Real(0L, wp));
      for (unsigned long j = 0; j < n; ++j)
        if (j != i) s += Complex(Real(1L, wp), Real(0L, wp)) / (z[i] - z[j]);
      Complex corr = w / (Complex(Real(1L, wp), Real(0L, wp)) - w * s);
      z[i] -= corr;
      worst = max(worst, abs(corr) / max(abs(z[i]), Real(1L, wp)));
    }
    if (worst < tol) {
      // enforce the +/- pairing dictated by parity
      std::vector<Complex> out = z;
      std::vector<bool> used(n, false);
      std::vector<Complex> paired;
      paired.reserve(n);
      for (unsigned long i = 0; i < n; ++i) {
        if (used[i]) continue;
        used[i] = true;
        if (n % 2 == 1 && abs(out[i]) < Real(1e-20, wp)) {  // odd degree: root at 0
          paired.push_back(Complex(Real(0L, wp), Real(0L, wp)));
          continue;
        }
        unsigned long best = n;
        Real bd(0L, wp);
        for (unsigned long j = 0; j < n; ++j) {
          if (used[j]) continue;
          Real d = abs(out[j] + out[i]);
          if (best == n || d < bd) { best = j; bd = d; }
        }
        if (best == n) { paired.push_back(out[i]); continue; }
        used[best] = true;
        Complex half = ldexp2(out[i] - out[best], -1);
        paired.push_back(half);
        paired.push_back(-half);
      }
      for (auto& r : paired) r = r.with_prec(ctx.prec_bits);
      return paired;
    }
  }
  throw RootRefinementFail("pn_zeros: Aberth iteration did not converge");
}

}  // namespace qlab
