#include "qlab/painleve4.hpp"

#include <cmath>
#include <algorithm>

#include "qlab/hankel.hpp"
#include "qlab/pcf.hpp"

namespace qlab {

namespace {

constexpr int kCartan[3][3] = {{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}};
constexpr int kOrient[3][3] = {{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}};

// psi_k(x) = e^{x^2/2} D_{-1/2-j0-k}(sqrt2 x); d/dx psi_k = -sqrt2 (k+j0+1/2) psi_{k+1}
std::vector<Complex> psi_values(int j0, size_t count, const Complex& x,
                                const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  Complex xx = x.with_prec(wp);
  Complex arg = Complex(sqrt(Real(2L, wp))) * xx;
  Complex pref = exp(ldexp2(xx * xx, -1));
  std::vector<Complex> out;
  out.reserve(count);
  for (size_t k = 0; k < count; ++k) {
    Complex nu(Real(-0.5, wp) - Real((long)(j0 + (long)k), wp));
    out.push_back(pref * pcf_D(nu, arg, ctx));
  }
  return out;
}

Real guard_scale(const P4Triple& tr) {
  mpfr_prec_t wp = tr.x.prec();
  Real s(1L, wp);
  for (const auto& f : tr.f) s = max(s, abs(f));
  return s;
}

}  // namespace

P4Triple seed_triple(const Complex& x, P4Seed which, const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  Complex xx = x.with_prec(wp);
  Complex arg = Complex(sqrt(Real(2L, wp))) * xx;
  P4Triple tr;
  tr.x = xx;
  if (which == P4Seed::m0) {
    Complex d0 = pcf_D(Complex(Real(-0.5, wp)), arg, ctx);
    if (abs(d0) < ctx.tol()) throw SeedZero("seed_triple: D_{-1/2}(sqrt2 x) vanishes");
    Complex d1 = pcf_D(Complex(Real(-1.5, wp)), arg, ctx);
    // phi'/phi = -2^{-1/2} D_{-3/2}/D_{-1/2}
    Complex r = -(d1 / d0) / Complex(sqrt(Real(2L, wp)));
    tr.f = {Complex(Real(0L, wp), Real(0L, wp)), r, ldexp2(xx, 1) - r};
    tr.alpha = {Complex(Real(0L, wp), Real(0L, wp)), Complex(Real(0.5, wp)),
                Complex(Real(0.5, wp))};
    tr.lineage = {"seed m0"};
  } else {
    Complex d0 = pcf_D(Complex(Real(-1.5, wp)), arg, ctx);
    if (abs(d0) < ctx.tol()) throw SeedZero("seed_triple: D_{-3/2}(sqrt2 x) vanishes");
    Complex d1 = pcf_D(Complex(Real(-2.5, wp)), arg, ctx);
    // psi'/psi = -(3/sqrt2) D_{-5/2}/D_{-3/2}
    Complex r = -(d1 / d0) * Complex(Real(3L, wp) / sqrt(Real(2L, wp)));
    tr.f = {Complex(Real(0L, wp), Real(0L, wp)), ldexp2(xx, 1) + r, -r};
    tr.alpha = {Complex(Real(0L, wp), Real(0L, wp)), Complex(Real(1.5, wp)),
                Complex(Real(-0.5, wp))};
    tr.lineage = {"seed m1"};
  }
  return tr;
}

P4Triple s_transform(int i, const P4Triple& tr, const PrecisionContext& ctx) {
  if (i < 0 || i > 2) throw std::invalid_argument("s_transform: index out of range");
  mpfr_prec_t wp = ctx.prec_bits;
  Real guard = Real::two_pow(-(long)ctx.prec_bits / 2, wp) * guard_scale(tr);
  if (abs(tr.f[(size_t)i]) <= guard)
    throw DivisionByZeroComponent("s_transform: f_" + std::to_string(i) + " vanishes at x");
  P4Triple out = tr;
  Complex ratio = ldexp2(tr.alpha[(size_t)i], 1) / tr.f[(size_t)i];
  for (int j = 0; j < 3; ++j) {
    if (kOrient[i][j] != 0)
      out.f[(size_t)j] = tr.f[(size_t)j] + Real((long)kOrient[i][j], wp) * ratio;
    out.alpha[(size_t)j] = tr.alpha[(size_t)j] - Real((long)kCartan[i][j], wp) * tr.alpha[(size_t)i];
  }
  out.lineage.push_back("s" + std::to_string(i));
  return out;
}

P4Triple pi_rotate(const P4Triple& tr) {
  P4Triple out = tr;
  out.f = {tr.f[2], tr.f[0], tr.f[1]};
  out.alpha = {tr.alpha[2], tr.alpha[0], tr.alpha[1]};
  out.lineage.push_back("pi");
  return out;
}

P4Triple T_apply(int j, const P4Triple& tr, bool inverse, const PrecisionContext& ctx) {
  if (j < 1 || j > 3) throw std::invalid_argument("T_apply: j in {1,2,3}");
  auto pi2 = [](const P4Triple& a) { return pi_rotate(pi_rotate(a)); };
  try {
    P4Triple cur = tr;
    if (!inverse) {
      switch (j) {
        case 1: cur = pi_rotate(s_transform(2, s_transform(1, cur, ctx), ctx)); break;
        case 2: cur = s_transform(1, pi_rotate(s_transform(2, cur, ctx)), ctx); break;
        case 3: cur = s_transform(2, s_transform(1, pi2(cur), ctx), ctx); break;
      }
    } else {
      // inverses: (pi s2 s1)^{-1} = s1 s2 pi^{-1} = s1 s2 pi pi, etc.
      switch (j) {
        case 1: cur = s_transform(1, s_transform(2, pi2(cur), ctx), ctx); break;
        case 2: cur = s_transform(2, pi2(s_transform(1, cur, ctx)), ctx); break;
        case 3: cur = pi_rotate(s_transform(1, s_transform(2, cur, ctx), ctx)); break;
      }
    }
    cur.lineage.push_back(std::string("T") + std::to_string(j) + (inverse ? "^-1" : ""));
    return cur;
  } catch (const DivisionByZeroComponent& e) {
    throw IndeterminateTransformation(std::string("T_apply: guard denominator vanished (") +
                                      e.what() + ")");
  }
}

P4Triple tower(unsigned long n, int m, const Complex& x, const PrecisionContext& ctx) {
  if (m != 0 && m != -1) throw std::invalid_argument("tower: m in {0,-1}");
  P4Triple cur = seed_triple(x, m == 0 ? P4Seed::m0 : P4Seed::m1, ctx);
  for (unsigned long k = 0; k < n; ++k) cur = T_apply(1, cur, false, ctx);
  return cur;
}

Complex sigma_from_triple(const P4Triple& tr) {
  return ldexp2(tr.f[0] * tr.f[1] * tr.f[2], -1) + tr.alpha[2] * tr.f[1] -
         tr.alpha[1] * tr.f[2];
}

std::pair<Complex, Complex> sigma_form_residual(const Complex& s, const Complex& s1,
                                                const Complex& s2, const Complex& x,
                                                const Complex& a1, const Complex& a2) {
  Complex xs = x * s1 - s;
  Complex tail = ldexp2(s1 * (s1 + ldexp2(a1, 1)) * (s1 - ldexp2(a2, 1)), 2);
  Complex sq = s2 * s2;
  return {sq - ldexp2(xs, 2) + tail, sq - ldexp2(xs * xs, 2) + tail};
}

Complex fd_derivative(const std::function<Complex(const Complex&)>& fn, const Complex& x,
                      int order, const Real& h, const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  Real hw = h.with_prec(wp);
  auto at = [&](long k) { return fn(x.with_prec(wp) + Complex(Real(k, wp) * hw)); };
  if (order == 1) {
    // 8th order central: (3 f_{-4} - 32 f_{-3} + 168 f_{-2} - 672 f_{-1}
    //                     + 672 f_1 - 168 f_2 + 32 f_3 - 3 f_4) / (840 h)
    Complex num = Real(3L, wp) * at(-4) - Real(32L, wp) * at(-3) + Real(168L, wp) * at(-2) -
                  Real(672L, wp) * at(-1) + Real(672L, wp) * at(1) - Real(168L, wp) * at(2) +
                  Real(32L, wp) * at(3) - Real(3L, wp) * at(4);
    return num / Complex(Real(840L, wp) * hw);
  }
  if (order == 2) {
    // 8th order: (-1/560, 8/315, -1/5, 8/5, -205/72, 8/5, -1/5, 8/315, -1/560)/h^2
    Complex num = -(at(-4) + at(4)) / Real(560L, wp) +
                  (at(-3) + at(3)) * (Real(8L, wp) / Real(315L, wp)) -
                  (at(-2) + at(2)) / Real(5L, wp) +
                  (at(-1) + at(1)) * (Real(8L, wp) / Real(5L, wp)) -
                  at(0) * (Real(205L, wp) / Real(72L, wp));
    return num / Complex(hw * hw);
  }
  throw std::invalid_argument("fd_derivative: order must be 1 or 2");
}

Complex tau_wronskian(int family, const std::vector<long>& rows, const Complex& x,
                      const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  size_t n = rows.size();
  if (n == 0) return Complex(Real(1L, wp), Real(0L, wp));
  long max_idx = 0;
  for (long r : rows) max_idx = std::max(max_idx, r + (long)n - 1);
  std::vector<Complex> psi = psi_values(family == 0 ? 0 : 1, (size_t)max_idx + 1, x, ctx);
  // derivative values: w^{(p)} = (-sqrt2)^p (s0)_p psi_p, s0 = 1/2 or 3/2
  Real s0 = (family == 0) ? Real(0.5, wp) : Real(1.5, wp);
  Real msqrt2 = -sqrt(Real(2L, wp));
  std::vector<Complex> w((size_t)max_idx + 1, Complex(Real(0L, wp), Real(0L, wp)));
  Real poch(1L, wp), cpow(1L, wp);
  for (long p = 0; p <= max_idx; ++p) {
    if (p > 0) {
      poch *= (s0 + Real(p - 1, wp));
      cpow *= msqrt2;
    }
    w[(size_t)p] = Complex(cpow * poch) * psi[(size_t)p];
  }
  std::vector<std::vector<Complex>> M(n, std::vector<Complex>());
  for (size_t i = 0; i < n; ++i) {
    M[i].reserve(n);
    for (size_t j = 0; j < n; ++j) M[i].push_back(w[(size_t)(rows[i] + (long)j)]);
  }
  return det_lu(std::move(M));
}

TauFamily tau_families(const Complex& x, unsigned long m_max, const PrecisionContext& ctx) {
  TauFamily fam;
  fam.x = x.with_prec(ctx.prec_bits);
  for (unsigned long n = 0; n <= m_max; ++n) {
    std::vector<long> rows(n + 1);
    for (unsigned long i = 0; i <= n; ++i) rows[i] = (long)i;
    fam.tau_e.push_back(tau_wronskian(0, rows, x, ctx));
    fam.tau_o.push_back(tau_wronskian(1, rows, x, ctx));
  }
  return fam;
}

namespace {

std::vector<long> iota_rows(unsigned long count) {
  std::vector<long> rows(count);
  for (unsigned long i = 0; i < count; ++i) rows[i] = (long)i;
  return rows;
}

}  // namespace

Complex toda_residual(int family, unsigned long n, const Complex& x,
                      const PrecisionContext& ctx) {
  // tau_n has rows 0..n; tau' bumps the last row; tau'' = D(0..n-2,n,n+1) + D(0..n-1,n+2)
  std::vector<long> r = iota_rows(n + 1);
  Complex tau = tau_wronskian(family, r, x, ctx);
  std::vector<long> r1 = r;
  r1.back() += 1;
  Complex tau1 = tau_wronskian(family, r1, x, ctx);
  Complex tau2a(ctx.prec_bits);
  if (n >= 1) {
    std::vector<long> ra = r;
    ra[n - 1] += 1;
    ra[n] += 1;
    tau2a = tau_wronskian(family, ra, x, ctx);
  } else {
    tau2a = Complex(Real(0L, ctx.prec_bits), Real(0L, ctx.prec_bits));
  }
  std::vector<long> rb = r;
  rb.back() += 2;
  Complex tau2 = tau2a + tau_wronskian(family, rb, x, ctx);
  Complex tau_plus = tau_wronskian(family, iota_rows(n + 2), x, ctx);
  Complex tau_minus = (n == 0) ? Complex(Real(1L, ctx.prec_bits), Real(0L, ctx.prec_bits))
                               : tau_wronskian(family, iota_rows(n), x, ctx);
  Complex resid = tau2 * tau - tau1 * tau1 - tau_plus * tau_minus;
  Real scale = max(max(abs(tau2 * tau), abs(tau1 * tau1)), abs(tau_plus * tau_minus));
  if (scale.is_zero()) return resid;
  return resid / scale;
}

Complex tau_log_derivative(int family, unsigned long n, const Complex& x,
                           const PrecisionContext& ctx) {
  std::vector<long> r = iota_rows(n + 1);
  Complex tau = tau_wronskian(family, r, x, ctx);
  if (abs(tau) < ctx.tol())
    throw NumericError("tau_log_derivative: tau vanishes at this x");
  std::vector<long> r1 = r;
  r1.back() += 1;
  return tau_wronskian(family, r1, x, ctx) / tau;
}

Complex sigma_tau_route(int family, unsigned long n, const Complex& x,
                        const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  Complex xx = x.with_prec(wp);
  // families of size n: tau~-determinant index n-1
  if (n == 0) throw std::invalid_argument("sigma_tau_route: n >= 1");
  Complex dlog = tau_log_derivative(family, n - 1, x, ctx);
  Real coeff = (family == 0) ? (Real((long)n, wp) - Real(0.5, wp))
                             : (Real((long)n, wp) + Real(0.5, wp));
  return dlog - ldexp2(Complex(coeff) * xx, 1);
}

Complex hankel_parity_det(int family, unsigned long n, const Complex& t, const Real& N,
                          const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  if (n == 0) return Complex(Real(1L, wp), Real(0L, wp));
  Complex c = Complex(sqrt(ldexp2(N.with_prec(wp), -1)));
  Complex arg = c * t.with_prec(wp);
  Complex pref = exp(ldexp2(Complex(N.with_prec(wp)) * t.with_prec(wp) * t.with_prec(wp), -3));
  size_t need = 2 * n - 1;
  std::vector<Complex> g;
  g.reserve(need);
  for (size_t k = 0; k < need; ++k) {
    Complex nu(Real(-0.5, wp) - Real((long)((family == 0 ? 0 : 1) + (long)k), wp));
    g.push_back(pref * pcf_D(nu, arg, ctx));
  }
  Real s0 = (family == 0) ? Real(0.5, wp) : Real(1.5, wp);
  std::vector<Complex> entry(need, Complex(Real(0L, wp), Real(0L, wp)));
  Real poch(1L, wp);
  Complex cpow(Real(1L, wp), Real(0L, wp));
  for (size_t k = 0; k < need; ++k) {
    if (k > 0) {
      poch *= (s0 + Real((long)k - 1, wp));
      cpow *= -c;
    }
    entry[k] = cpow * Complex(poch) * g[k];
  }
  std::vector<std::vector<Complex>> M(n, std::vector<Complex>());
  for (size_t i = 0; i < n; ++i) {
    M[i].reserve(n);
    for (size_t j = 0; j < n; ++j) M[i].push_back(entry[i + j]);
  }
  return det_lu(std::move(M));
}

PoleScanResult pole_scan(unsigned long n, double x0, double x1, double y0, double y1,
                         int nx, int ny, const Real& N, const PrecisionContext& ctx) {
  if (nx < 2 || ny < 2) throw std::invalid_argument("pole_scan: grid too small");
  if ((long)nx * (long)ny > 10000000L) throw std::invalid_argument("pole_scan: grid too large");
  PoleScanResult result;
  double dx = (x1 - x0) / nx, dy = (y1 - y0) / ny;
  double diag = std::hypot(dx, dy);

  for (int family = 0; family < 2; ++family) {
    unsigned long size = (family == 0) ? n : n;  // zeros of H^e_n and H^o_n
    // grid values
    std::vector<std::vector<Complex>> vals((size_t)ny + 1);
    for (int iy = 0; iy <= ny; ++iy) {
      vals[(size_t)iy].reserve((size_t)nx + 1);
      for (int ix = 0; ix <= nx; ++ix) {
        Complex t = ctx.C(x0 + dx * ix, y0 + dy * iy);
        vals[(size_t)iy].push_back(hankel_parity_det(family, size, t, N, ctx));
      }
    }
    auto sgn_re = [&](int ix, int iy) { return vals[(size_t)iy][(size_t)ix].re().sign() >= 0; };
    auto sgn_im = [&](int ix, int iy) { return vals[(size_t)iy][(size_t)ix].im().sign() >= 0; };
    for (int iy = 0; iy < ny; ++iy) {
      for (int ix = 0; ix < nx; ++ix) {
        bool re_mix = !(sgn_re(ix, iy) == sgn_re(ix + 1, iy) &&
                        sgn_re(ix, iy) == sgn_re(ix, iy + 1) &&
                        sgn_re(ix, iy) == sgn_re(ix + 1, iy + 1));
        bool im_mix = !(sgn_im(ix, iy) == sgn_im(ix + 1, iy) &&
                        sgn_im(ix, iy) == sgn_im(ix, iy + 1) &&
                        sgn_im(ix, iy) == sgn_im(ix + 1, iy + 1));
        if (!(re_mix && im_mix)) continue;
        // Newton refinement from the cell center, derivative by central FD
        Complex t = ctx.C(x0 + dx * (ix + 0.5), y0 + dy * (iy + 0.5));
        Real h(diag * 1e-3, ctx.prec_bits);
        bool ok = false;
        for (int it = 0; it < 40; ++it) {
          Complex f = hankel_parity_det(family, size, t, N, ctx);
          Complex fp = (hankel_parity_det(family, size, t + Complex(h), N, ctx) -
                        hankel_parity_det(family, size, t - Complex(h), N, ctx)) /
                       Complex(ldexp2(h, 1));
          Complex fi = (hankel_parity_det(family, size, t + Complex(Real(0L, ctx.prec_bits), h), N, ctx) -
                        hankel_parity_det(family, size, t - Complex(Real(0L, ctx.prec_bits), h), N, ctx)) /
                       Complex(Real(0L, ctx.prec_bits), ldexp2(h, 1));
          // analytic function: two directional derivatives must agree; use fp
          (void)fi;
          if (abs(fp).is_zero()) break;
          Complex step = f / fp;
          t = t - step;
          if (abs(step).to_double() < 1e-12 * diag) { ok = true; break; }
          if (std::fabs(t.re().to_double() - (x0 + x1) / 2) > (x1 - x0) ||
              std::fabs(t.im().to_double() - (y0 + y1) / 2) > (y1 - y0)) break;
        }
        if (!ok) {
          result.unresolved_cells++;
          continue;
        }
        // keep zeros inside the window, deduplicate
        double tr = t.re().to_double(), ti = t.im().to_double();
        if (tr < x0 - dx || tr > x1 + dx || ti < y0 - dy || ti > y1 + dy) continue;
        bool dup = false;
        for (const auto& hit : result.zeros) {
          if (hit.family != family) continue;
          if (abs(hit.t - t).to_double() < 0.5 * diag) { dup = true; break; }
        }
        if (!dup) result.zeros.push_back({t, family});
      }
    }
  }
  return result;
}

}  // namespace qlab
