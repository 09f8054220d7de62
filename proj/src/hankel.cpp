#include "qlab/hankel.hpp"

#include <algorithm>

#include "qlab/pcf.hpp"

namespace qlab {

Complex det_lu(std::vector<std::vector<Complex>> M, Real* hadamard) {
  const size_t n = M.size();
  if (n == 0) return Complex(Real(1L, 64), Real(0L, 64));
  mpfr_prec_t wp = M[0][0].prec();
  Real had(1L, wp);
  for (size_t i = 0; i < n; ++i) {
    Real rn(0L, wp);
    for (size_t j = 0; j < n; ++j) rn += norm2(M[i][j]);
    had *= sqrt(rn);
  }
  if (hadamard) *hadamard = had;

  Complex det(Real(1L, wp), Real(0L, wp));
  int sign = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    Real best = abs(M[c][c]);
    for (size_t r = c + 1; r < n; ++r) {
      Real a = abs(M[r][c]);
      if (a > best) { best = a; p = r; }
    }
    if (best.is_zero()) return Complex(Real(0L, wp), Real(0L, wp));
    if (p != c) { std::swap(M[p], M[c]); sign = -sign; }
    det *= M[c][c];
    for (size_t r = c + 1; r < n; ++r) {
      Complex f = M[r][c] / M[c][c];
      for (size_t cc = c; cc < n; ++cc) M[r][cc] -= f * M[c][cc];
    }
  }
  if (sign < 0) det = -det;
  return det;
}

namespace {

std::vector<std::vector<Complex>> moment_matrix(const MomentTable& tab, size_t rows,
                                                const std::vector<size_t>& cols) {
  std::vector<std::vector<Complex>> M(rows);
  for (size_t i = 0; i < rows; ++i) {
    M[i].reserve(cols.size());
    for (size_t j : cols) M[i].push_back(tab.mu.at(i + j));
  }
  return M;
}

std::vector<size_t> iota_cols(size_t n) {
  std::vector<size_t> c(n);
  for (size_t j = 0; j < n; ++j) c[j] = j;
  return c;
}

// zero test with doubled-precision confirmation: Hankel zeros are simple, so
// doubling the precision separates true zeros from cancellation fuzz
bool hankel_zero(const Complex& value, const Real& hadamard, const PrecisionContext& ctx) {
  if (value.is_zero()) return true;
  Real thr = Real::two_pow(-(long)ctx.prec_bits / 2, ctx.prec_bits) * hadamard;
  return abs(value) < thr;
}

// G_k(t) = e^{N t^2/8} D_{-1/2-j0-k}(sqrt(N/2) t), j0 = 0 (even) or 1 (odd)
std::vector<Complex> pcf_column(const ModelPoint& point, int j0, size_t count,
                                const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  Complex t = point.t.with_prec(wp);
  Real N = point.N.with_prec(wp);
  Complex arg = Complex(sqrt(ldexp2(N, -1))) * t;
  Complex pref = exp(ldexp2(Complex(N) * t * t, -3));
  std::vector<Complex> g;
  g.reserve(count);
  for (size_t k = 0; k < count; ++k) {
    Complex nu(Real(-0.5, wp) - Real((long)(j0 + (long)k), wp));
    g.push_back(pref * pcf_D(nu, arg, ctx));
  }
  return g;
}

// det[ (d/dt)^{i+j} G_0 ]_{i,j=0}^{n-1} with (d/dt)^k G_0 = (-c)^k (s0)_k G_k,
// s0 = 1/2 (even family) or 3/2 (odd family)
std::vector<Complex> derivative_family(const ModelPoint& point, int j0, unsigned long m,
                                       const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  Real N = point.N.with_prec(wp);
  Real c = sqrt(ldexp2(N, -1));
  Real s0 = (j0 == 0) ? Real(0.5, wp) : Real(1.5, wp);
  size_t need = (m >= 1) ? 2 * m - 1 : 0;
  std::vector<Complex> g = pcf_column(point, j0, need, ctx);
  std::vector<Complex> entry(need, Complex(Real(0L, wp), Real(0L, wp)));
  Real poch(1L, wp), cpow(1L, wp);
  for (size_t k = 0; k < need; ++k) {
    if (k > 0) {
      poch *= (s0 + Real((long)k - 1, wp));
      cpow *= -c;
    }
    entry[k] = Complex(cpow * poch) * g[k];
  }
  std::vector<Complex> out(m + 1, Complex(Real(1L, wp), Real(0L, wp)));
  for (unsigned long n = 1; n <= m; ++n) {
    std::vector<std::vector<Complex>> M(n, std::vector<Complex>());
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) M[i].push_back(entry[i + j]);
    out[n] = det_lu(std::move(M));
  }
  return out;
}

}  // namespace

HankelFamily hankel_dets(const ModelPoint& point, unsigned long m, const PrecisionContext& ctx) {
  MomentTable tab = moment_table(point, std::max<unsigned long>(2, m), ctx);
  HankelFamily fam{point, {}, {}, {}, {}, {}};
  mpfr_prec_t wp = ctx.prec_bits;
  fam.H.push_back(Complex(Real(1L, wp), Real(0L, wp)));  // H_{-1}
  fam.scale_log.push_back(0);
  fam.zero_flag.push_back(false);
  Real tol = ctx.tol();
  for (unsigned long k = 0; k <= m; ++k) {
    Real had(wp);
    Complex d = det_lu(moment_matrix(tab, k + 1, iota_cols(k + 1)), &had);
    bool zero = hankel_zero(d, had, ctx);
    if (zero) {
      PrecisionContext dctx(ctx.prec_bits * 2, ctx.series_tol_exp2);
      MomentTable tab2 = moment_table(point, std::max<unsigned long>(2, m), dctx);
      Real had2(dctx.prec_bits);
      Complex d2 = det_lu(moment_matrix(tab2, k + 1, iota_cols(k + 1)), &had2);
      Real thr2 = Real::two_pow(-(long)(3 * ctx.prec_bits) / 4, dctx.prec_bits) * had2;
      if (abs(d2) < thr2) {
        d = Complex(Real(0L, wp), Real(0L, wp));
      } else {
        d = d2.with_prec(wp);
        zero = false;
      }
    } else {
      // estimated elimination error: 2^{-prec} * n * hadamard / |H|
      Real est = Real::two_pow(-(long)ctx.prec_bits, wp) * Real((long)k + 1, wp) * had / abs(d);
      if (est > tol)
        throw PrecisionLoss("hankel_dets: relative error estimate above tolerance at k=" +
                            std::to_string(k));
    }
    fam.H.push_back(d);
    fam.scale_log.push_back(abs(d).exponent2());
    fam.zero_flag.push_back(zero);
  }
  fam.He = derivative_family(point, 0, m, ctx);
  fam.Ho = derivative_family(point, 1, m, ctx);
  return fam;
}

bool checkerboard_identity_check(const std::vector<Complex>& c, unsigned long n,
                                 const PrecisionContext& ctx) {
  if (c.size() < 2 * n + 1)
    throw std::invalid_argument("checkerboard_identity_check: need c_0..c_{2n}");
  mpfr_prec_t wp = ctx.prec_bits;
  Complex zero(Real(0L, wp), Real(0L, wp));
  auto interleaved = [&](size_t size) {
    std::vector<std::vector<Complex>> M(size, std::vector<Complex>(size, zero));
    for (size_t i = 0; i < size; ++i)
      for (size_t j = 0; j < size; ++j)
        if ((i + j) % 2 == 0) M[i][j] = c[(i + j) / 2];
    return M;
  };
  auto hank = [&](size_t size, size_t shift) {
    std::vector<std::vector<Complex>> M(size, std::vector<Complex>(size, zero));
    for (size_t i = 0; i < size; ++i)
      for (size_t j = 0; j < size; ++j) M[i][j] = c[i + j + shift];
    return M;
  };
  Real tol = ldexp2(ctx.tol(), 16);
  // det[c_{(i+j)/2}]_{0}^{2n-1} = det[c_{i+j}]_0^{n-1} det[c_{i+j+1}]_0^{n-1}
  Complex lhs1 = det_lu(interleaved(2 * n));
  Complex rhs1 = det_lu(hank(n, 0)) * det_lu(hank(n, 1));
  if (abs(lhs1 - rhs1) > tol * max(Real(1L, wp), max(abs(lhs1), abs(rhs1)))) return false;
  // det[c_{(i+j)/2}]_{0}^{2n} = det[c_{i+j}]_0^{n} det[c_{i+j+1}]_0^{n-1}
  Complex lhs2 = det_lu(interleaved(2 * n + 1));
  Complex rhs2 = det_lu(hank(n + 1, 0)) * det_lu(hank(n, 1));
  if (abs(lhs2 - rhs2) > tol * max(Real(1L, wp), max(abs(lhs2), abs(rhs2)))) return false;
  return true;
}

const Complex& OPSequence::h_at(unsigned long n) const {
  if (n >= h.size() || !h_ok[n]) throw DegenerateDegree((int)n, "h_n missing (degenerate degree)");
  return h[n];
}
const Complex& OPSequence::gamma_sq_at(unsigned long n) const {
  if (n >= gamma_sq.size() || !g_ok[n])
    throw DegenerateDegree((int)n, "gamma_n^2 missing (degenerate degree)");
  return gamma_sq[n];
}
const Complex& OPSequence::p_nm2_at(unsigned long n) const {
  if (n >= p_nm2.size() || !p2_ok[n])
    throw DegenerateDegree((int)n, "p_{n,n-2} missing (degenerate degree)");
  return p_nm2[n];
}
const Complex& OPSequence::p_nm4_at(unsigned long n) const {
  if (n >= p_nm4.size() || !p4_ok[n])
    throw DegenerateDegree((int)n, "p_{n,n-4} missing (degenerate degree)");
  return p_nm4[n];
}

OPSequence op_sequence(const ModelPoint& point, unsigned long m, const PrecisionContext& ctx) {
  HankelFamily fam = hankel_dets(point, m, ctx);
  MomentTable tab = moment_table(point, std::max<unsigned long>(2, m + 1), ctx);
  mpfr_prec_t wp = ctx.prec_bits;
  Complex zero(Real(0L, wp), Real(0L, wp));

  OPSequence seq(point);
  seq.m = m;
  seq.h.assign(m + 1, zero);
  seq.gamma_sq.assign(m + 1, zero);
  seq.p_nm2.assign(m + 1, zero);
  seq.p_nm4.assign(m + 1, zero);
  seq.h_ok.assign(m + 1, false);
  seq.g_ok.assign(m + 1, false);
  seq.p2_ok.assign(m + 1, false);
  seq.p4_ok.assign(m + 1, false);
  seq.degree_full.assign(m + 2, false);
  for (unsigned long n = 0; n <= m + 1; ++n) seq.degree_full[n] = !fam.is_zero((long)n - 1);

  for (unsigned long n = 0; n <= m; ++n) {
    // h_n = H_n / H_{n-1}
    if (!fam.is_zero((long)n) && !fam.is_zero((long)n - 1)) {
      seq.h[n] = fam.at((long)n) / fam.at((long)n - 1);
      seq.h_ok[n] = true;
    }
    if (n == 0) {
      seq.gamma_sq[0] = zero;  // gamma_0^2 := 0 convention
      seq.g_ok[0] = true;
    } else if (seq.h_ok[n] && seq.h_ok[n - 1]) {
      seq.gamma_sq[n] = seq.h[n] / seq.h[n - 1];
      seq.g_ok[n] = true;
    }
    // monic coefficient p_{n,k}: cofactor of z^k in the determinant formula,
    // (-1)^{n+k} det(moment rows, column k removed) / H_{n-1}
    if (seq.degree_full[n] && n >= 2) {
      std::vector<size_t> cols;
      for (size_t j = 0; j <= n; ++j)
        if (j != n - 2) cols.push_back(j);
      Complex minor = det_lu(moment_matrix(tab, n, cols));
      seq.p_nm2[n] = minor / fam.at((long)n - 1);  // (-1)^{n + (n-2)} = +1
      seq.p2_ok[n] = true;
    }
    if (seq.degree_full[n] && n >= 4) {
      std::vector<size_t> cols;
      for (size_t j = 0; j <= n; ++j)
        if (j != n - 4) cols.push_back(j);
      Complex minor = det_lu(moment_matrix(tab, n, cols));
      seq.p_nm4[n] = minor / fam.at((long)n - 1);
      seq.p4_ok[n] = true;
    }
  }
  return seq;
}

DegenPattern degeneration_classify(const ModelPoint& point, unsigned long n,
                                   const PrecisionContext& ctx) {
  HankelFamily fam = hankel_dets(point, n + 1, ctx);
  bool z_nm1 = fam.is_zero((long)n - 1);  // H_{n-1}
  if (!z_nm1) return DegenPattern::full;
  bool z_nm2 = (n >= 1) ? fam.is_zero((long)n - 2) : false;
  bool z_n = fam.is_zero((long)n);
  if (z_nm2 && !z_n) return DegenPattern::pattern_i;
  if (z_n && !z_nm2) return DegenPattern::pattern_ii;
  throw Inconclusive("degeneration_classify: overlapping near-zero Hankel values at n=" +
                     std::to_string(n));
}

std::pair<Complex, Complex> partition_function(const ModelPoint& point, unsigned long n,
                                               const PrecisionContext& ctx) {
  if (n < 1) throw std::invalid_argument("partition_function: need n >= 1");
  mpfr_prec_t wp = ctx.prec_bits;
  Complex t = point.t.with_prec(wp);
  Real N = point.N.with_prec(wp);
  unsigned long half = n / 2;
  HankelFamily fam = hankel_dets(point, std::max<unsigned long>(half + 1, 2), ctx);

  // classical Heine value n! H_{n-1}
  Real nfact = gamma_real(Real((long)n + 1, wp));
  Complex classical = Complex(nfact) * fam.at((long)n - 1);

  // tau-product route; x = N^{1/2} t / 2, tau_{k-1,0,0}(x) = e^{-(k-1/2)x^2} H^e_k(t,N),
  // tau_{k-1,-1,0}(x) = e^{-(k+1/2)x^2} H^o_k(t,N)
  Complex x = Complex(sqrt(N)) * t * Real(0.5, wp);
  Complex x2 = x * x;
  auto tau_e = [&](unsigned long k) {
    return exp(-(Real((long)k, wp) - Real(0.5, wp)) * x2) * fam.He.at(k);
  };
  auto tau_o = [&](unsigned long k) {
    return exp(-(Real((long)k, wp) + Real(0.5, wp)) * x2) * fam.Ho.at(k);
  };
  Real pi = Real::pi(wp);
  Real gN = gamma_real(N + Real(1L, wp));  // the printed N! normalization, read as Gamma(N+1)
  Complex remark(wp);
  if (n % 2 == 0) {
    unsigned long k = half;  // n = 2k
    Real coef = gN * pow(pi, Real((long)k, wp)) *
                Real::two_pow(2 * (long)k * ((long)k - 1), wp) /
                pow(N, Real((long)k * (2 * (long)k - 1), wp));
    remark = Complex(coef) * exp(Complex(Real((long)k, wp) * N) * t * t * Real(0.5, wp)) *
             tau_e(k) * tau_o(k);
  } else {
    unsigned long k = half;  // n = 2k+1
    Real coef = gN * pow(pi, Real((long)k, wp)) *
                Real::two_pow(2 * (long)k * ((long)k - 1), wp) /
                pow(N, Real((long)k * (2 * (long)k - 1), wp));
    Real coef2 = sqrt(pi) * pow(Real(2L, wp), Real(2 * (long)k, wp) + Real(0.25, wp)) /
                 pow(N, Real(2L * (long)k, wp) + Real(0.25, wp));
    remark = Complex(coef * coef2) *
             exp(Complex(Real((long)k, wp) * N) * t * t * Real(0.5, wp)) *
             exp(Complex(N) * t * t * Real(0.25, wp)) * tau_e(k + 1) * tau_o(k);
  }
  return {remark, classical};
}

Complex string_equation_residual(const OPSequence& seq, unsigned long n,
                                 const PrecisionContext& ctx) {
  mpfr_prec_t wp = ctx.prec_bits;
  Complex t = seq.point.t.with_prec(wp);
  Real N = seq.point.N.with_prec(wp);
  const Complex& gm = (n >= 1) ? seq.gamma_sq_at(n - 1) : seq.gamma_sq_at(0);
  const Complex& g0 = seq.gamma_sq_at(n);
  const Complex& gp = seq.gamma_sq_at(n + 1);
  return g0 * (t + gm + g0 + gp) - Complex(Real((long)n, wp) / N);
}

}  // namespace qlab
