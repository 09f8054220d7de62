#include "qlab/quadrature.hpp"

namespace qlab {

namespace {

// Adaptive trapezoid sums in the transformed variable u for the three
// doubly-exponential substitutions.  Refinement halves the step, reusing
// previous levels: I_{h/2} = I_h/2 + (h/2) * sum over odd nodes.
class DeKernel {
 public:
  DeKernel(const LineIntegrand& f, const PrecisionContext& ctx, int tol_exp2, double umax)
      : f_(f), wp_(ctx.prec_bits + 16),
        tol_(Real::two_pow(tol_exp2, ctx.prec_bits + 16)), umax_(umax) {}
  virtual ~DeKernel() = default;

  virtual void node(const Real& u, Real& s, Real& jac) const = 0;

  Complex run() const {
    const int level_cap = 11;
    Real h(0.5, wp_);
    Complex total = ldexp2(sum_nodes(h, 1), 0) * h;
    for (int level = 1; level <= level_cap; ++level) {
      h = ldexp2(h, -1);
      Complex odd = sum_nodes(h, 2) * h;
      Complex refined = ldexp2(total, -1) + odd;
      Real diff = abs(refined - total);
      total = refined;
      if (level >= 2 && diff <= ldexp2(tol_, 2) * max(abs(total), Real(1L, wp_)))
        return total;
    }
    throw QuadratureStall("de_integral: tolerance not met at max refinement level");
  }

 private:
  // stride 1: all nodes k = 0, +-1, +-2, ...; stride 2: odd nodes only
  Complex sum_nodes(const Real& h, int stride) const {
    Complex acc(Real(0L, wp_), Real(0L, wp_));
    if (stride == 1) acc += term_at(Real(0L, wp_));
    for (int dir = 0; dir < 2; ++dir) {
      int tiny_streak = 0;
      const long kcap = (long)(64.0 / h.to_double()) + 64;
      for (long k = 1; k <= kcap; k += stride) {
        Real u = h * Real(k, wp_);
        if (u.to_double() > umax_) break;
        if (dir == 1) u = -u;
        Complex t = term_at(u);
        acc += t;
        if (abs(t) < tol_ * max(abs(acc), Real(1L, wp_))) {
          if (++tiny_streak >= 4) break;
        } else {
          tiny_streak = 0;
        }
      }
    }
    return acc;
  }

  Complex term_at(const Real& u) const {
    Real s(wp_), jac(wp_);
    node(u, s, jac);
    Complex t = f_(s) * jac;
    if (!t.is_finite()) throw NumericError("de_integral: non-finite integrand value");
    return t;
  }

 protected:
  const LineIntegrand& f_;
  mpfr_prec_t wp_;
  Real tol_;
  double umax_;
};

class LineKernel : public DeKernel {
 public:
  using DeKernel::DeKernel;
  void node(const Real& u, Real& s, Real& jac) const override {
    Real su = sinh(u);
    s = sinh(su);
    jac = cosh(u) * cosh(su);
  }
};

class HalfLineKernel : public DeKernel {
 public:
  using DeKernel::DeKernel;
  void node(const Real& u, Real& s, Real& jac) const override {
    Real t = exp(sinh(u));
    s = t;
    jac = cosh(u) * t;
  }
};

class TanhSinhKernel : public DeKernel {
 public:
  using DeKernel::DeKernel;
  void node(const Real& u, Real& s, Real& jac) const override {
    mpfr_prec_t p = u.prec();
    Real half_pi = ldexp2(Real::pi(p), -1);
    Real su = half_pi * sinh(u);
    Real th(p);
    mpfr_tanh(th.raw(), su.raw(), MPFR_RNDN);
    s = ldexp2(th + Real(1L, p), -1);
    Real ch = cosh(su);
    jac = ldexp2(half_pi * cosh(u) / (ch * ch), -1);
  }
};

}  // namespace

Complex de_integral_line(const LineIntegrand& f, const PrecisionContext& ctx, int tol_exp2) {
  return LineKernel(f, ctx, tol_exp2, 5.5).run();
}

Complex de_integral_halfline(const LineIntegrand& f, const PrecisionContext& ctx, int tol_exp2) {
  return HalfLineKernel(f, ctx, tol_exp2, 6.5).run();
}

Complex de_integral_01(const LineIntegrand& f, const PrecisionContext& ctx, int tol_exp2) {
  return TanhSinhKernel(f, ctx, tol_exp2, 5.5).run();
}

Complex segment_integral(const std::function<Complex(const Complex&)>& g,
                         const Complex& z0, const Complex& z1,
                         const PrecisionContext& ctx, int tol_exp2) {
  Complex dz = z1 - z0;
  LineIntegrand f = [&](const Real& x) -> Complex { return g(z0 + dz * x) * dz; };
  return de_integral_01(f, ctx, tol_exp2);
}

}  // namespace qlab
