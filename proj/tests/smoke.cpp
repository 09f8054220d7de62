// throwaway development smoke checks (replaced by the real suites)
#include <cstdio>

#include "qlab/asympt.hpp"
#include "qlab/moments.hpp"
#include "qlab/orthopoly.hpp"
#include "qlab/painleve4.hpp"
#include "qlab/pcf.hpp"
#include "qlab/surface.hpp"

using namespace qlab;

int main() {
  PrecisionContext ctx(256);
  // D_{-1/2}(0) = 2^{-1/4} sqrt(pi)/Gamma(3/4) = 1.216280214257520...
  Complex d = pcf_D(ctx.C(-0.5), ctx.C(0.0), ctx);
  std::printf("D_{-1/2}(0) = %s\n", d.str(25).c_str());

  Complex dp = pcf_D_prime(ctx.C(-0.5), ctx.C(0.0), ctx);
  std::printf("D'_{-1/2}(0) = %s (expect -0.58136831701911858...)\n", dp.str(25).c_str());

  ModelPoint pt(-3.0, 0.0, 4.0, ctx.prec_bits);
  std::printf("mu0(-3,4) = %s (expect 8494.038680387769447...)\n",
              mu0(pt, ctx).str(25).c_str());
  Complex q = moment_quadrature_oracle(0, pt, ctx);
  std::printf("quad0     = %s\n", q.str(25).c_str());

  OPSequence seq = op_sequence(pt, 8, ctx);
  for (unsigned n = 1; n <= 5; ++n) {
    Complex r = string_equation_residual(seq, n, ctx);
    std::printf("string n=%u resid = %s\n", n, abs(r).str(5).c_str());
  }
  std::printf("p_{4,2}(-3,4) = %s (proto: -5.79426048877 at t=-3? no, that was t)\n",
              seq.p_nm2_at(4).str(15).c_str());

  // geometry at t = -3
  TwoCutGeometry g = two_cut_geometry(ctx.C(-3.0), ctx);
  std::printf("a2 = %s b2 = %s ell=%s\n", g.a2.str(10).c_str(), g.b2.str(10).c_str(),
              g.ell_star.str(10).c_str());
  Complex eta_at_b2 = eta_b2(g.b2 + ctx.C(1e-30, 0.0), g, ctx);
  std::printf("eta(b2+) = %s (expect ~0)\n", eta_at_b2.str(8).c_str());
  Complex gv = g_fun(ctx.C(1e6, 0.0), g, ctx);
  std::printf("g(1e6) - log(1e6) = %s\n",
              (gv - Complex(log(ctx.R(1e6)))).str(8).c_str());

  SurfaceData sd = surface_data(g, ctx);
  std::printf("alpha period = %s\n", sd.alpha_period.str(20).c_str());
  std::printf("B = %s (expect 0.680035319065911609i)\n", sd.B.str(20).c_str());
  std::printf("A(0^0) = %s (expect 0.25 + 0.340017659532955804i)\n",
              sd.abel_zero0.str(20).c_str());
  std::printf("A, inf0 = %s (expect 0.25)\n", sd.abel_inf0.str(20).c_str());
  Complex ratio = theta_ratio_infinity(0, sd, ctx) / theta_ratio_infinity(1, sd, ctx);
  std::printf("theta ratio = %s (expect 2.618033988749894848...)\n", ratio.str(22).c_str());

  // tower dictionary at x=-1.5: (f0)_{1,0,0}(-1.5) = -gamma_2^2(-3, 1)
  P4Triple tr = tower(1, 0, ctx.C(-1.5), ctx);
  ModelPoint p1(-3.0, 0.0, 1.0, ctx.prec_bits);
  OPSequence s1 = op_sequence(p1, 4, ctx);
  std::printf("f0 tower = %s\n-(gamma_2^2) = %s\n", tr.f[0].str(20).c_str(),
              (-s1.gamma_sq_at(2)).str(20).c_str());

  // Toda residual
  Complex toda = toda_residual(0, 2, ctx.C(-1.2), ctx);
  std::printf("toda rel resid (e,2,-1.2) = %s\n", abs(toda).str(5).c_str());
  return 0;
}
