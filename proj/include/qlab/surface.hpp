#ifndef QLAB_SURFACE_HPP
#define QLAB_SURFACE_HPP

#include "qlab/geometry.hpp"

namespace qlab {

// Genus-1 data for w^2 = (z^2-a2^2)(z^2-b2^2).  Homology: alpha over the arc
// through 0 joining -a2,a2 (oriented towards -a2 on sheet 0), beta over the
// cut [-b2,-a2], orientation fixed so that Im B > 0.  The Abel map is
// anchored at b2 and integrates the normalized differential along paths that
// avoid the alpha/beta cycles; sheet 1 values come from the mirror path.
struct SurfaceData {
  TwoCutGeometry geometry;
  Complex alpha_period;   // loop integral of dz/w over alpha
  Complex alpha_norm;     // its inverse (normalization of the differential)
  Complex B;              // beta-period of the normalized differential
  Complex abel_zero0, abel_zero1;  // A(0^{(0)}), A(0^{(1)})
  Complex abel_inf0, abel_inf1;    // A(inf^{(0)}), A(inf^{(1)})
  int beta_sign = +1;     // orientation factor applied to realize Im B > 0
};

SurfaceData surface_data(const TwoCutGeometry& geometry, const PrecisionContext& ctx);

// Abel map A(z^{(k)}) on sheet k (path-planned from b2, no alpha/beta
// crossings).  Throws OnCutError near the cuts/alpha projection.
Complex abel_map(const Complex& z, int sheet, const SurfaceData& sd,
                 const PrecisionContext& ctx);

// Riemann theta with lattice Z + B Z, truncation chosen from Im B and tol
struct ThetaEvaluator {
  Complex B;
  long trunc_K;
};
ThetaEvaluator make_theta_evaluator(const Complex& B, const PrecisionContext& ctx);
Complex riemann_theta(const Complex& x, const ThetaEvaluator& th, const PrecisionContext& ctx);

// theta-quotient with one simple pole at 0^{(0)} and one simple zero at 0^{(1)}
struct ThetaRatioValue {
  Complex value;
  bool near_pole = false;
};
ThetaRatioValue theta_ratio(const Complex& z, int sheet, const SurfaceData& sd,
                            const PrecisionContext& ctx);
// value at the points over infinity
Complex theta_ratio_infinity(int sheet, const SurfaceData& sd, const PrecisionContext& ctx);

// gamma(z) = ((z-b2)(z+a2)/((z+b2)(z-a2)))^{1/4}, analytic off the cuts,
// gamma(inf) = 1; A = (gamma+1/gamma)/2, B = (gamma-1/gamma)/(2i)
Complex quartic_root_gamma(const Complex& z, const TwoCutGeometry& g,
                           const PrecisionContext& ctx);
Complex fun_A(const Complex& z, const TwoCutGeometry& g, const PrecisionContext& ctx);
Complex fun_B(const Complex& z, const TwoCutGeometry& g, const PrecisionContext& ctx);

}  // namespace qlab

#endif  // QLAB_SURFACE_HPP
