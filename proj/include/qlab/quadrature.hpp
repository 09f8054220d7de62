#ifndef QLAB_QUADRATURE_HPP
#define QLAB_QUADRATURE_HPP

#include <functional>

#include "qlab/prec.hpp"

namespace qlab {

using LineIntegrand = std::function<Complex(const Real&)>;

// Doubly-exponential quadrature.  All routines refine the trapezoid step
// until two consecutive levels agree to 2^{tol_exp2} relative (with the same
// value as an absolute floor), and throw QuadratureStall at the level cap.

// integral over (-inf, inf); substitution s = sinh(c sinh u)
Complex de_integral_line(const LineIntegrand& f, const PrecisionContext& ctx, int tol_exp2);

// integral over (0, inf); substitution t = exp(c sinh u)
Complex de_integral_halfline(const LineIntegrand& f, const PrecisionContext& ctx, int tol_exp2);

// integral over the straight segment [0,1] in the parameter; substitution
// x = (1 + tanh((pi/2) sinh u))/2 (tanh-sinh; tolerates endpoint square-root
// singularities)
Complex de_integral_01(const LineIntegrand& f, const PrecisionContext& ctx, int tol_exp2);

// convenience: integral of g(z) dz along the straight segment from z0 to z1
Complex segment_integral(const std::function<Complex(const Complex&)>& g,
                         const Complex& z0, const Complex& z1,
                         const PrecisionContext& ctx, int tol_exp2);

}  // namespace qlab

#endif  // QLAB_QUADRATURE_HPP
