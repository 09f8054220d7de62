#ifndef QLAB_ORTHOPOLY_HPP
#define QLAB_ORTHOPOLY_HPP

#include <vector>

#include "qlab/hankel.hpp"

namespace qlab {

// Monic P_n(z;t,N); coefficients of parity opposite to the degree are
// exactly zero.
struct MonicPolynomial {
  unsigned long degree = 0;
  std::vector<Complex> coeffs;  // coeffs[k] multiplies z^k, coeffs[degree] == 1
  ModelPoint point;

  Complex eval(const Complex& z) const;
  Complex eval_derivative(const Complex& z) const;
};

// three-term recurrence P_{k+1} = z P_k - gamma_k^2 P_{k-1}
MonicPolynomial build_pn(const ModelPoint& point, unsigned long n, const PrecisionContext& ctx);
MonicPolynomial build_pn(const OPSequence& seq, unsigned long n, const PrecisionContext& ctx);

// cofactor-expansion route through the moment determinant (cross-check path)
MonicPolynomial build_pn_determinant(const ModelPoint& point, unsigned long n,
                                     const PrecisionContext& ctx);

// quadrature of z^k P_n(z) e^{-N V(z;t)} over the real axis
Complex orthogonality_residual(const ModelPoint& point, unsigned long n, unsigned long k,
                               const PrecisionContext& ctx);

// --- rescale maps -----------------------------------------------------------
// P_n(z;t,N) = N^{-deg/4} P_n(N^{1/4} z; N^{1/2} t, 1)
// and the generalized-Freud connection
// P_n(x;t,N) = (2^{-1/2}N^{1/4})^{-deg} S_n(2^{-1/2}N^{1/4} x; -N^{1/2} t, -1/2).
// The induced coefficient maps:
//   N^{1/2} gamma_n^2(2 N^{-1/2} t, N) = gamma_n^2(2t, 1)
//   N^{1/2} p_{n,n-2}(2 N^{-1/2} t, N) = p_{n,n-2}(2t, 1)
enum class RescaleDirection { to_unit_N, from_unit_N };

std::vector<Complex> rescale_pn_coeffs(const std::vector<Complex>& coeffs, const Real& N,
                                       RescaleDirection dir, const PrecisionContext& ctx);
Complex rescale_gamma_sq(const Complex& value, const Real& N, RescaleDirection dir,
                         const PrecisionContext& ctx);
Complex rescale_p_sub(const Complex& value, const Real& N, RescaleDirection dir,
                      const PrecisionContext& ctx);
// S_n coefficients (lambda = -1/2) from P_n coefficients at (t, N)
std::vector<Complex> freud_sn_coeffs(const std::vector<Complex>& pn_coeffs, const Real& N,
                                     const PrecisionContext& ctx);

// all roots, companion-free: Aberth-Ehrlich simultaneous iteration at full
// precision with ring initialization; +/- pairs enforced by parity afterwards
std::vector<Complex> pn_zeros(const MonicPolynomial& poly, const PrecisionContext& ctx);

}  // namespace qlab

#endif  // QLAB_ORTHOPOLY_HPP
