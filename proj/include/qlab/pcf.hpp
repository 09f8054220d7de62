#ifndef QLAB_PCF_HPP
#define QLAB_PCF_HPP

#include "qlab/prec.hpp"

namespace qlab {

// Gamma function for complex argument (Stirling series with argument shift,
// reflection formula for Re z < 1/2).  Throws PoleAtNonPositiveInteger.
Complex gamma_fn(const Complex& z, const PrecisionContext& ctx);

// 1/Gamma(z); returns exact 0 at the poles of Gamma.
Complex rgamma_fn(const Complex& z, const PrecisionContext& ctx);

// Parabolic cylinder function D_nu(z) (Whittaker normalization, DLMF 12.1:
// D_nu(z) = U(-nu-1/2, z)).  Evaluated from the even/odd confluent series
// DLMF 12.4.1 + 12.2.6-7, with a Kummer transform for Re(z^2) < 0 and
// precision escalation when cancellation is detected.
Complex pcf_D(const Complex& nu, const Complex& z, const PrecisionContext& ctx);

// dD_nu/dz via the contiguous relation D'_nu(z) = (z/2) D_nu(z) - D_{nu+1}(z)
// (DLMF 12.8.3).
Complex pcf_D_prime(const Complex& nu, const Complex& z, const PrecisionContext& ctx);

// Kummer confluent series M(a,b,w) = 1F1(a;b;w); used by pcf_D and exposed
// for tests.  max_mag (optional) receives the largest intermediate term
// magnitude, for cancellation bookkeeping.
Complex kummer_m(const Complex& a, const Complex& b, const Complex& w,
                 mpfr_prec_t work_prec, Real* max_mag = nullptr);

// (a)_k Pochhammer at the given precision
Real pochhammer(const Real& a, unsigned long k);

}  // namespace qlab

#endif  // QLAB_PCF_HPP
