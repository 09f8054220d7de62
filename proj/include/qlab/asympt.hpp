#ifndef QLAB_ASYMPT_HPP
#define QLAB_ASYMPT_HPP

#include "qlab/hankel.hpp"
#include "qlab/surface.hpp"

namespace qlab {

enum class AsymQuantity {
  gamma_sq,
  h_n,
  p_sub_even,
  p_sub_odd,
  P_outer,
  p4_f0,
  p4_f1,
  p4_f2,
  p4_sigma_even,
  p4_sigma_odd
};

// leading-order recurrence coefficient: (a2-b2)^2/4 (even n), 4/(a2-b2)^2 (odd)
Complex predict_gamma_sq(unsigned long n, const TwoCutGeometry& g);

// h_n ~ 2 pi e^{N_n ell_*} { (a2-b2)/2 even; 2/(a2-b2) odd }
Complex predict_h(unsigned long n, const Real& Nn, const TwoCutGeometry& g,
                  const PrecisionContext& ctx);

// p_{2n,2n-2} ~ n t + (a2-b2)^2/8;  p_{2n-1,2n-3} ~ n t + (3a2^2+2a2b2+3b2^2)/8
std::pair<Complex, Complex> predict_subleading_constants(const TwoCutGeometry& g);

// outer asymptotics e^{n g(z)} D^{N_n-n}(z) A(z) { 1 | Theta^0(inf)/Theta^0(z) }
Complex predict_pn_outer(const Complex& z, unsigned long n, long Nn_minus_n,
                         const TwoCutGeometry& g, const SurfaceData& sd,
                         const PrecisionContext& ctx);

// scaled Backlund-iterate limits, branch sqrt(x^2-4) ~ -x at infinity
Complex predict_p4(const Complex& x, AsymQuantity kind, const PrecisionContext& ctx);

struct AsymptoticReport {
  AsymQuantity quantity;
  std::vector<std::pair<unsigned long, Real>> errors;  // (n, |exact - predicted|)
  Real decay_fit_even;  // least-squares exponent p in err ~ n^{-p}, even n
  Real decay_fit_odd;
  Real decay_fit;       // combined
};

enum class NSequence { equal_n, alternating };  // N_n = n or N_n = n + (-1)^n

AsymptoticReport error_table(AsymQuantity q, const Complex& t, unsigned long n_max,
                             NSequence seq, const PrecisionContext& ctx,
                             const Complex* z_outer = nullptr);

// least-squares slope of log err vs log n; returns the decay exponent p
Real fit_decay_exponent(const std::vector<std::pair<unsigned long, Real>>& errors,
                        unsigned long n_min, const PrecisionContext& ctx);

}  // namespace qlab

#endif  // QLAB_ASYMPT_HPP
