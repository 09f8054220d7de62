#ifndef QLAB_MOMENTS_HPP
#define QLAB_MOMENTS_HPP

#include <vector>

#include "qlab/prec.hpp"

namespace qlab {

// Parameter point of the quartic weight e^{-N V(z;t)}, V = z^4/4 + t z^2/2.
struct ModelPoint {
  Complex t;
  Real N;

  ModelPoint(Complex t_, Real N_) : t(std::move(t_)), N(std::move(N_)) {
    if (!(N > Real(0L, N.prec()))) throw std::invalid_argument("ModelPoint: N must be > 0");
  }
  ModelPoint(double t_re, double t_im, double N_, mpfr_prec_t prec)
      : ModelPoint(Complex(t_re, t_im, prec), Real(N_, prec)) {}
};

enum class MomentProvenance { closed_form, recursion, quadrature };

// mu[k] = \int_R s^k e^{-N V(s;t)} ds, odd entries identically zero.
struct MomentTable {
  ModelPoint point;
  std::vector<Complex> mu;  // indices 0..2m
  MomentProvenance provenance;
};

// mu_0(t,N) = 2^{1/4} sqrt(pi) N^{-1/4} e^{N t^2/8} D_{-1/2}(sqrt(N/2) t)
Complex mu0(const ModelPoint& point, const PrecisionContext& ctx);

// closed form for mu_{2k}: 2^{k/2+1/4} N^{-(k/2+1/4)} sqrt(pi) (1/2)_k
//   * e^{N t^2/8} D_{-1/2-k}(sqrt(N/2) t)
Complex mu2k_closed(unsigned long k, const ModelPoint& point, const PrecisionContext& ctx);

// table filled from the seeds mu_0, mu_2 = -(2/N) d mu_0/dt and the
// integration-by-parts recursion N mu_{k+4} = (k+1) mu_k - N t mu_{k+2}
MomentTable moment_table(const ModelPoint& point, unsigned long m, const PrecisionContext& ctx);

// same table by the closed form, for cross-checks
MomentTable moment_table_closed(const ModelPoint& point, unsigned long m,
                                const PrecisionContext& ctx);

// independent oracle: doubly-exponential quadrature on the real axis
Complex moment_quadrature_oracle(unsigned long k, const ModelPoint& point,
                                 const PrecisionContext& ctx);

// weight e^{-N V(s;t)} at real s
Complex quartic_weight(const Real& s, const ModelPoint& point, const PrecisionContext& ctx);

}  // namespace qlab

#endif  // QLAB_MOMENTS_HPP
