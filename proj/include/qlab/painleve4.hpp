#ifndef QLAB_PAINLEVE4_HPP
#define QLAB_PAINLEVE4_HPP

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "qlab/prec.hpp"

namespace qlab {

// Solution triple of the symmetric Painleve-IV system at a point x:
// f_0+f_1+f_2 = 2x, alpha_0+alpha_1+alpha_2 = 1.
struct P4Triple {
  Complex x;
  std::array<Complex, 3> f;
  std::array<Complex, 3> alpha;
  std::vector<std::string> lineage;

  Complex constraint_residual() const { return f[0] + f[1] + f[2] - ldexp2(x, 1); }
};

enum class P4Seed { m0, m1 };

// m0: (0, phi'/phi, 2x - phi'/phi), phi = e^{x^2/2} D_{-1/2}(sqrt2 x),
//     parameters (0, 1/2, 1/2);
// m1: (0, 2x + psi'/psi, -psi'/psi), psi = e^{x^2/2} D_{-3/2}(sqrt2 x),
//     parameters (0, 3/2, -1/2).
P4Triple seed_triple(const Complex& x, P4Seed which, const PrecisionContext& ctx);

// affine Weyl reflections and the cyclic shift
P4Triple s_transform(int i, const P4Triple& tr, const PrecisionContext& ctx);
P4Triple pi_rotate(const P4Triple& tr);

// Backlund translations T_1 = pi s_2 s_1, T_2 = s_1 pi s_2, T_3 = s_2 s_1 pi
P4Triple T_apply(int j, const P4Triple& tr, bool inverse, const PrecisionContext& ctx);

// T_1^n applied to the m0 (m = 0) or m1 (m = -1) seed
P4Triple tower(unsigned long n, int m, const Complex& x, const PrecisionContext& ctx);

// Jimbo-Miwa-Okamoto sigma: (1/2) f0 f1 f2 + alpha_2 f1 - alpha_1 f2
Complex sigma_from_triple(const P4Triple& tr);

// both printed variants of the sigma-form residual:
//   first:  (s'')^2 - 4 (x s' - s)   + 4 s'(s'+2a1)(s'-2a2)
//   second: (s'')^2 - 4 (x s' - s)^2 + 4 s'(s'+2a1)(s'-2a2)
std::pair<Complex, Complex> sigma_form_residual(const Complex& s, const Complex& s1,
                                                const Complex& s2, const Complex& x,
                                                const Complex& a1, const Complex& a2);

// high-order central differences of a scalar function (8th order)
Complex fd_derivative(const std::function<Complex(const Complex&)>& fn, const Complex& x,
                      int order, const Real& h, const PrecisionContext& ctx);

// --- tau determinant families -----------------------------------------------
// tau~_{n,0,0}(x)  = det[ d^{i+j}/dx^{i+j} (e^{x^2/2} D_{-1/2}(sqrt2 x)) ]_{i,j=0}^{n}
// tau~_{n,-1,0}(x) = same with D_{-3/2}; tau~_{-1} := 1
struct TauFamily {
  Complex x;
  std::vector<Complex> tau_e;  // index n = 0..m_max
  std::vector<Complex> tau_o;
};
TauFamily tau_families(const Complex& x, unsigned long m_max, const PrecisionContext& ctx);

// Wronskian-type determinant with selectable row offsets (exact derivatives
// of the determinant come from shifted last rows)
Complex tau_wronskian(int family /*0 even, 1 odd*/, const std::vector<long>& rows,
                      const Complex& x, const PrecisionContext& ctx);

// tau''tau - (tau')^2 - tau_+ tau_-, relative to the largest of the three terms
Complex toda_residual(int family, unsigned long n, const Complex& x,
                      const PrecisionContext& ctx);

// d/dx log tau~ (exact, via the shifted-row determinant)
Complex tau_log_derivative(int family, unsigned long n, const Complex& x,
                           const PrecisionContext& ctx);

// sigma_{n-1,0,0}(x)  = d/dx log( e^{-(n-1/2)x^2} tau-determinant of size n )
// sigma_{n-1,-1,0}(x) = d/dx log( e^{-(n+1/2)x^2} ... odd family ... )
Complex sigma_tau_route(int family, unsigned long n, const Complex& x,
                        const PrecisionContext& ctx);

// --- pole scan ---------------------------------------------------------------
struct PoleScanHit {
  Complex t;
  int family;  // 0: zero of H^{(e)}_n, 1: zero of H^{(o)}_n
};
struct PoleScanResult {
  std::vector<PoleScanHit> zeros;
  long unresolved_cells = 0;
};

// zeros of H^{(e)}_n(t,N) and H^{(o)}_n(t,N) over the rectangular t-window
// (these are the pole locations of the Backlund iterates after the
// 2 N^{-1/2} coordinate map)
PoleScanResult pole_scan(unsigned long n, double x0, double x1, double y0, double y1,
                         int nx, int ny, const Real& N, const PrecisionContext& ctx);

// single even/odd determinant value at (t, N) (scan building block)
Complex hankel_parity_det(int family, unsigned long n, const Complex& t, const Real& N,
                          const PrecisionContext& ctx);

}  // namespace qlab

#endif  // QLAB_PAINLEVE4_HPP
