#ifndef QLAB_GEOMETRY_HPP
#define QLAB_GEOMETRY_HPP

#include <vector>

#include "qlab/prec.hpp"

namespace qlab {

enum class Region { O1, O2, O3, boundary, unknown };
enum class CutRealization { chords, traced_arcs };

// Two-cut spectral data for V(z;t) = z^4/4 + t z^2/2:
//   Q(z;t) = (1/4) z^2 (z^2 - a2^2)(z^2 - b2^2),
//   a2 = sqrt(-2-t), b2 = sqrt(2-t) (principal), ell_* = t^2/4 - 1/2.
// Cuts are realized as the straight chords [a2,b2] and [-b2,-a2]; the arc
// through 0 joining -a2 to a2 (the contour piece I_t) is the chord [-a2,a2].
struct TwoCutGeometry {
  Complex t;
  Complex a2, b2;
  Complex ell_star;
  CutRealization cut_realization = CutRealization::chords;
  Region region = Region::unknown;
  mpfr_prec_t prec = 256;

  Complex cut_mid() const { return ldexp2(a2 + b2, -1); }    // m
  Complex cut_half() const { return ldexp2(b2 - a2, -1); }   // d
};

TwoCutGeometry two_cut_geometry(const Complex& t, const PrecisionContext& ctx,
                                bool classify = false);

// branch of sqrt((z^2-a2^2)(z^2-b2^2)) analytic off the two cut chords with
// R^{1/2}(z)/z^2 -> 1 at infinity
Complex R_sqrt(const Complex& z, const TwoCutGeometry& g);
// Q^{1/2}(z) = (z/2) R^{1/2}(z); branch Q^{1/2} = z^3/2 + O(z) at infinity
Complex Q_sqrt(const Complex& z, const TwoCutGeometry& g);

// distance from z to the realized cuts (chords), in units of |z|+1
Real cut_distance(const Complex& z, const TwoCutGeometry& g);
void require_off_cut(const Complex& z, const TwoCutGeometry& g, const PrecisionContext& ctx);

// eta(z) = -2 int_{b2}^z Q^{1/2}, by the closed form
//   eta = -(1/4)(z^2+t) R^{1/2}(z) + log((z^2 + t + R^{1/2}(z))/2),
// log branch fixed by continuity from the normalization ray beyond b2.
Complex eta_b2(const Complex& z, const TwoCutGeometry& g, const PrecisionContext& ctx);

enum class Endpoint { a2, b2, minus_a2, minus_b2 };
// eta anchored at the other branch points: eta_e = eta_{b2} -/+ the purely
// imaginary shifts, sign by the side of the contour
Complex eta_e(const Complex& z, Endpoint e, const TwoCutGeometry& g, const PrecisionContext& ctx);

// Re eta(z), branch-free (no continuation needed)
Real re_eta(const Complex& z, const TwoCutGeometry& g);

// g(z) = (V + ell_* + eta(z))/2
Complex g_fun(const Complex& z, const TwoCutGeometry& g, const PrecisionContext& ctx);

enum class SzegoKind { D_cal, D_norm };
// Szego function D_cal(z) = exp(V/2 - (z^2+t) R^{1/2}/8); D_norm = e^{ell_*/2} D_cal
Complex szego(const Complex& z, const TwoCutGeometry& g, SzegoKind kind,
              const PrecisionContext& ctx);

// one-sided boundary values on the cuts, exact (not offset limits).
// cut = 2 is [a2,b2] (oriented a2 -> b2), cut = 1 is [-b2,-a2] (oriented
// -b2 -> -a2); s in (0,1) parametrizes the chord along its orientation;
// side +1 = left of the orientation.
Complex R_sqrt_oncut(int cut, const Real& s, int side, const TwoCutGeometry& g,
                     const PrecisionContext& ctx);
Complex cut_point(int cut, const Real& s, const TwoCutGeometry& g);

// density d mu / dz = (1/ pi i) Q_+^{1/2}(x) on the realized cut
Complex density(const Complex& x_on_cut, const TwoCutGeometry& g, const PrecisionContext& ctx);
//同 value from the chord parameter directly
Complex density_param(int cut, const Real& s, const TwoCutGeometry& g,
                      const PrecisionContext& ctx);

// trajectory tracing of -Q dz^2 > 0 (or the orthogonal family)
struct Trajectory {
  enum class End { hit_critical, escaped, step_limit };
  std::vector<Complex> points;
  End end = End::step_limit;
  Complex hit;        // critical point reached, when end == hit_critical
  double length = 0;  // arc length
};

Trajectory trace_trajectory(const Complex& start, const Complex& direction,
                            const TwoCutGeometry& g, const PrecisionContext& ctx,
                            bool orthogonal = false, double escape_radius = 0,
                            long max_steps = 40000, double snap_radius = 1e-8);

// the three critical directions of the trajectory field at a simple zero e
std::vector<Complex> critical_directions(const Complex& e, const TwoCutGeometry& g,
                                         const PrecisionContext& ctx);

// heuristic region classifier (two-cut ansatz); never throws
Region classify_region(const Complex& t, const PrecisionContext& ctx);

struct SignChartSample {
  double z_re, z_im;
  double re_eta;
  bool near_cut;
};
std::vector<SignChartSample> sign_chart(const Complex& t, double x0, double x1, double y0,
                                        double y1, int nx, int ny, const PrecisionContext& ctx);

// polyline machinery shared with the Riemann-surface layer ---------------
struct Segment {
  Complex a, b;
};

// barrier segments of the realized contour: the ray (-inf,-b2], the cut
// [-b2,-a2], I_t = [-a2,a2], the cut [a2,b2]
std::vector<Segment> contour_barriers(const TwoCutGeometry& g, bool include_tail_ray,
                                      bool include_It, const PrecisionContext& ctx);

// plan a polyline from `from` to `to` avoiding the barriers (endpoints may
// touch); throws NumericError if no candidate works
std::vector<Complex> plan_path(const Complex& from, const Complex& to,
                               const std::vector<Segment>& barriers,
                               const PrecisionContext& ctx);

// continuation of log((z^2+t+R^{1/2})/2) along a polyline from the anchor ray
Complex eta_log_continued(const std::vector<Complex>& path, const TwoCutGeometry& g,
                          const PrecisionContext& ctx);

}  // namespace qlab

#endif  // QLAB_GEOMETRY_HPP
