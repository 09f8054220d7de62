#ifndef QLAB_HANKEL_HPP
#define QLAB_HANKEL_HPP

#include <utility>
#include <vector>

#include "qlab/moments.hpp"

namespace qlab {

// Hankel determinants H_k = det[mu_{i+j}]_{i,j=0}^{k} (H_{-1} := 1) together
// with the even/odd derivative-matrix determinants H^{(e)}_k, H^{(o)}_k.
// scale_log carries the base-2 magnitude of each H_k separately, so callers
// can reason about scale without touching the raw values.
struct HankelFamily {
  ModelPoint point;
  std::vector<Complex> H;        // H[k] = H_{k-1}, k = 0..m+1  (H[0] = H_{-1} = 1)
  std::vector<long> scale_log;   // base-2 exponent of |H_{k-1}|
  std::vector<bool> zero_flag;   // H_{k-1} vanishes to tolerance
  std::vector<Complex> He, Ho;   // H^{(e)}_0..m, H^{(o)}_0..m (index = subscript)

  const Complex& at(long k) const { return H.at((size_t)(k + 1)); }   // H_k, k >= -1
  bool is_zero(long k) const { return zero_flag.at((size_t)(k + 1)); }
};

// determinant of a general complex matrix by partially pivoted elimination;
// hadamard receives the row-norm product (scale for zero/precision tests)
Complex det_lu(std::vector<std::vector<Complex>> M, Real* hadamard = nullptr);

HankelFamily hankel_dets(const ModelPoint& point, unsigned long m, const PrecisionContext& ctx);

// Lemma-style checkerboard identity on an arbitrary sequence c_0..c_{2n}:
// det[c_{(i+j)/2}] (odd half-integer entries = 0) factors into the two parity
// Hankel determinants.  Returns false on mismatch.
bool checkerboard_identity_check(const std::vector<Complex>& c, unsigned long n,
                                 const PrecisionContext& ctx);

// Per-n tables derived from the Hankel family: normalizing constants h_n,
// recurrence coefficients gamma_n^2, and the sub-leading monic coefficients
// p_{n,n-2}, p_{n,n-4}.  Entries at degenerate n are marked missing; the
// accessors throw DegenerateDegree there.
struct OPSequence {
  explicit OPSequence(ModelPoint p) : point(std::move(p)) {}
  ModelPoint point;
  unsigned long m = 0;
  std::vector<Complex> h;         // h_0..h_m
  std::vector<Complex> gamma_sq;  // gamma_0^2 := 0, gamma_1^2..gamma_m^2
  std::vector<Complex> p_nm2;     // p_{n,n-2} for n = 0..m (0 for n < 2)
  std::vector<Complex> p_nm4;     // p_{n,n-4} for n = 0..m (0 for n < 4)
  std::vector<bool> degree_full;  // deg P_n == n, i.e. H_{n-1} != 0, n = 0..m+1
  std::vector<bool> h_ok, g_ok, p2_ok, p4_ok;

  const Complex& h_at(unsigned long n) const;
  const Complex& gamma_sq_at(unsigned long n) const;
  const Complex& p_nm2_at(unsigned long n) const;
  const Complex& p_nm4_at(unsigned long n) const;
};

OPSequence op_sequence(const ModelPoint& point, unsigned long m, const PrecisionContext& ctx);

enum class DegenPattern { full, pattern_i, pattern_ii };

// Degree-degeneration trichotomy at index n from the vanishing pattern of
// H_{n-2}, H_{n-1}, H_n.  Throws Inconclusive if the pattern is ambiguous.
DegenPattern degeneration_classify(const ModelPoint& point, unsigned long n,
                                   const PrecisionContext& ctx);

// Partition-function values: .first is the tau-product formula (normalized
// with Gamma(N+1) as printed), .second the classical n! H_{n-1}(t,N).  The
// two agree up to a t-independent factor.
std::pair<Complex, Complex> partition_function(const ModelPoint& point, unsigned long n,
                                               const PrecisionContext& ctx);

// string-equation residual gamma_n^2 (t + g_{n-1}^2 + g_n^2 + g_{n+1}^2) - n/N
Complex string_equation_residual(const OPSequence& seq, unsigned long n,
                                 const PrecisionContext& ctx);

}  // namespace qlab

#endif  // QLAB_HANKEL_HPP
