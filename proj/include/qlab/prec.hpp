#ifndef QLAB_PREC_HPP
#define QLAB_PREC_HPP

#include <mpfr.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace qlab {

// ---------------------------------------------------------------------------
// Error taxonomy.  Numeric failures are always explicit: no operation in this
// library silently returns NaN to a caller.
// ---------------------------------------------------------------------------
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

class NonConvergence : public NumericError {
 public:
  explicit NonConvergence(const std::string& msg) : NumericError(msg) {}
};

class PoleAtNonPositiveInteger : public NumericError {
 public:
  explicit PoleAtNonPositiveInteger(const std::string& msg) : NumericError(msg) {}
};

class QuadratureStall : public NumericError {
 public:
  explicit QuadratureStall(const std::string& msg) : NumericError(msg) {}
};

class PrecisionLoss : public NumericError {
 public:
  explicit PrecisionLoss(const std::string& msg) : NumericError(msg) {}
};

class DegenerateDegree : public NumericError {
 public:
  DegenerateDegree(int n, const std::string& msg) : NumericError(msg), index(n) {}
  int index;
};

class Inconclusive : public NumericError {
 public:
  explicit Inconclusive(const std::string& msg) : NumericError(msg) {}
};

class OnCutError : public NumericError {
 public:
  explicit OnCutError(const std::string& msg) : NumericError(msg) {}
};

class OffCutError : public NumericError {
 public:
  explicit OffCutError(const std::string& msg) : NumericError(msg) {}
};

class StepLimit : public NumericError {
 public:
  explicit StepLimit(const std::string& msg) : NumericError(msg) {}
};

class RootRefinementFail : public NumericError {
 public:
  explicit RootRefinementFail(const std::string& msg) : NumericError(msg) {}
};

class SeedZero : public NumericError {
 public:
  explicit SeedZero(const std::string& msg) : NumericError(msg) {}
};

class DivisionByZeroComponent : public NumericError {
 public:
  explicit DivisionByZeroComponent(const std::string& msg) : NumericError(msg) {}
};

class IndeterminateTransformation : public NumericError {
 public:
  explicit IndeterminateTransformation(const std::string& msg) : NumericError(msg) {}
};

class RefinementFail : public NumericError {
 public:
  explicit RefinementFail(const std::string& msg) : NumericError(msg) {}
};

// ---------------------------------------------------------------------------
// Real: an arbitrary-precision real number (MPFR) with value semantics.
// Every value carries its own binary precision; binary operations round to
// the larger of the two operand precisions.  There is no dependence on the
// MPFR global default precision, so values are safe to share across threads.
// ---------------------------------------------------------------------------
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 64);
  Real(double x, mpfr_prec_t prec);
  Real(long x, mpfr_prec_t prec);
  Real(const char* s, mpfr_prec_t prec);
  Real(const std::string& s, mpfr_prec_t prec) : Real(s.c_str(), prec) {}

  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  Real with_prec(mpfr_prec_t p) const;

  // raw handle, for the few routines that talk to mpfr directly
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_inf() const { return mpfr_inf_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  // base-2 exponent of the leading bit; 0 for zero/non-finite values
  long exponent2() const { return (is_finite() && !is_zero()) ? mpfr_get_exp(v_) : 0; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  std::string str(size_t digits = 20) const;

  Real operator-() const;
  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_); }
  friend bool operator!=(const Real& a, const Real& b) { return !mpfr_equal_p(a.v_, b.v_); }

  friend Real abs(const Real& a);
  friend Real sqrt(const Real& a);
  friend Real exp(const Real& a);
  friend Real log(const Real& a);
  friend Real log2(const Real& a);
  friend Real sin(const Real& a);
  friend Real cos(const Real& a);
  friend Real tan(const Real& a);
  friend Real sinh(const Real& a);
  friend Real cosh(const Real& a);
  friend Real atan2(const Real& y, const Real& x);
  friend Real hypot(const Real& x, const Real& y);
  friend Real pow(const Real& a, const Real& b);  // a > 0
  friend Real pow_si(const Real& a, long n);
  friend Real floor(const Real& a);
  friend Real round_nearest(const Real& a);
  friend Real min(const Real& a, const Real& b);
  friend Real max(const Real& a, const Real& b);
  friend Real gamma_real(const Real& a);       // real Gamma via mpfr
  friend Real zeta_ui(unsigned long n, mpfr_prec_t prec);
  friend Real ldexp2(const Real& a, long e);   // a * 2^e

  static Real pi(mpfr_prec_t prec);
  static Real two_pow(long e, mpfr_prec_t prec);  // 2^e

 private:
  mpfr_t v_;
};

// ---------------------------------------------------------------------------
// Complex: pair of Reals, principal branches throughout.
// ---------------------------------------------------------------------------
class Complex {
 public:
  explicit Complex(mpfr_prec_t prec = 64) : re_(prec), im_(prec) {}
  Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit Complex(Real re) : re_(std::move(re)), im_(Real(0L, re_.prec())) {}
  Complex(double re, double im, mpfr_prec_t prec) : re_(re, prec), im_(im, prec) {}

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  Real& re() { return re_; }
  Real& im() { return im_; }

  mpfr_prec_t prec() const { return std::max(re_.prec(), im_.prec()); }
  Complex with_prec(mpfr_prec_t p) const { return Complex(re_.with_prec(p), im_.with_prec(p)); }

  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  std::string str(size_t digits = 20) const;

  Complex operator-() const { return Complex(-re_, -im_); }
  Complex conj() const { return Complex(re_, -im_); }

  friend Complex operator+(const Complex& a, const Complex& b);
  friend Complex operator-(const Complex& a, const Complex& b);
  friend Complex operator*(const Complex& a, const Complex& b);
  friend Complex operator/(const Complex& a, const Complex& b);
  friend Complex operator+(const Complex& a, const Real& b);
  friend Complex operator-(const Complex& a, const Real& b);
  friend Complex operator*(const Complex& a, const Real& b);
  friend Complex operator/(const Complex& a, const Real& b);
  friend Complex operator*(const Real& a, const Complex& b) { return b * a; }
  friend Complex operator+(const Real& a, const Complex& b) { return b + a; }
  friend Complex operator-(const Real& a, const Complex& b) { return -(b - a); }

  Complex& operator+=(const Complex& o) { *this = *this + o; return *this; }
  Complex& operator-=(const Complex& o) { *this = *this - o; return *this; }
  Complex& operator*=(const Complex& o) { *this = *this * o; return *this; }
  Complex& operator/=(const Complex& o) { *this = *this / o; return *this; }

  friend Real abs(const Complex& z) { return hypot(z.re_, z.im_); }
  friend Real norm2(const Complex& z) { return z.re_ * z.re_ + z.im_ * z.im_; }
  friend Real arg(const Complex& z) { return atan2(z.im_, z.re_); }
  friend Complex sqrt(const Complex& z);   // principal
  friend Complex exp(const Complex& z);
  friend Complex log(const Complex& z);    // principal
  friend Complex sin(const Complex& z);
  friend Complex cos(const Complex& z);
  friend Complex pow_si(const Complex& z, long n);
  friend Complex pow(const Complex& z, const Complex& w);  // exp(w log z)
  friend Complex ldexp2(const Complex& z, long e);

 private:
  Real re_, im_;
};

// namespace-scope declarations for the helpers that lack a Real argument
// (not reachable through argument-dependent lookup alone)
Real zeta_ui(unsigned long n, mpfr_prec_t prec);

// ---------------------------------------------------------------------------
// PrecisionContext: working precision plus the relative truncation tolerance
// used by series and quadrature.  All special-function results carry this
// context's precision.
// ---------------------------------------------------------------------------
struct PrecisionContext {
  mpfr_prec_t prec_bits;
  int series_tol_exp2;  // series_tol = 2^series_tol_exp2, must satisfy tol < 2^-32
  int max_escalations = 4;

  explicit PrecisionContext(mpfr_prec_t prec = 256, int tol_exp2 = 0)
      : prec_bits(prec),
        series_tol_exp2(tol_exp2 == 0 ? int(-prec + 8) : tol_exp2) {
    if (prec_bits < 64) throw std::invalid_argument("PrecisionContext: prec_bits must be >= 64");
    if (series_tol_exp2 >= -32)
      throw std::invalid_argument("PrecisionContext: series_tol must be < 2^-32");
  }

  Real tol() const { return Real::two_pow(series_tol_exp2, prec_bits); }
  PrecisionContext escalated(int extra_bits) const {
    return PrecisionContext(prec_bits + extra_bits, series_tol_exp2);
  }

  Real R(double x) const { return Real(x, prec_bits); }
  Real R(long x) const { return Real(x, prec_bits); }
  Real R(const char* s) const { return Real(s, prec_bits); }
  Complex C(double re, double im = 0.0) const { return Complex(re, im, prec_bits); }
  Complex C(const Real& re) const { return Complex(re.with_prec(prec_bits)); }
  Complex zero() const { return Complex(prec_bits); }  // note: Complex(prec) inits to NaN
  Complex czero() const { return C(0.0, 0.0); }
  Complex cone() const { return C(1.0, 0.0); }
  Complex ci() const { return C(0.0, 1.0); }
  Real pi() const { return Real::pi(prec_bits); }
};

// throws NumericError if any component is non-finite
void check_finite(const Real& x, const char* where);
void check_finite(const Complex& z, const char* where);

}  // namespace qlab

#endif  // QLAB_PREC_HPP
