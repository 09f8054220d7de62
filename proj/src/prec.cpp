#include "qlab/prec.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <vector>

namespace qlab {

Real::Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); }

Real::Real(double x, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, x, MPFR_RNDN);
}

Real::Real(long x, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_si(v_, x, MPFR_RNDN);
}

Real::Real(const char* s, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  if (mpfr_set_str(v_, s, 10, MPFR_RNDN) != 0)
    throw std::invalid_argument(std::string("Real: cannot parse '") + s + "'");
}

Real::Real(const Real& o) {
  mpfr_init2(v_, o.prec());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
  mpfr_init2(v_, 64);
  mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  if (this != &o) mpfr_swap(v_, o.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::with_prec(mpfr_prec_t p) const {
  Real r(p);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

std::string Real::str(size_t digits) const {
  if (is_nan()) return "nan";
  if (is_inf()) return sign() > 0 ? "inf" : "-inf";
  char* s = nullptr;
  // mpfr_asprintf handles zero and exponents cleanly
  mpfr_asprintf(&s, "%.*Rg", (int)digits, v_);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

namespace {
inline mpfr_prec_t pmax(const Real& a, const Real& b) {
  return std::max(a.prec(), b.prec());
}
}  // namespace

Real Real::operator-() const {
  Real r(prec());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

#define QLAB_BINOP(op, fn)                          \
  Real operator op(const Real& a, const Real& b) { \
    Real r(pmax(a, b));                             \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                \
    return r;                                       \
  }
QLAB_BINOP(+, mpfr_add)
QLAB_BINOP(-, mpfr_sub)
QLAB_BINOP(*, mpfr_mul)
QLAB_BINOP(/, mpfr_div)
#undef QLAB_BINOP

Real& Real::operator+=(const Real& o) { *this = *this + o; return *this; }
Real& Real::operator-=(const Real& o) { *this = *this - o; return *this; }
Real& Real::operator*=(const Real& o) { *this = *this * o; return *this; }
Real& Real::operator/=(const Real& o) { *this = *this / o; return *this; }

#define QLAB_UNFN(name, fn)      \
  Real name(const Real& a) {     \
    Real r(a.prec());            \
    fn(r.v_, a.v_, MPFR_RNDN);   \
    return r;                    \
  }
QLAB_UNFN(abs, mpfr_abs)
QLAB_UNFN(sqrt, mpfr_sqrt)
QLAB_UNFN(exp, mpfr_exp)
QLAB_UNFN(log, mpfr_log)
QLAB_UNFN(log2, mpfr_log2)
QLAB_UNFN(sin, mpfr_sin)
QLAB_UNFN(cos, mpfr_cos)
QLAB_UNFN(tan, mpfr_tan)
QLAB_UNFN(sinh, mpfr_sinh)
QLAB_UNFN(cosh, mpfr_cosh)
QLAB_UNFN(gamma_real, mpfr_gamma)
#undef QLAB_UNFN

Real floor(const Real& a) {
  Real r(a.prec());
  mpfr_floor(r.v_, a.v_);
  return r;
}

Real round_nearest(const Real& a) {
  Real r(a.prec());
  mpfr_round(r.v_, a.v_);
  return r;
}

Real atan2(const Real& y, const Real& x) {
  Real r(pmax(y, x));
  mpfr_atan2(r.v_, y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real hypot(const Real& x, const Real& y) {
  Real r(pmax(x, y));
  mpfr_hypot(r.v_, x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

Real pow(const Real& a, const Real& b) {
  Real r(pmax(a, b));
  mpfr_pow(r.v_, a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

Real pow_si(const Real& a, long n) {
  Real r(a.prec());
  mpfr_pow_si(r.v_, a.raw(), n, MPFR_RNDN);
  return r;
}

Real min(const Real& a, const Real& b) { return (a < b) ? a : b; }
Real max(const Real& a, const Real& b) { return (a > b) ? a : b; }

Real zeta_ui(unsigned long n, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_zeta_ui(r.raw(), n, MPFR_RNDN);
  return r;
}

Real ldexp2(const Real& a, long e) {
  Real r(a.prec());
  mpfr_mul_2si(r.raw(), a.raw(), e, MPFR_RNDN);
  return r;
}

Real Real::pi(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

Real Real::two_pow(long e, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_set_si(r.v_, 1, MPFR_RNDN);
  mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
  return r;
}

// ---------------------------------------------------------------------------

std::string Complex::str(size_t digits) const {
  return re_.str(digits) + (im_.sign() < 0 ? " - " : " + ") + abs(im_).str(digits) + "i";
}

Complex operator+(const Complex& a, const Complex& b) {
  return Complex(a.re_ + b.re_, a.im_ + b.im_);
}
Complex operator-(const Complex& a, const Complex& b) {
  return Complex(a.re_ - b.re_, a.im_ - b.im_);
}
Complex operator*(const Complex& a, const Complex& b) {
  return Complex(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
}
Complex operator/(const Complex& a, const Complex& b) {
  Real d = norm2(b);
  return Complex((a.re_ * b.re_ + a.im_ * b.im_) / d, (a.im_ * b.re_ - a.re_ * b.im_) / d);
}
Complex operator+(const Complex& a, const Real& b) { return Complex(a.re_ + b, a.im_); }
Complex operator-(const Complex& a, const Real& b) { return Complex(a.re_ - b, a.im_); }
Complex operator*(const Complex& a, const Real& b) { return Complex(a.re_ * b, a.im_ * b); }
Complex operator/(const Complex& a, const Real& b) { return Complex(a.re_ / b, a.im_ / b); }

Complex sqrt(const Complex& z) {
  mpfr_prec_t p = z.prec();
  if (z.im_.is_zero()) {
    if (z.re_.sign() >= 0) return Complex(sqrt(z.re_), Real(0L, p));
    Real r = sqrt(-z.re_);
    // branch cut on the negative axis: sqrt(-x +/- 0i) = +/- i sqrt(x);
    // mpfr has signed zero, follow the sign of im
    if (mpfr_signbit(z.im_.raw())) return Complex(Real(0L, p), -r);
    return Complex(Real(0L, p), r);
  }
  // w = sqrt((|z|+|re|)/2); stable two-case formula
  Real az = abs(z);
  Real w = sqrt(ldexp2(az + abs(z.re_), -1));
  Real half_im = ldexp2(z.im_ / w, -1);
  if (z.re_.sign() >= 0) return Complex(w, half_im);
  if (z.im_.sign() >= 0) return Complex(ldexp2(z.im_, -1) / w, w);
  return Complex(-ldexp2(z.im_, -1) / w, -w);
}

Complex exp(const Complex& z) {
  Real e = exp(z.re_);
  Real c(z.prec()), s(z.prec());
  mpfr_sin_cos(s.raw(), c.raw(), z.im_.raw(), MPFR_RNDN);
  return Complex(e * c, e * s);
}

Complex log(const Complex& z) {
  return Complex(log(abs(z)), arg(z));
}

Complex sin(const Complex& z) {
  return Complex(sin(z.re_) * cosh(z.im_), cos(z.re_) * sinh(z.im_));
}

Complex cos(const Complex& z) {
  return Complex(cos(z.re_) * cosh(z.im_), -(sin(z.re_) * sinh(z.im_)));
}

Complex pow_si(const Complex& z, long n) {
  mpfr_prec_t p = z.prec();
  if (n == 0) return Complex(Real(1L, p), Real(0L, p));
  bool inv = n < 0;
  unsigned long k = inv ? (unsigned long)(-(n + 1)) + 1ul : (unsigned long)n;
  Complex base = z;
  Complex acc(Real(1L, p), Real(0L, p));
  while (k) {
    if (k & 1ul) acc *= base;
    base *= base;
    k >>= 1;
  }
  if (inv) return Complex(Real(1L, p), Real(0L, p)) / acc;
  return acc;
}

Complex pow(const Complex& z, const Complex& w) { return exp(w * log(z)); }

Complex ldexp2(const Complex& z, long e) {
  return Complex(ldexp2(z.re_, e), ldexp2(z.im_, e));
}

void check_finite(const Real& x, const char* where) {
  if (!x.is_finite()) throw NumericError(std::string(where) + ": non-finite value");
}

void check_finite(const Complex& z, const char* where) {
  if (!z.is_finite()) throw NumericError(std::string(where) + ": non-finite value");
}

}  // namespace qlab
