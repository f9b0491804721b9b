// Copyright 2026 The shufflesum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SHUFFLESUM_REAL_HPP
#define SHUFFLESUM_REAL_HPP

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

namespace shufflesum {

// Software floating-point value with a configurable mantissa width.
//
// Thin RAII wrapper over an mpfr_t. Every value carries its own precision;
// binary operations round to the wider of the two operand precisions. The
// exponent range is MPFR's (roughly 2^±10^9), so quantities like e^{-dn/s}
// that underflow an IEEE double are representable exactly enough here.
//
// Distinct Real objects may be used concurrently from different threads.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 53) { mpfr_init2(v_, prec); }

  Real(const Real& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }

  Real(Real&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }

  Real& operator=(const Real& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }

  Real& operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }

  ~Real() { mpfr_clear(v_); }

  static Real of(double x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
  }

  static Real of(long x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_si(r.v_, x, MPFR_RNDN);
    return r;
  }

  static Real zero(mpfr_prec_t prec) { return of(0.0, prec); }
  static Real one(mpfr_prec_t prec) { return of(1.0, prec); }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_inf() const { return mpfr_inf_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  // Scientific-notation string at full working precision.
  std::string str() const;

  Real& operator+=(const Real& o) {
    widen(o.prec());
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator-=(const Real& o) {
    widen(o.prec());
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(const Real& o) {
    widen(o.prec());
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator/=(const Real& o) {
    widen(o.prec());
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }

  // *this += a * b, correctly rounded as a single fused operation.
  Real& fma_add(const Real& a, const Real& b) {
    mpfr_fma(v_, a.v_, b.v_, v_, MPFR_RNDN);
    return *this;
  }

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }

  Real operator-() const {
    Real r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  friend bool operator==(const Real& a, const Real& b) {
    return mpfr_equal_p(a.v_, b.v_) != 0;
  }
  friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
  friend bool operator<(const Real& a, const Real& b) {
    return mpfr_less_p(a.v_, b.v_) != 0;
  }
  friend bool operator<=(const Real& a, const Real& b) {
    return mpfr_lessequal_p(a.v_, b.v_) != 0;
  }
  friend bool operator>(const Real& a, const Real& b) { return b < a; }
  friend bool operator>=(const Real& a, const Real& b) { return b <= a; }

  friend Real exp(const Real& x) {
    Real r(x.prec());
    mpfr_exp(r.v_, x.v_, MPFR_RNDN);
    return r;
  }
  friend Real log(const Real& x) {
    Real r(x.prec());
    mpfr_log(r.v_, x.v_, MPFR_RNDN);
    return r;
  }
  friend Real log2(const Real& x) {
    Real r(x.prec());
    mpfr_log2(r.v_, x.v_, MPFR_RNDN);
    return r;
  }
  friend Real sqrt(const Real& x) {
    Real r(x.prec());
    mpfr_sqrt(r.v_, x.v_, MPFR_RNDN);
    return r;
  }
  friend Real abs(const Real& x) {
    Real r(x.prec());
    mpfr_abs(r.v_, x.v_, MPFR_RNDN);
    return r;
  }
  friend Real max(const Real& a, const Real& b) { return a < b ? b : a; }
  friend Real min(const Real& a, const Real& b) { return b < a ? b : a; }

  // Raw handle for the few call sites that need the C API directly.
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  void widen(mpfr_prec_t p) {
    if (mpfr_get_prec(v_) < p) mpfr_prec_round(v_, p, MPFR_RNDN);
  }

  mpfr_t v_;
};

}  // namespace shufflesum

#endif  // SHUFFLESUM_REAL_HPP
