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

#include "shufflesum/pmf.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace shufflesum {

namespace {

// |t * extreme support| must stay well inside MPFR's exponent range.
constexpr double kMaxMgfExponent = 1e8;

Real two_pow(long e, long prec) {
  Real r = Real::one(prec);
  mpfr_mul_2si(r.raw(), r.raw(), e, MPFR_RNDN);
  return r;
}

}  // namespace

Pmf Pmf::point_mass(long v, long precision_bits) {
  std::vector<Real> m;
  m.push_back(Real::one(precision_bits));
  return Pmf(v, std::move(m), precision_bits);
}

Pmf Pmf::from_masses(long offset, std::vector<Real> masses,
                     long precision_bits, bool normalize) {
  std::size_t lo = 0;
  std::size_t hi = masses.size();
  while (lo < hi && masses[lo].is_zero()) ++lo;
  while (hi > lo && masses[hi - 1].is_zero()) --hi;
  if (lo == hi) throw std::invalid_argument("pmf: all masses are zero");
  std::vector<Real> trimmed(masses.begin() + lo, masses.begin() + hi);
  if (normalize) {
    Real sum = Real::zero(precision_bits);
    for (const Real& m : trimmed) sum += m;
    for (Real& m : trimmed) m /= sum;
  }
  Pmf p(offset + static_cast<long>(lo), std::move(trimmed), precision_bits);
  p.check_invariants();
  return p;
}

Real Pmf::mass(long v) const {
  if (v < offset_ || v > support_max()) return Real::zero(precision_bits_);
  return masses_[v - offset_];
}

Real Pmf::total_mass() const {
  Real sum = Real::zero(precision_bits_);
  for (const Real& m : masses_) sum += m;
  return sum;
}

bool Pmf::identical(const Pmf& other) const {
  if (offset_ != other.offset_ || masses_.size() != other.masses_.size())
    return false;
  for (std::size_t i = 0; i < masses_.size(); ++i)
    if (masses_[i] != other.masses_[i]) return false;
  return true;
}

Pmf Pmf::reflected(long center_times_2) const {
  std::vector<Real> rev(masses_.rbegin(), masses_.rend());
  long new_offset = center_times_2 - support_max();
  return Pmf(new_offset, std::move(rev), precision_bits_);
}

void Pmf::check_invariants() const {
  for (const Real& m : masses_) {
    if (m.sign() < 0 || m.is_nan())
      throw std::invalid_argument("pmf: negative or NaN mass");
  }
  if (masses_.front().is_zero() || masses_.back().is_zero())
    throw std::invalid_argument("pmf: support not tight");
  Real sum = total_mass();
  Real tol = two_pow(-precision_bits_ / 2, precision_bits_);
  if (abs(sum - Real::one(precision_bits_)) > tol)
    throw std::invalid_argument("pmf: masses sum to " + sum.str() +
                                ", not 1 within tolerance");
}

void Pmf::write_csv(std::ostream& os) const {
  os << "value,mass\n";
  for (long i = 0; i < size(); ++i)
    os << (offset_ + i) << ',' << masses_[i].str() << '\n';
}

Pmf mix(double p, const Pmf& a, const Pmf& b) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("mix: p must lie in [0,1]");
  if (p == 0.0) return b;
  if (p == 1.0) return a;
  long prec = std::max(a.precision_bits(), b.precision_bits());
  long lo = std::min(a.support_offset(), b.support_offset());
  long hi = std::max(a.support_max(), b.support_max());
  Real wp = Real::of(p, prec);
  Real wq = Real::one(prec) - wp;
  std::vector<Real> out;
  out.reserve(hi - lo + 1);
  for (long v = lo; v <= hi; ++v) {
    Real m = Real::zero(prec);
    m.fma_add(wp, a.mass(v));
    m.fma_add(wq, b.mass(v));
    out.push_back(std::move(m));
  }
  Pmf r(lo, std::move(out), prec);
  r.check_invariants();
  return r;
}

Pmf convolve(const Pmf& a, const Pmf& b) {
  long prec = std::max(a.precision_bits(), b.precision_bits());
  long n = a.size() + b.size() - 1;
  std::vector<Real> out(n, Real::zero(prec));
  for (long i = 0; i < a.size(); ++i) {
    const Real& ai = a.mass_by_index(i);
    for (long j = 0; j < b.size(); ++j) {
      out[i + j].fma_add(ai, b.mass_by_index(j));
    }
  }
  Pmf r(a.support_offset() + b.support_offset(), std::move(out), prec);
  r.check_invariants();
  return r;
}

Pmf n_fold(const Pmf& a, long n) {
  if (n < 1) throw std::invalid_argument("n_fold: n must be >= 1");
  if (n == 1) return a;
  // Square-and-multiply over the convolution monoid.
  Pmf base = a;
  Pmf result = Pmf::point_mass(0, a.precision_bits());
  bool have_result = false;
  while (n > 0) {
    if (n & 1) {
      result = have_result ? convolve(result, base) : base;
      have_result = true;
    }
    n >>= 1;
    if (n > 0) base = convolve(base, base);
  }
  return result;
}

Real tv_distance(const Pmf& a, const Pmf& b) {
  long prec = std::max(a.precision_bits(), b.precision_bits());
  long lo = std::min(a.support_offset(), b.support_offset());
  long hi = std::max(a.support_max(), b.support_max());
  Real sum = Real::zero(prec);
  for (long v = lo; v <= hi; ++v) sum += abs(a.mass(v) - b.mass(v));
  return sum / Real::of(2.0, prec);
}

Real log_mgf(const Pmf& a, double t) {
  long prec = a.precision_bits();
  double extreme = std::max(std::fabs(static_cast<double>(a.support_offset())),
                            std::fabs(static_cast<double>(a.support_max())));
  if (std::fabs(t) * extreme > kMaxMgfExponent)
    throw std::range_error("mgf: t = " + std::to_string(t) +
                           " exceeds the safe exponent range");
  Real rt = Real::of(t, prec);
  // Exponents t*v + log a(v); shift by the max before exponentiating.
  std::vector<Real> log_terms;
  log_terms.reserve(a.size());
  bool any = false;
  Real best = Real::zero(prec);
  for (long i = 0; i < a.size(); ++i) {
    const Real& m = a.mass_by_index(i);
    if (m.is_zero()) {
      log_terms.push_back(Real::zero(prec));
      continue;
    }
    Real e = log(m) + rt * Real::of(a.support_offset() + i, prec);
    if (!any || best < e) {
      best = e;
      any = true;
    }
    log_terms.push_back(std::move(e));
  }
  Real acc = Real::zero(prec);
  for (long i = 0; i < a.size(); ++i) {
    if (a.mass_by_index(i).is_zero()) continue;
    acc += exp(log_terms[i] - best);
  }
  return best + log(acc);
}

Real mgf(const Pmf& a, double t) { return exp(log_mgf(a, t)); }

std::vector<double> adjacent_log_ratios(const Pmf& a) {
  std::vector<double> out;
  if (a.size() < 2) return out;
  out.reserve(a.size() - 1);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  for (long i = 0; i + 1 < a.size(); ++i) {
    const Real& lo = a.mass_by_index(i);
    const Real& hi = a.mass_by_index(i + 1);
    if (lo.is_zero() && hi.is_zero()) {
      out.push_back(std::numeric_limits<double>::quiet_NaN());
    } else if (lo.is_zero()) {
      out.push_back(kInf);
    } else if (hi.is_zero()) {
      out.push_back(-kInf);
    } else {
      out.push_back((log(hi) - log(lo)).to_double());
    }
  }
  return out;
}

}  // namespace shufflesum
