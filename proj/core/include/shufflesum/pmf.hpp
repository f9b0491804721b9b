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

#ifndef SHUFFLESUM_PMF_HPP
#define SHUFFLESUM_PMF_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "shufflesum/real.hpp"

namespace shufflesum {

// Working-precision knobs shared across the audit layer.
struct PrecisionContext {
  long precision_bits = 256;  // mantissa width of audit arithmetic, >= 64
  long grid_points = 10001;   // sample count for MGF grids
};

// Exact finite probability mass function over consecutive integers.
//
// Masses are stored densely from `support_offset()`; the first and last
// entries are strictly positive (the support is tight), every entry is
// nonnegative, and the total mass is 1 up to 2^(-precision_bits/2).
// Interior zeros are permitted (lattice-supported distributions need them).
//
// All operations are pure; Pmf values are safe to share across threads.
class Pmf {
 public:
  // Unit mass at integer v.
  static Pmf point_mass(long v, long precision_bits);

  // Builds a pmf from raw masses at offset, offset+1, ... Leading/trailing
  // zeros are trimmed. If `normalize`, masses are divided by their sum;
  // otherwise the sum must already be 1 within tolerance.
  static Pmf from_masses(long offset, std::vector<Real> masses,
                         long precision_bits, bool normalize = false);

  long support_offset() const { return offset_; }
  long support_max() const {
    return offset_ + static_cast<long>(masses_.size()) - 1;
  }
  long size() const { return static_cast<long>(masses_.size()); }
  long precision_bits() const { return precision_bits_; }

  // Mass at integer v; exact zero outside the stored range.
  Real mass(long v) const;
  const Real& mass_by_index(long i) const { return masses_[i]; }

  Real total_mass() const;

  // True if offsets, sizes and every stored mass compare bit-equal.
  bool identical(const Pmf& other) const;

  // Mass vector mirrored about (support_offset+support_max)/2 shifted so the
  // result is supported on [2*center - max, 2*center - offset]. Used for the
  // exact reflection identities of symmetric randomizers.
  Pmf reflected(long center_times_2) const;

  // Writes `value,mass` rows, masses in scientific notation at full
  // working precision.
  void write_csv(std::ostream& os) const;

 private:
  Pmf(long offset, std::vector<Real> masses, long precision_bits)
      : offset_(offset),
        masses_(std::move(masses)),
        precision_bits_(precision_bits) {}

  void check_invariants() const;

  long offset_ = 0;
  std::vector<Real> masses_;
  long precision_bits_ = 256;

  friend Pmf mix(double p, const Pmf& a, const Pmf& b);
  friend Pmf convolve(const Pmf& a, const Pmf& b);
};

// Pointwise p*a + (1-p)*b on the union support. p in [0,1].
Pmf mix(double p, const Pmf& a, const Pmf& b);

// Distribution of the sum of independent draws from a and b. Exact
// sum-of-products at working precision; nothing is trimmed or dropped.
Pmf convolve(const Pmf& a, const Pmf& b);

// n-fold self-convolution via exponentiation by squaring, n >= 1.
Pmf n_fold(const Pmf& a, long n);

// Total variation distance (1/2)*sum_v |a(v)-b(v)| over the union support.
Real tv_distance(const Pmf& a, const Pmf& b);

// log E[e^{tX}], evaluated with a max-shifted exponent sum so that |t*v| in
// the hundreds stays stable. Throws std::range_error (naming t) if t times
// the support extreme would leave the safe exponent range.
Real log_mgf(const Pmf& a, double t);

// E[e^{tX}] = exp(log_mgf).
Real mgf(const Pmf& a, double t);

// log(a(v+1)/a(v)) for consecutive support points, as doubles.
// Zero masses are never divided: a zero numerator yields -inf, a zero
// denominator +inf, and NaN if both vanish.
std::vector<double> adjacent_log_ratios(const Pmf& a);

}  // namespace shufflesum

#endif  // SHUFFLESUM_PMF_HPP
