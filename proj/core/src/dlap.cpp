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

#include "shufflesum/dlap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shufflesum {

namespace {

void validate(const TruncDLapParams& p) {
  if (!(p.s > 0.0)) throw std::invalid_argument("dlap: s must be > 0");
  if (p.w < 1) throw std::invalid_argument("dlap: w must be >= 1");
  if (p.support_min() > p.support_max())
    throw std::invalid_argument("dlap: empty integer support");
}

// e^{-|z - mu|/s} with |z - mu| formed exactly from integers.
Real unnormalized_mass(long z, const TruncDLapParams& p, long prec) {
  long twice_dist = std::labs(2 * z - p.mu_times_2);
  Real e = Real::of(twice_dist, prec) / Real::of(2.0 * p.s, prec);
  return exp(-e);
}

}  // namespace

long TruncDLapParams::support_min() const {
  // ceil((mu_times_2 - w) / 2)
  long a = mu_times_2 - w;
  return (a >= 0) ? (a + 1) / 2 : -((-a) / 2);
}

long TruncDLapParams::support_max() const {
  // floor((mu_times_2 + w) / 2)
  long a = mu_times_2 + w;
  return (a >= 0) ? a / 2 : -((-a + 1) / 2);
}

Pmf dlap_pmf(const TruncDLapParams& params, long precision_bits) {
  validate(params);
  long lo = params.support_min();
  long hi = params.support_max();
  std::vector<Real> masses;
  masses.reserve(hi - lo + 1);
  for (long z = lo; z <= hi; ++z)
    masses.push_back(unnormalized_mass(z, params, precision_bits));
  return Pmf::from_masses(lo, std::move(masses), precision_bits,
                          /*normalize=*/true);
}

NormalizationConstant dlap_normalization(const TruncDLapParams& params,
                                         long precision_bits) {
  validate(params);
  long prec = precision_bits;
  Real c_w = Real::zero(prec);
  for (long z = params.support_min(); z <= params.support_max(); ++z)
    c_w += unnormalized_mass(z, params, prec);

  // Unbounded constant via the geometric series. With r the distance from
  // mu to the nearest integer on each side (r and 1-r for a fractional
  // center), C = (e^{-r/s} + e^{-(1-r)/s}) / (1 - e^{-1/s}); an integer
  // center double-counts the center term, giving (1 + f)/(1 - f).
  Real f = exp(-(Real::one(prec) / Real::of(params.s, prec)));
  Real denom = Real::one(prec) - f;
  Real c_unbounded(prec);
  if (params.mu_times_2 % 2 == 0) {
    c_unbounded = (Real::one(prec) + f) / denom;
  } else {
    Real half = Real::of(0.5, prec) / Real::of(params.s, prec);
    c_unbounded = (exp(-half) + exp(half - Real::one(prec) /
                                               Real::of(params.s, prec))) /
                  denom;
  }
  return NormalizationConstant{std::move(c_w), std::move(c_unbounded)};
}

DlapSampler::DlapSampler(const TruncDLapParams& params) {
  validate(params);
  zmin_ = params.support_min();
  long n = params.support_max() - zmin_ + 1;
  // Build the cumulative table in double precision from the exact pmf.
  Pmf pmf = dlap_pmf(params, 128);
  cdf_.resize(n);
  double acc = 0.0;
  for (long i = 0; i < n; ++i) {
    acc += pmf.mass_by_index(i).to_double();
    cdf_[i] = acc;
  }
  cdf_.back() = 1.0;
}

long DlapSampler::sample(RandomStream& rng) const {
  double u = rng.uniform01();
  auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;
  return zmin_ + static_cast<long>(it - cdf_.begin());
}

}  // namespace shufflesum
