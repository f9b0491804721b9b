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

#include "shufflesum/binary_protocol.hpp"

#include <cmath>
#include <stdexcept>

namespace shufflesum {

BinaryParams paper_params(double epsilon, long n, double d_ceiling) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (n < 1) throw std::invalid_argument("n must be >= 1");

  BinaryParams out;
  out.epsilon = epsilon;
  out.n = n;
  out.mode = ParamMode::paper_exact;
  out.s = 10.0 / epsilon;

  const double n_sub = std::ceil((n + 1) / 2.0);
  const double q = 1.0 - std::exp(-0.1 * epsilon);
  const double boost = std::exp(100.0 * epsilon);
  out.p_formula = 100.0 * boost * std::log(1.0 / q) / (n_sub * q);
  out.d_formula =
      4.0 * std::ceil(1000.0 * boost / q * std::log(n_sub / q)) + 3.0;
  out.p = out.p_formula;

  if (!(out.p_formula <= 1.0)) {
    out.infeasible = true;
    out.infeasible_reason = "p > 1";
  } else if (!(out.d_formula <= d_ceiling)) {
    out.infeasible = true;
    out.infeasible_reason = "d exceeds ceiling";
  } else if (!(epsilon > std::pow(static_cast<double>(n), -2.0 / 3.0))) {
    out.infeasible = true;
    out.infeasible_reason = "epsilon below the n^{-2/3} hypothesis";
  }
  if (out.d_formula < 9.007199254740992e15)  // exact as a double
    out.d = static_cast<long long>(out.d_formula);
  return out;
}

BinaryParams explicit_params(double epsilon, long n, long long d, double s,
                             double p) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (d < 1 || d % 2 == 0)
    throw std::invalid_argument("d must be a positive odd integer");
  if (!(s > 0.0)) throw std::invalid_argument("s must be > 0");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("p must lie in [0,1]");
  BinaryParams out;
  out.epsilon = epsilon;
  out.n = n;
  out.d = d;
  out.s = s;
  out.p = p;
  out.mode = ParamMode::engineering;
  return out;
}

RandomizerDist randomizer_dist(const BinaryParams& params,
                               long precision_bits) {
  if (params.infeasible)
    throw std::invalid_argument("randomizer_dist: params flagged infeasible");
  const long d = static_cast<long>(params.d);
  Pmf spike0 = Pmf::point_mass((d - 1) / 2, precision_bits);
  Pmf spike1 = Pmf::point_mass((d + 1) / 2, precision_bits);
  if (params.p == 0.0) return RandomizerDist{spike0, spike1};
  Pmf noise = dlap_pmf(params.noise(), precision_bits);
  Pmf r0 = mix(params.p, noise, spike0);
  Pmf r1 = mix(params.p, noise, spike1);
  return RandomizerDist{std::move(r0), std::move(r1)};
}

BitMultiset binary_randomize(int x, const BinaryParams& params,
                             const DlapSampler& sampler, RandomStream& rng) {
  if (x != 0 && x != 1) throw std::invalid_argument("input bit must be 0 or 1");
  const long d = static_cast<long>(params.d);
  long ones;
  if (rng.bernoulli(params.p)) {
    ones = sampler.sample(rng);
  } else {
    ones = (d - 1) / 2 + x;
  }
  return BitMultiset{ones, d - ones};
}

BitMultiset binary_randomize(int x, const BinaryParams& params,
                             RandomStream& rng) {
  DlapSampler sampler(params.noise());
  return binary_randomize(x, params, sampler, rng);
}

double binary_analyze(long ones, long zeros, const BinaryParams& params) {
  const long long expected = params.n * params.d;
  if (ones + zeros != expected)
    throw std::invalid_argument("binary_analyze: transcript has " +
                                std::to_string(ones + zeros) +
                                " messages, expected " +
                                std::to_string(expected));
  return params.n / 2.0 + static_cast<double>(ones) - expected / 2.0;
}

void BinarySummation::randomize(double input, RandomStream& rng,
                                Transcript& out) const {
  if (input != 0.0 && input != 1.0)
    throw std::invalid_argument("binary protocol input must be 0 or 1");
  BitMultiset bits =
      binary_randomize(input == 1.0 ? 1 : 0, params_, sampler_, rng);
  if (bits.ones > 0) out.add(1, bits.ones);
  if (bits.zeros > 0) out.add(0, bits.zeros);
}

double BinarySummation::analyze(const Transcript& transcript) const {
  return binary_analyze(transcript.count(1), transcript.count(0), params_);
}

}  // namespace shufflesum
