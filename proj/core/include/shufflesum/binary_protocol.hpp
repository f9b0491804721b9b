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

#ifndef SHUFFLESUM_BINARY_PROTOCOL_HPP
#define SHUFFLESUM_BINARY_PROTOCOL_HPP

#include <string>
#include <vector>

#include "shufflesum/dlap.hpp"
#include "shufflesum/pmf.hpp"
#include "shufflesum/rng.hpp"

namespace shufflesum {

enum class ParamMode { paper_exact, engineering };

// Parameters of the one-bit summation randomizer/analyzer pair: each of n
// users sends d one-bit messages; with probability p the user draws the
// number of ones from DLap_d(d/2, s), otherwise it sends (d-1)/2 + x ones.
struct BinaryParams {
  double epsilon = 0.0;
  long n = 0;
  long long d = 0;  // odd; valid whenever !infeasible
  double s = 0.0;
  double p = 0.0;
  ParamMode mode = ParamMode::engineering;

  // Closed-form magnitudes for paper_exact mode, kept as doubles because
  // they overflow integer types long before they become runnable.
  double d_formula = 0.0;
  double p_formula = 0.0;

  bool infeasible = false;
  std::string infeasible_reason;

  TruncDLapParams noise() const {
    return TruncDLapParams{static_cast<long>(d), s, static_cast<long>(d)};
  }
};

// Number-of-ones distributions of the randomizer under inputs 0 and 1:
// r0 = p*DLap_d(d/2,s) + (1-p)*point_mass((d-1)/2), r1 likewise at
// (d+1)/2. r1 is bit for bit the reflection of r0 about d/2.
struct RandomizerDist {
  Pmf r0;
  Pmf r1;
};

// Closed-form parameters with n replaced by ceil((n+1)/2):
//   s = 10/eps
//   p = 100 e^{100 eps} log(1/(1-e^{-0.1 eps})) / (n' (1-e^{-0.1 eps}))
//   d = 4 ceil( (1000 e^{100 eps}/(1-e^{-0.1 eps})) log(n'/(1-e^{-0.1 eps})) ) + 3
// Magnitudes beyond p <= 1 / d <= d_ceiling are flagged infeasible rather
// than rejected, so the formulas stay testable at any epsilon.
BinaryParams paper_params(double epsilon, long n,
                          double d_ceiling = 2147483647.0);

// Options of the audit-driven parameter search (see engineering_params).
struct EngineeringSearchOptions {
  std::vector<long> d_candidates = {15, 31, 63};
  long dn_ceiling = 1000000;
  long search_precision_bits = 64;   // audits inside the search
  long final_precision_bits = 256;   // verification of the returned params
  int bisection_iterations = 12;
  int threads = 0;  // 0 = hardware concurrency
};

// Audit-searched parameters: the smallest candidate d for which some (s, p)
// on the documented grid passes the exact audit with eps_hat <= epsilon,
// with the expected-error proxy pn/2 + sqrt(2)*s*sqrt(pn) as tiebreak and a
// final bisection on p. Deterministic given inputs. Throws
// std::runtime_error carrying the best eps_hat found if nothing passes.
//
// epsilon >= 1e9 is treated as "no privacy requested": the smallest
// candidate d is returned with p = 0 and no audit.
BinaryParams engineering_params(double epsilon, long n,
                                const EngineeringSearchOptions& options = {});

// Explicitly chosen engineering-mode parameters (no search, no audit).
BinaryParams explicit_params(double epsilon, long n, long long d, double s,
                             double p);

RandomizerDist randomizer_dist(const BinaryParams& params,
                               long precision_bits);

// One user's messages, reduced to counts (the multiset of d bits).
struct BitMultiset {
  long ones = 0;
  long zeros = 0;
  long total() const { return ones + zeros; }
};

// Algorithm: flip Ber(p); on tails emit (d-1)/2 + x ones, on heads draw
// z ~ DLap_d(d/2,s) and emit z ones; always exactly d messages.
BitMultiset binary_randomize(int x, const BinaryParams& params,
                             const DlapSampler& sampler, RandomStream& rng);

// Convenience overload constructing a sampler on the fly (slow path).
BitMultiset binary_randomize(int x, const BinaryParams& params,
                             RandomStream& rng);

// Analyzer: n/2 + sum_{y in transcript} (y - 1/2) = n/2 + ones - nd/2.
// Throws std::invalid_argument unless ones+zeros == n*d.
double binary_analyze(long ones, long zeros, const BinaryParams& params);

}  // namespace shufflesum

#include "shufflesum/harness.hpp"

namespace shufflesum {

// Harness adapter for the one-bit protocol. Transcript symbols are the
// bits themselves (0 and 1).
class BinarySummation : public SummationProtocol {
 public:
  explicit BinarySummation(BinaryParams params)
      : params_(std::move(params)), sampler_(params_.noise()) {}

  long users() const override { return params_.n; }
  std::string name() const override { return "binary"; }
  long long messages_per_user() const override { return params_.d; }

  void randomize(double input, RandomStream& rng,
                 Transcript& out) const override;
  double analyze(const Transcript& transcript) const override;
  double draw_uniform_input(RandomStream& rng) const override {
    return rng.bernoulli(0.5) ? 1.0 : 0.0;
  }

  const BinaryParams& params() const { return params_; }

 private:
  BinaryParams params_;
  DlapSampler sampler_;
};

}  // namespace shufflesum

#endif  // SHUFFLESUM_BINARY_PROTOCOL_HPP
