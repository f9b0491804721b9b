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

#ifndef SHUFFLESUM_HISTOGRAM_PROTOCOL_HPP
#define SHUFFLESUM_HISTOGRAM_PROTOCOL_HPP

#include <utility>
#include <vector>

#include "shufflesum/binary_protocol.hpp"
#include "shufflesum/harness.hpp"

namespace shufflesum {

// Histogram over the domain {1..B}: one (epsilon/2)-budget binary
// summation per coordinate, messages tagged with the coordinate index.
// Neighboring users change at most two indicator coordinates, so the
// end-to-end budget is 2 * (epsilon/2) = epsilon.
struct HistogramParams {
  double epsilon = 0.0;
  long n = 0;
  long B = 0;
  BinaryParams per_coord;  // built with epsilon/2
};

HistogramParams make_histogram_params(
    double epsilon, long n, long B,
    const EngineeringSearchOptions& options = {});

class HistogramProtocol {
 public:
  explicit HistogramProtocol(HistogramParams params)
      : params_(std::move(params)), sampler_(params_.per_coord.noise()) {}

  const HistogramParams& params() const { return params_; }
  long long messages_per_user() const {
    return params_.B * params_.per_coord.d;
  }

  // Wire form: coordinate j and payload bit as the integer 2*j + bit.
  static std::int64_t symbol(long coordinate, int bit) {
    return 2 * coordinate + bit;
  }

  // Runs the per-coordinate randomizer on the indicator [x == j] for every
  // coordinate j, tagging outputs with j. B*d messages per user.
  void randomize(long x, RandomStream& rng, Transcript& out) const;

  // Materialized (coordinate, bit) message list of one user.
  std::vector<std::pair<long, int>> hist_randomize(long x,
                                                   RandomStream& rng) const;

  // Per-coordinate estimates; throws std::invalid_argument if any
  // coordinate's sub-transcript does not hold n*d messages.
  std::vector<double> analyze(const Transcript& transcript) const;

 private:
  HistogramParams params_;
  DlapSampler sampler_;
};

// Histogram dataset: explicit values in {1..B} or uniform draws.
struct HistDatasetSpec {
  bool uniform = true;
  std::vector<long> values;

  static HistDatasetSpec uniform_random() { return HistDatasetSpec{}; }
  static HistDatasetSpec explicit_values(std::vector<long> v) {
    return HistDatasetSpec{false, std::move(v)};
  }
};

// Monte Carlo over the l_inf error max_j |estimate_j - true_count_j|.
// Stream derivation matches run_experiment (trial t -> root.split(t),
// user u -> trial.split(u), dataset -> trial.split(kDatasetStreamTag)).
// If raw_linf_errors is non-null it receives the per-trial errors.
ErrorReport run_hist_experiment(long trials, std::uint64_t seed,
                                const HistDatasetSpec& dataset,
                                const HistogramProtocol& protocol,
                                std::vector<double>* raw_linf_errors = nullptr,
                                int threads = 0);

}  // namespace shufflesum

#endif  // SHUFFLESUM_HISTOGRAM_PROTOCOL_HPP
