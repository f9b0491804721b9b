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

#ifndef SHUFFLESUM_HARNESS_HPP
#define SHUFFLESUM_HARNESS_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "shufflesum/rng.hpp"

namespace shufflesum {

// What the analyzer sees: the multiset of all users' messages, reduced to
// per-symbol counts. Order (and with it any user attribution) is absent by
// construction; a uniform shuffle of the concatenated messages carries
// exactly this information and nothing more.
struct Transcript {
  std::map<std::int64_t, long> counts;

  void add(std::int64_t symbol, long count = 1) { counts[symbol] += count; }

  long count(std::int64_t symbol) const {
    auto it = counts.find(symbol);
    return it == counts.end() ? 0 : it->second;
  }

  long long total() const {
    long long t = 0;
    for (const auto& [sym, c] : counts) t += c;
    return t;
  }

  bool operator==(const Transcript& other) const {
    return counts == other.counts;
  }
};

// Encode-shuffle-analyze triple for scalar summation: each user's input is
// randomized into a message multiset, the shuffler reduces the union to a
// Transcript, and a symmetric analyzer maps it to a real estimate.
class SummationProtocol {
 public:
  virtual ~SummationProtocol() = default;

  virtual long users() const = 0;
  virtual std::string name() const = 0;

  // Appends one user's messages to the transcript.
  virtual void randomize(double input, RandomStream& rng,
                         Transcript& out) const = 0;

  virtual double analyze(const Transcript& transcript) const = 0;

  // Messages every user emits per run (used for transcript validation).
  virtual long long messages_per_user() const = 0;

  // Draws one input from the protocol's uniform input distribution.
  virtual double draw_uniform_input(RandomStream& rng) const = 0;
};

enum class DatasetKind { explicit_list, all_zeros, all_ones, uniform_random };

struct DatasetSpec {
  DatasetKind kind = DatasetKind::all_zeros;
  std::vector<double> values;  // explicit_list only

  static DatasetSpec all_zeros() { return {DatasetKind::all_zeros, {}}; }
  static DatasetSpec all_ones() { return {DatasetKind::all_ones, {}}; }
  static DatasetSpec uniform() { return {DatasetKind::uniform_random, {}}; }
  static DatasetSpec explicit_values(std::vector<double> v) {
    return {DatasetKind::explicit_list, std::move(v)};
  }
};

struct ExperimentConfig {
  long trials = 1;
  std::uint64_t seed = 0;
  DatasetSpec inputs;
};

struct ErrorReport {
  double mean_abs_error = 0.0;
  double mean_signed_error = 0.0;
  double stderr_of_mean = 0.0;
  double p50 = 0.0;
  double p90 = 0.0;
  double p99 = 0.0;
  long trials = 0;

  // CSV row `protocol,epsilon,n,trials,seed,mean_abs_error,stderr,p50,p90,p99`.
  std::string csv_row(const std::string& protocol, double epsilon, long n,
                      std::uint64_t seed) const;
  static std::string csv_header();
};

// Runs the full pipeline once: n randomizers, shuffle (reduction to
// counts), analyzer. The per-user streams are rng.split(0), .., split(n-1).
struct ProtocolRun {
  Transcript transcript;
  double output = 0.0;
};

ProtocolRun run_protocol(const std::vector<double>& dataset,
                         const SummationProtocol& protocol, RandomStream rng);

// Seeded Monte Carlo driver. Stream derivation is the documented counter
// scheme: trial t uses root.split(t); user u inside a trial uses
// root.split(t).split(u); dataset generation uses root.split(t).split(2^40).
// Trials run in parallel; aggregation is order-independent (per-trial
// errors land in a preallocated slot, then a sequential pairwise sum), so
// results are bit-identical for any thread count.
struct ExperimentOptions {
  int threads = 0;  // 0 = hardware concurrency
};

ErrorReport run_experiment(const ExperimentConfig& config,
                           const SummationProtocol& protocol,
                           const ExperimentOptions& options = {});

// Materializes an explicit uniform shuffle of the concatenated messages
// (Fisher-Yates) and reduces it back to counts. For demonstrations that the
// counts representation and an explicit shuffle agree.
Transcript shuffle_explicitly(const std::vector<std::int64_t>& messages,
                              RandomStream& rng);

// Tag for the dataset-generation substream inside a trial.
inline constexpr std::uint64_t kDatasetStreamTag = 1ULL << 40;

}  // namespace shufflesum

#endif  // SHUFFLESUM_HARNESS_HPP
