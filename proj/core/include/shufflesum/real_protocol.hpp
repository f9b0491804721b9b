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

#ifndef SHUFFLESUM_REAL_PROTOCOL_HPP
#define SHUFFLESUM_REAL_PROTOCOL_HPP

#include <vector>

#include "shufflesum/binary_protocol.hpp"
#include "shufflesum/harness.hpp"

namespace shufflesum {

// Privacy schedule of the real-summation protocol: J = ceil(2 log2 n) bit
// positions, with eps_j = max{0.9^j eps / 20, eps / (4 log2 n)} so that the
// most significant bits get the larger share while the sum stays <= eps.
// Base-2 logs throughout: the rounding-error argument needs 2^-J <= 1/n^2.
struct RealSumSchedule {
  double epsilon = 0.0;
  long n = 0;
  long J = 0;
  std::vector<double> eps_j;  // eps_j[j-1] is the budget of bit j

  double eps_sum() const;
};

// Throws std::invalid_argument unless epsilon in (0,1) and n >= 4; the
// n >= 4 floor is what makes sum_j eps_j <= eps hold.
RealSumSchedule make_schedule(double epsilon, long n);

// Fixed-point bits of x in [0,1], most significant first: the bits of
// floor(x * 2^J), except that x = 1 maps to all ones (value 1 - 2^-J).
// sum_j bits[j]/2^j lies in [x - 2^-J, x].
std::vector<int> decompose(double x, long J);

// One message of the real protocol: a payload bit tagged with its bit
// position. On the wire the pair is the integer 2*bit_index + payload.
struct TaggedMessage {
  long bit_index = 0;  // in [1, J]
  int payload = 0;

  std::int64_t symbol() const { return 2 * bit_index + payload; }
  static TaggedMessage from_symbol(std::int64_t s) {
    return TaggedMessage{static_cast<long>(s / 2), static_cast<int>(s % 2)};
  }
};

// Per-bit binary protocols under the schedule, combined into one shuffle by
// tagging every message with its bit position.
class RealSummation : public SummationProtocol {
 public:
  // bit_params[j-1] must be the binary parameters used for bit j; each must
  // have n equal to schedule.n.
  RealSummation(RealSumSchedule schedule, std::vector<BinaryParams> bit_params);

  // Builds per-bit parameters with the audit-driven engineering search
  // (one search per distinct eps_j value).
  static RealSummation with_engineering_params(
      const RealSumSchedule& schedule,
      const EngineeringSearchOptions& options = {});

  long users() const override { return schedule_.n; }
  std::string name() const override { return "real"; }
  long long messages_per_user() const override { return messages_per_user_; }

  void randomize(double input, RandomStream& rng,
                 Transcript& out) const override;
  double analyze(const Transcript& transcript) const override;
  double draw_uniform_input(RandomStream& rng) const override {
    return rng.uniform01();
  }

  // Materialized message multiset of a single user (testing and the
  // pre-shuffle debug dump).
  std::vector<TaggedMessage> real_randomize(double x, RandomStream& rng) const;

  const RealSumSchedule& schedule() const { return schedule_; }
  const std::vector<BinaryParams>& bit_params() const { return bit_params_; }

 private:
  RealSumSchedule schedule_;
  std::vector<BinaryParams> bit_params_;
  std::vector<DlapSampler> samplers_;
  long long messages_per_user_ = 0;
};

}  // namespace shufflesum

#endif  // SHUFFLESUM_REAL_PROTOCOL_HPP
