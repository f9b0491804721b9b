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

#include "shufflesum/real_protocol.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace shufflesum {

double RealSumSchedule::eps_sum() const {
  double s = 0.0;
  for (double e : eps_j) s += e;
  return s;
}

RealSumSchedule make_schedule(double epsilon, long n) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("make_schedule: epsilon must lie in (0,1)");
  if (n < 4) throw std::invalid_argument("make_schedule: n must be >= 4");
  RealSumSchedule s;
  s.epsilon = epsilon;
  s.n = n;
  const double log2n = std::log2(static_cast<double>(n));
  s.J = static_cast<long>(std::ceil(2.0 * log2n));
  const double cutoff = epsilon / (4.0 * log2n);
  double decay = 1.0;
  for (long j = 1; j <= s.J; ++j) {
    decay *= 0.9;
    s.eps_j.push_back(std::max(decay * epsilon / 20.0, cutoff));
  }
  if (!(s.eps_sum() <= epsilon))
    throw std::logic_error("make_schedule: schedule exceeds the budget");
  return s;
}

std::vector<int> decompose(double x, long J) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::invalid_argument("decompose: x must lie in [0,1]");
  if (J < 1) throw std::invalid_argument("decompose: J must be >= 1");
  std::vector<int> bits(J);
  if (x == 1.0) {
    for (long j = 0; j < J; ++j) bits[j] = 1;
    return bits;
  }
  auto value = static_cast<std::uint64_t>(std::floor(std::ldexp(x, J)));
  for (long j = 1; j <= J; ++j) bits[j - 1] = (value >> (J - j)) & 1u;
  return bits;
}

RealSummation::RealSummation(RealSumSchedule schedule,
                             std::vector<BinaryParams> bit_params)
    : schedule_(std::move(schedule)), bit_params_(std::move(bit_params)) {
  if (static_cast<long>(bit_params_.size()) != schedule_.J)
    throw std::invalid_argument("real protocol: need one BinaryParams per bit");
  samplers_.reserve(bit_params_.size());
  for (const BinaryParams& bp : bit_params_) {
    if (bp.n != schedule_.n)
      throw std::invalid_argument("real protocol: per-bit n mismatch");
    samplers_.emplace_back(bp.noise());
    messages_per_user_ += bp.d;
  }
}

RealSummation RealSummation::with_engineering_params(
    const RealSumSchedule& schedule, const EngineeringSearchOptions& options) {
  std::map<double, BinaryParams> by_eps;
  std::vector<BinaryParams> per_bit;
  per_bit.reserve(schedule.J);
  for (double eps : schedule.eps_j) {
    auto it = by_eps.find(eps);
    if (it == by_eps.end())
      it = by_eps.emplace(eps, engineering_params(eps, schedule.n, options))
               .first;
    per_bit.push_back(it->second);
  }
  return RealSummation(schedule, std::move(per_bit));
}

void RealSummation::randomize(double input, RandomStream& rng,
                              Transcript& out) const {
  std::vector<int> bits = decompose(input, schedule_.J);
  for (long j = 1; j <= schedule_.J; ++j) {
    BitMultiset b =
        binary_randomize(bits[j - 1], bit_params_[j - 1], samplers_[j - 1], rng);
    if (b.ones > 0) out.add(TaggedMessage{j, 1}.symbol(), b.ones);
    if (b.zeros > 0) out.add(TaggedMessage{j, 0}.symbol(), b.zeros);
  }
}

std::vector<TaggedMessage> RealSummation::real_randomize(
    double x, RandomStream& rng) const {
  Transcript t;
  randomize(x, rng, t);
  std::vector<TaggedMessage> out;
  out.reserve(messages_per_user_);
  for (const auto& [sym, count] : t.counts)
    for (long i = 0; i < count; ++i) out.push_back(TaggedMessage::from_symbol(sym));
  return out;
}

double RealSummation::analyze(const Transcript& transcript) const {
  double total = 0.0;
  for (long j = 1; j <= schedule_.J; ++j) {
    long ones = transcript.count(TaggedMessage{j, 1}.symbol());
    long zeros = transcript.count(TaggedMessage{j, 0}.symbol());
    double a_j = binary_analyze(ones, zeros, bit_params_[j - 1]);
    total += std::ldexp(a_j, static_cast<int>(-j));
  }
  return total;
}

}  // namespace shufflesum
