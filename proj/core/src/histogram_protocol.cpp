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

#include "shufflesum/histogram_protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace shufflesum {

namespace {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

double pairwise_sum(const std::vector<double>& v, std::size_t lo,
                    std::size_t hi) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

double percentile_nearest_rank(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  std::size_t rank = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(sorted.size())));
  if (rank == 0) rank = 1;
  return sorted[rank - 1];
}

}  // namespace

HistogramParams make_histogram_params(double epsilon, long n, long B,
                                      const EngineeringSearchOptions& options) {
  if (B < 2) throw std::invalid_argument("histogram: B must be >= 2");
  HistogramParams params;
  params.epsilon = epsilon;
  params.n = n;
  params.B = B;
  params.per_coord = engineering_params(epsilon / 2.0, n, options);
  return params;
}

void HistogramProtocol::randomize(long x, RandomStream& rng,
                                  Transcript& out) const {
  if (x < 1 || x > params_.B)
    throw std::invalid_argument("histogram input outside [1, B]");
  for (long j = 1; j <= params_.B; ++j) {
    BitMultiset bits =
        binary_randomize(x == j ? 1 : 0, params_.per_coord, sampler_, rng);
    if (bits.ones > 0) out.add(symbol(j, 1), bits.ones);
    if (bits.zeros > 0) out.add(symbol(j, 0), bits.zeros);
  }
}

std::vector<std::pair<long, int>> HistogramProtocol::hist_randomize(
    long x, RandomStream& rng) const {
  Transcript t;
  randomize(x, rng, t);
  std::vector<std::pair<long, int>> out;
  out.reserve(messages_per_user());
  for (const auto& [sym, count] : t.counts)
    for (long i = 0; i < count; ++i)
      out.emplace_back(sym / 2, static_cast<int>(sym % 2));
  return out;
}

std::vector<double> HistogramProtocol::analyze(
    const Transcript& transcript) const {
  std::vector<double> estimates(params_.B);
  for (long j = 1; j <= params_.B; ++j) {
    long ones = transcript.count(symbol(j, 1));
    long zeros = transcript.count(symbol(j, 0));
    estimates[j - 1] = binary_analyze(ones, zeros, params_.per_coord);
  }
  return estimates;
}

ErrorReport run_hist_experiment(long trials, std::uint64_t seed,
                                const HistDatasetSpec& dataset,
                                const HistogramProtocol& protocol,
                                std::vector<double>* raw_linf_errors,
                                int threads) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const long n = protocol.params().n;
  const long B = protocol.params().B;
  if (!dataset.uniform && static_cast<long>(dataset.values.size()) != n)
    throw std::invalid_argument("histogram dataset size != n");

  RandomStream root(seed);
  std::vector<double> linf(trials);

  auto run_trial = [&](long t) {
    RandomStream trial_rng = root.split(static_cast<std::uint64_t>(t));
    std::vector<long> xs;
    if (dataset.uniform) {
      RandomStream ds = trial_rng.split(kDatasetStreamTag);
      xs.resize(n);
      for (long u = 0; u < n; ++u)
        xs[u] = 1 + static_cast<long>(ds.below(static_cast<std::uint64_t>(B)));
    } else {
      xs = dataset.values;
    }
    Transcript transcript;
    for (long u = 0; u < n; ++u) {
      RandomStream user_rng = trial_rng.split(static_cast<std::uint64_t>(u));
      protocol.randomize(xs[u], user_rng, transcript);
    }
    std::vector<double> est = protocol.analyze(transcript);
    std::vector<long> truth(B, 0);
    for (long x : xs) ++truth[x - 1];
    double worst = 0.0;
    for (long j = 0; j < B; ++j)
      worst = std::max(worst, std::fabs(est[j] - truth[j]));
    linf[t] = worst;
  };

  const int workers = std::min<long>(resolve_threads(threads), trials);
  if (workers <= 1) {
    for (long t = 0; t < trials; ++t) run_trial(t);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (long t = w; t < trials; t += workers) run_trial(t);
      });
    for (auto& th : pool) th.join();
  }

  ErrorReport report;
  report.trials = trials;
  report.mean_abs_error = pairwise_sum(linf, 0, linf.size()) / trials;
  report.mean_signed_error = report.mean_abs_error;
  std::vector<double> sq(trials);
  for (long t = 0; t < trials; ++t) {
    double dev = linf[t] - report.mean_abs_error;
    sq[t] = dev * dev;
  }
  double var =
      trials > 1 ? pairwise_sum(sq, 0, sq.size()) / (trials - 1) : 0.0;
  report.stderr_of_mean = std::sqrt(var / trials);
  if (raw_linf_errors != nullptr) *raw_linf_errors = linf;
  std::sort(linf.begin(), linf.end());
  report.p50 = percentile_nearest_rank(linf, 0.50);
  report.p90 = percentile_nearest_rank(linf, 0.90);
  report.p99 = percentile_nearest_rank(linf, 0.99);
  return report;
}

}  // namespace shufflesum
