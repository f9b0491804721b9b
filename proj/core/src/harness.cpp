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

#include "shufflesum/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace shufflesum {

namespace {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

std::vector<double> realize_dataset(const DatasetSpec& spec, long n,
                                    const SummationProtocol& protocol,
                                    RandomStream& trial_rng) {
  switch (spec.kind) {
    case DatasetKind::explicit_list:
      if (static_cast<long>(spec.values.size()) != n)
        throw std::invalid_argument("dataset size does not match protocol n");
      return spec.values;
    case DatasetKind::all_zeros:
      return std::vector<double>(n, 0.0);
    case DatasetKind::all_ones:
      return std::vector<double>(n, 1.0);
    case DatasetKind::uniform_random: {
      RandomStream ds = trial_rng.split(kDatasetStreamTag);
      std::vector<double> xs(n);
      for (long i = 0; i < n; ++i) xs[i] = protocol.draw_uniform_input(ds);
      return xs;
    }
  }
  throw std::logic_error("unreachable dataset kind");
}

// Pairwise (cascade) summation: order-independent reassociation drift is
// bounded by O(log n) ulps instead of O(n).
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

double percentile_nearest_rank(std::vector<double> sorted, double q) {
  if (sorted.empty()) return 0.0;
  std::size_t rank = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(sorted.size())));
  if (rank == 0) rank = 1;
  return sorted[rank - 1];
}

}  // namespace

std::string ErrorReport::csv_header() {
  return "protocol,epsilon,n,trials,seed,mean_abs_error,stderr,p50,p90,p99";
}

std::string ErrorReport::csv_row(const std::string& protocol, double epsilon,
                                 long n, std::uint64_t seed) const {
  std::ostringstream os;
  os.precision(17);
  os << protocol << ',' << epsilon << ',' << n << ',' << trials << ',' << seed
     << ',' << mean_abs_error << ',' << stderr_of_mean << ',' << p50 << ','
     << p90 << ',' << p99;
  return os.str();
}

ProtocolRun run_protocol(const std::vector<double>& dataset,
                         const SummationProtocol& protocol, RandomStream rng) {
  const long n = protocol.users();
  if (static_cast<long>(dataset.size()) != n)
    throw std::invalid_argument("run_protocol: dataset size != protocol n");
  ProtocolRun run;
  for (long u = 0; u < n; ++u) {
    RandomStream user_rng = rng.split(static_cast<std::uint64_t>(u));
    protocol.randomize(dataset[u], user_rng, run.transcript);
  }
  if (run.transcript.total() !=
      static_cast<long long>(n) * protocol.messages_per_user())
    throw std::logic_error("run_protocol: message count conservation failed");
  run.output = protocol.analyze(run.transcript);
  return run;
}

ErrorReport run_experiment(const ExperimentConfig& config,
                           const SummationProtocol& protocol,
                           const ExperimentOptions& options) {
  if (config.trials < 1)
    throw std::invalid_argument("run_experiment: trials must be >= 1");
  const long trials = config.trials;
  const long n = protocol.users();
  RandomStream root(config.seed);

  std::vector<double> abs_err(trials), signed_err(trials);

  auto run_trial = [&](long t) {
    RandomStream trial_rng = root.split(static_cast<std::uint64_t>(t));
    std::vector<double> xs =
        realize_dataset(config.inputs, n, protocol, trial_rng);
    ProtocolRun run = run_protocol(xs, protocol, trial_rng);
    double truth = std::accumulate(xs.begin(), xs.end(), 0.0);
    signed_err[t] = run.output - truth;
    abs_err[t] = std::fabs(signed_err[t]);
  };

  const int workers =
      std::min<long>(resolve_threads(options.threads), trials);
  if (workers <= 1) {
    for (long t = 0; t < trials; ++t) run_trial(t);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (long t = w; t < trials; t += workers) run_trial(t);
      });
    }
    for (auto& th : pool) th.join();
  }

  ErrorReport report;
  report.trials = trials;
  report.mean_abs_error = pairwise_sum(abs_err, 0, abs_err.size()) / trials;
  report.mean_signed_error =
      pairwise_sum(signed_err, 0, signed_err.size()) / trials;

  std::vector<double> sq(trials);
  for (long t = 0; t < trials; ++t) {
    double dev = abs_err[t] - report.mean_abs_error;
    sq[t] = dev * dev;
  }
  double var = trials > 1
                   ? pairwise_sum(sq, 0, sq.size()) / (trials - 1)
                   : 0.0;
  report.stderr_of_mean = std::sqrt(var / trials);

  std::sort(abs_err.begin(), abs_err.end());
  report.p50 = percentile_nearest_rank(abs_err, 0.50);
  report.p90 = percentile_nearest_rank(abs_err, 0.90);
  report.p99 = percentile_nearest_rank(abs_err, 0.99);
  return report;
}

Transcript shuffle_explicitly(const std::vector<std::int64_t>& messages,
                              RandomStream& rng) {
  std::vector<std::int64_t> shuffled = messages;
  for (std::size_t i = shuffled.size(); i > 1; --i) {
    std::size_t j = rng.below(i);
    std::swap(shuffled[i - 1], shuffled[j]);
  }
  Transcript t;
  for (std::int64_t m : shuffled) t.add(m);
  return t;
}

}  // namespace shufflesum
