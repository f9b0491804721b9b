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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "shufflesum/audit.hpp"
#include "shufflesum/binary_protocol.hpp"

namespace shufflesum {

namespace {

// Expected-error proxy pn/2 + sqrt(2) s sqrt(pn) used as the search tiebreak.
double error_proxy(long n, double s, double p) {
  return p * n / 2.0 + std::sqrt(2.0) * s * std::sqrt(p * n);
}

// Documented p grid: 2^-20 .. 2^-1 geometrically, extended by 1 - 2^-2 ..
// 1 - 2^-8 and exactly 1 (at small epsilon nothing at or below 1/2 can
// pass, while p = 1 ignores the inputs and always does).
std::vector<double> p_grid() {
  std::vector<double> g;
  for (int e = 20; e >= 1; --e) g.push_back(std::ldexp(1.0, -e));
  for (int e = 2; e <= 8; ++e) g.push_back(1.0 - std::ldexp(1.0, -e));
  g.push_back(1.0);
  return g;
}

bool passes(const BinaryParams& candidate, double epsilon,
            const EngineeringSearchOptions& opt, double* eps_hat_seen) {
  AuditOptions audit_opt;
  audit_opt.precision_bits = opt.search_precision_bits;
  audit_opt.dn_ceiling = opt.dn_ceiling;
  audit_opt.threads = opt.threads;
  audit_opt.early_exit_above = epsilon;
  AuditReport report = audit_binary(candidate, audit_opt);
  if (eps_hat_seen != nullptr && report.feasible)
    *eps_hat_seen = std::min(*eps_hat_seen, report.epsilon_hat);
  return report.feasible && report.epsilon_hat <= epsilon;
}

}  // namespace

BinaryParams engineering_params(double epsilon, long n,
                                const EngineeringSearchOptions& opt) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (n < 2) throw std::invalid_argument("n must be >= 2");

  // "No privacy requested" sentinel: the degenerate noise-free protocol.
  if (epsilon >= 1e9) {
    for (long d : opt.d_candidates)
      if (d * n <= opt.dn_ceiling)
        return explicit_params(epsilon, n, d, d / 64.0, 0.0);
    throw std::runtime_error("engineering_params: no candidate d fits ceiling");
  }

  const std::vector<double> grid = p_grid();
  double best_eps_hat_seen = std::numeric_limits<double>::infinity();

  for (long d : opt.d_candidates) {
    if (d < 1 || d % 2 == 0)
      throw std::invalid_argument("engineering_params: candidates must be odd");
    if (d * n > opt.dn_ceiling) continue;

    // Smallest grid p passing the audit, for each s on the grid.
    struct SP {
      double s, p_pass, p_fail;
    };
    std::vector<SP> passing;
    for (double div : {64.0, 32.0, 16.0, 8.0, 4.0}) {
      const double s = d / div;
      double prev_fail = 0.0;
      for (double p : grid) {
        BinaryParams cand = explicit_params(epsilon, n, d, s, p);
        if (passes(cand, epsilon, opt, &best_eps_hat_seen)) {
          passing.push_back(SP{s, p, prev_fail});
          break;
        }
        prev_fail = p;
      }
    }
    if (passing.empty()) continue;

    const SP* best = &passing.front();
    for (const SP& sp : passing)
      if (error_proxy(n, sp.s, sp.p_pass) <
          error_proxy(n, best->s, best->p_pass))
        best = &sp;

    // Bisection toward the smallest passing p at the best (d, s).
    double lo = best->p_fail, hi = best->p_pass;
    for (int it = 0; it < opt.bisection_iterations; ++it) {
      double mid = 0.5 * (lo + hi);
      BinaryParams cand = explicit_params(epsilon, n, d, best->s, mid);
      if (passes(cand, epsilon, opt, nullptr))
        hi = mid;
      else
        lo = mid;
    }

    // Confirm the winner at full precision; fall back to the original grid
    // point if the coarse-precision bisection overshot.
    AuditOptions verify;
    verify.precision_bits = opt.final_precision_bits;
    verify.dn_ceiling = opt.dn_ceiling;
    verify.threads = opt.threads;
    for (double p_final : {hi, best->p_pass}) {
      BinaryParams cand = explicit_params(epsilon, n, d, best->s, p_final);
      AuditReport report = audit_binary(cand, verify);
      if (report.feasible && report.epsilon_hat <= epsilon) return cand;
    }
  }

  throw std::runtime_error(
      "engineering_params: no candidate passed the audit; best eps_hat "
      "seen >= " +
      std::to_string(best_eps_hat_seen));
}

}  // namespace shufflesum
