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

#ifndef SHUFFLESUM_AUDIT_HPP
#define SHUFFLESUM_AUDIT_HPP

#include <optional>
#include <vector>

#include "shufflesum/binary_protocol.hpp"
#include "shufflesum/pmf.hpp"

namespace shufflesum {

// Result of the exact transcript-ratio audit: eps_hat is the worst-case
// |log ratio| of transcript probabilities over all neighboring ones-count
// pairs (c, c+1) and all transcript values t in {0..dn}. feasible is false
// when some t carries mass under one count but not the other, in which
// case no finite epsilon exists and eps_hat is +inf.
struct AuditReport {
  double epsilon_hat = 0.0;
  long worst_c = 0;
  long worst_t = 0;
  bool feasible = true;
};

struct AuditOptions {
  long precision_bits = 256;
  long dn_ceiling = 1000000;
  int threads = 0;  // 0 = hardware concurrency
  // Stop as soon as some pair's ratio exceeds this log bound. The returned
  // eps_hat is then only a lower bound (enough for a pass/fail probe);
  // reported audits should keep the default.
  std::optional<double> early_exit_above = std::nullopt;
};

// Exact distribution of the total ones count when c of n users hold 1:
// convolve(n_fold(r0, n-c), n_fold(r1, c)). Transcripts of the bit
// protocol are determined by this total, since every user sends exactly
// d one-bit messages.
Pmf transcript_dist(const Pmf& r0, const Pmf& r1, long n, long ones_count);

// The Lemma-style ratio audit over all neighboring count pairs. The pair
// (n-1-c, n-c) is the exact mirror image of (c, c+1) because r1 is the
// bit-exact reflection of r0, so only c <= (n-1)/2 is evaluated directly.
AuditReport audit_binary(const BinaryParams& params,
                         const AuditOptions& options = {});

// One pair's full ratio curve, log(D_c(t)/D_{c+1}(t)) for t in {0..dn}.
// Infinite entries mark support mismatches.
std::vector<double> audit_ratio_curve(const BinaryParams& params, long c,
                                      long precision_bits = 256);

// Grid-plus-endpoint check of the bounded-MGF-ratio necessary condition.
// Samples log(M_a(t)/M_b(t)) on a uniform grid over [-t_range, t_range]
// and adds the closed-form t -> +-inf limits (the log ratio of the extreme
// support masses when the support extremes coincide; infinite otherwise).
// The reported sup is a lower bound on the true sup.
struct MgfCheckReport {
  double sup_log_ratio = 0.0;
  double t_range = 0.0;
  long grid_points = 0;
  double limit_pos = 0.0;   // t -> +inf
  double limit_neg = 0.0;   // t -> -inf
  bool endpoint_mismatch = false;
};

MgfCheckReport mgf_ratio_check(const Pmf& a, const Pmf& b, double t_range,
                               long grid_points);

// Accuracy-versus-TV necessary condition: any protocol with per-input
// message distributions r0, r1 must have measured error at least
// (sqrt(n)/(8 sqrt(2))) * (1 - TV(r0, r1)).
struct TvAccuracyResult {
  bool holds = false;
  double bound = 0.0;
  double margin = 0.0;
};

TvAccuracyResult tv_accuracy_check(const Pmf& r0, const Pmf& r1, long n,
                                   double measured_error,
                                   double tolerance = 1e-9);

// Table of P[m][k] = Pr[Z_1 + ... + Z_m = k] for Z ~ DLap_d(d/2, s),
// rows built by iterated convolution. Row 0 is the convention P[0][0] = 1.
class ConvolutionTable {
 public:
  ConvolutionTable(long d, double s, long m_max, long precision_bits = 256,
                   long md_ceiling = 1000000);

  long d() const { return d_; }
  double s() const { return s_; }
  long m_max() const { return m_max_; }
  long precision_bits() const { return precision_bits_; }

  // P[m][k]; exact zero outside the support of the m-fold sum.
  Real at(long m, long k) const;
  const Pmf& row(long m) const { return rows_[m]; }

 private:
  long d_;
  double s_;
  long m_max_;
  long precision_bits_;
  std::vector<Pmf> rows_;
};

ConvolutionTable pmk_table(long d, double s, long m_max,
                           long precision_bits = 256,
                           long md_ceiling = 1000000);

// Numeric probe of the two-tails inequality
//   e^{-eps} p (1-e^{-eps/2}) (P_{m+1,k+l1} + (n-m-1)/(m+1) P_{m+1,k+l2})
//     + e^{0.2 eps} P_{m,k-1}  >=  P_{m,k}.
// Reports both sides; no pass/fail contract outside the regime where the
// hypotheses hold. Throws std::out_of_range if m+1 exceeds the table.
struct TailInequalityResult {
  bool holds = false;
  Real lhs;
  Real rhs;
};

TailInequalityResult eval_tail_inequality(const ConvolutionTable& table,
                                          double p, double epsilon, long n,
                                          long m, long k, long l1, long l2);

// Dual-certificate check over Delta_{k,m} (count vectors of m messages on a
// k-symbol alphabet): with rho = eps + 10 ln(k+1) + 10, tau(y) = 2 rho y and
// beta(y) = rho(-|y|^2 - m^2), verifies for every y both
//   (a) 0 >= <tau(y),y> + beta(y) >= zeta   (zeta = attained minimum), and
//   (b) e^{<tau(y),y>+beta(y)} >= 2 e^eps sum_{y' != y} e^{<tau(y'),y>+beta(y')}.
struct DualCertificate {
  double rho = 0.0;
  long k = 0;
  long m = 0;
  double zeta = 0.0;
  bool passed = false;
  double worst_slack = 0.0;  // min over y of the log-slack in (b)
};

DualCertificate check_dual_certificate(long k, long m, double epsilon,
                                       long enumeration_ceiling = 100000);

}  // namespace shufflesum

#endif  // SHUFFLESUM_AUDIT_HPP
