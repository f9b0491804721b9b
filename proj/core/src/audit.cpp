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

#include "shufflesum/audit.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace shufflesum {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Max |log ratio| of one neighboring pair, with the attaining t.
struct PairResult {
  double max_abs_log = 0.0;
  long worst_t = 0;
  bool feasible = true;
};

// Scans log(dc(t)/dc1(t)) over the union support. Ratios are tracked
// multiplicatively (one division per point); logs are taken only of the
// final extremes.
PairResult scan_pair(const Pmf& dc, const Pmf& dc1, long t_lo, long t_hi,
                     long prec) {
  PairResult out;
  bool any = false;
  Real best_hi = Real::one(prec);  // max ratio seen
  Real best_lo = Real::one(prec);  // min ratio seen
  long t_at_hi = t_lo, t_at_lo = t_lo;
  for (long t = t_lo; t <= t_hi; ++t) {
    Real a = dc.mass(t);
    Real b = dc1.mass(t);
    const bool az = a.is_zero(), bz = b.is_zero();
    if (az && bz) continue;
    if (az != bz) {
      out.feasible = false;
      out.max_abs_log = kInf;
      out.worst_t = t;
      return out;
    }
    Real ratio = a / b;
    if (!any || ratio > best_hi) {
      best_hi = ratio;
      t_at_hi = t;
    }
    if (!any || ratio < best_lo) {
      best_lo = ratio;
      t_at_lo = t;
    }
    any = true;
  }
  if (!any) return out;
  double up = log(best_hi).to_double();
  double down = -log(best_lo).to_double();
  if (up >= down) {
    out.max_abs_log = up;
    out.worst_t = t_at_hi;
  } else {
    out.max_abs_log = down;
    out.worst_t = t_at_lo;
  }
  return out;
}

}  // namespace

Pmf transcript_dist(const Pmf& r0, const Pmf& r1, long n, long ones_count) {
  if (ones_count < 0 || ones_count > n)
    throw std::invalid_argument("transcript_dist: ones_count outside [0, n]");
  if (ones_count == 0) return n_fold(r0, n);
  if (ones_count == n) return n_fold(r1, n);
  return convolve(n_fold(r0, n - ones_count), n_fold(r1, ones_count));
}

AuditReport audit_binary(const BinaryParams& params,
                         const AuditOptions& options) {
  const long n = params.n;
  const long d = static_cast<long>(params.d);
  if (n < 2) throw std::invalid_argument("audit_binary: n must be >= 2");
  if (d * n > options.dn_ceiling)
    throw std::invalid_argument("audit_binary: d*n exceeds the ceiling");

  const long prec = options.precision_bits;
  RandomizerDist rd = randomizer_dist(params, prec);

  // Inputs ignored entirely: every transcript distribution coincides.
  if (rd.r0.identical(rd.r1)) return AuditReport{0.0, 0, 0, true};

  // Powers r0^{*k}, r1^{*k}. r1 reflection makes pair (n-1-c, n-c) the
  // mirror of (c, c+1), so pairs with c <= (n-1)/2 cover everything.
  const long c_pairs = (n - 1) / 2 + 1;  // pairs c = 0 .. c_pairs-1
  std::vector<Pmf> pow0, pow1;
  pow0.reserve(n);
  pow1.reserve(c_pairs + 1);
  pow0.push_back(Pmf::point_mass(0, prec));
  pow1.push_back(Pmf::point_mass(0, prec));
  for (long k = 1; k <= n - 1; ++k) pow0.push_back(convolve(pow0[k - 1], rd.r0));
  for (long k = 1; k <= c_pairs; ++k) pow1.push_back(convolve(pow1[k - 1], rd.r1));

  std::vector<PairResult> results(c_pairs);
  std::atomic<bool> stop{false};
  const double exit_above = options.early_exit_above.value_or(kInf);

  auto run_pair = [&](long c) {
    // Shared prefix E = r0^{*(n-1-c)} * r1^{*c}; the pair's distributions
    // differ only in the last factor, so D_c = E*r0 and D_{c+1} = E*r1.
    Pmf shared = (c == 0) ? pow0[n - 1] : convolve(pow0[n - 1 - c], pow1[c]);
    Pmf dc = convolve(shared, rd.r0);
    Pmf dc1 = convolve(shared, rd.r1);
    results[c] = scan_pair(dc, dc1, 0, d * n, prec);
    if (results[c].max_abs_log > exit_above) stop.store(true);
  };

  const int workers = std::min<long>(resolve_threads(options.threads), c_pairs);
  if (workers <= 1) {
    for (long c = 0; c < c_pairs && !stop.load(); ++c) run_pair(c);
  } else {
    std::vector<std::thread> pool;
    std::atomic<long> next{0};
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        while (!stop.load()) {
          long c = next.fetch_add(1);
          if (c >= c_pairs) break;
          run_pair(c);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  AuditReport report;
  bool saw = false;
  for (long c = 0; c < c_pairs; ++c) {
    const PairResult& r = results[c];
    if (!r.feasible) {
      report.feasible = false;
      report.epsilon_hat = kInf;
      report.worst_c = c;
      report.worst_t = r.worst_t;
      return report;
    }
    if (!saw || r.max_abs_log > report.epsilon_hat) {
      report.epsilon_hat = r.max_abs_log;
      report.worst_c = c;
      report.worst_t = r.worst_t;
      saw = true;
    }
  }
  return report;
}

std::vector<double> audit_ratio_curve(const BinaryParams& params, long c,
                                      long precision_bits) {
  const long n = params.n;
  const long d = static_cast<long>(params.d);
  if (c < 0 || c >= n)
    throw std::invalid_argument("audit_ratio_curve: c outside [0, n-1]");
  RandomizerDist rd = randomizer_dist(params, precision_bits);
  Pmf dc = transcript_dist(rd.r0, rd.r1, n, c);
  Pmf dc1 = transcript_dist(rd.r0, rd.r1, n, c + 1);
  std::vector<double> curve(d * n + 1);
  for (long t = 0; t <= d * n; ++t) {
    Real a = dc.mass(t);
    Real b = dc1.mass(t);
    if (a.is_zero() && b.is_zero()) {
      curve[t] = std::numeric_limits<double>::quiet_NaN();
    } else if (b.is_zero()) {
      curve[t] = kInf;
    } else if (a.is_zero()) {
      curve[t] = -kInf;
    } else {
      curve[t] = (log(a) - log(b)).to_double();
    }
  }
  return curve;
}

MgfCheckReport mgf_ratio_check(const Pmf& a, const Pmf& b, double t_range,
                               long grid_points) {
  if (grid_points < 2)
    throw std::invalid_argument("mgf_ratio_check: need at least 2 grid points");
  MgfCheckReport report;
  report.t_range = t_range;
  report.grid_points = grid_points;

  // t -> +inf: the largest support points dominate. Finite only when the
  // maxima coincide; then the limit is the log ratio of their masses.
  if (a.support_max() == b.support_max()) {
    report.limit_pos =
        (log(a.mass(a.support_max())) - log(b.mass(b.support_max())))
            .to_double();
  } else {
    report.limit_pos = a.support_max() > b.support_max() ? kInf : -kInf;
    report.endpoint_mismatch = true;
  }
  if (a.support_offset() == b.support_offset()) {
    report.limit_neg =
        (log(a.mass(a.support_offset())) - log(b.mass(b.support_offset())))
            .to_double();
  } else {
    report.limit_neg = a.support_offset() < b.support_offset() ? kInf : -kInf;
    report.endpoint_mismatch = true;
  }

  double sup = std::max(std::fabs(report.limit_pos), std::fabs(report.limit_neg));
  for (long i = 0; i < grid_points; ++i) {
    double t = -t_range + 2.0 * t_range * i / (grid_points - 1);
    Real diff = log_mgf(a, t) - log_mgf(b, t);
    sup = std::max(sup, std::fabs(diff.to_double()));
  }
  report.sup_log_ratio = sup;
  return report;
}

TvAccuracyResult tv_accuracy_check(const Pmf& r0, const Pmf& r1, long n,
                                   double measured_error, double tolerance) {
  double sd = tv_distance(r0, r1).to_double();
  TvAccuracyResult out;
  out.bound = std::sqrt(static_cast<double>(n)) / (8.0 * std::sqrt(2.0)) *
              (1.0 - sd);
  out.margin = measured_error - out.bound;
  out.holds = measured_error >= out.bound * (1.0 - tolerance);
  return out;
}

ConvolutionTable::ConvolutionTable(long d, double s, long m_max,
                                   long precision_bits, long md_ceiling)
    : d_(d), s_(s), m_max_(m_max), precision_bits_(precision_bits) {
  if (m_max < 0) throw std::invalid_argument("pmk_table: m_max must be >= 0");
  if (m_max * d > md_ceiling)
    throw std::invalid_argument("pmk_table: m_max*d exceeds the ceiling");
  Pmf noise = dlap_pmf(TruncDLapParams{d, s, d}, precision_bits);
  rows_.reserve(m_max + 1);
  rows_.push_back(Pmf::point_mass(0, precision_bits));
  for (long m = 1; m <= m_max; ++m)
    rows_.push_back(convolve(rows_[m - 1], noise));
}

Real ConvolutionTable::at(long m, long k) const {
  if (m < 0 || m > m_max_)
    throw std::out_of_range("pmk_table: row index m outside the table");
  return rows_[m].mass(k);
}

ConvolutionTable pmk_table(long d, double s, long m_max, long precision_bits,
                           long md_ceiling) {
  return ConvolutionTable(d, s, m_max, precision_bits, md_ceiling);
}

TailInequalityResult eval_tail_inequality(const ConvolutionTable& table,
                                          double p, double epsilon, long n,
                                          long m, long k, long l1, long l2) {
  const long prec = table.precision_bits();
  Real eps = Real::of(epsilon, prec);
  Real weight = exp(-eps) * Real::of(p, prec) *
                (Real::one(prec) - exp(-eps / Real::of(2.0, prec)));
  Real mass_shift = table.at(m + 1, k + l1) +
                    Real::of(n - m - 1, prec) / Real::of(m + 1, prec) *
                        table.at(m + 1, k + l2);
  Real lhs = weight * mass_shift +
             exp(Real::of(0.2, prec) * eps) * table.at(m, k - 1);
  Real rhs = table.at(m, k);
  TailInequalityResult out{lhs >= rhs, std::move(lhs), std::move(rhs)};
  return out;
}

namespace {

// Enumerates Delta_{k,m}: nonnegative integer k-vectors summing to m.
void enumerate_compositions(long k, long m, std::vector<long>& scratch,
                            std::vector<std::vector<long>>& out) {
  if (scratch.size() + 1 == static_cast<std::size_t>(k)) {
    scratch.push_back(m);
    out.push_back(scratch);
    scratch.pop_back();
    return;
  }
  for (long v = 0; v <= m; ++v) {
    scratch.push_back(v);
    enumerate_compositions(k, m - v, scratch, out);
    scratch.pop_back();
  }
}

double binomial(long a, long b) {
  double r = 1.0;
  for (long i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
  return r;
}

}  // namespace

DualCertificate check_dual_certificate(long k, long m, double epsilon,
                                       long enumeration_ceiling) {
  if (k < 1 || m < 1)
    throw std::invalid_argument("dual certificate: k, m must be >= 1");
  if (binomial(m + k - 1, k - 1) > static_cast<double>(enumeration_ceiling))
    throw std::invalid_argument("dual certificate: enumeration too large");

  DualCertificate cert;
  cert.k = k;
  cert.m = m;
  cert.rho = epsilon + 10.0 * std::log(k + 1.0) + 10.0;

  std::vector<std::vector<long>> points;
  std::vector<long> scratch;
  enumerate_compositions(k, m, scratch, points);

  // A(y) = <tau(y), y> + beta(y) with tau(y) = 2 rho y and
  // beta(y) = rho(-|y|^2 - m^2).
  auto norm2 = [](const std::vector<long>& y) {
    long s = 0;
    for (long v : y) s += v * v;
    return s;
  };
  auto dot = [](const std::vector<long>& a, const std::vector<long>& b) {
    long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };

  cert.passed = true;
  cert.zeta = 0.0;
  cert.worst_slack = kInf;
  const double mm = static_cast<double>(m) * m;
  for (const auto& y : points) {
    const double a_y = cert.rho * (2.0 * dot(y, y) - norm2(y) - mm);
    if (a_y > 1e-12) cert.passed = false;  // (a) upper half
    cert.zeta = std::min(cert.zeta, a_y);

    // (b): e^{A(y)} >= 2 e^eps sum_{y' != y} e^{<tau(y'), y> + beta(y')}.
    double sum = 0.0;
    for (const auto& yp : points) {
      if (&yp == &y) continue;
      const double expo =
          cert.rho * (2.0 * dot(yp, y) - norm2(yp) - mm) - a_y;
      sum += std::exp(expo);
    }
    const double slack = -(std::log(2.0) + epsilon + std::log(sum));
    cert.worst_slack = std::min(cert.worst_slack, slack);
    if (slack < 0.0) cert.passed = false;
  }
  return cert;
}

}  // namespace shufflesum
