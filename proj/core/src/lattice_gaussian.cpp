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

#include "shufflesum/lattice_gaussian.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace shufflesum {

namespace {

Real pi_value(long prec) {
  Real r(prec);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

// exp(-pi (x - c)^2 / s^2)
Real gaussian_weight(double x, double c, double s, long prec) {
  Real diff = Real::of(x, prec) - Real::of(c, prec);
  Real e = pi_value(prec) * diff * diff /
           (Real::of(s, prec) * Real::of(s, prec));
  return exp(-e);
}

}  // namespace

ThetaMass theta_mass(const LatticeGaussian& g, long precision_bits) {
  if (!(g.lattice_step > 0.0) || !(g.s > 0.0) || !(g.trunc_radius > 0.0))
    throw std::invalid_argument("theta_mass: parameters must be positive");
  const long prec = precision_bits;
  const double radius = g.trunc_radius * g.s;
  const long j_lo = static_cast<long>(std::ceil((g.center - radius) / g.lattice_step));
  const long j_hi = static_cast<long>(std::floor((g.center + radius) / g.lattice_step));

  Real sum = Real::zero(prec);
  for (long j = j_lo; j <= j_hi; ++j)
    sum += gaussian_weight(j * g.lattice_step, g.center, g.s, prec);

  // Everything beyond the cutoff: the nearest omitted point sits at least
  // radius away and successive ones a apart, so the two tails are bounded
  // by 2 e^{-pi R^2} / (1 - e^{-2 pi R a / s}) with R = trunc_radius.
  Real pi = pi_value(prec);
  Real r = Real::of(g.trunc_radius, prec);
  Real head = exp(-(pi * r * r));
  Real decay = exp(-(Real::of(2.0, prec) * pi * r *
                     Real::of(g.lattice_step, prec) / Real::of(g.s, prec)));
  Real tail = Real::of(2.0, prec) * head / (Real::one(prec) - decay);
  return ThetaMass{std::move(sum), std::move(tail)};
}

namespace {

// min over the c grid of rho_{s,c}(aZ) / rho_s(aZ) >= e^{-delta}?
bool shift_condition(double a, double s, double delta, long c_grid,
                     long prec) {
  Real centered = theta_mass({a, 0.0, s, 20.0}, prec).value;
  Real threshold = exp(-Real::of(delta, prec)) * centered;
  for (long k = 0; k < c_grid; ++k) {
    double c = a * static_cast<double>(k) / static_cast<double>(c_grid);
    Real shifted = theta_mass({a, c, s, 20.0}, prec).value;
    if (shifted < threshold) return false;
  }
  return true;
}

}  // namespace

SStarResult solve_s_star(double a, double delta, const SStarOptions& opt) {
  if (!(a > 0.0) || !(delta > 0.0))
    throw std::invalid_argument("solve_s_star: a, delta must be positive");
  const double s_floor = a / 1024.0;  // grid bottom

  double hi = a;
  int guard = 0;
  while (!shift_condition(a, hi, delta, opt.c_grid, opt.precision_bits)) {
    hi *= 2.0;
    if (++guard > 64)
      throw std::runtime_error("solve_s_star: no passing s found");
  }
  double lo = s_floor;
  if (shift_condition(a, lo, delta, opt.c_grid, opt.precision_bits))
    return SStarResult{lo, 0.0};  // any s works (huge delta)

  for (int it = 0; it < opt.bisection_iterations; ++it) {
    double mid = 0.5 * (lo + hi);
    if (shift_condition(a, mid, delta, opt.c_grid, opt.precision_bits))
      hi = mid;
    else
      lo = mid;
  }
  return SStarResult{hi, lo};
}

long solve_ell_star(double a, double delta, double lambda, double s_star,
                    long precision_bits) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("solve_ell_star: lambda must be positive");
  const long prec = precision_bits;
  Real theta = theta_mass({a, 0.0, s_star, 20.0}, prec).value;
  Real target = exp(-Real::of(delta, prec)) * Real::of(lambda, prec) * theta;

  // Centered tail mass 2 sum_{j >= l} exp(-pi (j a)^2 / s^2); terms decay
  // superexponentially, so the running sum converges after a few terms.
  auto tail_mass = [&](long l) {
    Real sum = Real::zero(prec);
    for (long j = l;; ++j) {
      Real term = gaussian_weight(j * a, 0.0, s_star, prec);
      sum += term;
      if (j > l + 4) {
        Real negligible = sum;
        mpfr_mul_2si(negligible.raw(), negligible.raw(),
                     -static_cast<long>(prec + 64), MPFR_RNDN);
        if (term < negligible) break;
      }
      if (j - l > 100000) break;
    }
    return Real::of(2.0, prec) * sum;
  };

  for (long l = 1;; ++l) {
    if (tail_mass(l) <= target) return l;
    if (l > 1000000)
      throw std::runtime_error("solve_ell_star: no truncation point found");
  }
}

namespace {

GaussianPair assemble_pair(double gamma, double s, double w, long c, long m,
                           long ell_star, long prec) {
  Real g = Real::of(gamma, prec);
  Real half_gamma = g / Real::of(2.0, prec);
  Real one_minus_gamma = Real::one(prec) - g;

  auto build = [&](int parity) {
    // Lattice points of 2Z + parity within [c - w, c + w].
    std::vector<long> support;
    long z_lo = static_cast<long>(std::ceil(c - w));
    long z_hi = static_cast<long>(std::floor(c + w));
    for (long z = z_lo; z <= z_hi; ++z)
      if (((z % 2) + 2) % 2 == parity) support.push_back(z);
    if (support.empty())
      throw std::logic_error("gaussian pair: empty lattice support");

    Real norm = Real::zero(prec);
    std::vector<Real> weights;
    weights.reserve(support.size());
    for (long z : support) {
      weights.push_back(gaussian_weight(static_cast<double>(z),
                                        static_cast<double>(c), s, prec));
      norm += weights.back();
    }
    std::vector<Real> masses(m + 1, Real::zero(prec));
    masses[0] = half_gamma;
    masses[m] = half_gamma;
    for (std::size_t i = 0; i < support.size(); ++i)
      masses[support[i]] += one_minus_gamma * weights[i] / norm;
    return Pmf::from_masses(0, std::move(masses), prec);
  };

  GaussianPair pair{build(0), build(1),
                    GaussianPairParams{gamma, s, ell_star, w, c, m}};
  return pair;
}

}  // namespace

GaussianPair build_gaussian_pair(double gamma, double epsilon,
                                 long precision_bits) {
  if (!(gamma > 0.0 && gamma < 0.5))
    throw std::invalid_argument("gaussian pair: gamma must lie in (0, 0.5)");
  if (!(epsilon > 0.0))
    throw std::invalid_argument("gaussian pair: epsilon must be positive");
  const double eps = std::min(epsilon, 0.1);
  const double delta = eps / 4.0;

  SStarResult sres = solve_s_star(2.0, delta);
  const double s = sres.s_star;
  const long ell = solve_ell_star(2.0, delta, 1.0 - std::exp(-delta), s);

  const double root_log = std::sqrt(std::log(1.0 / gamma));
  const double w = s * s * root_log / M_PI + 2.0 * ell;
  const long c = static_cast<long>(
      std::ceil(w + std::log(2.0 / (std::exp(eps) - 1.0)) + root_log));
  const long m = 2 * c;
  return assemble_pair(gamma, s, w, c, m, ell, precision_bits);
}

GaussianPair build_figure3_pair(long precision_bits) {
  return assemble_pair(0.02, 30.0, 20.0, 50, 100, 0, precision_bits);
}

}  // namespace shufflesum
