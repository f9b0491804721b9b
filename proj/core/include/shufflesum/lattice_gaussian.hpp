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

#ifndef SHUFFLESUM_LATTICE_GAUSSIAN_HPP
#define SHUFFLESUM_LATTICE_GAUSSIAN_HPP

#include "shufflesum/pmf.hpp"

namespace shufflesum {

// Gaussian weight rho_{s,c}(x) = exp(-pi (x-c)^2 / s^2) summed over the
// one-dimensional lattice a*Z, truncated at trunc_radius * s from the
// center with a certified bound on the discarded tail.
struct LatticeGaussian {
  double lattice_step = 1.0;   // a > 0
  double center = 0.0;         // c
  double s = 1.0;              // width parameter, > 0
  double trunc_radius = 20.0;  // summation cutoff in multiples of s
};

struct ThetaMass {
  Real value;       // sum over lattice points within the cutoff
  Real tail_bound;  // certified upper bound on everything beyond it
};

ThetaMass theta_mass(const LatticeGaussian& g, long precision_bits);

// Smallest s (bisection bracket upper end) such that the shifted-center
// normalization ratio rho_{s,c}(aZ)/rho_s(aZ) stays >= e^{-delta} for every
// center c on a 256-point grid over [0, a); the grid contains the exact
// worst case c = a/2. Monotone in s, so bisection applies. bracket_lo is
// the largest examined s that fails.
struct SStarResult {
  double s_star = 0.0;
  double bracket_lo = 0.0;
};

struct SStarOptions {
  long c_grid = 256;
  int bisection_iterations = 48;
  long precision_bits = 96;
};

SStarResult solve_s_star(double a, double delta, const SStarOptions& = {});

// Smallest positive integer l such that the centered Gaussian mass beyond
// (-l a, l a) is at most e^{-delta} * lambda * rho_s(aZ); this single sum
// certifies Pr[|X - c| > l a] <= lambda under D_{aZ, s, c} for every c.
long solve_ell_star(double a, double delta, double lambda, double s_star,
                    long precision_bits = 96);

// Parameters of the pair (Y0, Y1) of truncated discrete Gaussians on the
// even/odd lattices, mixed with gamma/2 point masses at 0 and m = 2c.
struct GaussianPairParams {
  double gamma = 0.0;
  double s = 0.0;
  long ell_star = 0;
  double w = 0.0;
  long c = 0;
  long m = 0;  // = 2c
};

struct GaussianPair {
  Pmf y0;
  Pmf y1;
  GaussianPairParams params;
};

// The solver-driven construction: s = s*(2, eps/4), l* = l*(2, eps/4,
// 1 - e^{-eps/4}), w = s^2 sqrt(ln(1/gamma))/pi + 2 l*, c = ceil(w +
// ln(2/(e^eps - 1)) + sqrt(ln(1/gamma))), m = 2c. Epsilon is clamped to
// 0.1 from above. Y^i = gamma*(point(0)/2 + point(m)/2) +
// (1-gamma)*D_{S_i, s, c} with S_0/S_1 the even/odd lattice points of
// [c-w, c+w]. TV(Y0, Y1) = 1 - gamma exactly; the pointwise mass ratio is
// unbounded on the Gaussian region while the MGF ratio stays within e^eps.
GaussianPair build_gaussian_pair(double gamma, double epsilon,
                                 long precision_bits = 256);

// The illustration pair with literal parameters gamma = 0.02, c = 50,
// m = 100, w = 20, s = 30 (no solvers involved).
GaussianPair build_figure3_pair(long precision_bits = 256);

}  // namespace shufflesum

#endif  // SHUFFLESUM_LATTICE_GAUSSIAN_HPP
