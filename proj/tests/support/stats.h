// Copyright 2026 The haar-sentinel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <vector>

namespace testsupport {

/// sup_x |F_n(x) - cdf(x)|.
double ks_one_sample(std::vector<double> x, const std::function<double(double)>& cdf);

/// sup_x |F_a(x) - F_b(x)|.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// P(K > lambda) for the Kolmogorov distribution.
double kolmogorov_survival(double lambda);

/// Asymptotic p-value with Stephens' small-sample correction. For the
/// two-sample statistic pass n_eff = n m / (n + m).
double ks_pvalue(double d, double n_eff);

/// Regularized incomplete beta I_x(a, b).
double beta_cdf(double a, double b, double x);

/// E[X^t] for X ~ Beta(a, b) by numerical integration of the density.
double beta_moment_quadrature(double a, double b, int t);

}  // namespace testsupport
