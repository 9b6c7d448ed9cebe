// Copyright 2026 The hirelab authors
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

#include <string>
#include <vector>

namespace hirelab {

// OLS fit with a cluster-robust sandwich covariance. With clusters, the
// meat is summed over within-cluster score outer products and scaled by
// G/(G-1) * (N-1)/(N-K); without clusters (every observation its own
// cluster, no small-sample factor) it reduces to HC0.
struct OlsResult {
  std::vector<double> coef;
  std::vector<double> se;
  std::vector<double> t_stat;
  std::vector<double> p_value;  // normal approximation
  double r_squared = 0.0;
  double log_likelihood = 0.0;  // Gaussian, ML variance
  int n_obs = 0;
  int n_clusters = 0;  // 0 when unclustered
};

// X is row-major n x k and must include the constant column explicitly.
// Throws std::invalid_argument on shape errors, rank deficiency (the
// message names the first collinear column), or fewer than two clusters.
// column_names, when given, must have k entries and is used in error
// messages.
OlsResult fit_ols(const std::vector<std::vector<double>>& X,
                  const std::vector<double>& y,
                  const std::vector<int>& clusters = {},
                  const std::vector<std::string>& column_names = {});

// Two-sided normal p-value of a z statistic.
double normal_two_sided_p(double z);

struct RankTestResult {
  double statistic = 0.0;  // U for two samples, H for k samples
  double p_value = 0.0;
  bool exact = false;  // exact permutation distribution vs approximation
};

// Mann-Whitney U test, two-sided, midranks for ties. Exact permutation
// p-value P(|U - mu| >= |U_obs - mu|) when n1 + n2 <= 14, otherwise a
// normal approximation with tie-corrected variance.
RankTestResult mann_whitney(const std::vector<double>& a,
                            const std::vector<double>& b);

// Kruskal-Wallis test with tie-corrected H. Exact permutation p-value
// P(H >= H_obs) when the total sample size is <= 14, otherwise a
// chi-square approximation with k - 1 degrees of freedom.
RankTestResult kruskal_wallis(const std::vector<std::vector<double>>& groups);

}  // namespace hirelab
