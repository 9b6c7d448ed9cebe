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

#include "hirelab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/math/distributions/chi_squared.hpp>

namespace hirelab {

namespace {

constexpr double kRankTolerance = 1e-10;
constexpr int kExactCutoff = 14;

std::string column_label(int j, const std::vector<std::string>& names) {
  if (j < static_cast<int>(names.size())) return "'" + names[j] + "'";
  return "#" + std::to_string(j);
}

// First column that is a linear combination of the columns before it.
int first_collinear_column(const Eigen::MatrixXd& X) {
  for (int j = 1; j < X.cols(); ++j) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X.leftCols(j + 1));
    qr.setThreshold(kRankTolerance);
    if (qr.rank() <= j) return j;
  }
  return 0;
}

}  // namespace

OlsResult fit_ols(const std::vector<std::vector<double>>& X,
                  const std::vector<double>& y,
                  const std::vector<int>& clusters,
                  const std::vector<std::string>& column_names) {
  const int n = static_cast<int>(X.size());
  if (n == 0 || y.size() != X.size()) {
    throw std::invalid_argument("fit_ols: X and y must be nonempty and match");
  }
  const int k = static_cast<int>(X.front().size());
  if (k == 0 || n <= k) {
    throw std::invalid_argument("fit_ols: need more observations than columns");
  }
  if (!clusters.empty() && static_cast<int>(clusters.size()) != n) {
    throw std::invalid_argument("fit_ols: cluster vector length mismatch");
  }
  if (!column_names.empty() && static_cast<int>(column_names.size()) != k) {
    throw std::invalid_argument("fit_ols: column_names length mismatch");
  }

  Eigen::MatrixXd Xm(n, k);
  Eigen::VectorXd ym(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(X[i].size()) != k) {
      throw std::invalid_argument("fit_ols: ragged design matrix");
    }
    for (int j = 0; j < k; ++j) Xm(i, j) = X[i][j];
    ym(i) = y[i];
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Xm);
  qr.setThreshold(kRankTolerance);
  if (qr.rank() < k) {
    throw std::invalid_argument(
        "fit_ols: design matrix is rank deficient; column " +
        column_label(first_collinear_column(Xm), column_names) +
        " is collinear with earlier columns");
  }

  const Eigen::VectorXd beta = qr.solve(ym);
  const Eigen::VectorXd resid = ym - Xm * beta;
  const double rss = resid.squaredNorm();
  const double mean_y = ym.mean();
  const double tss = (ym.array() - mean_y).square().sum();

  // Bread of the sandwich.
  const Eigen::MatrixXd xtx_inv =
      (Xm.transpose() * Xm).ldlt().solve(Eigen::MatrixXd::Identity(k, k));

  // Cluster scores; unclustered means one cluster per observation.
  std::map<int, Eigen::VectorXd> scores;
  for (int i = 0; i < n; ++i) {
    const int g = clusters.empty() ? i : clusters[i];
    auto [it, fresh] = scores.try_emplace(g, Eigen::VectorXd::Zero(k));
    it->second += Xm.row(i).transpose() * resid(i);
  }
  const int n_clusters = static_cast<int>(scores.size());
  if (!clusters.empty() && n_clusters < 2) {
    throw std::invalid_argument(
        "fit_ols: need at least two clusters for clustered errors");
  }
  Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(k, k);
  for (const auto& [g, s] : scores) meat += s * s.transpose();
  double scale = 1.0;
  if (!clusters.empty()) {
    scale = (static_cast<double>(n_clusters) / (n_clusters - 1)) *
            (static_cast<double>(n - 1) / (n - k));
  }
  const Eigen::MatrixXd vcov = scale * xtx_inv * meat * xtx_inv;

  OlsResult out;
  out.n_obs = n;
  out.n_clusters = clusters.empty() ? 0 : n_clusters;
  out.r_squared = tss > 0.0 ? 1.0 - rss / tss : 0.0;
  const double sigma2 = rss / n;
  out.log_likelihood =
      -0.5 * n * (std::log(2.0 * std::numbers::pi) + std::log(sigma2) + 1.0);
  out.coef.resize(k);
  out.se.resize(k);
  out.t_stat.resize(k);
  out.p_value.resize(k);
  for (int j = 0; j < k; ++j) {
    out.coef[j] = beta(j);
    out.se[j] = std::sqrt(std::max(0.0, vcov(j, j)));
    out.t_stat[j] = out.se[j] > 0.0 ? beta(j) / out.se[j] : 0.0;
    out.p_value[j] = normal_two_sided_p(out.t_stat[j]);
  }
  return out;
}

double normal_two_sided_p(double z) {
  return std::erfc(std::abs(z) / std::numbers::sqrt2);
}

namespace {

// Midranks of the pooled sample, and the tie correction term
// sum(t^3 - t) over tie groups.
std::pair<std::vector<double>, double> midranks(std::vector<double> pooled,
                                                std::vector<double>* sorted) {
  const int n = static_cast<int>(pooled.size());
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return pooled[a] < pooled[b]; });
  std::vector<double> ranks(n);
  double tie_term = 0.0;
  int i = 0;
  while (i < n) {
    int j = i;
    while (j < n && pooled[idx[j]] == pooled[idx[i]]) ++j;
    const double r = 0.5 * (i + 1 + j);
    for (int m = i; m < j; ++m) ranks[idx[m]] = r;
    const double t = j - i;
    tie_term += t * t * t - t;
    i = j;
  }
  if (sorted) {
    sorted->resize(n);
    for (int m = 0; m < n; ++m) (*sorted)[m] = ranks[idx[m]];
  }
  return {ranks, tie_term};
}

}  // namespace

RankTestResult mann_whitney(const std::vector<double>& a,
                            const std::vector<double>& b) {
  const int n1 = static_cast<int>(a.size());
  const int n2 = static_cast<int>(b.size());
  if (n1 == 0 || n2 == 0) {
    throw std::invalid_argument("mann_whitney: both samples must be nonempty");
  }
  const int n = n1 + n2;
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::vector<double> sorted_ranks;
  const auto [ranks, tie_term] = midranks(pooled, &sorted_ranks);

  double r1 = 0.0;
  for (int i = 0; i < n1; ++i) r1 += ranks[i];
  const double u_obs = r1 - 0.5 * n1 * (n1 + 1);
  const double mu = 0.5 * n1 * n2;

  RankTestResult out;
  out.statistic = u_obs;
  if (n <= kExactCutoff) {
    out.exact = true;
    // Enumerate which pooled ranks go to the first sample.
    std::vector<int> label(n, 0);
    std::fill(label.begin(), label.begin() + n1, 1);
    std::sort(label.begin(), label.end());
    const double target = std::abs(u_obs - mu) - 1e-9;
    long long hits = 0, total = 0;
    do {
      double r = 0.0;
      for (int i = 0; i < n; ++i) {
        if (label[i]) r += sorted_ranks[i];
      }
      const double u = r - 0.5 * n1 * (n1 + 1);
      if (std::abs(u - mu) >= target) ++hits;
      ++total;
    } while (std::next_permutation(label.begin(), label.end()));
    out.p_value = static_cast<double>(hits) / static_cast<double>(total);
  } else {
    const double var =
        (static_cast<double>(n1) * n2 / 12.0) *
        ((n + 1) - tie_term / (static_cast<double>(n) * (n - 1)));
    out.p_value = var > 0.0 ? normal_two_sided_p((u_obs - mu) / std::sqrt(var))
                            : 1.0;
  }
  return out;
}

namespace {

double kw_statistic(const std::vector<double>& ranks,
                    const std::vector<int>& label, int n_groups,
                    double tie_term) {
  const int n = static_cast<int>(ranks.size());
  std::vector<double> sums(n_groups, 0.0);
  std::vector<int> sizes(n_groups, 0);
  for (int i = 0; i < n; ++i) {
    sums[label[i]] += ranks[i];
    ++sizes[label[i]];
  }
  double h = 0.0;
  for (int g = 0; g < n_groups; ++g) {
    h += sums[g] * sums[g] / sizes[g];
  }
  h = 12.0 / (static_cast<double>(n) * (n + 1)) * h - 3.0 * (n + 1);
  const double correction =
      1.0 - tie_term / (static_cast<double>(n) * n * n - n);
  return correction > 0.0 ? h / correction : 0.0;
}

}  // namespace

RankTestResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
  const int n_groups = static_cast<int>(groups.size());
  if (n_groups < 2) {
    throw std::invalid_argument("kruskal_wallis: need at least two groups");
  }
  std::vector<double> pooled;
  std::vector<int> label;
  for (int g = 0; g < n_groups; ++g) {
    if (groups[g].empty()) {
      throw std::invalid_argument("kruskal_wallis: empty group");
    }
    for (const double v : groups[g]) {
      pooled.push_back(v);
      label.push_back(g);
    }
  }
  const int n = static_cast<int>(pooled.size());
  const auto [ranks, tie_term] = midranks(pooled, nullptr);
  const double h_obs = kw_statistic(ranks, label, n_groups, tie_term);

  RankTestResult out;
  out.statistic = h_obs;
  if (n <= kExactCutoff) {
    out.exact = true;
    // All distinct assignments of the pooled ranks to group sizes.
    std::vector<double> sorted_ranks = ranks;
    std::sort(sorted_ranks.begin(), sorted_ranks.end());
    std::vector<int> perm = label;
    std::sort(perm.begin(), perm.end());
    long long hits = 0, total = 0;
    do {
      if (kw_statistic(sorted_ranks, perm, n_groups, tie_term) >=
          h_obs - 1e-9) {
        ++hits;
      }
      ++total;
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.p_value = static_cast<double>(hits) / static_cast<double>(total);
  } else {
    const boost::math::chi_squared dist(n_groups - 1);
    out.p_value = boost::math::cdf(boost::math::complement(dist, h_obs));
  }
  return out;
}

}  // namespace hirelab
