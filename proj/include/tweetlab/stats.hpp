#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "tweetlab/states.hpp"

namespace tweetlab {

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation
// (modified Lentz) with 1e-12 convergence tolerance.
double regularized_incomplete_beta(double x, double a, double b);

// CDF of Student's t with `dof` degrees of freedom.
double student_t_cdf(double t, double dof);

// CDF of the F distribution with (d1, d2) degrees of freedom.
double fisher_f_cdf(double f, double d1, double d2);

struct CorrelationResult {
  double r = 0.0;
  std::size_t n = 0;
  double p_value = 1.0;  // two-sided, t approximation; requires n >= 3
};

// Product-moment correlation. Throws on length mismatch, n < 2, or a
// constant series.
CorrelationResult pearson(std::span<const double> x, std::span<const double> y);

struct PairwiseCorrelations {
  std::vector<State> states;
  // symmetric; diagonal 1; nullopt marks pairs excluded by constant series
  std::vector<std::vector<std::optional<double>>> r;
  std::vector<std::vector<std::optional<double>>> p;
  std::size_t evaluated_pairs = 0;
  std::size_t qualifying_pairs = 0;  // r > r_threshold and p < p_threshold
  std::size_t excluded_pairs = 0;
  double qualifying_fraction = 0.0;  // over evaluated pairs
};

// All unordered state pairs of aligned daily series.
PairwiseCorrelations pairwise_state_correlations(
    const std::map<State, std::vector<double>>& series, double r_threshold = 0.8,
    double p_threshold = 0.001);

struct ManovaResult {
  double wilks_lambda = 1.0;
  double approx_f = 0.0;
  double df1 = 0.0;
  double df2 = 0.0;
  double p_value = 1.0;
};

// One-way MANOVA via Wilks' lambda with Rao's F approximation. `groups` holds
// g >= 2 groups of k-dimensional observations (k >= 1). Throws when the
// within-group scatter matrix is singular ("degenerate covariance") or the
// sample is too small (needs total observations > groups + k).
ManovaResult manova_one_way(const std::vector<std::vector<std::vector<double>>>& groups);

}  // namespace tweetlab
