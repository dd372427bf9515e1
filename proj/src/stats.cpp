#include "tweetlab/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace tweetlab {

// --- special functions ---------------------------------------------------------

namespace {

constexpr double kBetaTol = 1e-12;
constexpr int kBetaMaxIter = 100000;

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Continued fraction for I_x(a,b) (modified Lentz).
double beta_cf(double x, double a, double b) {
  const double tiny = 1e-300;
  double c = 1.0;
  double d = 1.0 - (a + b) * x / (a + 1.0);
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kBetaMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double num = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
    d = 1.0 + num * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + num / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    num = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
    d = 1.0 + num * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + num / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double mult = d * c;
    h *= mult;
    if (std::fabs(mult - 1.0) <= kBetaTol) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0 && b > 0.0) || std::isnan(x)) return NAN;
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cf(x, a, b) / a;
  }
  return 1.0 - std::exp(b * std::log1p(-x) + a * std::log(x) - log_beta(b, a)) *
                   beta_cf(1.0 - x, b, a) / b;
}

double student_t_cdf(double t, double dof) {
  if (!(dof > 0.0)) return NAN;
  const double x = dof / (t * t + dof);
  const double tail = 0.5 * regularized_incomplete_beta(x, dof / 2.0, 0.5);
  return t >= 0.0 ? 1.0 - tail : tail;
}

double fisher_f_cdf(double f, double d1, double d2) {
  if (!(d1 > 0.0 && d2 > 0.0)) return NAN;
  if (f <= 0.0) return 0.0;
  return regularized_incomplete_beta(d1 * f / (d1 * f + d2), d1 / 2.0, d2 / 2.0);
}

// --- pearson ----------------------------------------------------------------------

CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("length mismatch");
  const size_t n = x.size();
  if (n < 2) throw std::invalid_argument("need at least two points");

  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw std::invalid_argument("constant series");

  CorrelationResult res;
  res.n = n;
  res.r = sxy / std::sqrt(sxx * syy);
  if (res.r > 1.0) res.r = 1.0;
  if (res.r < -1.0) res.r = -1.0;

  if (n >= 3) {
    const double dof = static_cast<double>(n - 2);
    const double r2 = res.r * res.r;
    if (r2 >= 1.0) {
      res.p_value = 0.0;
    } else {
      const double t = std::fabs(res.r) * std::sqrt(dof / (1.0 - r2));
      res.p_value = 2.0 * (1.0 - student_t_cdf(t, dof));
    }
  } else {
    res.p_value = 1.0;
  }
  return res;
}

PairwiseCorrelations pairwise_state_correlations(
    const std::map<State, std::vector<double>>& series, double r_threshold,
    double p_threshold) {
  if (series.size() < 2) throw std::invalid_argument("need at least two states");

  PairwiseCorrelations out;
  for (const auto& [state, values] : series) {
    out.states.push_back(state);
    if (values.size() != series.begin()->second.size())
      throw std::invalid_argument("state series are not aligned");
  }
  const size_t n = out.states.size();
  out.r.assign(n, std::vector<std::optional<double>>(n, std::nullopt));
  out.p.assign(n, std::vector<std::optional<double>>(n, std::nullopt));

  for (size_t i = 0; i < n; ++i) {
    out.r[i][i] = 1.0;
    out.p[i][i] = 0.0;
    for (size_t j = i + 1; j < n; ++j) {
      const auto& xi = series.at(out.states[i]);
      const auto& yj = series.at(out.states[j]);
      try {
        const CorrelationResult c = pearson(xi, yj);
        out.r[i][j] = out.r[j][i] = c.r;
        out.p[i][j] = out.p[j][i] = c.p_value;
        ++out.evaluated_pairs;
        if (c.r > r_threshold && c.p_value < p_threshold) ++out.qualifying_pairs;
      } catch (const std::invalid_argument&) {
        ++out.excluded_pairs;
      }
    }
  }
  out.qualifying_fraction =
      out.evaluated_pairs == 0
          ? 0.0
          : static_cast<double>(out.qualifying_pairs) /
                static_cast<double>(out.evaluated_pairs);
  return out;
}

// --- MANOVA -----------------------------------------------------------------------

namespace {

// Determinant by LU with partial pivoting; k is small here.
double det(std::vector<std::vector<double>> m) {
  const size_t k = m.size();
  double d = 1.0;
  for (size_t col = 0; col < k; ++col) {
    size_t pivot = col;
    for (size_t row = col + 1; row < k; ++row) {
      if (std::fabs(m[row][col]) > std::fabs(m[pivot][col])) pivot = row;
    }
    if (m[pivot][col] == 0.0) return 0.0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      d = -d;
    }
    d *= m[col][col];
    for (size_t row = col + 1; row < k; ++row) {
      const double f = m[row][col] / m[col][col];
      for (size_t c2 = col; c2 < k; ++c2) m[row][c2] -= f * m[col][c2];
    }
  }
  return d;
}

}  // namespace

ManovaResult manova_one_way(
    const std::vector<std::vector<std::vector<double>>>& groups) {
  const size_t g = groups.size();
  if (g < 2) throw std::invalid_argument("need at least two groups");
  size_t total = 0;
  size_t k = 0;
  for (const auto& group : groups) {
    if (group.empty()) throw std::invalid_argument("empty group");
    for (const auto& obs : group) {
      if (k == 0) k = obs.size();
      if (obs.size() != k || k == 0)
        throw std::invalid_argument("inconsistent observation dimension");
      ++total;
    }
  }
  if (total <= g + k)
    throw std::invalid_argument("too few observations for MANOVA");

  // group and grand means
  std::vector<std::vector<double>> means(g, std::vector<double>(k, 0.0));
  std::vector<double> grand(k, 0.0);
  for (size_t gi = 0; gi < g; ++gi) {
    for (const auto& obs : groups[gi])
      for (size_t c = 0; c < k; ++c) means[gi][c] += obs[c];
    for (size_t c = 0; c < k; ++c) {
      grand[c] += means[gi][c];
      means[gi][c] /= static_cast<double>(groups[gi].size());
    }
  }
  for (size_t c = 0; c < k; ++c) grand[c] /= static_cast<double>(total);

  // within / between scatter
  std::vector<std::vector<double>> W(k, std::vector<double>(k, 0.0));
  std::vector<std::vector<double>> B(k, std::vector<double>(k, 0.0));
  for (size_t gi = 0; gi < g; ++gi) {
    for (const auto& obs : groups[gi]) {
      for (size_t r = 0; r < k; ++r)
        for (size_t c = 0; c < k; ++c)
          W[r][c] += (obs[r] - means[gi][r]) * (obs[c] - means[gi][c]);
    }
    const double ng = static_cast<double>(groups[gi].size());
    for (size_t r = 0; r < k; ++r)
      for (size_t c = 0; c < k; ++c)
        B[r][c] += ng * (means[gi][r] - grand[r]) * (means[gi][c] - grand[c]);
  }

  const double det_w = det(W);
  if (det_w == 0.0 || !std::isfinite(det_w))
    throw std::invalid_argument("degenerate covariance");

  std::vector<std::vector<double>> T(k, std::vector<double>(k, 0.0));
  for (size_t r = 0; r < k; ++r)
    for (size_t c = 0; c < k; ++c) T[r][c] = W[r][c] + B[r][c];
  const double det_t = det(T);
  if (det_t == 0.0 || !std::isfinite(det_t))
    throw std::invalid_argument("degenerate covariance");

  ManovaResult res;
  res.wilks_lambda = det_w / det_t;
  if (res.wilks_lambda > 1.0) res.wilks_lambda = 1.0;
  if (res.wilks_lambda < 0.0) res.wilks_lambda = 0.0;

  // Rao's F approximation.
  const double p = static_cast<double>(k);
  const double q = static_cast<double>(g - 1);
  const double nn = static_cast<double>(total);
  double t_exp = 1.0;
  const double denom = p * p + q * q - 5.0;
  if (denom > 0.0) t_exp = std::sqrt((p * p * q * q - 4.0) / denom);
  const double w = nn - 1.0 - (p + q + 1.0) / 2.0;
  res.df1 = p * q;
  res.df2 = w * t_exp - (p * q) / 2.0 + 1.0;
  const double lam_t = std::pow(res.wilks_lambda, 1.0 / t_exp);
  if (lam_t <= 0.0) {
    res.approx_f = INFINITY;
    res.p_value = 0.0;
    return res;
  }
  res.approx_f = (1.0 - lam_t) / lam_t * (res.df2 / res.df1);
  res.p_value = 1.0 - fisher_f_cdf(res.approx_f, res.df1, res.df2);
  if (res.p_value < 0.0) res.p_value = 0.0;
  if (res.p_value > 1.0) res.p_value = 1.0;
  return res;
}

}  // namespace tweetlab
