#include "wngf/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace wngf {

namespace {

void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw std::invalid_argument("correlation inputs differ in length (" +
                                std::to_string(x.size()) + " vs " + std::to_string(y.size()) +
                                ")");
  if (x.size() < 3)
    throw std::invalid_argument("correlation needs at least 3 observations");
}

bool is_constant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double e) { return e == v.front(); });
}

CorrelationResult correlate(std::span<const double> x, std::span<const double> y,
                            CorrelationKind kind) {
  CorrelationResult res;
  res.kind = kind;
  res.n = x.size();
  if (is_constant(x) || is_constant(y))
    return res;

  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  const double r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  res.coefficient = r;
  res.p_value = correlation_p_value(r, res.n);
  return res;
}

} // namespace

std::string_view correlation_name(CorrelationKind k) {
  return k == CorrelationKind::Pearson ? "pearson" : "spearman";
}

double correlation_p_value(double r, std::size_t n) {
  if (n < 3)
    throw std::invalid_argument("p-value needs at least 3 observations");
  if (std::abs(r) >= 1.0)
    return 0.0;
  const double df = static_cast<double>(n - 2);
  const double t = std::abs(r) * std::sqrt(df / (1.0 - r * r));
  const boost::math::students_t dist(df);
  return std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, t)), 0.0, 1.0);
}

CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  return correlate(x, y, CorrelationKind::Pearson);
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]])
      ++j;
    // Positions i..j-1 hold ranks i+1..j.
    const double mean_rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k)
      ranks[order[k]] = mean_rank;
    i = j;
  }
  return ranks;
}

CorrelationResult spearman(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return correlate(rx, ry, CorrelationKind::Spearman);
}

EcdfCurve ecdf(std::span<const double> values) {
  if (values.empty())
    throw std::invalid_argument("ECDF of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  if (std::any_of(sorted.begin(), sorted.end(), [](double v) { return std::isnan(v); }))
    throw std::invalid_argument("ECDF input contains NaN");
  std::sort(sorted.begin(), sorted.end());

  EcdfCurve curve;
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i])
      continue;
    curve.points.push_back({sorted[i], static_cast<double>(i + 1) / n});
  }
  return curve;
}

ComparisonReport compare_profiles(const BrokerageProfile &a, const BrokerageProfile &b,
                                  std::size_t k) {
  bool same_nodes = a.nodes.size() == b.nodes.size();
  for (std::size_t i = 0; same_nodes && i < a.nodes.size(); ++i)
    same_nodes = a.nodes[i].node == b.nodes[i].node;
  if (!same_nodes)
    throw std::invalid_argument("profiles cover different node sets");

  ComparisonReport report;
  for (Role role : kRoles) {
    const auto xa = a.scores(role);
    const auto xb = b.scores(role);
    RoleComparison &rc = report.roles[role_index(role)];
    rc.role = role;
    rc.pearson = pearson(xa, xb);
    rc.spearman = spearman(xa, xb);

    std::vector<Divergence> all;
    all.reserve(xa.size());
    for (std::size_t i = 0; i < xa.size(); ++i)
      all.push_back({a.nodes[i].node, xa[i], xb[i], std::abs(xa[i] - xb[i])});
    const std::size_t keep = std::min(k, all.size());
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(),
                      [](const Divergence &l, const Divergence &r) {
                        if (l.abs_diff != r.abs_diff)
                          return l.abs_diff > r.abs_diff;
                        return l.node < r.node;
                      });
    all.resize(keep);
    rc.top = std::move(all);
  }
  return report;
}

} // namespace wngf
