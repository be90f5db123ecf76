#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wngf/brokerage.hpp"

namespace wngf {

enum class CorrelationKind { Pearson, Spearman };

std::string_view correlation_name(CorrelationKind k);

/// A correlation coefficient with its two-sided p-value. Both are empty when
/// the coefficient is undefined (a constant input vector).
struct CorrelationResult {
  CorrelationKind kind = CorrelationKind::Pearson;
  std::size_t n = 0;
  std::optional<double> coefficient;
  std::optional<double> p_value;

  bool defined() const { return coefficient.has_value(); }
  /// The t-approximation behind p_value is rough for small samples.
  bool reliable() const { return n >= 10; }
};

/// Sample Pearson correlation. Throws std::invalid_argument on a length
/// mismatch or fewer than 3 observations.
CorrelationResult pearson(std::span<const double> x, std::span<const double> y);

/// Pearson correlation of average ranks (ties share the mean rank).
CorrelationResult spearman(std::span<const double> x, std::span<const double> y);

/// 1-based ranks; tied values receive the mean of the ranks they span.
std::vector<double> average_ranks(std::span<const double> values);

/// Two-sided p-value of correlation `r` over `n` samples via the Student-t
/// transform with n - 2 degrees of freedom.
double correlation_p_value(double r, std::size_t n);

struct EcdfPoint {
  double value = 0.0;
  double cum_fraction = 0.0;
};

/// Right-continuous step function: one point per distinct value.
struct EcdfCurve {
  std::vector<EcdfPoint> points;
};

/// Throws std::invalid_argument for empty input or NaN values.
EcdfCurve ecdf(std::span<const double> values);

struct Divergence {
  std::string node;
  double score_a = 0.0;
  double score_b = 0.0;
  double abs_diff = 0.0;
};

struct RoleComparison {
  Role role = Role::Coordinator;
  CorrelationResult pearson;
  CorrelationResult spearman;
  /// Descending by abs_diff, ties by node label.
  std::vector<Divergence> top;
};

struct ComparisonReport {
  PerRole<RoleComparison> roles;
};

/// Role-wise correlation of normalized scores plus the `k` nodes with the
/// largest absolute score difference. Throws std::invalid_argument when the
/// two profiles cover different node sets.
ComparisonReport compare_profiles(const BrokerageProfile &a, const BrokerageProfile &b,
                                  std::size_t k = 5);

} // namespace wngf
