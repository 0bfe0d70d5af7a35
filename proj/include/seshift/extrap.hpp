#pragma once
#include "seshift/quantities.hpp"
#include <span>
#include <string>
#include <vector>

namespace seshift {

/*
  Sliding-window polynomial extrapolation.

  For every order k, each window of k+1 consecutive nodes is interpolated by
  its degree-k polynomial, which is evaluated at the target abscissa. The
  values are organised against the mean abscissa of their window; the
  innermost window (mean closest to the target) of each order is the estimate
  for that order. Successive innermost estimates converge towards the limit
  for smooth data, and their order-to-order change measures the truncation
  error.
*/

/// Tabulated function: strictly increasing nodes, values with sigmas.
struct Grid {
  std::vector<Real> nodes;
  std::vector<UncertainValue> values;
  std::string variable_label;

  void validate() const;
};

/// Lagrange weights w_i of the interpolant through `nodes`, evaluated at
/// `target`, so that P(target) = sum_i w_i y_i. Computed with the Neville
/// recursion. Throws ValidationError on coincident nodes.
std::vector<Real> interpolation_weights(std::span<const Real> nodes,
                                        Real target);

/// Value at `target` of the degree-(N-1) interpolant through the whole grid.
/// Sigma is sqrt(sum_i w_i^2 sigma_i^2).
UncertainValue neville_at(const Grid &grid, Real target);

struct TableauEntry {
  Real mean_abscissa{0};
  std::size_t first_node{0}; // window is nodes [first_node, first_node + k]
  UncertainValue estimate;
};

struct Tableau {
  Real target{0};
  std::string variable_label;
  // columns[k - 1] holds the N - k windows of order k, by mean abscissa
  std::vector<std::vector<TableauEntry>> columns;

  int max_order() const { return static_cast<int>(columns.size()); }
  const std::vector<TableauEntry> &column(int order) const;
  /// Window of the given order whose mean abscissa is closest to target.
  const TableauEntry &innermost(int order) const;
  std::size_t entry_count() const;
};

/// Throws ValidationError unless 1 <= max_order <= N - 1.
Tableau cascade(const Grid &grid, Real target, int max_order);

struct ConvergencePolicy {
  enum class Rule {
    // largest k whose innermost change is smaller than that of order k - 1
    last_decrease,
    // raise k while the innermost change does not grow
    first_growth,
    fixed_order,
  };
  Rule rule{Rule::last_decrease};
  int fixed_order{2};
  // An order-2 change within noise_factor data sigmas is attributed to noise
  // rather than divergence.
  Real noise_factor{3};
};

std::string_view to_string(ConvergencePolicy::Rule rule);
ConvergencePolicy::Rule parse_rule(std::string_view text);

struct ExtrapolationResult {
  UncertainValue estimate; // sigma = hypot(data_sigma, order_sigma)
  int order_used{1};
  Real data_sigma{0};
  Real order_sigma{0};
  Tableau trace;
};

/// Raised when the order-to-order changes never decrease and are not
/// explained by the propagated data uncertainty. Carries the full trace.
class NonConvergence : public Error {
public:
  NonConvergence(const std::string &what, Tableau trace);
  const Tableau &trace() const { return m_trace; }

private:
  Tableau m_trace;
};

/// Requires at least two columns.
ExtrapolationResult estimate_limit(const Tableau &tableau,
                                   const ConvergencePolicy &policy = {});

/// cascade + estimate_limit; max_order <= 0 means N - 1.
ExtrapolationResult extrapolate(const Grid &grid, Real target,
                                int max_order = 0,
                                const ConvergencePolicy &policy = {});

struct NPoint {
  int n{1};
  UncertainValue value;
};

/// Extrapolation in the principal quantum number using x = 1/n. Intended for
/// reduced or remainder quantities, whose n dependence is weak. With only two
/// points the order-1 value is returned and the order uncertainty is its
/// distance to the data point nearest the target.
ExtrapolationResult extrapolate_in_n(std::span<const NPoint> points,
                                     int target_n, int max_order = 0,
                                     const ConvergencePolicy &policy = {});

} // namespace seshift
