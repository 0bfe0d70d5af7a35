#include "seshift/extrap.hpp"
#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numeric>

namespace seshift {

void Grid::validate() const {
  if (nodes.size() != values.size())
    throw ValidationError(fmt::format("grid has {} nodes but {} values",
                                      nodes.size(), values.size()));
  if (nodes.size() < 2)
    throw ValidationError("grid needs at least 2 nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!std::isfinite(nodes[i]))
      throw ValidationError(fmt::format("node {} is not finite", i));
    if (i > 0 && !(nodes[i] > nodes[i - 1]))
      throw ValidationError(fmt::format(
          "nodes must be strictly increasing: node {} = {} after {}", i,
          static_cast<double>(nodes[i]), static_cast<double>(nodes[i - 1])));
  }
}

//==============================================================================
std::vector<Real> interpolation_weights(std::span<const Real> nodes,
                                        Real target) {
  const std::size_t n = nodes.size();
  if (n == 0)
    throw ValidationError("no interpolation nodes");
  // p[i] holds the weights of the interpolant through nodes [i, i + m]
  std::vector<std::vector<Real>> p(n, std::vector<Real>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    p[i][i] = 1;
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t i = 0; i + m < n; ++i) {
      const std::size_t j = i + m;
      const Real den = nodes[i] - nodes[j];
      if (den == 0)
        throw ValidationError(
            fmt::format("duplicate node {}", static_cast<double>(nodes[i])));
      const Real left = target - nodes[j];
      const Real right = nodes[i] - target;
      for (std::size_t c = i; c <= j; ++c)
        p[i][c] = (left * p[i][c] + right * p[i + 1][c]) / den;
    }
  }
  return p[0];
}

namespace {

UncertainValue neville_window(std::span<const Real> x,
                              std::span<const UncertainValue> y, Real target) {
  const std::size_t n = x.size();
  std::vector<Real> p(n);
  for (std::size_t i = 0; i < n; ++i)
    p[i] = y[i].value();
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t i = 0; i + m < n; ++i) {
      const std::size_t j = i + m;
      const Real den = x[i] - x[j];
      if (den == 0)
        throw ValidationError(
            fmt::format("duplicate node {}", static_cast<double>(x[i])));
      p[i] = ((target - x[j]) * p[i] + (x[i] - target) * p[i + 1]) / den;
    }
  }

  const auto w = interpolation_weights(x, target);
  Real variance = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Real t = w[i] * y[i].sigma();
    variance += t * t;
  }
  return {p[0], std::sqrt(variance)};
}

} // namespace

UncertainValue neville_at(const Grid &grid, Real target) {
  grid.validate();
  if (!std::isfinite(target))
    throw ValidationError("target abscissa is not finite");
  return neville_window(grid.nodes, grid.values, target);
}

//==============================================================================
const std::vector<TableauEntry> &Tableau::column(int order) const {
  if (order < 1 || order > max_order())
    throw ValidationError(
        fmt::format("tableau has no column of order {}", order));
  return columns[static_cast<std::size_t>(order - 1)];
}

const TableauEntry &Tableau::innermost(int order) const {
  const auto &col = column(order);
  return *std::min_element(col.begin(), col.end(),
                           [this](const auto &a, const auto &b) {
                             return std::abs(a.mean_abscissa - target) <
                                    std::abs(b.mean_abscissa - target);
                           });
}

std::size_t Tableau::entry_count() const {
  return std::accumulate(
      columns.begin(), columns.end(), std::size_t{0},
      [](std::size_t acc, const auto &c) { return acc + c.size(); });
}

Tableau cascade(const Grid &grid, Real target, int max_order) {
  grid.validate();
  if (!std::isfinite(target))
    throw ValidationError("target abscissa is not finite");
  const auto n = static_cast<int>(grid.nodes.size());
  if (max_order < 1 || max_order > n - 1)
    throw ValidationError(fmt::format(
        "max order {} outside [1, {}] for {} nodes", max_order, n - 1, n));

  Tableau out;
  out.target = target;
  out.variable_label = grid.variable_label;
  const std::span<const Real> x(grid.nodes);
  const std::span<const UncertainValue> y(grid.values);
  for (int k = 1; k <= max_order; ++k) {
    const auto width = static_cast<std::size_t>(k + 1);
    std::vector<TableauEntry> col;
    col.reserve(static_cast<std::size_t>(n - k));
    for (std::size_t i = 0; i + width <= x.size(); ++i) {
      const auto wx = x.subspan(i, width);
      const Real mean = std::accumulate(wx.begin(), wx.end(), Real{0}) /
                        static_cast<Real>(width);
      col.push_back({mean, i, neville_window(wx, y.subspan(i, width), target)});
    }
    out.columns.push_back(std::move(col));
  }
  return out;
}

//==============================================================================
std::string_view to_string(ConvergencePolicy::Rule rule) {
  switch (rule) {
  case ConvergencePolicy::Rule::last_decrease:
    return "last_decrease";
  case ConvergencePolicy::Rule::first_growth:
    return "first_growth";
  case ConvergencePolicy::Rule::fixed_order:
    return "fixed_order";
  }
  return "?";
}

ConvergencePolicy::Rule parse_rule(std::string_view text) {
  if (text == "last_decrease")
    return ConvergencePolicy::Rule::last_decrease;
  if (text == "first_growth")
    return ConvergencePolicy::Rule::first_growth;
  if (text == "fixed_order")
    return ConvergencePolicy::Rule::fixed_order;
  throw ValidationError(fmt::format("unknown convergence rule '{}'", text));
}

NonConvergence::NonConvergence(const std::string &what, Tableau trace)
    : Error(what), m_trace(std::move(trace)) {}

ExtrapolationResult estimate_limit(const Tableau &tableau,
                                   const ConvergencePolicy &policy) {
  const int top = tableau.max_order();
  if (top < 2)
    throw ValidationError(
        "limit estimation needs a tableau with at least 2 orders");

  // change[k] = |I_k - I_{k-1}| for k >= 2
  std::vector<Real> change(static_cast<std::size_t>(top + 1), 0);
  for (int k = 2; k <= top; ++k)
    change[k] = std::abs(tableau.innermost(k).estimate.value() -
                         tableau.innermost(k - 1).estimate.value());

  using Rule = ConvergencePolicy::Rule;
  int order = 2;
  switch (policy.rule) {
  case Rule::last_decrease:
    for (int k = 3; k <= top; ++k)
      if (change[k] < change[k - 1])
        order = k;
    break;
  case Rule::first_growth:
    while (order < top && change[order + 1] <= change[order])
      ++order;
    break;
  case Rule::fixed_order:
    if (policy.fixed_order < 2 || policy.fixed_order > top)
      throw ValidationError(
          fmt::format("fixed order {} outside [2, {}]", policy.fixed_order,
                      top));
    order = policy.fixed_order;
    break;
  }

  if (policy.rule != Rule::fixed_order && top >= 3) {
    bool decreased = false;
    for (int k = 3; k <= top; ++k)
      decreased = decreased || change[k] < change[k - 1];
    const auto &i1 = tableau.innermost(1).estimate;
    const auto &i2 = tableau.innermost(2).estimate;
    const Real floor =
        Real{1e-12} * std::max(std::abs(i1.value()), std::abs(i2.value()));
    if (!decreased && change[2] > policy.noise_factor * i2.sigma() + floor)
      throw NonConvergence(
          fmt::format("{}: order-to-order changes grow from order 2 on "
                      "({} -> {})",
                      tableau.variable_label, static_cast<double>(change[2]),
                      static_cast<double>(change[top])),
          tableau);
  }

  const auto &chosen = tableau.innermost(order).estimate;
  ExtrapolationResult out;
  out.order_used = order;
  out.data_sigma = chosen.sigma();
  out.order_sigma = change[order];
  out.estimate =
      UncertainValue(chosen.value(), std::hypot(out.data_sigma, out.order_sigma));
  out.trace = tableau;
  return out;
}

ExtrapolationResult extrapolate(const Grid &grid, Real target, int max_order,
                                const ConvergencePolicy &policy) {
  grid.validate();
  const int top = max_order > 0 ? max_order
                                : static_cast<int>(grid.nodes.size()) - 1;
  return estimate_limit(cascade(grid, target, top), policy);
}

ExtrapolationResult extrapolate_in_n(std::span<const NPoint> points,
                                     int target_n, int max_order,
                                     const ConvergencePolicy &policy) {
  if (target_n < 1)
    throw ValidationError(fmt::format("target n = {} < 1", target_n));
  std::vector<NPoint> sorted(points.begin(), points.end());
  // ascending in x = 1/n
  std::sort(sorted.begin(), sorted.end(),
            [](const auto &a, const auto &b) { return a.n > b.n; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i].n < 1)
      throw ValidationError(fmt::format("n = {} < 1", sorted[i].n));
    if (i > 0 && sorted[i].n == sorted[i - 1].n)
      throw ValidationError(fmt::format("duplicate n = {}", sorted[i].n));
  }
  if (sorted.size() < 2)
    throw ValidationError("n extrapolation needs at least 2 distinct n");

  Grid grid;
  grid.variable_label = "1/n";
  for (const auto &p : sorted) {
    grid.nodes.push_back(Real{1} / static_cast<Real>(p.n));
    grid.values.push_back(p.value);
  }
  const Real target = Real{1} / static_cast<Real>(target_n);

  if (sorted.size() == 2) {
    auto tableau = cascade(grid, target, 1);
    const auto &first = tableau.innermost(1).estimate;
    const auto nearest = std::min_element(
        sorted.begin(), sorted.end(), [&](const auto &a, const auto &b) {
          return std::abs(a.n - target_n) < std::abs(b.n - target_n);
        });
    ExtrapolationResult out;
    out.order_used = 1;
    out.data_sigma = first.sigma();
    out.order_sigma = std::abs(first.value() - nearest->value.value());
    out.estimate = UncertainValue(first.value(),
                                  std::hypot(out.data_sigma, out.order_sigma));
    out.trace = std::move(tableau);
    return out;
  }
  return extrapolate(grid, target, max_order, policy);
}

} // namespace seshift
