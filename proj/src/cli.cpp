#include "seshift/cli.hpp"
#include "seshift/dataset.hpp"
#include "seshift/extrap.hpp"
#include "seshift/reduction.hpp"
#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <iostream>
#include <optional>

namespace seshift::cli {

namespace {

enum class Variable { f, gse, gse7, magnifier };

Variable parse_variable(std::string_view text) {
  if (text == "f")
    return Variable::f;
  switch (parse_remainder(text)) {
  case Remainder::gse:
    return Variable::gse;
  case Remainder::gse7:
    return Variable::gse7;
  case Remainder::magnifier:
    return Variable::magnifier;
  }
  return Variable::f;
}

std::string_view to_string(Variable v) {
  switch (v) {
  case Variable::f:
    return "f";
  case Variable::gse:
    return seshift::to_string(Remainder::gse);
  case Variable::gse7:
    return seshift::to_string(Remainder::gse7);
  case Variable::magnifier:
    return seshift::to_string(Remainder::magnifier);
  }
  return "?";
}

Remainder as_remainder(Variable v) {
  switch (v) {
  case Variable::gse:
    return Remainder::gse;
  case Variable::gse7:
    return Remainder::gse7;
  default:
    return Remainder::magnifier;
  }
}

struct Target {
  enum class Kind { z, zalpha, n } kind{Kind::z};
  int value{1};
};

Target parse_target(const std::string &text) {
  const auto eq = text.find('=');
  const auto key = text.substr(0, eq);
  const auto value = eq == std::string::npos ? std::string{} : text.substr(eq + 1);
  try {
    std::size_t used = 0;
    if (key == "zalpha" && value == "0")
      return {Target::Kind::zalpha, 0};
    const int v = std::stoi(value, &used);
    if (used == value.size() && v >= 1) {
      if (key == "z")
        return {Target::Kind::z, v};
      if (key == "n")
        return {Target::Kind::n, v};
    }
  } catch (const std::exception &) {
  }
  throw ValidationError(fmt::format(
      "bad target '{}': expected z=<Z>, zalpha=0 or n=<n>", text));
}

struct EnergyUnit {
  std::string label;
  Real hz{1};
};

EnergyUnit parse_unit(const std::string &text) {
  if (text == "Hz")
    return {"Hz", 1};
  if (text == "kHz")
    return {"kHz", 1e3L};
  if (text == "MHz")
    return {"MHz", 1e6L};
  throw ValidationError(fmt::format("unknown energy unit '{}'", text));
}

//==============================================================================
struct Session {
  std::string constants_path =
      (bundled_data_dir() / "constants_codata2018.txt").string();
  std::string coefficients_path =
      (bundled_data_dir() / "coefficients.txt").string();
  std::string format = "text";
  int max_order = 0;
  double consistency_k = 2;
  std::string rule = "last_decrease";
  double noise_factor = 3;
  bool one_digit = false;
  bool strict_constants = false;

  std::ostream *out = nullptr;
  std::ostream *err = nullptr;

  const ConstantsSet &constants() {
    if (!m_constants)
      m_constants = load_constants(constants_path);
    return *m_constants;
  }

  const CoefficientSet &coefficients(const StateLabel &state) {
    if (!m_coefficients)
      m_coefficients = load_coefficients(coefficients_path);
    const auto it = m_coefficients->find(state);
    if (it == m_coefficients->end())
      throw ValidationError(fmt::format("no coefficients for {} in '{}'",
                                        format_state(state),
                                        coefficients_path));
    return it->second;
  }

  bool has_coefficients(const StateLabel &state) {
    if (!m_coefficients)
      m_coefficients = load_coefficients(coefficients_path);
    return m_coefficients->count(state) > 0;
  }

  FSeries table(const std::string &path) {
    std::vector<std::string> warnings;
    FTableOptions options;
    options.expected_constants_label = constants().label;
    options.label_mismatch_is_error = strict_constants;
    auto series = load_f_table(path, options, &warnings);
    for (const auto &w : warnings)
      *err << "warning: " << w << '\n';
    return series;
  }

  ConvergencePolicy policy() const {
    ConvergencePolicy p;
    p.rule = parse_rule(rule);
    p.noise_factor = noise_factor;
    if (p.rule == ConvergencePolicy::Rule::fixed_order)
      p.fixed_order = max_order;
    return p;
  }

  int order_for(std::size_t nodes) const {
    if (rule == "fixed_order")
      return static_cast<int>(nodes) - 1;
    return max_order > 0 ? std::min(max_order, static_cast<int>(nodes) - 1)
                         : static_cast<int>(nodes) - 1;
  }

  std::string show(const UncertainValue &u, std::string_view unit = {}) const {
    FormatOptions o;
    o.two_digits_on_leading_one = !one_digit;
    return format_parenthesis(u, unit, o);
  }

  /// Emits a report: aligned "key  value" blocks, or csv / jsonl rows.
  void emit(const PlotTable &report) const {
    if (format == "text") {
      std::size_t width = 0;
      for (const auto &c : report.columns)
        width = std::max(width, c.size());
      for (std::size_t r = 0; r < report.rows.size(); ++r) {
        if (r)
          *out << '\n';
        for (std::size_t c = 0; c < report.columns.size(); ++c) {
          const auto &cell = report.rows[r][c];
          std::string text;
          if (const auto *s = std::get_if<std::string>(&cell))
            text = *s;
          else if (const auto *i = std::get_if<long long>(&cell))
            text = std::to_string(*i);
          else
            text = format_full(std::get<Real>(cell));
          *out << fmt::format("{:<{}}  {}\n", report.columns[c], width, text);
        }
      }
      return;
    }
    write_plotdata(*out, report, parse_plot_format(format));
  }

private:
  std::optional<ConstantsSet> m_constants;
  std::optional<CoefficientTable> m_coefficients;
};

//==============================================================================
// Remainder (or F) values of a table on a Z or Z alpha abscissa.
Grid variable_grid(Session &s, const FSeries &series, Variable variable,
                   bool zalpha_nodes) {
  const auto &constants = s.constants();
  const CoefficientSet *coeffs =
      variable == Variable::f ? nullptr : &s.coefficients(series.state);
  Grid grid;
  grid.variable_label =
      fmt::format("{} {}", format_state(series.state), to_string(variable));
  for (const auto &sample : series.samples) {
    const Real za = z_alpha(sample.z, constants);
    grid.nodes.push_back(zalpha_nodes ? za : static_cast<Real>(sample.z.z));
    grid.values.push_back(
        coeffs ? extract(as_remainder(variable), sample.f, sample.z, *coeffs,
                         constants)
               : sample.f);
  }
  return grid;
}

void append_trace(PlotTable &table, const Tableau &trace, const Grid &grid) {
  if (table.columns.empty())
    table.columns = {"series", "order",    "window_first", "window_last",
                     "mean_abscissa", "target", "estimate", "sigma"};
  for (int k = 1; k <= trace.max_order(); ++k)
    for (const auto &e : trace.column(k))
      table.add({trace.variable_label, static_cast<long long>(k),
                 grid.nodes[e.first_node],
                 grid.nodes[e.first_node + static_cast<std::size_t>(k)],
                 e.mean_abscissa, trace.target, e.estimate.value(),
                 e.estimate.sigma()});
}

void print_trace_text(std::ostream &out, const Tableau &trace) {
  out << fmt::format("trace {} -> {}\n", trace.variable_label,
                     format_full(trace.target));
  for (int k = 1; k <= trace.max_order(); ++k)
    for (const auto &e : trace.column(k))
      out << fmt::format("  order {:2d}  mean {:>10}  {}  +- {}\n", k,
                         format_full(e.mean_abscissa),
                         format_full(e.estimate.value()),
                         format_full(e.estimate.sigma()));
}

//==============================================================================
int cmd_convert(Session &s, const std::string &state_text, int z,
                std::optional<double> f, std::optional<double> energy,
                double sigma, std::string mode, const std::string &unit_text) {
  if (f.has_value() == energy.has_value())
    throw ValidationError("give exactly one of --f or --energy");
  if (mode.empty())
    mode = f ? "energy" : "f";
  const auto state = parse_state(state_text);
  const auto unit = parse_unit(unit_text);
  const NuclearCharge charge{z};
  const auto &constants = s.constants();

  PlotTable report;
  report.columns = {"state", "z", "input", "output", "value", "sigma",
                    "unit", "display"};
  const auto row = [&](std::string input, std::string output,
                       const UncertainValue &u, const std::string &u_label,
                       std::string display) {
    report.add({format_state(state), static_cast<long long>(z),
                std::move(input), std::move(output), u.value(), u.sigma(),
                u_label, std::move(display)});
  };

  if (mode == "energy") {
    if (!f)
      throw ValidationError("--mode energy needs --f");
    const auto e = f_to_energy(UncertainValue(*f, sigma), state, charge,
                               constants);
    row("f", "energy", e, "Hz", s.show(scale(e, 1 / unit.hz), unit.label));
  } else if (mode == "f") {
    if (!energy)
      throw ValidationError("--mode f needs --energy");
    const auto e = scale(UncertainValue(*energy, sigma), unit.hz);
    const auto out = energy_to_f(e, state, charge, constants);
    row("energy", "f", out, "", s.show(out));
  } else {
    const auto kind = parse_remainder(mode);
    if (state.is_s())
      throw ValidationError(fmt::format(
          "{}: remainder extraction is unsupported for S states",
          format_state(state)));
    UncertainValue input =
        f ? UncertainValue(*f, sigma)
          : energy_to_f(scale(UncertainValue(*energy, sigma), unit.hz), state,
                        charge, constants);
    const auto r = extract(kind, input, charge, s.coefficients(state), constants);
    row(f ? "f" : "energy", std::string(seshift::to_string(kind)), r, "",
        s.show(r));
  }
  s.emit(report);
  return ok;
}

//------------------------------------------------------------------------------
int cmd_extract(Session &s, const std::vector<std::string> &tables,
                const std::string &variable_text) {
  const auto variable = parse_variable(variable_text);
  std::vector<FSeries> all;
  for (const auto &t : tables)
    all.push_back(s.table(t));
  std::stable_sort(all.begin(), all.end(),
                   [](const auto &a, const auto &b) { return a.state < b.state; });

  PlotTable report;
  report.columns = {"state", "z", "zalpha", "f", "sigma_f", "variable",
                    "value", "sigma", "display"};
  for (const auto &series : all) {
    const auto grid = variable_grid(s, series, variable, false);
    for (std::size_t i = 0; i < series.samples.size(); ++i) {
      const auto &sample = series.samples[i];
      report.add({format_state(series.state),
                  static_cast<long long>(sample.z.z),
                  z_alpha(sample.z, s.constants()), sample.f.value(),
                  sample.f.sigma(), std::string(to_string(variable)),
                  grid.values[i].value(), grid.values[i].sigma(),
                  s.show(grid.values[i])});
    }
  }
  s.emit(report);
  return ok;
}

//------------------------------------------------------------------------------
struct VariableRun {
  Variable variable;
  ExtrapolationResult result;
  std::optional<UncertainValue> f;      // reconstructed at the target
  std::optional<UncertainValue> energy; // Hz
};

void add_reconstruction(Session &s, VariableRun &run, const StateLabel &state,
                        int z) {
  const NuclearCharge charge{z};
  if (run.variable == Variable::f) {
    run.f = run.result.estimate;
  } else {
    if (!s.has_coefficients(state))
      return;
    run.f = reconstruct_f(run.result.estimate, as_remainder(run.variable),
                          charge, s.coefficients(state), s.constants());
  }
  run.energy = f_to_energy(*run.f, state, charge, s.constants());
}

int cmd_extrapolate(Session &s, const std::vector<std::string> &table_paths,
                    const std::string &target_text,
                    const std::vector<std::string> &variable_texts, int at_z,
                    const std::string &trace_path,
                    const std::string &trace_format,
                    const std::string &unit_text) {
  const auto target = parse_target(target_text);
  const auto unit = parse_unit(unit_text);
  std::vector<Variable> variables;
  for (const auto &v : variable_texts)
    variables.push_back(parse_variable(v));
  if (variables.empty())
    variables.push_back(Variable::gse7);

  std::vector<FSeries> tables;
  for (const auto &t : table_paths)
    tables.push_back(s.table(t));
  std::stable_sort(tables.begin(), tables.end(),
                   [](const auto &a, const auto &b) { return a.state < b.state; });
  if (tables.empty())
    throw ValidationError("no --table given");
  if (target.kind != Target::Kind::n && tables.size() != 1)
    throw ValidationError("Z extrapolation takes exactly one --table");

  PlotTable trace_table;
  std::vector<VariableRun> runs;
  std::optional<StateLabel> target_state;

  const auto fail_nonconvergent = [&](const NonConvergence &e, const Grid &g) {
    append_trace(trace_table, e.trace(), g);
    if (s.format == "text")
      print_trace_text(*s.out, e.trace());
    if (!trace_path.empty())
      save_plotdata(trace_table, trace_path, parse_plot_format(trace_format));
    *s.err << "error: " << e.what() << '\n';
    return non_convergence;
  };

  for (const auto variable : variables) {
    if (target.kind == Target::Kind::n) {
      const auto &first = tables.front().state;
      target_state = StateLabel(target.value, first.l(), first.j2());
      std::vector<NPoint> points;
      for (const auto &series : tables) {
        if (series.state.l() != first.l() || series.state.j2() != first.j2())
          throw ValidationError(fmt::format(
              "n extrapolation mixes {} and {}", format_state(first),
              format_state(series.state)));
        const auto grid = variable_grid(s, series, variable, false);
        const auto node = std::find(grid.nodes.begin(), grid.nodes.end(),
                                    static_cast<Real>(at_z));
        if (node != grid.nodes.end()) {
          points.push_back(
              {series.state.n(),
               grid.values[static_cast<std::size_t>(node - grid.nodes.begin())]});
          continue;
        }
        try {
          const auto r = extrapolate(grid, at_z, s.order_for(grid.nodes.size()),
                                     s.policy());
          append_trace(trace_table, r.trace, grid);
          points.push_back({series.state.n(), r.estimate});
        } catch (const NonConvergence &e) {
          return fail_nonconvergent(e, grid);
        }
      }
      VariableRun run{variable, extrapolate_in_n(points, target.value,
                                                 s.max_order, s.policy()),
                      {}, {}};
      // trace abscissae of the n cascade are 1/n, ascending
      Grid n_grid;
      std::sort(points.begin(), points.end(),
                [](const auto &a, const auto &b) { return a.n > b.n; });
      for (const auto &p : points) {
        n_grid.nodes.push_back(Real{1} / p.n);
        n_grid.values.push_back(p.value);
      }
      run.result.trace.variable_label = fmt::format(
          "{} {} at Z={} vs 1/n", format_state(*target_state),
          to_string(variable), at_z);
      append_trace(trace_table, run.result.trace, n_grid);
      add_reconstruction(s, run, *target_state, at_z);
      runs.push_back(std::move(run));
      continue;
    }

    const auto &series = tables.front();
    target_state = series.state;
    const bool zalpha = target.kind == Target::Kind::zalpha;
    const auto grid = variable_grid(s, series, variable, zalpha);
    const Real where = zalpha ? Real{0} : static_cast<Real>(target.value);
    try {
      VariableRun run{variable,
                      extrapolate(grid, where, s.order_for(grid.nodes.size()),
                                  s.policy()),
                      {}, {}};
      append_trace(trace_table, run.result.trace, grid);
      if (!zalpha)
        add_reconstruction(s, run, series.state, target.value);
      runs.push_back(std::move(run));
    } catch (const NonConvergence &e) {
      return fail_nonconvergent(e, grid);
    }
  }

  PlotTable report;
  report.columns = {"state",       "target",     "variable",
                    "estimate",    "sigma",      "order_used",
                    "data_sigma",  "order_sigma", "display",
                    "f",           "sigma_f",    "energy_hz",
                    "sigma_energy_hz", "energy_display"};
  for (const auto &run : runs) {
    const auto &r = run.result;
    report.add({format_state(*target_state), target_text,
                std::string(to_string(run.variable)), r.estimate.value(),
                r.estimate.sigma(), static_cast<long long>(r.order_used),
                r.data_sigma, r.order_sigma, s.show(r.estimate),
                run.f ? Cell{run.f->value()} : Cell{std::string("-")},
                run.f ? Cell{run.f->sigma()} : Cell{std::string("-")},
                run.energy ? Cell{run.energy->value()} : Cell{std::string("-")},
                run.energy ? Cell{run.energy->sigma()} : Cell{std::string("-")},
                run.energy ? s.show(scale(*run.energy, 1 / unit.hz), unit.label)
                           : std::string("-")});
  }
  s.emit(report);

  // pairwise agreement of the reconstructed energies
  PlotTable agreement;
  agreement.columns = {"agreement", "difference_hz", "combined_sigma_hz",
                       "ratio", "consistent"};
  for (std::size_t i = 0; i < runs.size(); ++i)
    for (std::size_t j = i + 1; j < runs.size(); ++j) {
      if (!runs[i].energy || !runs[j].energy)
        continue;
      const Real diff = runs[i].energy->value() - runs[j].energy->value();
      const Real combined =
          std::hypot(runs[i].energy->sigma(), runs[j].energy->sigma());
      const Real ratio = combined > 0 ? std::abs(diff) / combined
                                      : (diff == 0 ? Real{0} : INFINITY);
      agreement.add({fmt::format("{} vs {}", to_string(runs[i].variable),
                                 to_string(runs[j].variable)),
                     diff, combined, ratio,
                     std::string(ratio <= 1 ? "yes" : "no")});
    }
  if (!agreement.rows.empty()) {
    if (s.format == "text")
      *s.out << '\n';
    s.emit(agreement);
  }

  if (s.format == "text" && trace_path.empty()) {
    for (const auto &run : runs) {
      *s.out << '\n';
      print_trace_text(*s.out, run.result.trace);
    }
  }
  if (!trace_path.empty())
    save_plotdata(trace_table, trace_path, parse_plot_format(trace_format));
  return ok;
}

//------------------------------------------------------------------------------
int cmd_estimate(Session &s, const std::string &state_text, int z,
                 const std::string &order_text, double bound,
                 const std::string &unit_text) {
  const auto state = parse_state(state_text);
  const auto order = parse_truncation(order_text);
  const auto unit = parse_unit(unit_text);
  const auto b = truncated_estimate_breakdown(
      state, NuclearCharge{z}, s.coefficients(state), s.constants(), order,
      bound);

  PlotTable report;
  report.columns = {"state", "z", "order", "bound", "central_hz",
                    "bound_sigma_hz", "coefficient_sigma_hz", "sigma_hz",
                    "display"};
  report.add({format_state(state), static_cast<long long>(z),
              std::string(to_string(order)), static_cast<Real>(bound),
              b.central_hz, b.bound_sigma_hz, b.coefficient_sigma_hz,
              b.energy_hz.sigma(),
              s.show(scale(b.energy_hz, 1 / unit.hz), unit.label)});
  s.emit(report);
  return ok;
}

//------------------------------------------------------------------------------
int cmd_verify_limit(Session &s, const std::string &table_path, double k,
                     const std::string &output_path,
                     const std::string &output_format) {
  if (!(k > 0))
    throw ValidationError("consistency factor k must be > 0");
  const auto series = s.table(table_path);
  const auto &coeffs = s.coefficients(series.state);
  const auto &limit = coeffs.require(Coefficient::gse_limit);

  const auto grid = variable_grid(s, series, Variable::gse, true);

  PlotTable records;
  records.columns = {"state", "z", "zalpha", "gse", "sigma", "limit",
                     "limit_sigma"};
  for (std::size_t i = 0; i < grid.nodes.size(); ++i)
    records.add({format_state(series.state),
                 static_cast<long long>(series.samples[i].z.z), grid.nodes[i],
                 grid.values[i].value(), grid.values[i].sigma(), limit.value(),
                 limit.sigma()});
  if (!output_path.empty())
    save_plotdata(records, output_path, parse_plot_format(output_format));

  ExtrapolationResult r;
  try {
    r = extrapolate(grid, 0, s.order_for(grid.nodes.size()), s.policy());
  } catch (const NonConvergence &e) {
    if (s.format == "text")
      print_trace_text(*s.out, e.trace());
    *s.err << "error: " << e.what() << '\n';
    return non_convergence;
  }

  const Real difference = r.estimate.value() - limit.value();
  const Real combined = std::hypot(r.estimate.sigma(), limit.sigma());
  const bool consistent = std::abs(difference) <= static_cast<Real>(k) * combined;

  PlotTable report;
  report.columns = {"state",      "extrapolated", "sigma",  "limit",
                    "limit_sigma", "difference",  "combined_sigma", "k",
                    "order_used", "verdict"};
  report.add({format_state(series.state), r.estimate.value(), r.estimate.sigma(),
              limit.value(), limit.sigma(), difference, combined,
              static_cast<Real>(k), static_cast<long long>(r.order_used),
              std::string(consistent ? "consistent" : "inconsistent")});
  s.emit(report);
  return consistent ? ok : inconsistent;
}

//------------------------------------------------------------------------------
int cmd_plotdata(Session &s, const std::vector<std::string> &table_paths,
                 const std::string &mode, const std::string &variable_text,
                 const std::string &target_text, const std::string &output_path,
                 const std::string &output_format) {
  if (mode != "f_vs_z" && mode != "gse_vs_z" && mode != "tableau_trace")
    throw ValidationError(fmt::format("unknown plot mode '{}'", mode));
  std::vector<FSeries> tables;
  for (const auto &t : table_paths)
    tables.push_back(s.table(t));
  std::stable_sort(tables.begin(), tables.end(),
                   [](const auto &a, const auto &b) { return a.state < b.state; });

  PlotTable data;
  PlotTable summary;
  summary.columns = {"series", "mode", "rows", "max_relative_variation"};

  for (const auto &series : tables) {
    const auto label = format_state(series.state);
    std::size_t before = data.rows.size();
    Real lo = INFINITY, hi = -INFINITY, biggest = 0;

    if (mode == "f_vs_z") {
      data.columns = {"series", "z", "zalpha", "f", "sigma_f"};
      for (const auto &sample : series.samples) {
        data.add({label, static_cast<long long>(sample.z.z),
                  z_alpha(sample.z, s.constants()), sample.f.value(),
                  sample.f.sigma()});
        lo = std::min(lo, sample.f.value());
        hi = std::max(hi, sample.f.value());
        biggest = std::max(biggest, std::abs(sample.f.value()));
      }
    } else if (mode == "gse_vs_z") {
      const auto variable = parse_variable(variable_text);
      const auto grid = variable_grid(s, series, variable, false);
      data.columns = {"series", "z", "zalpha", "variable", "value", "sigma"};
      for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        data.add({label, static_cast<long long>(series.samples[i].z.z),
                  z_alpha(series.samples[i].z, s.constants()),
                  std::string(to_string(variable)), grid.values[i].value(),
                  grid.values[i].sigma()});
        lo = std::min(lo, grid.values[i].value());
        hi = std::max(hi, grid.values[i].value());
        biggest = std::max(biggest, std::abs(grid.values[i].value()));
      }
    } else {
      const auto target = parse_target(target_text);
      if (target.kind == Target::Kind::n)
        throw ValidationError("tableau_trace takes a z= or zalpha= target");
      const bool zalpha = target.kind == Target::Kind::zalpha;
      const auto grid =
          variable_grid(s, series, parse_variable(variable_text), zalpha);
      const auto tableau =
          cascade(grid, zalpha ? Real{0} : static_cast<Real>(target.value),
                  s.order_for(grid.nodes.size()));
      append_trace(data, tableau, grid);
      lo = hi = 0;
    }
    summary.add({label, mode, static_cast<long long>(data.rows.size() - before),
                 biggest > 0 ? (hi - lo) / biggest : Real{0}});
  }
  if (data.columns.empty())
    data.columns = {"series"};

  if (output_path.empty()) {
    write_plotdata(*s.out, data,
                   parse_plot_format(s.format == "text" ? output_format
                                                        : s.format));
  } else {
    save_plotdata(data, output_path, parse_plot_format(output_format));
    s.emit(summary);
  }
  return ok;
}

} // namespace

//==============================================================================
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  Session s;
  s.out = &out;
  s.err = &err;

  CLI::App app{"Reduction and extrapolation of one-loop self-energy tables "
               "for hydrogen-like ions",
               "seshift"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all", "Help for every subcommand");
  app.add_option("--constants", s.constants_path, "Constants file")
      ->capture_default_str();
  app.add_option("--coefficients", s.coefficients_path, "Coefficient table")
      ->capture_default_str();
  app.add_option("--format", s.format, "Report format")
      ->check(CLI::IsMember({"text", "csv", "jsonl"}))
      ->capture_default_str();
  app.add_option("--max-order", s.max_order,
                 "Highest cascade order (0: number of nodes - 1)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--consistency-k", s.consistency_k,
                 "Consistency factor k for verify-limit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--policy", s.rule, "Order selection rule")
      ->check(CLI::IsMember({"last_decrease", "first_growth", "fixed_order"}))
      ->capture_default_str();
  app.add_option("--noise-factor", s.noise_factor,
                 "Order-2 change (in data sigmas) tolerated before declaring "
                 "non-convergence")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--one-digit", s.one_digit,
               "Always round uncertainties to one significant digit");
  app.add_flag("--strict-constants", s.strict_constants,
               "Reject tables whose constants label differs from the session");

  // convert
  std::string c_state, c_mode, c_unit = "kHz";
  int c_z = 1;
  std::optional<double> c_f, c_energy;
  double c_sigma = 0;
  auto *convert = app.add_subcommand(
      "convert", "Convert between F, energy shift and remainders");
  convert->add_option("--state", c_state, "State, e.g. 4P1/2")->required();
  convert->add_option("--z", c_z, "Nuclear charge")->required();
  convert->add_option("--f", c_f, "Reduced self energy F");
  convert->add_option("--energy", c_energy, "Energy shift (in --unit)");
  convert->add_option("--sigma", c_sigma, "Uncertainty of the input")
      ->check(CLI::NonNegativeNumber);
  convert
      ->add_option("--mode", c_mode,
                   "energy, f, gse, gse7 or magnifier (default: the other of "
                   "F/energy)")
      ->check(CLI::IsMember({"energy", "f", "gse", "gse7", "magnifier"}));
  convert->add_option("--unit", c_unit, "Energy unit")
      ->check(CLI::IsMember({"Hz", "kHz", "MHz"}))
      ->capture_default_str();

  // extract
  std::vector<std::string> x_tables;
  std::string x_variable = "gse";
  auto *extract_cmd =
      app.add_subcommand("extract", "Remainder function for every table row");
  extract_cmd->add_option("--table", x_tables, "F table(s)")->required();
  extract_cmd->add_option("--variable", x_variable, "f, gse, gse7 or magnifier")
      ->capture_default_str();

  // extrapolate
  std::vector<std::string> e_tables, e_variables;
  std::string e_target = "z=1", e_trace, e_trace_format = "csv", e_unit = "kHz";
  int e_at_z = 1;
  auto *extrapolate_cmd = app.add_subcommand(
      "extrapolate", "Cascade extrapolation of a remainder to a target");
  extrapolate_cmd->add_option("--table", e_tables, "F table(s)")->required();
  extrapolate_cmd
      ->add_option("--target", e_target, "z=<Z>, zalpha=0 or n=<n>")
      ->capture_default_str();
  extrapolate_cmd->add_option("--variable", e_variables,
                              "f, gse, gse7 or magnifier (repeatable)");
  extrapolate_cmd
      ->add_option("--at-z", e_at_z, "Nuclear charge used for n targets")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  extrapolate_cmd->add_option("--trace", e_trace, "Write the tableau trace");
  extrapolate_cmd->add_option("--trace-format", e_trace_format, "csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->capture_default_str();
  extrapolate_cmd->add_option("--unit", e_unit, "Energy unit")
      ->check(CLI::IsMember({"Hz", "kHz", "MHz"}))
      ->capture_default_str();

  // estimate
  std::string t_state, t_order = "two_term", t_unit = "kHz";
  int t_z = 1;
  double t_bound = 1;
  auto *estimate_cmd = app.add_subcommand(
      "estimate", "Truncated perturbation estimate with remainder bound");
  estimate_cmd->add_option("--state", t_state, "State, e.g. 4P1/2")->required();
  estimate_cmd->add_option("--z", t_z, "Nuclear charge")->capture_default_str();
  estimate_cmd->add_option("--order", t_order, "two_term or three_term")
      ->check(CLI::IsMember({"two_term", "three_term"}))
      ->capture_default_str();
  estimate_cmd->add_option("--bound", t_bound, "Bound on the omitted remainder")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  estimate_cmd->add_option("--unit", t_unit, "Energy unit")
      ->check(CLI::IsMember({"Hz", "kHz", "MHz"}))
      ->capture_default_str();

  // verify-limit
  std::string v_table, v_output, v_output_format = "csv";
  std::optional<double> v_k;
  auto *verify = app.add_subcommand(
      "verify-limit",
      "Check that G_SE extrapolates to the independently known Z->0 limit");
  verify->add_option("--table", v_table, "F table")->required();
  verify->add_option("--k", v_k, "Consistency factor (overrides --consistency-k)")
      ->check(CLI::PositiveNumber);
  verify->add_option("--output", v_output, "Write G_SE(Z) records");
  verify->add_option("--output-format", v_output_format, "csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->capture_default_str();

  // plotdata
  std::vector<std::string> p_tables;
  std::string p_mode = "f_vs_z", p_variable = "gse", p_target = "z=1",
              p_output, p_output_format = "csv";
  auto *plot = app.add_subcommand("plotdata", "Emit data for external plots");
  plot->add_option("--table", p_tables, "F table(s)")->required();
  plot->add_option("--mode", p_mode, "f_vs_z, gse_vs_z or tableau_trace")
      ->check(CLI::IsMember({"f_vs_z", "gse_vs_z", "tableau_trace"}))
      ->capture_default_str();
  plot->add_option("--variable", p_variable,
                   "Variable for gse_vs_z and tableau_trace")
      ->capture_default_str();
  plot->add_option("--target", p_target, "Target for tableau_trace")
      ->capture_default_str();
  plot->add_option("--output", p_output, "Output file (default: stdout)");
  plot->add_option("--output-format", p_output_format, "csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    app.exit(e, out, err);
    return ok;
  } catch (const CLI::CallForAllHelp &e) {
    app.exit(e, out, err);
    return ok;
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return validation;
  }

  try {
    if (*convert)
      return cmd_convert(s, c_state, c_z, c_f, c_energy, c_sigma, c_mode,
                         c_unit);
    if (*extract_cmd)
      return cmd_extract(s, x_tables, x_variable);
    if (*extrapolate_cmd)
      return cmd_extrapolate(s, e_tables, e_target, e_variables, e_at_z,
                             e_trace, e_trace_format, e_unit);
    if (*estimate_cmd)
      return cmd_estimate(s, t_state, t_z, t_order, t_bound, t_unit);
    if (*verify)
      return cmd_verify_limit(s, v_table, v_k.value_or(s.consistency_k),
                              v_output, v_output_format);
    if (*plot)
      return cmd_plotdata(s, p_tables, p_mode, p_variable, p_target, p_output,
                          p_output_format);
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return validation;
  }
  return validation;
}

} // namespace seshift::cli
