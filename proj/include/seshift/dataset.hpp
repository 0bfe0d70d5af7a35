#pragma once
#include "seshift/quantities.hpp"
#include "seshift/reduction.hpp"
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace seshift {

/*
  Line-oriented text formats; '#' starts a comment anywhere on a line.

  F table:
      state: 4D5/2
      constants: CODATA 2018
      <Z> <F> <sigma_F>          one row per Z, Z strictly increasing

  Coefficient table (one row per state, '-' marks an absent field):
      <state> <A40> <sA40> <A61> <sA61> [<A60> <sA60>] [<GSE0> <sGSE0>] "<source>"

  Constants:
      alpha <value>
      me_c2_hz <value>
      label <text>

  Every violation is reported as a ValidationError "<file>:<line>: ...".
*/

struct FTableOptions {
  // Label of the session's constants; empty disables the check.
  std::string expected_constants_label;
  bool label_mismatch_is_error{false};
};

FSeries parse_f_table(std::istream &in, std::string_view source_name,
                      const FTableOptions &options = {},
                      std::vector<std::string> *warnings = nullptr);
FSeries load_f_table(const std::filesystem::path &path,
                     const FTableOptions &options = {},
                     std::vector<std::string> *warnings = nullptr);
void write_f_table(std::ostream &out, const FSeries &series);
void save_f_table(const FSeries &series, const std::filesystem::path &path);

using CoefficientTable = std::map<StateLabel, CoefficientSet>;

CoefficientTable parse_coefficients(std::istream &in,
                                    std::string_view source_name);
CoefficientTable load_coefficients(const std::filesystem::path &path);

ConstantsSet parse_constants(std::istream &in, std::string_view source_name);
ConstantsSet load_constants(const std::filesystem::path &path);

//------------------------------------------------------------------------------
/// Column-ordered records for external plotting.
using Cell = std::variant<std::string, long long, Real>;

struct PlotTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

enum class PlotFormat { csv, jsonl };
PlotFormat parse_plot_format(std::string_view text);

/// csv: header line then rows. jsonl: a {"columns": [...]} line then one
/// object per row. Reals are written with 17 significant digits, so equal
/// inputs give byte-identical output.
void write_plotdata(std::ostream &out, const PlotTable &table,
                    PlotFormat format);
void save_plotdata(const PlotTable &table, const std::filesystem::path &path,
                   PlotFormat format);

/// Directory holding the bundled constants, coefficients and sample tables.
std::filesystem::path bundled_data_dir();

} // namespace seshift
