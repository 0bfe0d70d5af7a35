#include "seshift/dataset.hpp"
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fmt/format.h>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace seshift {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view line) {
  return line.substr(0, line.find('#'));
}

// Reads logical lines and carries the position for diagnostics.
class LineReader {
public:
  LineReader(std::istream &in, std::string_view source)
      : m_in(in), m_source(source) {}

  bool next(std::string_view &content) {
    while (std::getline(m_in, m_line)) {
      ++m_number;
      content = trim(strip_comment(m_line));
      if (!content.empty())
        return true;
    }
    return false;
  }

  ValidationError error(std::string_view message) const {
    return ValidationError(
        fmt::format("{}:{}: {}", m_source, m_number, message));
  }

  int line_number() const { return m_number; }

private:
  std::istream &m_in;
  std::string m_source;
  std::string m_line;
  int m_number{0};
};

std::vector<std::string> split_fields(std::string_view text,
                                      const LineReader &reader) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ' || text[i] == '\t') {
      ++i;
      continue;
    }
    if (text[i] == '"') {
      const auto close = text.find('"', i + 1);
      if (close == std::string_view::npos)
        throw reader.error("unterminated quoted field");
      out.emplace_back(text.substr(i, close - i + 1));
      i = close + 1;
      continue;
    }
    const auto end = text.find_first_of(" \t", i);
    out.emplace_back(text.substr(i, end == std::string_view::npos
                                        ? std::string_view::npos
                                        : end - i));
    i = end == std::string_view::npos ? text.size() : end;
  }
  return out;
}

Real parse_real(const std::string &token, const LineReader &reader,
                std::string_view what) {
  errno = 0;
  char *end = nullptr;
  const Real value = std::strtold(token.c_str(), &end);
  if (token.empty() || end != token.c_str() + token.size() || errno == ERANGE ||
      !std::isfinite(value))
    throw reader.error(fmt::format("{} '{}' is not a finite number", what, token));
  return value;
}

int parse_int(const std::string &token, const LineReader &reader,
              std::string_view what) {
  errno = 0;
  char *end = nullptr;
  const long value = std::strtol(token.c_str(), &end, 10);
  if (token.empty() || end != token.c_str() + token.size() || errno == ERANGE ||
      value < 1 || value > 1000)
    throw reader.error(fmt::format("{} '{}' is not a valid integer", what, token));
  return static_cast<int>(value);
}

std::ifstream open_input(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError(fmt::format("cannot open '{}'", path.string()));
  return in;
}

} // namespace

//==============================================================================
FSeries parse_f_table(std::istream &in, std::string_view source_name,
                      const FTableOptions &options,
                      std::vector<std::string> *warnings) {
  LineReader reader(in, source_name);
  std::optional<StateLabel> state;
  std::optional<std::string> constants_label;
  std::vector<FSample> samples;
  std::vector<int> row_lines;

  std::string_view line;
  while (reader.next(line)) {
    if (const auto colon = line.find(':'); colon != std::string_view::npos) {
      const auto key = trim(line.substr(0, colon));
      const auto value = trim(line.substr(colon + 1));
      if (key == "state") {
        if (state)
          throw reader.error("repeated state header");
        try {
          state = parse_state(value);
        } catch (const ValidationError &e) {
          throw reader.error(e.what());
        }
      } else if (key == "constants") {
        if (constants_label)
          throw reader.error("repeated constants header");
        constants_label = std::string(value);
      } else {
        throw reader.error(fmt::format("unknown header '{}'", key));
      }
      continue;
    }

    const auto fields = split_fields(line, reader);
    if (fields.size() != 3)
      throw reader.error(
          fmt::format("expected 'Z F sigma_F', got {} fields", fields.size()));
    const int z = parse_int(fields[0], reader, "Z");
    const Real f = parse_real(fields[1], reader, "F");
    const Real sigma = parse_real(fields[2], reader, "sigma_F");
    if (sigma < 0)
      throw reader.error(fmt::format("negative sigma_F {}", fields[2]));
    if (!samples.empty()) {
      const int previous = samples.back().z.z;
      if (z == previous)
        throw reader.error(fmt::format(
            "duplicate Z = {} (first given on line {})", z, row_lines.back()));
      if (z < previous)
        throw reader.error(fmt::format(
            "Z = {} after Z = {}: rows must increase in Z", z, previous));
    }
    samples.push_back({NuclearCharge{z}, UncertainValue(f, sigma)});
    row_lines.push_back(reader.line_number());
  }

  if (!state)
    throw ValidationError(fmt::format("{}: missing 'state:' header", source_name));
  if (samples.empty())
    throw ValidationError(fmt::format("{}: no data rows", source_name));

  FSeries series;
  series.state = *state;
  series.samples = std::move(samples);
  series.constants_label = constants_label.value_or("");

  if (!options.expected_constants_label.empty() &&
      series.constants_label != options.expected_constants_label) {
    const auto message = fmt::format(
        "{}: table computed with constants '{}', session uses '{}'",
        source_name, series.constants_label, options.expected_constants_label);
    if (options.label_mismatch_is_error)
      throw ValidationError(message);
    if (warnings)
      warnings->push_back(message);
  }
  return series;
}

FSeries load_f_table(const std::filesystem::path &path,
                     const FTableOptions &options,
                     std::vector<std::string> *warnings) {
  auto in = open_input(path);
  return parse_f_table(in, path.string(), options, warnings);
}

void write_f_table(std::ostream &out, const FSeries &series) {
  series.validate();
  out << "state: " << format_state(series.state) << '\n';
  if (!series.constants_label.empty())
    out << "constants: " << series.constants_label << '\n';
  out << "# Z F sigma_F\n";
  for (const auto &s : series.samples)
    out << s.z.z << ' ' << format_full(s.f.value()) << ' '
        << format_full(s.f.sigma()) << '\n';
}

void save_f_table(const FSeries &series, const std::filesystem::path &path) {
  std::ostringstream buffer;
  write_f_table(buffer, series);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw ValidationError(fmt::format("cannot write '{}'", path.string()));
  out << buffer.str();
}

//==============================================================================
CoefficientTable parse_coefficients(std::istream &in,
                                    std::string_view source_name) {
  LineReader reader(in, source_name);
  CoefficientTable table;
  std::map<StateLabel, int> first_line;

  std::string_view line;
  while (reader.next(line)) {
    auto fields = split_fields(line, reader);
    if (fields.size() < 2 || fields.back().front() != '"')
      throw reader.error("row must end with a quoted source citation");
    const auto numeric = fields.size() - 2;
    if (numeric != 4 && numeric != 6 && numeric != 8)
      throw reader.error(fmt::format(
          "expected 4, 6 or 8 numeric fields after the state, got {}", numeric));

    CoefficientSet set;
    try {
      set.state = parse_state(fields[0]);
    } catch (const ValidationError &e) {
      throw reader.error(e.what());
    }

    const auto pair = [&](std::size_t at, std::string_view name)
        -> std::optional<UncertainValue> {
      if (at + 1 > numeric)
        return std::nullopt;
      const auto &v = fields[1 + at];
      const auto &s = fields[2 + at];
      if (v == "-" && s == "-")
        return std::nullopt;
      if (v == "-" || s == "-")
        throw reader.error(
            fmt::format("{} and its sigma must both be present or absent", name));
      const Real value = parse_real(v, reader, name);
      const Real sigma = parse_real(s, reader, fmt::format("sigma of {}", name));
      if (sigma < 0)
        throw reader.error(fmt::format("negative sigma for {}", name));
      return UncertainValue(value, sigma);
    };

    set.a40 = pair(0, "A40");
    set.a61 = pair(2, "A61");
    set.a60 = pair(4, "A60");
    set.gse_limit = pair(6, "GSE0");
    if (!set.a40)
      throw reader.error("A40 is mandatory");
    if (!set.a61)
      throw reader.error("A61 is mandatory");

    const auto &quoted = fields.back();
    set.source = std::string(trim(std::string_view(quoted).substr(1, quoted.size() - 2)));
    if (set.source.empty())
      throw reader.error("empty source citation");

    if (const auto it = first_line.find(set.state); it != first_line.end())
      throw reader.error(fmt::format("duplicate state {} (first on line {})",
                                     format_state(set.state), it->second));
    first_line[set.state] = reader.line_number();
    table.emplace(set.state, std::move(set));
  }
  return table;
}

CoefficientTable load_coefficients(const std::filesystem::path &path) {
  auto in = open_input(path);
  return parse_coefficients(in, path.string());
}

//==============================================================================
ConstantsSet parse_constants(std::istream &in, std::string_view source_name) {
  LineReader reader(in, source_name);
  ConstantsSet out;
  bool have_alpha = false, have_freq = false, have_label = false;

  std::string_view line;
  while (reader.next(line)) {
    const auto space = line.find_first_of(" \t");
    if (space == std::string_view::npos)
      throw reader.error("expected '<key> <value>'");
    const auto key = line.substr(0, space);
    const auto value = std::string(trim(line.substr(space)));
    const auto once = [&](bool &seen) {
      if (seen)
        throw reader.error(fmt::format("repeated key '{}'", key));
      seen = true;
    };
    if (key == "alpha") {
      once(have_alpha);
      out.alpha = parse_real(value, reader, "alpha");
    } else if (key == "me_c2_hz") {
      once(have_freq);
      out.electron_rest_frequency = parse_real(value, reader, "me_c2_hz");
    } else if (key == "label") {
      once(have_label);
      out.label = value;
    } else {
      throw reader.error(fmt::format("unknown key '{}'", key));
    }
  }
  if (!have_alpha || !have_freq || !have_label)
    throw ValidationError(fmt::format(
        "{}: constants file needs alpha, me_c2_hz and label", source_name));
  try {
    out.validate();
  } catch (const ValidationError &e) {
    throw ValidationError(fmt::format("{}: {}", source_name, e.what()));
  }
  return out;
}

ConstantsSet load_constants(const std::filesystem::path &path) {
  auto in = open_input(path);
  return parse_constants(in, path.string());
}

//==============================================================================
void PlotTable::add(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw ValidationError(fmt::format("plot row has {} cells for {} columns",
                                      row.size(), columns.size()));
  rows.push_back(std::move(row));
}

PlotFormat parse_plot_format(std::string_view text) {
  if (text == "csv")
    return PlotFormat::csv;
  if (text == "jsonl")
    return PlotFormat::jsonl;
  throw ValidationError(fmt::format("unknown plot format '{}'", text));
}

namespace {

std::string csv_cell(const Cell &cell) {
  if (const auto *s = std::get_if<std::string>(&cell)) {
    if (s->find_first_of(",\"\n") == std::string::npos)
      return *s;
    std::string quoted = "\"";
    for (char c : *s) {
      if (c == '"')
        quoted += '"';
      quoted += c;
    }
    return quoted + '"';
  }
  if (const auto *i = std::get_if<long long>(&cell))
    return std::to_string(*i);
  return format_full(std::get<Real>(cell));
}

std::string json_cell(const Cell &cell) {
  if (const auto *s = std::get_if<std::string>(&cell))
    return nlohmann::json(*s).dump();
  if (const auto *i = std::get_if<long long>(&cell))
    return std::to_string(*i);
  return format_full(std::get<Real>(cell));
}

} // namespace

void write_plotdata(std::ostream &out, const PlotTable &table,
                    PlotFormat format) {
  if (format == PlotFormat::csv) {
    for (std::size_t c = 0; c < table.columns.size(); ++c)
      out << (c ? "," : "") << csv_cell(table.columns[c]);
    out << '\n';
    for (const auto &row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c)
        out << (c ? "," : "") << csv_cell(row[c]);
      out << '\n';
    }
    return;
  }

  out << nlohmann::json{{"columns", table.columns}}.dump() << '\n';
  for (const auto &row : table.rows) {
    out << '{';
    for (std::size_t c = 0; c < row.size(); ++c)
      out << (c ? "," : "") << nlohmann::json(table.columns[c]).dump() << ':'
          << json_cell(row[c]);
    out << "}\n";
  }
}

void save_plotdata(const PlotTable &table, const std::filesystem::path &path,
                   PlotFormat format) {
  std::ostringstream buffer;
  write_plotdata(buffer, table, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw ValidationError(fmt::format("cannot write '{}'", path.string()));
  out << buffer.str();
  if (!out)
    throw ValidationError(fmt::format("write to '{}' failed", path.string()));
}

std::filesystem::path bundled_data_dir() { return SESHIFT_DATA_DIR; }

} // namespace seshift
