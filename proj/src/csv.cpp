#include "prot/csv.hpp"

#include "prot/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace prot {

CsvColumn CsvColumn::real(std::string name, std::vector<double> values) {
  return CsvColumn{std::move(name), std::move(values)};
}

CsvColumn CsvColumn::integer(std::string name, std::vector<int> values) {
  std::vector<long long> v(values.begin(), values.end());
  return CsvColumn{std::move(name), std::move(v)};
}

CsvColumn CsvColumn::integer(std::string name, std::vector<long long> values) {
  return CsvColumn{std::move(name), std::move(values)};
}

std::size_t CsvColumn::size() const {
  return std::visit([](const auto& v) { return v.size(); }, values);
}

namespace {

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string cell_at(const CsvColumn& col, std::size_t row) {
  if (const auto* reals = std::get_if<std::vector<double>>(&col.values)) {
    return format_real((*reals)[row]);
  }
  return std::to_string(std::get<std::vector<long long>>(col.values)[row]);
}

}  // namespace

std::string csv_to_string(const std::vector<CsvColumn>& columns) {
  if (columns.empty()) throw InputError("CSV needs at least one column");
  const std::size_t rows = columns.front().size();
  for (const auto& col : columns) {
    if (col.size() != rows) {
      throw InputError("CSV columns must have equal length (column '" + col.name + "')");
    }
  }
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ',';
    out += columns[c].name;
  }
  out += '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) out += ',';
      out += cell_at(columns[c], r);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const std::string& path, const std::vector<CsvColumn>& columns) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open CSV output file: " + path);
  file << csv_to_string(columns);
  if (!file) throw ConfigError("failed writing CSV output file: " + path);
}

std::vector<CsvColumn> select_columns(const std::vector<CsvColumn>& columns,
                                      const std::vector<std::string>& names) {
  std::vector<CsvColumn> out;
  for (const auto& name : names) {
    bool found = false;
    for (const auto& col : columns) {
      if (col.name == name) {
        out.push_back(col);
        found = true;
        break;
      }
    }
    if (!found) throw ConfigError("unknown CSV column in selection: '" + name + "'");
  }
  return out;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream is(text);
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (first) {
      table.header = std::move(cells);
      first = false;
    } else {
      table.rows.push_back(std::move(cells));
    }
  }
  return table;
}

}  // namespace prot
