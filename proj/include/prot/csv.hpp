#pragma once

#include <string>
#include <variant>
#include <vector>

namespace prot {

// Fixed CSV dialect: header row, comma separator, \n line endings, reals with
// 9 significant digits, integers bare. Pinned so golden-file comparisons are
// byte-exact.
struct CsvColumn {
  std::string name;
  std::variant<std::vector<double>, std::vector<long long>> values;

  static CsvColumn real(std::string name, std::vector<double> values);
  static CsvColumn integer(std::string name, std::vector<int> values);
  static CsvColumn integer(std::string name, std::vector<long long> values);

  std::size_t size() const;
};

std::string csv_to_string(const std::vector<CsvColumn>& columns);

void write_csv(const std::string& path, const std::vector<CsvColumn>& columns);

// Keeps only the named columns, in the requested order. Unknown names are
// configuration errors.
std::vector<CsvColumn> select_columns(const std::vector<CsvColumn>& columns,
                                      const std::vector<std::string>& names);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable parse_csv(const std::string& text);

}  // namespace prot
