#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace dressed {

/// 17 significant digits, locale independent.
std::string format_double(double v);

/// Named columns of doubles, the first column being the strictly increasing
/// time "t".
class TimeSeries {
 public:
  TimeSeries() : TimeSeries(std::vector<std::string>{"t"}) {}
  explicit TimeSeries(std::vector<std::string> columns);

  void add_row(std::vector<double> row);

  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t rows() const { return data_.size(); }
  bool empty() const { return data_.empty(); }
  const std::vector<double>& row(std::size_t i) const { return data_.at(i); }

  bool has_column(std::string_view name) const;
  /// Throws ValidationError for an unknown name.
  std::size_t column_index(std::string_view name) const;
  std::vector<double> column(std::string_view name) const;
  std::vector<double> times() const { return column("t"); }

  /// Header line then one line per row.
  void write_csv(std::ostream& os) const;
  std::string to_csv() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> data_;
};

}  // namespace dressed
