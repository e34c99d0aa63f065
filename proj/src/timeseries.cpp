#include "dressed/timeseries.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <ostream>
#include <sstream>

#include "dressed/errors.hpp"

namespace dressed {

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res =
      std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

TimeSeries::TimeSeries(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty() || columns_.front() != "t")
    throw ValidationError("time series: first column must be t");
  for (std::size_t i = 0; i < columns_.size(); ++i)
    for (std::size_t k = i + 1; k < columns_.size(); ++k)
      if (columns_[i] == columns_[k])
        throw ValidationError("time series: duplicate column " + columns_[i]);
}

void TimeSeries::add_row(std::vector<double> row) {
  if (row.size() != columns_.size())
    throw ValidationError("time series: row has " + std::to_string(row.size()) +
                          " values, expected " + std::to_string(columns_.size()));
  if (!data_.empty() && !(row.front() > data_.back().front()))
    throw ValidationError("time series: t must be strictly increasing");
  data_.push_back(std::move(row));
}

bool TimeSeries::has_column(std::string_view name) const {
  return std::find(columns_.begin(), columns_.end(), name) != columns_.end();
}

std::size_t TimeSeries::column_index(std::string_view name) const {
  auto it = std::find(columns_.begin(), columns_.end(), name);
  if (it == columns_.end())
    throw ValidationError("time series: no column " + std::string(name));
  return static_cast<std::size_t>(it - columns_.begin());
}

std::vector<double> TimeSeries::column(std::string_view name) const {
  const std::size_t k = column_index(name);
  std::vector<double> out;
  out.reserve(data_.size());
  for (const auto& r : data_) out.push_back(r[k]);
  return out;
}

void TimeSeries::write_csv(std::ostream& os) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
  os << '\n';
  for (const auto& r : data_) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_double(r[i]);
    os << '\n';
  }
}

std::string TimeSeries::to_csv() const {
  std::ostringstream os;
  write_csv(os);
  return os.str();
}

}  // namespace dressed
