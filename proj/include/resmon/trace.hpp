#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace resmon {

/// Discrete time index, in integer steps.
using Step = std::int64_t;

enum class TraceErrorKind {
  malformed,        // header or row does not have the expected shape
  non_contiguous,   // index column is not 0, 1, 2, ...
  non_finite,       // NaN / inf sample
  duplicate_channel,
  too_short,        // fewer than 2 rows
  out_of_range,     // time index outside [0, length]
  unknown_channel,
  bad_argument,
};

class TraceError : public std::runtime_error {
 public:
  TraceError(TraceErrorKind kind, const std::string& message, std::size_t row = 0,
             std::size_t column = 0)
      : std::runtime_error(message), kind_(kind), row_(row), column_(column) {}

  TraceErrorKind kind() const noexcept { return kind_; }
  /// 1-based data row of the offending CSV line (0 for the header or when not applicable).
  std::size_t row() const noexcept { return row_; }
  /// 1-based CSV column (0 when not applicable).
  std::size_t column() const noexcept { return column_; }

 private:
  TraceErrorKind kind_;
  std::size_t row_;
  std::size_t column_;
};

/// Finite multi-channel discrete-time signal with samples at steps 0..length().
///
/// Immutable once constructed. `dt` is reporting metadata only; every
/// semantic operation works on integer steps.
class Signal {
 public:
  /// `samples` is row-major: one row per step, one column per channel.
  Signal(std::vector<std::string> channels, std::vector<double> samples, double dt = 1.0);

  const std::vector<std::string>& channels() const noexcept { return channels_; }
  std::size_t channel_count() const noexcept { return channels_.size(); }
  /// Last time index N; the time domain is [0, N].
  Step length() const noexcept { return static_cast<Step>(rows_) - 1; }
  std::size_t rows() const noexcept { return rows_; }
  double dt() const noexcept { return dt_; }

  /// Column index of `name`; throws TraceError(unknown_channel).
  std::size_t channel_index(const std::string& name) const;
  bool has_channel(const std::string& name) const noexcept;

  double value_at(const std::string& channel, Step t) const;
  double value_at(std::size_t channel, Step t) const;

  /// Sample at `t`, holding the terminal value for t > length().
  double held_value(std::size_t channel, Step t) const noexcept {
    const auto row = t > length() ? rows_ - 1 : static_cast<std::size_t>(t);
    return samples_[row * channels_.size() + channel];
  }

  std::span<const double> row(Step t) const;
  const std::vector<double>& samples() const noexcept { return samples_; }

  friend bool operator==(const Signal& a, const Signal& b) {
    return a.channels_ == b.channels_ && a.samples_ == b.samples_ && a.dt_ == b.dt_;
  }

 private:
  std::vector<std::string> channels_;
  std::vector<double> samples_;
  std::size_t rows_ = 0;
  double dt_ = 1.0;
};

/// Reads `t,<name1>,<name2>,...` CSV text. The `t` column must count 0,1,2,...
Signal load_trace(std::istream& source, double dt = 1.0);
Signal load_trace_file(const std::string& path, double dt = 1.0);

/// Writes the CSV format read by load_trace. Values use the shortest text
/// that reads back to the same double.
void emit_trace(const Signal& signal, std::ostream& sink);

/// Extends the signal to `new_length` by repeating its terminal sample.
Signal extend(const Signal& signal, Step new_length);

}  // namespace resmon
