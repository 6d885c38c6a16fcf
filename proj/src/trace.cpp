#include "resmon/trace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <unordered_set>

#include <fmt/core.h>

namespace resmon {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

bool blank(std::string_view line) { return trim(line).empty(); }

}  // namespace

Signal::Signal(std::vector<std::string> channels, std::vector<double> samples, double dt)
    : channels_(std::move(channels)), samples_(std::move(samples)), dt_(dt) {
  if (channels_.empty()) {
    throw TraceError(TraceErrorKind::malformed, "signal needs at least one channel");
  }
  std::unordered_set<std::string> seen;
  for (std::size_t c = 0; c < channels_.size(); ++c) {
    if (channels_[c].empty()) {
      throw TraceError(TraceErrorKind::malformed, fmt::format("channel {} has an empty name", c + 1),
                       0, c + 1);
    }
    if (!seen.insert(channels_[c]).second) {
      throw TraceError(TraceErrorKind::duplicate_channel,
                       fmt::format("duplicate channel name '{}'", channels_[c]), 0, c + 1);
    }
  }
  if (samples_.size() % channels_.size() != 0) {
    throw TraceError(TraceErrorKind::malformed, "sample count is not a multiple of channel count");
  }
  rows_ = samples_.size() / channels_.size();
  if (rows_ < 2) {
    throw TraceError(TraceErrorKind::too_short,
                     fmt::format("signal needs at least 2 rows, got {}", rows_));
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i])) {
      throw TraceError(TraceErrorKind::non_finite,
                       fmt::format("non-finite sample at step {}, channel '{}'",
                                   i / channels_.size(), channels_[i % channels_.size()]),
                       i / channels_.size(), i % channels_.size() + 1);
    }
  }
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
    throw TraceError(TraceErrorKind::bad_argument, "dt must be a positive finite number");
  }
}

std::size_t Signal::channel_index(const std::string& name) const {
  const auto it = std::find(channels_.begin(), channels_.end(), name);
  if (it == channels_.end()) {
    throw TraceError(TraceErrorKind::unknown_channel, fmt::format("unknown channel '{}'", name));
  }
  return static_cast<std::size_t>(it - channels_.begin());
}

bool Signal::has_channel(const std::string& name) const noexcept {
  return std::find(channels_.begin(), channels_.end(), name) != channels_.end();
}

double Signal::value_at(const std::string& channel, Step t) const {
  return value_at(channel_index(channel), t);
}

double Signal::value_at(std::size_t channel, Step t) const {
  if (t < 0 || t > length()) {
    throw TraceError(TraceErrorKind::out_of_range,
                     fmt::format("time {} outside signal domain [0, {}]", t, length()));
  }
  if (channel >= channels_.size()) {
    throw TraceError(TraceErrorKind::unknown_channel, fmt::format("no channel #{}", channel));
  }
  return samples_[static_cast<std::size_t>(t) * channels_.size() + channel];
}

std::span<const double> Signal::row(Step t) const {
  if (t < 0 || t > length()) {
    throw TraceError(TraceErrorKind::out_of_range,
                     fmt::format("time {} outside signal domain [0, {}]", t, length()));
  }
  return {samples_.data() + static_cast<std::size_t>(t) * channels_.size(), channels_.size()};
}

Signal load_trace(std::istream& source, double dt) {
  std::string line;
  std::size_t line_no = 0;

  // Header.
  bool have_header = false;
  while (std::getline(source, line)) {
    ++line_no;
    if (!blank(line)) {
      have_header = true;
      break;
    }
  }
  if (!have_header) throw TraceError(TraceErrorKind::malformed, "empty CSV input", 1, 0);

  const auto header = split_fields(line);
  if (header.size() < 2 || header[0] != "t") {
    throw TraceError(TraceErrorKind::malformed,
                     fmt::format("line {}: header must be 't,<channel>,...'", line_no), 0, 1);
  }
  std::vector<std::string> channels;
  std::unordered_set<std::string_view> seen;
  for (std::size_t c = 1; c < header.size(); ++c) {
    if (header[c].empty()) {
      throw TraceError(TraceErrorKind::malformed,
                       fmt::format("line {}, column {}: empty channel name", line_no, c + 1),
                       0, c + 1);
    }
    if (!seen.insert(header[c]).second) {
      throw TraceError(TraceErrorKind::duplicate_channel,
                       fmt::format("line {}, column {}: duplicate channel name '{}'", line_no,
                                   c + 1, header[c]),
                       0, c + 1);
    }
    channels.emplace_back(header[c]);
  }

  std::vector<double> samples;
  Step expected_index = 0;
  std::size_t data_row = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (blank(line)) continue;
    ++data_row;
    const auto fields = split_fields(line);
    if (fields.size() != header.size()) {
      throw TraceError(TraceErrorKind::malformed,
                       fmt::format("row {}: expected {} fields, got {}", data_row, header.size(),
                                   fields.size()),
                       data_row, 0);
    }

    Step index = 0;
    const auto idx = fields[0];
    const auto [iend, iec] = std::from_chars(idx.data(), idx.data() + idx.size(), index);
    if (iec != std::errc{} || iend != idx.data() + idx.size()) {
      throw TraceError(TraceErrorKind::malformed,
                       fmt::format("row {}, column 1: '{}' is not an integer index", data_row, idx),
                       data_row, 1);
    }
    if (index != expected_index) {
      throw TraceError(TraceErrorKind::non_contiguous,
                       fmt::format("row {}: non-contiguous index {} (expected {})", data_row, index,
                                   expected_index),
                       data_row, 1);
    }
    ++expected_index;

    for (std::size_t c = 1; c < fields.size(); ++c) {
      const auto text = fields[c];
      double value = 0.0;
      const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
        throw TraceError(TraceErrorKind::malformed,
                         fmt::format("row {}, column {}: '{}' is not a number", data_row, c + 1,
                                     text),
                         data_row, c + 1);
      }
      if (!std::isfinite(value)) {
        throw TraceError(TraceErrorKind::non_finite,
                         fmt::format("row {}, column {}: non-finite value '{}'", data_row, c + 1,
                                     text),
                         data_row, c + 1);
      }
      samples.push_back(value);
    }
  }

  if (expected_index < 2) {
    throw TraceError(TraceErrorKind::too_short,
                     fmt::format("trace needs at least 2 rows, got {}", expected_index), data_row,
                     0);
  }
  return Signal(std::move(channels), std::move(samples), dt);
}

Signal load_trace_file(const std::string& path, double dt) {
  std::ifstream in(path);
  if (!in) throw TraceError(TraceErrorKind::bad_argument, fmt::format("cannot open '{}'", path));
  return load_trace(in, dt);
}

Signal extend(const Signal& signal, Step new_length) {
  if (new_length < signal.length()) {
    throw TraceError(TraceErrorKind::bad_argument,
                     fmt::format("cannot extend a length-{} signal to length {}", signal.length(),
                                 new_length));
  }
  if (new_length == signal.length()) return signal;
  std::vector<double> samples = signal.samples();
  const auto last = signal.row(signal.length());
  samples.reserve(static_cast<std::size_t>(new_length + 1) * signal.channel_count());
  for (Step t = signal.length() + 1; t <= new_length; ++t) {
    samples.insert(samples.end(), last.begin(), last.end());
  }
  return Signal(signal.channels(), std::move(samples), signal.dt());
}

void emit_trace(const Signal& signal, std::ostream& sink) {
  sink << 't';
  for (const auto& name : signal.channels()) sink << ',' << name;
  sink << '\n';
  for (Step t = 0; t <= signal.length(); ++t) {
    sink << t;
    for (const double v : signal.row(t)) sink << ',' << fmt::format("{}", v);
    sink << '\n';
  }
}

}  // namespace resmon
