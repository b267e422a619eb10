#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace windcast::io {

// Inclusive index range of samples that were filled by interpolation.
struct GapRange {
  std::size_t first = 0;
  std::size_t last = 0;
};

struct TimeSeries {
  std::int64_t start = 0;  // epoch seconds, UTC
  std::int64_t interval = 600;
  std::vector<double> values;
  std::vector<GapRange> gaps;

  std::int64_t time_at(std::size_t index) const {
    return start + interval * static_cast<std::int64_t>(index);
  }
  std::size_t size() const { return values.size(); }
};

enum class GapPolicy { error, split_at_gap };

GapPolicy gap_policy_from_string(const std::string& name);

// Strict "YYYY-MM-DDTHH:MM:SSZ" to epoch seconds and back.
std::int64_t parse_iso8601_utc(const std::string& text);
std::string format_iso8601_utc(std::int64_t epoch_seconds);

// Epoch seconds of the first day of the month following the instant's month.
std::int64_t next_month_start(std::int64_t epoch_seconds);

// Reads `timestamp,speed_ms` rows at the declared cadence. Runs of up to 3
// missing samples are filled by linear interpolation and recorded in
// `gaps`; a longer run is an error or, under split_at_gap, splits the file
// into segments of which the longest (earliest on ties) is returned.
TimeSeries load_csv(const std::string& path, std::int64_t interval, GapPolicy policy);

void write_csv(const TimeSeries& ts, const std::string& path);

}  // namespace windcast::io
