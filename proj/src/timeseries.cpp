#include "windcast/timeseries.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "windcast/io_util.hpp"

namespace windcast::io {

namespace {

// Civil-calendar conversions for the proleptic Gregorian calendar
// (Howard Hinnant's algorithms).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp < 10 ? mp + 3 : mp - 9;
  y += m <= 2;
}

bool is_leap(std::int64_t y) {
  return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

unsigned days_in_month(std::int64_t y, unsigned m) {
  static const unsigned lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m == 2 && is_leap(y)) return 29;
  return lengths[m - 1];
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int digits_at(const std::string& s, std::size_t pos, int count) {
  int v = 0;
  for (int i = 0; i < count; ++i) {
    const char c = s[pos + i];
    if (c < '0' || c > '9') throw std::runtime_error("bad timestamp '" + s + "'");
    v = v * 10 + (c - '0');
  }
  return v;
}

struct Segment {
  std::size_t first_line = 0;  // file line of the first row, for diagnostics
  std::int64_t start = 0;
  std::vector<double> values;
  std::vector<GapRange> gaps;
};

}  // namespace

GapPolicy gap_policy_from_string(const std::string& name) {
  if (name == "error") return GapPolicy::error;
  if (name == "split-at-gap" || name == "split_at_gap") return GapPolicy::split_at_gap;
  throw std::invalid_argument("unknown gap policy '" + name +
                              "' (expected error or split-at-gap)");
}

std::int64_t parse_iso8601_utc(const std::string& text) {
  // YYYY-MM-DDTHH:MM:SSZ, fixed width
  if (text.size() != 20 || text[4] != '-' || text[7] != '-' || text[10] != 'T' ||
      text[13] != ':' || text[16] != ':' || text[19] != 'Z') {
    throw std::runtime_error("bad timestamp '" + text + "' (want YYYY-MM-DDTHH:MM:SSZ)");
  }
  const int year = digits_at(text, 0, 4);
  const int month = digits_at(text, 5, 2);
  const int day = digits_at(text, 8, 2);
  const int hour = digits_at(text, 11, 2);
  const int minute = digits_at(text, 14, 2);
  const int second = digits_at(text, 17, 2);
  if (month < 1 || month > 12) throw std::runtime_error("bad month in '" + text + "'");
  if (day < 1 || day > static_cast<int>(days_in_month(year, month))) {
    throw std::runtime_error("bad day in '" + text + "'");
  }
  if (hour > 23 || minute > 59 || second > 59) {
    throw std::runtime_error("bad time of day in '" + text + "'");
  }
  return days_from_civil(year, month, day) * 86400 + hour * 3600 + minute * 60 + second;
}

std::string format_iso8601_utc(std::int64_t epoch_seconds) {
  const std::int64_t days = floor_div(epoch_seconds, 86400);
  const std::int64_t sod = epoch_seconds - days * 86400;  // in [0, 86400)
  std::int64_t y;
  unsigned m, d;
  civil_from_days(days, y, m, d);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02u:%02u:%02uZ", static_cast<long long>(y),
                m, d, static_cast<unsigned>(sod / 3600), static_cast<unsigned>((sod / 60) % 60),
                static_cast<unsigned>(sod % 60));
  return buf;
}

std::int64_t next_month_start(std::int64_t epoch_seconds) {
  const std::int64_t days = floor_div(epoch_seconds, 86400);
  std::int64_t y;
  unsigned m, d;
  civil_from_days(days, y, m, d);
  if (m == 12) {
    ++y;
    m = 1;
  } else {
    ++m;
  }
  return days_from_civil(y, m, 1) * 86400;
}

TimeSeries load_csv(const std::string& path, std::int64_t interval, GapPolicy policy) {
  if (interval <= 0) throw std::invalid_argument("load_csv: interval must be positive");
  const std::string text = ioutil::read_text(path);
  if (text.empty()) throw std::runtime_error(path + ": empty file");

  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;

  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "timestamp,speed_ms") {
    throw std::runtime_error(path + " line 1: expected header 'timestamp,speed_ms'");
  }

  std::vector<Segment> segments;
  Segment cur;
  std::int64_t prev_time = 0;
  bool have_prev = false;
  double prev_value = 0.0;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error(path + " line " + std::to_string(lineno) + ": missing comma");
    }
    const std::string ctx = path + " line " + std::to_string(lineno);
    std::int64_t t;
    try {
      t = parse_iso8601_utc(line.substr(0, comma));
    } catch (const std::exception& e) {
      throw std::runtime_error(ctx + ": " + e.what());
    }
    const double v = ioutil::parse_double(line.substr(comma + 1), ctx);
    if (!std::isfinite(v)) throw std::runtime_error(ctx + ": non-finite speed");

    if (!have_prev) {
      cur.first_line = lineno;
      cur.start = t;
      cur.values.push_back(v);
      have_prev = true;
      prev_time = t;
      prev_value = v;
      continue;
    }

    const std::int64_t delta = t - prev_time;
    if (delta <= 0) {
      throw std::runtime_error(ctx + ": non-monotone timestamp");
    }
    if (delta % interval != 0) {
      throw std::runtime_error(ctx + ": timestamp off the " + std::to_string(interval) +
                               " s cadence");
    }
    const std::int64_t missing = delta / interval - 1;
    if (missing > 0 && missing <= 3) {
      const std::size_t first = cur.values.size();
      for (std::int64_t i = 1; i <= missing; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(missing + 1);
        cur.values.push_back(prev_value + frac * (v - prev_value));
      }
      cur.gaps.push_back({first, cur.values.size() - 1});
    } else if (missing > 3) {
      if (policy == GapPolicy::error) {
        throw std::runtime_error(ctx + ": gap of " + std::to_string(missing) +
                                 " samples exceeds the interpolation limit of 3");
      }
      segments.push_back(std::move(cur));
      cur = Segment{};
      cur.first_line = lineno;
      cur.start = t;
    }
    cur.values.push_back(v);
    prev_time = t;
    prev_value = v;
  }
  if (!have_prev) throw std::runtime_error(path + ": no data rows");
  segments.push_back(std::move(cur));

  std::size_t best = 0;
  for (std::size_t i = 1; i < segments.size(); ++i) {
    if (segments[i].values.size() > segments[best].values.size()) best = i;
  }

  TimeSeries ts;
  ts.start = segments[best].start;
  ts.interval = interval;
  ts.values = std::move(segments[best].values);
  ts.gaps = std::move(segments[best].gaps);
  return ts;
}

void write_csv(const TimeSeries& ts, const std::string& path) {
  std::string out;
  out.reserve(ts.values.size() * 32 + 32);
  out += "timestamp,speed_ms\n";
  for (std::size_t i = 0; i < ts.values.size(); ++i) {
    out += format_iso8601_utc(ts.time_at(i));
    out += ',';
    out += ioutil::fmt17(ts.values[i]);
    out += '\n';
  }
  ioutil::atomic_write_text(path, out);
}

}  // namespace windcast::io
