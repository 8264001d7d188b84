#include "epifir/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <utility>

namespace epifir {

namespace {

bool is_leap(int year) {
  return year % 4 == 0 && (year % 100 != 0 || year % 400 == 0);
}

int days_in_month(int year, int month) {
  static constexpr int kDays[12] = {31, 28, 31, 30, 31, 30,
                                    31, 31, 30, 31, 30, 31};
  if (month == 2 && is_leap(year)) return 29;
  return kDays[month - 1];
}

bool all_digits(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    const std::size_t comma = line.find(',', begin);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(begin));
      return fields;
    }
    fields.push_back(line.substr(begin, comma - begin));
    begin = comma + 1;
  }
}

double parse_count(std::string_view field, std::size_t line_no,
                   const char* column) {
  if (!all_digits(field)) {
    throw MalformedRow(line_no, std::string(column) +
                                    " count must be a nonnegative integer, "
                                    "got '" +
                                    std::string(field) + "'");
  }
  long long value = 0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw MalformedRow(line_no, std::string(column) + " count out of range");
  }
  return static_cast<double>(value);
}

}  // namespace

Date parse_date(const std::string& text) {
  const bool shaped = text.size() == 10 && text[4] == '-' && text[7] == '-' &&
                      all_digits(text.substr(0, 4)) &&
                      all_digits(text.substr(5, 2)) &&
                      all_digits(text.substr(8, 2));
  if (!shaped) {
    throw InvalidInput("date '" + text + "' is not in YYYY-MM-DD form");
  }
  Date date;
  date.year = std::stoi(text.substr(0, 4));
  date.month = std::stoi(text.substr(5, 2));
  date.day = std::stoi(text.substr(8, 2));
  if (date.month < 1 || date.month > 12 || date.day < 1 ||
      date.day > days_in_month(date.year, date.month)) {
    throw InvalidInput("date '" + text + "' is not a valid calendar day");
  }
  return date;
}

std::string to_string(const Date& date) {
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "%04d-%02d-%02d", date.year,
                date.month, date.day);
  return buffer;
}

// Gregorian <-> day-count conversions via the standard era/day-of-era
// decomposition (civil calendar algorithms in their usual form).
std::int64_t serial_day(const Date& date) {
  std::int64_t y = date.year;
  const int m = date.month;
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy =
      (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
      static_cast<unsigned>(date.day) - 1u;
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

Date from_serial_day(std::int64_t days) {
  std::int64_t z = days + 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe =
      (doe - doe / 1460u + doe / 36524u - doe / 146096u) / 365u;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365u * yoe + yoe / 4u - yoe / 100u);
  const unsigned mp = (5u * doy + 2u) / 153u;
  const unsigned d = doy - (153u * mp + 2u) / 5u + 1u;
  const unsigned m = mp < 10u ? mp + 3u : mp - 9u;
  return Date{static_cast<int>(y + (m <= 2u)), static_cast<int>(m),
              static_cast<int>(d)};
}

std::string to_string(InfectedConvention convention) {
  return convention == InfectedConvention::active_column ? "active_column"
                                                         : "derived_active";
}

MissingDates::MissingDates(std::vector<Date> missing)
    : Error([&missing] {
        std::string message =
            std::to_string(missing.size()) + " required day(s) missing:";
        const std::size_t shown = std::min<std::size_t>(missing.size(), 5);
        for (std::size_t k = 0; k < shown; ++k) {
          message += " " + to_string(missing[k]);
        }
        if (shown < missing.size()) message += " ...";
        return message;
      }()),
      dates(std::move(missing)) {}

CsvData parse_csv(std::istream& input) {
  CsvData data;
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(input, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    if (!saw_header) {
      if (line == "date,confirmed,recovered,deaths") {
        data.header_convention = InfectedConvention::derived_active;
      } else if (line == "date,infected,recovered,deaths") {
        data.header_convention = InfectedConvention::active_column;
      } else {
        throw MalformedRow(line_no, "unrecognized header '" + line + "'");
      }
      saw_header = true;
      continue;
    }

    const auto fields = split_fields(line);
    if (fields.size() != 4) {
      throw MalformedRow(line_no, "expected 4 fields, got " +
                                      std::to_string(fields.size()));
    }
    DailyRecord record;
    try {
      record.date = parse_date(std::string(fields[0]));
    } catch (const InvalidInput& e) {
      throw MalformedRow(line_no, e.what());
    }
    record.first_count = parse_count(fields[1], line_no, "infected/confirmed");
    record.recovered = parse_count(fields[2], line_no, "recovered");
    record.deaths = parse_count(fields[3], line_no, "deaths");
    data.records.push_back(record);
  }
  if (!saw_header) throw MalformedRow(1, "missing header row");

  std::stable_sort(data.records.begin(), data.records.end(),
                   [](const DailyRecord& a, const DailyRecord& b) {
                     return a.date < b.date;
                   });
  for (std::size_t k = 1; k < data.records.size(); ++k) {
    if (data.records[k].date == data.records[k - 1].date) {
      throw DuplicateDate(data.records[k].date);
    }
  }

  // The recovered/deaths columns are cumulative by definition; the first
  // column is cumulative only under the confirmed-total header. Dips are
  // reported, not repaired: upstream revisions happen and the caller
  // should see them.
  const bool first_cumulative =
      data.header_convention == InfectedConvention::derived_active;
  for (std::size_t k = 1; k < data.records.size(); ++k) {
    const DailyRecord& prev = data.records[k - 1];
    const DailyRecord& cur = data.records[k];
    const auto note = [&](const char* column) {
      data.warnings.push_back(
          {k, std::string(column) + " decreases at " + to_string(cur.date)});
    };
    if (first_cumulative && cur.first_count < prev.first_count) {
      note("confirmed");
    }
    if (cur.recovered < prev.recovered) note("recovered");
    if (cur.deaths < prev.deaths) note("deaths");
  }
  return data;
}

void check_convention(const CsvData& data, InfectedConvention requested) {
  if (data.header_convention != requested) {
    throw InvalidInput("requested convention " + to_string(requested) +
                       " but the file header implies " +
                       to_string(data.header_convention));
  }
}

std::pair<EpidemicSeries, EpidemicSeries> build_window(
    const std::vector<DailyRecord>& records, const WindowSpec& spec,
    double population, InfectedConvention convention) {
  if (!(population > 0.0) || !std::isfinite(population)) {
    throw InvalidInput("population must be positive and finite");
  }
  if (spec.horizon < 4) {
    throw InvalidInput("observation horizon must be at least 4 days");
  }
  if (spec.window < 1) {
    throw InvalidInput("prediction window must be at least one day");
  }
  if (records.empty()) throw InsufficientSpan("no records");

  const std::int64_t start = serial_day(spec.start_date);
  const std::int64_t last =
      start + static_cast<std::int64_t>(spec.horizon + spec.window) - 1;
  if (serial_day(records.front().date) > start ||
      serial_day(records.back().date) < last) {
    throw InsufficientSpan("records span " + to_string(records.front().date) +
                           " .. " + to_string(records.back().date) +
                           " but the window needs " +
                           to_string(spec.start_date) + " .. " +
                           to_string(from_serial_day(last)));
  }

  auto it = std::lower_bound(records.begin(), records.end(), start,
                             [](const DailyRecord& record, std::int64_t day) {
                               return serial_day(record.date) < day;
                             });
  std::vector<const DailyRecord*> picked;
  std::vector<Date> missing;
  for (std::int64_t want = start; want <= last; ++want) {
    if (it != records.end() && serial_day(it->date) == want) {
      picked.push_back(&*it);
      ++it;
    } else {
      missing.push_back(from_serial_day(want));
    }
  }
  if (!missing.empty()) throw MissingDates(std::move(missing));

  EpidemicSeries all;
  all.population = population;
  all.infected.reserve(picked.size());
  all.removed.reserve(picked.size());
  for (const DailyRecord* record : picked) {
    const double infected =
        convention == InfectedConvention::derived_active
            ? record->first_count - record->recovered - record->deaths
            : record->first_count;
    all.infected.push_back(infected);
    all.removed.push_back(record->recovered + record->deaths);
  }
  validate(all);

  EpidemicSeries known, truth;
  known.population = truth.population = population;
  known.infected.assign(all.infected.begin(),
                        all.infected.begin() + spec.horizon);
  known.removed.assign(all.removed.begin(),
                       all.removed.begin() + spec.horizon);
  truth.infected.assign(all.infected.begin() + spec.horizon,
                        all.infected.end());
  truth.removed.assign(all.removed.begin() + spec.horizon, all.removed.end());
  return {std::move(known), std::move(truth)};
}

}  // namespace epifir
