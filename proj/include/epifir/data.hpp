#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "epifir/epidemic.hpp"
#include "epifir/errors.hpp"

namespace epifir {

/// Calendar date. Only valid Gregorian dates can be constructed through
/// parse_date; aggregate-initialized values are the caller's problem.
struct Date {
  int year = 0;
  int month = 0;  ///< 1..12
  int day = 0;    ///< 1..31

  auto operator<=>(const Date&) const = default;
};

/// Strict ISO-8601 (YYYY-MM-DD) parser. Throws InvalidInput on any
/// deviation, including calendar-invalid dates.
Date parse_date(const std::string& text);

std::string to_string(const Date& date);

/// Days since 1970-01-01 (negative before). Consecutive calendar days
/// map to consecutive integers, which is all the contiguity checks need.
std::int64_t serial_day(const Date& date);

/// serial_day's inverse.
Date from_serial_day(std::int64_t days);

/// One CSV row. The first count column is either the cumulative
/// confirmed total or the currently-infected stock, depending on the
/// file's header; `recovered` and `deaths` are always cumulative.
struct DailyRecord {
  Date date;
  double first_count = 0.0;
  double recovered = 0.0;
  double deaths = 0.0;
};

/// How the first count column of the CSV is to be read.
enum class InfectedConvention {
  /// Header `date,infected,recovered,deaths`: the column is the
  /// currently-infected stock, used as I(t) directly.
  active_column,
  /// Header `date,confirmed,recovered,deaths`: the column is the
  /// cumulative confirmed total; I(t) = confirmed - recovered - deaths.
  derived_active,
};

std::string to_string(InfectedConvention convention);

/// Parsed file: sorted records, the header's convention, and warnings
/// about decreasing cumulative columns.
struct CsvData {
  std::vector<DailyRecord> records;
  InfectedConvention header_convention = InfectedConvention::derived_active;
  std::vector<Warning> warnings;  ///< index = position in `records`
};

/// A row that could not be parsed; `line` is 1-based.
struct MalformedRow : Error {
  MalformedRow(std::size_t line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason), line(line) {}
  std::size_t line;
};

/// The same date appears twice.
struct DuplicateDate : Error {
  explicit DuplicateDate(const Date& date)
      : Error("duplicate date " + to_string(date)), date(date) {}
  Date date;
};

/// Days required by a window are absent from the record range.
struct MissingDates : Error {
  explicit MissingDates(std::vector<Date> dates);
  std::vector<Date> dates;
};

/// The records do not even span the requested window.
struct InsufficientSpan : Error {
  using Error::Error;
};

/// Parses a whole CSV stream. Expects a header row naming the
/// convention, then one record per line: ISO date and three nonnegative
/// integer counts. Records come back sorted by date. Decreasing
/// cumulative columns produce warnings; structural problems throw
/// MalformedRow (with 1-based line number) or DuplicateDate.
CsvData parse_csv(std::istream& input);

/// Throws InvalidInput when the requested convention contradicts the
/// header the file actually had.
void check_convention(const CsvData& data, InfectedConvention requested);

/// Which days to analyze: day 0 is start_date, days 0..T-1 are
/// observed, days T..T+W-1 are held-out truth.
struct WindowSpec {
  Date start_date;
  std::size_t horizon = 45;  ///< T, at least 4
  std::size_t window = 7;    ///< W, at least 1
};

/// Cuts the known/truth series for one window out of parsed records.
/// I(t) follows the convention; R(t) = recovered + deaths always.
/// Requires strictly contiguous daily records across the whole span:
/// missing interior days throw MissingDates, a range that does not even
/// reach the window throws InsufficientSpan. Count/population
/// inconsistencies surface as InvalidInput via series validation.
std::pair<EpidemicSeries, EpidemicSeries> build_window(
    const std::vector<DailyRecord>& records, const WindowSpec& spec,
    double population, InfectedConvention convention);

}  // namespace epifir
