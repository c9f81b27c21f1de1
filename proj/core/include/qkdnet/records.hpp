#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkdnet/stats.hpp"

namespace qkdnet {

/// Malformed input; line is 1-based within the source stream.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input that violates a domain invariant.
class RecordValidationError : public std::runtime_error {
 public:
  RecordValidationError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct RouteRecord {
  std::string route;
  ObservedStatistics stats;
};

/// Measurement-record CSV schema (one row per link, scientific notation ok):
///
///   route,n_mu,q_mu,e_mu,n_nu,q_nu,e_nu,n_vac,q_vac,e_vac,duration_s
///
/// The vacuum error column is carried for completeness; it does not enter
/// the rate estimate.
extern const char* const kMeasurementCsvHeader;

std::vector<RouteRecord> load_measurement_records(
    std::istream& in, std::vector<std::string>* warnings = nullptr);
std::vector<RouteRecord> load_measurement_records(
    const std::string& path, std::vector<std::string>* warnings = nullptr);

void save_measurement_records(std::ostream& out,
                              const std::vector<RouteRecord>& records);

}  // namespace qkdnet
