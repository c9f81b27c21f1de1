#include "qkdnet/records.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace qkdnet {

const char* const kMeasurementCsvHeader =
    "route,n_mu,q_mu,e_mu,n_nu,q_nu,e_nu,n_vac,q_vac,e_vac,duration_s";

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_double(const std::string& field, std::size_t line,
                    const char* name) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(line, std::string("cannot parse ") + name + " from '" +
                               field + "'");
  }
  return value;
}

}  // namespace

std::vector<RouteRecord> load_measurement_records(
    std::istream& in, std::vector<std::string>* warnings) {
  std::vector<RouteRecord> records;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string trimmed = trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;

    if (!header_seen) {
      if (trimmed != kMeasurementCsvHeader) {
        throw ParseError(line_no, std::string("expected header '") +
                                      kMeasurementCsvHeader + "'");
      }
      header_seen = true;
      continue;
    }

    const auto fields = split_csv(trimmed);
    if (fields.size() != 11) {
      throw ParseError(line_no, "expected 11 fields, got " +
                                    std::to_string(fields.size()));
    }
    if (fields[0].empty()) throw ParseError(line_no, "empty route label");

    RouteRecord rec;
    rec.route = fields[0];
    rec.stats.signal.pulses = parse_double(fields[1], line_no, "n_mu");
    rec.stats.signal.gain = parse_double(fields[2], line_no, "q_mu");
    rec.stats.signal.qber = parse_double(fields[3], line_no, "e_mu");
    rec.stats.decoy.pulses = parse_double(fields[4], line_no, "n_nu");
    rec.stats.decoy.gain = parse_double(fields[5], line_no, "q_nu");
    rec.stats.decoy.qber = parse_double(fields[6], line_no, "e_nu");
    rec.stats.vacuum.pulses = parse_double(fields[7], line_no, "n_vac");
    rec.stats.vacuum.gain = parse_double(fields[8], line_no, "q_vac");
    rec.stats.vacuum.qber = parse_double(fields[9], line_no, "e_vac");
    rec.stats.duration_s = parse_double(fields[10], line_no, "duration_s");

    try {
      const auto row_warnings = rec.stats.validate();
      if (warnings) {
        for (const auto& w : row_warnings) {
          warnings->push_back("line " + std::to_string(line_no) + " (" +
                              rec.route + "): " + w);
        }
      }
    } catch (const std::invalid_argument& e) {
      throw RecordValidationError(line_no, e.what());
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<RouteRecord> load_measurement_records(
    const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open records file: " + path);
  return load_measurement_records(in, warnings);
}

void save_measurement_records(std::ostream& out,
                              const std::vector<RouteRecord>& records) {
  out << kMeasurementCsvHeader << '\n';
  out.precision(10);
  for (const auto& r : records) {
    out << r.route << ',' << r.stats.signal.pulses << ',' << r.stats.signal.gain
        << ',' << r.stats.signal.qber << ',' << r.stats.decoy.pulses << ','
        << r.stats.decoy.gain << ',' << r.stats.decoy.qber << ','
        << r.stats.vacuum.pulses << ',' << r.stats.vacuum.gain << ','
        << r.stats.vacuum.qber << ',' << r.stats.duration_s << '\n';
  }
}

}  // namespace qkdnet
