#include "sfgm/csv.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "sfgm/errors.hpp"

namespace sfgm {

std::string format_double(double value) {
  std::array<char, 64> buffer;
  const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), ptr);
}

namespace {

constexpr const char* kTraceHeader = "k,f,gap,grad_norm,alpha,gamma,lambda,dist_to_opt,wall_ns";
constexpr const char* kCertHeader = "k,lambda,lemma4_exp,lemma4_poly,thm1_bound,gap,violated";

double parse_csv_double(const std::string& token, long line_no) {
  if (token == "nan" || token == "-nan") return std::numeric_limits<double>::quiet_NaN();
  if (token == "inf") return std::numeric_limits<double>::infinity();
  if (token == "-inf") return -std::numeric_limits<double>::infinity();
  double out = 0;
  const char* begin = token.data();
  auto [ptr, ec] = std::from_chars(begin, begin + token.size(), out);
  if (ec != std::errc{} || ptr != begin + token.size())
    throw ParseError(line_no, "malformed numeric field '" + token + "'");
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

void write_trace_csv(std::ostream& out, const std::vector<IterationRecord>& trace) {
  out << kTraceHeader << '\n';
  for (const auto& rec : trace) {
    out << rec.k << ',' << format_double(rec.f) << ',' << format_double(rec.gap) << ','
        << format_double(rec.grad_norm) << ',' << format_double(rec.alpha) << ','
        << format_double(rec.gamma) << ',' << format_double(rec.lambda) << ','
        << format_double(rec.dist_to_opt) << ',' << rec.wall_ns << '\n';
  }
}

void write_certification_csv(std::ostream& out, const std::vector<BoundReport>& reports) {
  out << kCertHeader << '\n';
  for (const auto& report : reports) {
    out << report.k << ',' << format_double(report.lambda) << ','
        << format_double(report.lemma4_exp_bound) << ','
        << format_double(report.lemma4_poly_bound) << ','
        << format_double(report.theorem1_bound) << ',' << format_double(report.observed_gap)
        << ',' << (report.violated ? 1 : 0) << '\n';
  }
}

std::string trace_csv(const std::vector<IterationRecord>& trace) {
  std::ostringstream out;
  write_trace_csv(out, trace);
  return out.str();
}

std::string certification_csv(const std::vector<BoundReport>& reports) {
  std::ostringstream out;
  write_certification_csv(out, reports);
  return out.str();
}

std::vector<IterationRecord> read_trace_csv(std::istream& in) {
  std::vector<IterationRecord> trace;
  std::string line;
  long line_no = 0;
  if (!std::getline(in, line)) throw ParseError(1, "empty trace file (header expected)");
  ++line_no;
  if (line != kTraceHeader)
    throw ParseError(1, "unexpected trace header '" + line + "'");
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 9)
      throw ParseError(line_no, "expected 9 fields, found " + std::to_string(fields.size()));
    IterationRecord rec;
    rec.k = static_cast<long>(parse_csv_double(fields[0], line_no));
    rec.f = parse_csv_double(fields[1], line_no);
    rec.gap = parse_csv_double(fields[2], line_no);
    rec.grad_norm = parse_csv_double(fields[3], line_no);
    rec.alpha = parse_csv_double(fields[4], line_no);
    rec.gamma = parse_csv_double(fields[5], line_no);
    rec.lambda = parse_csv_double(fields[6], line_no);
    rec.dist_to_opt = parse_csv_double(fields[7], line_no);
    rec.wall_ns = static_cast<std::uint64_t>(parse_csv_double(fields[8], line_no));
    trace.push_back(rec);
  }
  return trace;
}

}  // namespace sfgm
