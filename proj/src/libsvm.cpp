#include "sfgm/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>

#include "sfgm/csv.hpp"
#include "sfgm/errors.hpp"

namespace sfgm {

namespace {

bool parse_full_double(std::string_view token, double& out) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  // std::from_chars rejects a leading '+', which LIBSVM labels commonly carry.
  if (!token.empty() && token.front() == '+') ++begin;
  if (begin == end) return false;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end;
}

bool parse_full_int(std::string_view token, long& out) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  if (!token.empty() && token.front() == '+') ++begin;
  if (begin == end) return false;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end;
}

}  // namespace

Dataset parse_libsvm(std::istream& in, const std::string& source) {
  Dataset ds;
  ds.source = source;
  std::string line;
  long line_no = 0;
  int max_index = -1;

  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);

    std::istringstream tokens(line);
    std::string token;
    if (!(tokens >> token)) continue;  // blank or comment-only line

    double label = 0;
    if (!parse_full_double(token, label))
      throw ParseError(line_no, "malformed label '" + token + "'");

    std::vector<std::pair<int, double>> row;
    int prev_index = 0;  // file indices are 1-based, so 0 means "none yet"
    while (tokens >> token) {
      const auto colon = token.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == token.size())
        throw ParseError(line_no, "malformed feature token '" + token + "'");
      long index = 0;
      if (!parse_full_int(std::string_view(token).substr(0, colon), index))
        throw ParseError(line_no, "malformed feature index in '" + token + "'");
      if (index == 0)
        throw ParseError(line_no, "feature index 0 (LIBSVM indices are 1-based)");
      if (index < 0) throw ParseError(line_no, "negative feature index");
      if (index <= prev_index)
        throw ParseError(line_no, "feature indices must be strictly increasing (" +
                                      std::to_string(index) + " after " +
                                      std::to_string(prev_index) + ")");
      double value = 0;
      if (!parse_full_double(std::string_view(token).substr(colon + 1), value))
        throw ParseError(line_no, "malformed feature value in '" + token + "'");
      prev_index = static_cast<int>(index);
      row.emplace_back(static_cast<int>(index) - 1, value);
      max_index = std::max(max_index, static_cast<int>(index) - 1);
    }
    ds.rows.push_back(std::move(row));
    ds.labels.push_back(label);
  }

  ds.n_features = max_index + 1;
  return ds;
}

Dataset parse_libsvm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset file: " + path);
  return parse_libsvm(in, path);
}

std::string serialize(const Dataset& ds) {
  std::string out;
  for (std::size_t i = 0; i < ds.rows.size(); ++i) {
    out += format_double(ds.labels[i]);
    for (const auto& [index, value] : ds.rows[i]) {
      out += ' ';
      out += std::to_string(index + 1);
      out += ':';
      out += format_double(value);
    }
    out += '\n';
  }
  return out;
}

DatasetStats dataset_stats(const Dataset& ds) {
  DatasetStats stats;
  stats.m = static_cast<long>(ds.rows.size());
  stats.n = ds.n_features;
  stats.empty = ds.rows.empty();
  for (std::size_t i = 0; i < ds.rows.size(); ++i) {
    stats.label_histogram[ds.labels[i]] += 1;
    for (const auto& [index, value] : ds.rows[i]) {
      stats.nnz += 1;
      stats.max_abs_value = std::max(stats.max_abs_value, std::abs(value));
    }
  }
  return stats;
}

bool normalize_labels(Dataset& ds, std::ostream* warn_stream) {
  std::map<double, long> histogram;
  for (double label : ds.labels) histogram[label] += 1;
  if (histogram.empty()) return false;

  bool canonical = true;
  for (const auto& [label, count] : histogram)
    if (label != -1.0 && label != 1.0) canonical = false;
  if (canonical) return false;

  if (histogram.size() != 2)
    throw ConfigError("cannot normalize labels: expected two distinct classes, found " +
                      std::to_string(histogram.size()));
  const double low = histogram.begin()->first;
  const double high = histogram.rbegin()->first;
  for (double& label : ds.labels) label = (label == low) ? -1.0 : 1.0;
  if (warn_stream)
    *warn_stream << "warning: remapped labels {" << low << ", " << high
                 << "} to {-1, +1}\n";
  return true;
}

Eigen::SparseMatrix<double, Eigen::RowMajor> to_sparse(const Dataset& ds) {
  Eigen::SparseMatrix<double, Eigen::RowMajor> A(static_cast<Eigen::Index>(ds.rows.size()),
                                                 ds.n_features);
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t i = 0; i < ds.rows.size(); ++i)
    for (const auto& [index, value] : ds.rows[i])
      triplets.emplace_back(static_cast<int>(i), index, value);
  A.setFromTriplets(triplets.begin(), triplets.end());
  A.makeCompressed();
  return A;
}

MatX<double> to_dense(const Dataset& ds) {
  MatX<double> A = MatX<double>::Zero(static_cast<Eigen::Index>(ds.rows.size()), ds.n_features);
  for (std::size_t i = 0; i < ds.rows.size(); ++i)
    for (const auto& [index, value] : ds.rows[i]) A(static_cast<Eigen::Index>(i), index) = value;
  return A;
}

QuadraticProblem<double> quadratic_from_dataset(const Dataset& ds, double tau) {
  const long cells = static_cast<long>(ds.rows.size()) * ds.n_features;
  if (cells > 10'000'000)
    throw ConfigError("dataset too large for the dense least-squares builder");
  VecX<double> y(static_cast<Eigen::Index>(ds.labels.size()));
  for (std::size_t i = 0; i < ds.labels.size(); ++i) y[static_cast<Eigen::Index>(i)] = ds.labels[i];
  return QuadraticProblem<double>(to_dense(ds), std::move(y), tau);
}

LogisticProblem<double> logistic_from_dataset(const Dataset& ds, double tau) {
  VecX<double> b(static_cast<Eigen::Index>(ds.labels.size()));
  for (std::size_t i = 0; i < ds.labels.size(); ++i) b[static_cast<Eigen::Index>(i)] = ds.labels[i];
  const long cells = static_cast<long>(ds.rows.size()) * ds.n_features;
  if (cells <= 10'000'000)
    return LogisticProblem<double>(to_dense(ds), std::move(b), tau);
  return LogisticProblem<double>(to_sparse(ds), std::move(b), tau);
}

}  // namespace sfgm
