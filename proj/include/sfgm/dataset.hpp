#pragma once

// Sparse dataset ingestion in the LIBSVM text format:
//   <label> <index>:<value> <index>:<value> ...
// Indices are 1-based in files and 0-based in memory; '#' starts a comment.
// Parsing is strict (monotone indices, fully consumed numeric tokens) and all
// errors carry 1-based line numbers.

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/SparseCore>

#include "sfgm/oracle.hpp"

namespace sfgm {

struct Dataset {
  std::vector<std::vector<std::pair<int, double>>> rows;  // 0-based, strictly increasing
  std::vector<double> labels;
  int n_features = 0;  // 1 + max index seen
  std::string source;
};

Dataset parse_libsvm(std::istream& in, const std::string& source = "");
Dataset parse_libsvm_file(const std::string& path);

// Inverse of parse_libsvm up to shortest-round-trip float formatting:
// parse(serialize(ds)) reproduces ds exactly.
std::string serialize(const Dataset& ds);

struct DatasetStats {
  long m = 0;
  long n = 0;
  long nnz = 0;
  std::map<double, long> label_histogram;
  double max_abs_value = 0;
  bool empty = true;
};

DatasetStats dataset_stats(const Dataset& ds);

// Remaps binary labels onto {-1, +1} (smaller value -> -1). Returns true if
// a remap happened, in which case a warning is written to warn_stream (when
// given). Labels already in {-1, +1} are left alone; non-binary label sets
// throw ConfigError.
bool normalize_labels(Dataset& ds, std::ostream* warn_stream = nullptr);

Eigen::SparseMatrix<double, Eigen::RowMajor> to_sparse(const Dataset& ds);
MatX<double> to_dense(const Dataset& ds);

// Problem builders. Designs with m*n <= 10^7 are densified (faster matvecs
// at desk scale); larger logistic designs stay sparse.
QuadraticProblem<double> quadratic_from_dataset(const Dataset& ds, double tau);
LogisticProblem<double> logistic_from_dataset(const Dataset& ds, double tau);

}  // namespace sfgm
