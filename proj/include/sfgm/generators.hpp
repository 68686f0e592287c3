#pragma once

#include <cmath>
#include <utility>

#include <Eigen/Core>

#include "sfgm/errors.hpp"
#include "sfgm/oracle.hpp"
#include "sfgm/rng.hpp"

namespace sfgm {

// Ill-conditioned separable quadratic with a known minimizer.
//
// The Hessian diagonal is drawn from the decades {1, 1e-1, ..., 10^-xi}; the
// first two entries are pinned to the extremes so L = 1 and mu = 10^-xi hold
// exactly for every seed.  The minimizer is the (uniform) center itself and
// the optimal value is zero, which keeps gap traces exact in double.
struct DiagonalQuadratic {
  QuadraticProblem<double> problem;
  GroundTruth<double> truth;
};

inline DiagonalQuadratic gen_diagonal_quadratic(int xi, Eigen::Index n, std::uint64_t seed) {
  if (xi < 0) throw ConfigError("decade exponent must be non-negative");
  if (n < 2) throw ConfigError("need at least two coordinates to pin both extremes");
  auto spectrum_rng = make_stream(seed, Stream::kSpectrum);
  Eigen::VectorXd diag(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto e = spectrum_rng.uniform_below(static_cast<std::uint64_t>(xi) + 1);
    diag[i] = std::pow(10.0, -static_cast<double>(e));
  }
  diag[0] = 1.0;
  diag[1] = std::pow(10.0, -static_cast<double>(xi));

  auto target_rng = make_stream(seed, Stream::kTargets);
  const Eigen::VectorXd center = random_uniform_vector<double>(n, target_rng);

  DiagonalQuadratic out{QuadraticProblem<double>::diagonal(diag, center),
                        GroundTruth<double>{center, 0.0, TruthMethod::closed_form, 0.0}};
  return out;
}

// Dense Gaussian least squares: a_ij ~ N(0,1), targets ~ N(0,1).
inline QuadraticProblem<double> gen_gaussian_ls(Eigen::Index m, Eigen::Index n,
                                                std::uint64_t seed, double tau) {
  auto design_rng = make_stream(seed, Stream::kSpectrum);
  const Eigen::MatrixXd a = random_normal_matrix<double>(m, n, design_rng);
  auto target_rng = make_stream(seed, Stream::kTargets);
  const Eigen::VectorXd y = random_normal_vector<double>(m, target_rng);
  return QuadraticProblem<double>(a, y, tau);
}

// Separable synthetic classification task: labels come from a random linear
// rule on the Gaussian design, so a logistic fit can drive the gradient to
// (near) zero and high-accuracy reference solves converge quickly.
inline LogisticProblem<double> gen_synthetic_logistic(Eigen::Index m, Eigen::Index n,
                                                      std::uint64_t seed, double tau) {
  auto design_rng = make_stream(seed, Stream::kSpectrum);
  const Eigen::MatrixXd a = random_normal_matrix<double>(m, n, design_rng);
  auto plane_rng = make_stream(seed, Stream::kPlane);
  const Eigen::VectorXd w = random_normal_vector<double>(n, plane_rng);
  Eigen::VectorXd labels(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double margin = a.row(i).dot(w);
    labels[i] = margin < 0.0 ? -1.0 : 1.0;
  }
  return LogisticProblem<double>(a, labels, tau);
}

}  // namespace sfgm
