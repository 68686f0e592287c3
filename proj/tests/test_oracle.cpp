#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include <sfgm/generators.hpp>
#include <sfgm/ground_truth.hpp>
#include <sfgm/oracle.hpp>
#include <sfgm/rng.hpp>

using namespace sfgm;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

namespace {

Vec point_in_ball(double radius, Eigen::Index n, Xoshiro256pp& rng) {
  Vec g = random_normal_vector<double>(n, rng);
  const double norm = g.norm();
  if (norm == 0.0) return g;
  return g * (radius * rng.uniform() / norm);
}

}  // namespace

TEST_CASE("scalar least squares: value and gradient of x^2/2") {
  Mat A(1, 1);
  A << 1.0;
  Vec y(1);
  y << 0.0;
  QuadraticProblem<double> p(A, y, 0.0);
  Vec x(1);
  x << 2.0;
  CHECK(p.value(x) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(p.gradient(x)[0] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("diagonal design least squares value") {
  Vec a(2), y(2);
  a << 1.0, 0.1;
  y << 0.0, 0.0;
  auto p = QuadraticProblem<double>::diagonal_design(a, y);
  Vec x(2);
  x << 1.0, 1.0;
  // (1/4)((1*1)^2 + (0.1*1)^2) = 0.2525
  CHECK(p.value(x) == doctest::Approx(0.2525).epsilon(1e-14));
}

TEST_CASE("logistic value and gradient at canonical points") {
  SUBCASE("zero feature row gives log 2 regardless of x") {
    Mat A(1, 1);
    A << 0.0;
    Vec b(1);
    b << 1.0;
    LogisticProblem<double> p(A, b, 0.0);
    Vec x(1);
    x << 5.0;
    CHECK(p.value(x) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  }
  SUBCASE("unit sample at the origin") {
    Mat A(1, 1);
    A << 1.0;
    Vec b(1);
    b << 1.0;
    LogisticProblem<double> p(A, b, 0.0);
    Vec x = Vec::Zero(1);
    CHECK(p.gradient(x)[0] == doctest::Approx(-0.5).epsilon(1e-14));
  }
}

TEST_CASE("smoothness and strong convexity inequalities on random pairs") {
  auto rng = make_stream(17, Stream::kFuzz);
  const Eigen::Index n = 8;

  auto check_pairs = [&](const ObjectiveOracle<double>& p) {
    const double L = p.lipschitz();
    const double mu = p.strong_convexity();
    for (int trial = 0; trial < 1000; ++trial) {
      const Vec x = point_in_ball(10.0, n, rng);
      const Vec y = point_in_ball(10.0, n, rng);
      const double fx = p.value(x);
      const double fy = p.value(y);
      const Vec gy = p.gradient(y);
      const double linear = fy + gy.dot(x - y);
      const double dist2 = (x - y).squaredNorm();
      const double slack = 1e-9 * (1.0 + std::abs(fx));
      CHECK(fx - linear <= L / 2.0 * dist2 + slack);
      CHECK(fx - linear >= mu / 2.0 * dist2 - slack);
    }
  };

  SUBCASE("dense ridge least squares") {
    auto design_rng = make_stream(3, Stream::kSpectrum);
    const Mat A = random_normal_matrix<double>(12, n, design_rng);
    const Vec y = random_normal_vector<double>(12, design_rng);
    check_pairs(QuadraticProblem<double>(A, y, 0.05));
  }
  SUBCASE("diagonal quadratic") {
    auto d_rng = make_stream(4, Stream::kSpectrum);
    Vec d = random_uniform_vector<double>(n, d_rng).array() + 0.1;
    Vec c = random_normal_vector<double>(n, d_rng);
    check_pairs(QuadraticProblem<double>::diagonal(d, c, 0.2));
  }
  SUBCASE("ridge logistic") { check_pairs(gen_synthetic_logistic(12, n, 5, 0.05)); }
}

TEST_CASE("analytic gradients match central finite differences") {
  auto rng = make_stream(23, Stream::kFuzz);

  SUBCASE("quadratic to 1e-6 at 100 points") {
    auto design_rng = make_stream(6, Stream::kSpectrum);
    const Mat A = random_normal_matrix<double>(10, 6, design_rng);
    const Vec y = random_normal_vector<double>(10, design_rng);
    QuadraticProblem<double> p(A, y, 0.1);
    for (int i = 0; i < 100; ++i)
      CHECK(check_gradient(p, point_in_ball(3.0, 6, rng), 1e-6) <= 1e-6);
  }
  SUBCASE("logistic to 1e-5 at 100 points in the unit ball") {
    auto p = gen_synthetic_logistic(15, 6, 7, 0.01);
    for (int i = 0; i < 100; ++i)
      CHECK(check_gradient(p, point_in_ball(1.0, 6, rng), 1e-6) <= 1e-5);
  }
  SUBCASE("zero-dimensional problems report zero error") {
    QuadraticProblem<double> p(Mat(0, 0), Vec(0), 0.0);
    CHECK(check_gradient(p, Vec(0), 1e-6) == 0.0);
  }
}

TEST_CASE("oracles reject malformed input") {
  Mat A(2, 2);
  A << 1, 0, 0, 1;
  Vec y(2);
  y << 1, 2;
  QuadraticProblem<double> p(A, y, 0.0);

  Vec wrong(3);
  wrong.setZero();
  CHECK_THROWS_AS((void)p.value(wrong), DimensionMismatch);
  CHECK_THROWS_AS((void)p.gradient(wrong), DimensionMismatch);

  Vec bad(2);
  bad << 1.0, std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS((void)p.value(bad), NonFiniteInput);

  CHECK_THROWS_AS(QuadraticProblem<double>(A, Vec(3), 0.0), DimensionMismatch);
  CHECK_THROWS_AS(QuadraticProblem<double>(A, y, -1.0), ConfigError);

  Vec soft_labels(2);
  soft_labels << 0.5, -1.0;
  CHECK_THROWS_AS(LogisticProblem<double>(A, soft_labels, 0.0), ConfigError);
}

TEST_CASE("ground truth of least-squares problems") {
  SUBCASE("scalar identity design") {
    Mat A(1, 1);
    A << 1.0;
    Vec y(1);
    y << 3.0;
    QuadraticProblem<double> p(A, y, 0.0);
    auto truth = ground_truth(p, 1e-10);
    CHECK(truth.x_star[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(truth.f_star == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(truth.residual_grad_norm <= 1e-10);
  }
  SUBCASE("diagonal design inverts componentwise") {
    Vec a(2), y(2);
    a << 1.0, 0.1;
    y << 1.0, 1.0;
    auto p = QuadraticProblem<double>::diagonal_design(a, y);
    auto truth = ground_truth(p, 1e-12);
    CHECK(truth.x_star[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(truth.x_star[1] == doctest::Approx(10.0).epsilon(1e-12));
  }
  SUBCASE("heavy ridge shrinks the minimizer toward zero") {
    auto design_rng = make_stream(9, Stream::kSpectrum);
    const Mat A = random_normal_matrix<double>(4, 3, design_rng);
    const Vec y = random_normal_vector<double>(4, design_rng);
    const double tau = 1e6;
    QuadraticProblem<double> p(A, y, tau);
    auto truth = ground_truth(p, 1e-9);
    CHECK(truth.x_star.norm() <= (A.transpose() * y / 4.0).norm() / tau * (1 + 1e-12));
  }
  SUBCASE("diagonal closed form agrees with the dense solve path") {
    const Eigen::Index n = 3;
    Vec d(n), c(n);
    d << 2.0, 0.5, 1.25;
    c << 1.0, -2.0, 0.5;
    const double tau = 0.3;
    auto diag = QuadraticProblem<double>::diagonal(d, c, tau);

    // Equivalent explicit design: A = diag(sqrt(n d_i)), y_i = sqrt(n d_i) c_i
    Mat A = Mat::Zero(n, n);
    Vec y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      A(i, i) = std::sqrt(double(n) * d[i]);
      y[i] = A(i, i) * c[i];
    }
    QuadraticProblem<double> dense(A, y, tau);

    auto probe_rng = make_stream(10, Stream::kFuzz);
    for (int i = 0; i < 20; ++i) {
      const Vec x = point_in_ball(5.0, n, probe_rng);
      CHECK(diag.value(x) == doctest::Approx(dense.value(x)).epsilon(1e-12));
      CHECK((diag.gradient(x) - dense.gradient(x)).norm() <= 1e-12 * (1 + diag.gradient(x).norm()));
    }

    const Vec zero = Vec::Zero(n);
    auto td = ground_truth(diag, default_truth_tolerance(diag, zero));
    auto te = ground_truth(dense, default_truth_tolerance(dense, zero));
    CHECK((td.x_star - te.x_star).norm() <= 1e-8 * (1 + td.x_star.norm()));
    CHECK(td.f_star == doctest::Approx(te.f_star).epsilon(1e-8));
  }
  SUBCASE("non strongly convex diagonal has no unique minimizer") {
    Vec d(2), c(2);
    d << 1.0, 0.0;
    c << 0.0, 0.0;
    auto p = QuadraticProblem<double>::diagonal(d, c, 0.0);
    CHECK_THROWS_AS(ground_truth(p, 1e-10), ConfigError);
  }
}

TEST_CASE("logistic ground truth drives the gradient below tolerance") {
  auto p = gen_synthetic_logistic(40, 8, 3, 1e-2);
  auto truth = ground_truth(p, 1e-8);
  CHECK(truth.residual_grad_norm <= 1e-8);
  CHECK(p.gradient(truth.x_star).norm() <= 1e-8);
  CHECK(truth.f_star == doctest::Approx(p.value(truth.x_star)).epsilon(1e-14));
}

TEST_CASE("spectral smoothness estimation") {
  SUBCASE("scaled identity design: lambda_max(A'A)/m = 4/3") {
    Mat A = 2.0 * Mat::Identity(3, 3);
    QuadraticProblem<double> p(A, Vec::Zero(3), 0.0);
    CHECK(estimate_lipschitz(p) == doctest::Approx(4.0 / 3.0).epsilon(1e-6));
    CHECK(p.data_curvature() == doctest::Approx(4.0 / 3.0).epsilon(1e-6));
    // construction applies the 1.01 safety factor on top of the raw estimate
    CHECK(p.lipschitz() == doctest::Approx(1.01 * p.data_curvature()).epsilon(1e-12));
  }
  SUBCASE("zero design: only the ridge curvature remains") {
    Mat A = Mat::Zero(2, 2);
    QuadraticProblem<double> p(A, Vec::Zero(2), 0.5);
    CHECK(estimate_lipschitz(p) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("diagonal problems are estimated to the top diagonal entry") {
    Vec d(4), c(4);
    d << 0.3, 1.0, 0.01, 0.7;
    c.setZero();
    auto p = QuadraticProblem<double>::diagonal(d, c, 0.0);
    CHECK(estimate_lipschitz(p) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(p.lipschitz() == 1.0);  // exact for the diagonal-compact form
    CHECK(p.strong_convexity() == 0.01);
  }
  SUBCASE("iteration budget exhaustion reports the last Rayleigh quotients") {
    Vec d(2), c(2);
    d << 1.0, 0.5;
    c.setZero();
    auto p = QuadraticProblem<double>::diagonal(d, c, 0.0);
    CHECK_THROWS_AS((void)estimate_lipschitz(p, 1, 1e-15), ConvergenceFailure);
  }
}
