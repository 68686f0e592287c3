#pragma once

// First-order oracles for L-smooth, mu-strongly-convex objectives:
// ridge-regularized least squares (dense or diagonal-compact) and
// ridge-regularized logistic regression (dense or sparse rows).
//
// Conventions used throughout:
//   - quadratic:  f(x) = (1/2m)·sum_i (a_i'x - y_i)^2 + (tau/2)·|x|^2
//   - logistic:   f(x) = (1/m)·sum_i log(1 + exp(-b_i·a_i'x)) + (tau/2)·|x|^2
//   - reported strong convexity is the regularizer tau, except for the
//     diagonal-compact quadratic whose exact spectrum is known.
//   - reported Lipschitz constants for data-backed problems are spectral
//     estimates inflated by a small safety factor, because the descent
//     inequality f(x+) <= f(y) - |g|^2/(2L) needs L >= true L while power
//     iteration converges from below.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include <Eigen/Core>
#include <Eigen/Cholesky>
#include <Eigen/SparseCore>

#include "sfgm/errors.hpp"
#include "sfgm/rng.hpp"

namespace sfgm {

template <class Scalar>
using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <class Scalar>
class ObjectiveOracle {
 public:
  using Vec = VecX<Scalar>;

  virtual ~ObjectiveOracle() = default;

  virtual Eigen::Index dim() const = 0;
  virtual Scalar value(const Vec& x) const = 0;
  virtual void gradient(const Vec& x, Vec& out) const = 0;

  Vec gradient(const Vec& x) const {
    Vec g(dim());
    gradient(x, g);
    return g;
  }

  // Reported smoothness / strong-convexity constants (see file header).
  virtual Scalar lipschitz() const = 0;
  virtual Scalar strong_convexity() const = 0;

  // Applies the curvature operator whose largest eigenvalue is the
  // smoothness constant: the Hessian for quadratics, (1/4m)A'A + tau*I for
  // logistic losses. Drives the spectral estimator below.
  virtual void curvature_apply(const Vec& v, Vec& out) const = 0;

 protected:
  void check_input(const Vec& x) const {
    if (x.size() != dim())
      throw DimensionMismatch("oracle expects dimension " + std::to_string(dim()) +
                              ", got " + std::to_string(x.size()));
    if (!x.allFinite()) throw NonFiniteInput("oracle input contains NaN or infinity");
  }
};

// ---------------------------------------------------------------------------
// Spectral estimation (power iteration on the curvature operator).
// Returns the raw Rayleigh-quotient estimate; callers that need a safe
// smoothness constant apply their own safety factor on top.
// ---------------------------------------------------------------------------
template <class Scalar>
Scalar estimate_lipschitz(const ObjectiveOracle<Scalar>& oracle, long iters = 50000,
                          Scalar tol = Scalar(1e-6), std::uint64_t probe_seed = 0) {
  const Eigen::Index n = oracle.dim();
  if (n == 0) return Scalar(0);
  Xoshiro256pp rng = make_stream(probe_seed, Stream::kProbe);
  VecX<Scalar> q = random_normal_vector<Scalar>(n, rng);
  Scalar qn = q.norm();
  if (qn == Scalar(0)) q.setConstant(Scalar(1) / std::sqrt(Scalar(n)));
  else q /= qn;

  // Converged when the eigen-residual |Bq - rho q| drops below tol*rho; for
  // a symmetric operator that places rho within tol*rho of a true eigenvalue.
  // (A Rayleigh-increment test stalls when the two leading eigenvalues are
  // nearly degenerate; the residual instead converges at the rate of the gap
  // to the rest of the spectrum, and any point of the leading cluster is an
  // equally good smoothness estimate.)
  VecX<Scalar> z(n);
  Scalar rho_prev = std::numeric_limits<Scalar>::quiet_NaN();
  Scalar rho = Scalar(0);
  for (long t = 0; t < iters; ++t) {
    oracle.curvature_apply(q, z);
    rho_prev = rho;
    rho = q.dot(z);
    const Scalar zn = z.norm();
    if (zn == Scalar(0)) return Scalar(0);  // zero operator
    const Scalar residual = (z - rho * q).norm();
    if (residual <= tol * std::max(std::abs(rho), std::numeric_limits<Scalar>::min()))
      return rho;
    q = z / zn;
  }
  throw ConvergenceFailure("power iteration did not converge in " + std::to_string(iters) +
                               " iterations",
                           static_cast<double>(rho), static_cast<double>(rho_prev));
}

// ---------------------------------------------------------------------------
// Ridge least squares
// ---------------------------------------------------------------------------
template <class Scalar>
class QuadraticProblem final : public ObjectiveOracle<Scalar> {
 public:
  using Vec = VecX<Scalar>;
  using Mat = MatX<Scalar>;

  // Dense design. The smoothness constant is estimated at construction:
  // L = safety * lambda_max((1/m)A'A) + tau.
  QuadraticProblem(Mat design, Vec targets, Scalar ridge, Scalar safety = Scalar(1.01),
                   long power_iters = 50000, Scalar power_tol = Scalar(1e-6))
      : A_(std::move(design)), y_(std::move(targets)), tau_(ridge) {
    if (A_.rows() != y_.size())
      throw DimensionMismatch("design rows != targets length");
    if (tau_ < Scalar(0)) throw ConfigError("ridge must be nonnegative");
    data_curvature_ = raw_data_curvature(power_iters, power_tol);
    L_ = safety * data_curvature_ + tau_;
    mu_ = tau_;
  }

  // Diagonal-compact form with exactly known spectrum: the data part of the
  // Hessian is diag(d) and the objective is (1/2)·sum d_i (x_i - c_i)^2 +
  // offset + (tau/2)|x|^2. Spectral constants are exact, no estimation.
  static QuadraticProblem diagonal(Vec hessian_diag, Vec center, Scalar ridge = Scalar(0),
                                   Scalar offset = Scalar(0)) {
    if (hessian_diag.size() != center.size())
      throw DimensionMismatch("diagonal and center lengths differ");
    if ((hessian_diag.array() < Scalar(0)).any())
      throw ConfigError("diagonal curvature entries must be nonnegative");
    if (ridge < Scalar(0)) throw ConfigError("ridge must be nonnegative");
    return QuadraticProblem(DiagonalTag{}, std::move(hessian_diag), std::move(center),
                            ridge, offset);
  }

  // Diagonal design matrix given by its entries a_ii (an m = n row design),
  // converted to the compact form: d_i = a_ii^2/m, center_i = y_i/a_ii.
  // Rows with a_ii = 0 contribute the constant y_i^2/(2m).
  static QuadraticProblem diagonal_design(const Vec& a, const Vec& y,
                                          Scalar ridge = Scalar(0)) {
    if (a.size() != y.size()) throw DimensionMismatch("design and targets lengths differ");
    const Scalar m = static_cast<Scalar>(a.size());
    Vec d(a.size()), center(a.size());
    Scalar offset = Scalar(0);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      d[i] = a[i] * a[i] / m;
      if (a[i] != Scalar(0)) {
        center[i] = y[i] / a[i];
      } else {
        center[i] = Scalar(0);
        offset += y[i] * y[i] / (Scalar(2) * m);
      }
    }
    return diagonal(std::move(d), std::move(center), ridge, offset);
  }

  using ObjectiveOracle<Scalar>::gradient;

  Eigen::Index dim() const override { return diagonal_ ? d_.size() : A_.cols(); }
  Eigen::Index samples() const { return diagonal_ ? d_.size() : A_.rows(); }

  Scalar value(const Vec& x) const override {
    this->check_input(x);
    const Scalar reg = tau_ == Scalar(0) ? Scalar(0) : Scalar(0.5) * tau_ * x.squaredNorm();
    if (diagonal_)
      return Scalar(0.5) * (d_.array() * (x - center_).array().square()).sum() + offset_ + reg;
    const Scalar m = static_cast<Scalar>(A_.rows());
    return (A_ * x - y_).squaredNorm() / (Scalar(2) * m) + reg;
  }

  void gradient(const Vec& x, Vec& out) const override {
    this->check_input(x);
    if (diagonal_) {
      out = d_.array() * (x - center_).array();
    } else {
      const Scalar m = static_cast<Scalar>(A_.rows());
      out.noalias() = A_.transpose() * (A_ * x - y_);
      out /= m;
    }
    if (tau_ != Scalar(0)) out += tau_ * x;
  }

  Scalar lipschitz() const override { return L_; }
  Scalar strong_convexity() const override { return mu_; }

  void curvature_apply(const Vec& v, Vec& out) const override {
    if (diagonal_) {
      out = d_.array() * v.array();
    } else {
      const Scalar m = static_cast<Scalar>(A_.rows());
      out.noalias() = A_.transpose() * (A_ * v);
      out /= m;
    }
    if (tau_ != Scalar(0)) out += tau_ * v;
  }

  bool is_diagonal() const { return diagonal_; }
  const Vec& hessian_diagonal() const { return d_; }
  const Vec& center() const { return center_; }
  const Mat& design() const { return A_; }
  const Vec& targets() const { return y_; }
  Scalar ridge() const { return tau_; }
  // Raw (uninflated) estimate of the data part of the curvature,
  // lambda_max((1/m)A'A); exact for the diagonal form.
  Scalar data_curvature() const { return data_curvature_; }

 private:
  struct DiagonalTag {};
  QuadraticProblem(DiagonalTag, Vec d, Vec center, Scalar ridge, Scalar offset)
      : tau_(ridge), diagonal_(true), d_(std::move(d)), center_(std::move(center)),
        offset_(offset) {
    data_curvature_ = d_.size() > 0 ? d_.maxCoeff() : Scalar(0);
    L_ = data_curvature_ + tau_;
    mu_ = (d_.size() > 0 ? d_.minCoeff() : Scalar(0)) + tau_;
  }

  Scalar raw_data_curvature(long iters, Scalar tol) const {
    struct DataOp final : ObjectiveOracle<Scalar> {
      const QuadraticProblem* p;
      explicit DataOp(const QuadraticProblem* p) : p(p) {}
      Eigen::Index dim() const override { return p->A_.cols(); }
      Scalar value(const Vec&) const override { return Scalar(0); }
      void gradient(const Vec&, Vec&) const override {}
      Scalar lipschitz() const override { return Scalar(0); }
      Scalar strong_convexity() const override { return Scalar(0); }
      void curvature_apply(const Vec& v, Vec& out) const override {
        const Scalar m = static_cast<Scalar>(p->A_.rows());
        out.noalias() = p->A_.transpose() * (p->A_ * v);
        out /= m;
      }
    } op(this);
    return estimate_lipschitz<Scalar>(op, iters, tol);
  }

  Mat A_;
  Vec y_;
  Scalar tau_ = Scalar(0);
  bool diagonal_ = false;
  Vec d_;       // diagonal-compact: Hessian diagonal of the data part
  Vec center_;  // diagonal-compact: minimizer of the data part
  Scalar offset_ = Scalar(0);
  Scalar data_curvature_ = Scalar(0);
  Scalar L_ = Scalar(0);
  Scalar mu_ = Scalar(0);
};

// ---------------------------------------------------------------------------
// Ridge logistic regression
// ---------------------------------------------------------------------------
template <class Scalar>
class LogisticProblem final : public ObjectiveOracle<Scalar> {
 public:
  using Vec = VecX<Scalar>;
  using Mat = MatX<Scalar>;
  using SpMat = Eigen::SparseMatrix<Scalar, Eigen::RowMajor>;

  LogisticProblem(Mat design, Vec labels, Scalar ridge, Scalar safety = Scalar(1.01),
                  long power_iters = 50000, Scalar power_tol = Scalar(1e-6))
      : A_(std::move(design)), b_(std::move(labels)), tau_(ridge) {
    init(safety, power_iters, power_tol);
  }

  LogisticProblem(SpMat design, Vec labels, Scalar ridge, Scalar safety = Scalar(1.01),
                  long power_iters = 50000, Scalar power_tol = Scalar(1e-6))
      : S_(std::move(design)), b_(std::move(labels)), sparse_(true), tau_(ridge) {
    S_.makeCompressed();
    init(safety, power_iters, power_tol);
  }

  using ObjectiveOracle<Scalar>::gradient;

  Eigen::Index dim() const override { return sparse_ ? S_.cols() : A_.cols(); }
  Eigen::Index samples() const { return b_.size(); }

  Scalar value(const Vec& x) const override {
    this->check_input(x);
    const Vec z = sparse_ ? Vec(S_ * x) : Vec(A_ * x);
    Scalar loss = Scalar(0);
    for (Eigen::Index i = 0; i < z.size(); ++i) loss += softplus(-b_[i] * z[i]);
    const Scalar m = static_cast<Scalar>(b_.size());
    const Scalar reg = tau_ == Scalar(0) ? Scalar(0) : Scalar(0.5) * tau_ * x.squaredNorm();
    return loss / m + reg;
  }

  void gradient(const Vec& x, Vec& out) const override {
    this->check_input(x);
    const Vec z = sparse_ ? Vec(S_ * x) : Vec(A_ * x);
    Vec w(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) w[i] = -b_[i] * sigmoid(-b_[i] * z[i]);
    const Scalar m = static_cast<Scalar>(b_.size());
    if (sparse_) out.noalias() = S_.transpose() * w;
    else out.noalias() = A_.transpose() * w;
    out /= m;
    if (tau_ != Scalar(0)) out += tau_ * x;
  }

  Scalar lipschitz() const override { return L_; }
  Scalar strong_convexity() const override { return tau_; }

  void curvature_apply(const Vec& v, Vec& out) const override {
    const Scalar m = static_cast<Scalar>(b_.size());
    if (sparse_) out.noalias() = S_.transpose() * Vec(S_ * v);
    else out.noalias() = A_.transpose() * (A_ * v);
    out /= Scalar(4) * m;
    if (tau_ != Scalar(0)) out += tau_ * v;
  }

  Scalar ridge() const { return tau_; }
  const Vec& labels() const { return b_; }
  // Raw estimate of lambda_max((1/4m)A'A), uninflated.
  Scalar data_curvature() const { return data_curvature_; }

  static Scalar softplus(Scalar t) {
    return t > Scalar(0) ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
  }
  static Scalar sigmoid(Scalar t) {
    if (t > Scalar(0)) return Scalar(1) / (Scalar(1) + std::exp(-t));
    const Scalar e = std::exp(t);
    return e / (Scalar(1) + e);
  }

 private:
  void init(Scalar safety, long power_iters, Scalar power_tol) {
    const Eigen::Index m = sparse_ ? S_.rows() : A_.rows();
    if (m != b_.size()) throw DimensionMismatch("design rows != labels length");
    if (tau_ < Scalar(0)) throw ConfigError("ridge must be nonnegative");
    for (Eigen::Index i = 0; i < b_.size(); ++i)
      if (b_[i] != Scalar(1) && b_[i] != Scalar(-1))
        throw ConfigError("logistic labels must be -1 or +1 (normalize first)");
    struct GramOp final : ObjectiveOracle<Scalar> {
      const LogisticProblem* p;
      explicit GramOp(const LogisticProblem* p) : p(p) {}
      Eigen::Index dim() const override { return p->dim(); }
      Scalar value(const Vec&) const override { return Scalar(0); }
      void gradient(const Vec&, Vec&) const override {}
      Scalar lipschitz() const override { return Scalar(0); }
      Scalar strong_convexity() const override { return Scalar(0); }
      void curvature_apply(const Vec& v, Vec& out) const override {
        const Scalar mm = static_cast<Scalar>(p->b_.size());
        if (p->sparse_) out.noalias() = p->S_.transpose() * Vec(p->S_ * v);
        else out.noalias() = p->A_.transpose() * (p->A_ * v);
        out /= Scalar(4) * mm;
      }
    } op(this);
    data_curvature_ = estimate_lipschitz<Scalar>(op, power_iters, power_tol);
    L_ = safety * data_curvature_ + tau_;
  }

  Mat A_;
  SpMat S_;
  Vec b_;
  bool sparse_ = false;
  Scalar tau_ = Scalar(0);
  Scalar data_curvature_ = Scalar(0);
  Scalar L_ = Scalar(0);
};

// ---------------------------------------------------------------------------
// Ground truth
// ---------------------------------------------------------------------------
enum class TruthMethod { closed_form, high_accuracy_solve };

template <class Scalar>
struct GroundTruth {
  VecX<Scalar> x_star;
  Scalar f_star = Scalar(0);
  TruthMethod method = TruthMethod::closed_form;
  Scalar residual_grad_norm = Scalar(0);
};

// Sensible default accuracy for ground-truth solves: two orders below the
// tightest tolerance any consumer checks against, scaled by the gradient at
// the starting point.
template <class Scalar>
Scalar default_truth_tolerance(const ObjectiveOracle<Scalar>& oracle, const VecX<Scalar>& x0) {
  return Scalar(1e-10) * (Scalar(1) + oracle.gradient(x0).norm());
}

// Minimizer of a ridge least-squares problem. Diagonal-compact problems are
// solved componentwise in closed form; dense problems through the normal
// equations with iterative refinement until the gradient residual meets tol.
template <class Scalar>
GroundTruth<Scalar> ground_truth(const QuadraticProblem<Scalar>& problem, Scalar tol) {
  GroundTruth<Scalar> truth;
  const Eigen::Index n = problem.dim();
  if (problem.is_diagonal()) {
    const auto& d = problem.hessian_diagonal();
    const auto& c = problem.center();
    const Scalar tau = problem.ridge();
    truth.x_star.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Scalar curv = d[i] + tau;
      if (curv <= Scalar(0))
        throw ConfigError("diagonal quadratic is not strongly convex; minimizer not unique");
      truth.x_star[i] = tau == Scalar(0) ? c[i] : d[i] * c[i] / curv;
    }
    truth.method = TruthMethod::closed_form;
  } else {
    if (n * n > 50'000'000)
      throw ConfigError("dense normal-equation solve too large for direct ground truth");
    const auto& A = problem.design();
    const Scalar m = static_cast<Scalar>(A.rows());
    MatX<Scalar> H = MatX<Scalar>::Zero(n, n);
    H.template selfadjointView<Eigen::Lower>().rankUpdate(A.transpose(), Scalar(1) / m);
    H.template triangularView<Eigen::Upper>() = H.transpose();
    H.diagonal().array() += problem.ridge();
    const VecX<Scalar> rhs = A.transpose() * problem.targets() / m;
    Eigen::LDLT<MatX<Scalar>> fact(H);
    if (fact.info() != Eigen::Success)
      throw ConvergenceFailure("normal-equation factorization failed",
                               std::numeric_limits<double>::quiet_NaN(),
                               std::numeric_limits<double>::quiet_NaN());
    VecX<Scalar> x = fact.solve(rhs);
    Scalar prev_res = std::numeric_limits<Scalar>::infinity();
    Scalar res = (H.template selfadjointView<Eigen::Lower>() * x - rhs).norm();
    for (int pass = 0; pass < 4 && res > tol; ++pass) {
      const VecX<Scalar> r = rhs - H.template selfadjointView<Eigen::Lower>() * x;
      x += fact.solve(r);
      prev_res = res;
      res = (H.template selfadjointView<Eigen::Lower>() * x - rhs).norm();
    }
    if (res > tol)
      throw ConvergenceFailure("ground-truth refinement stalled above tolerance",
                               static_cast<double>(res), static_cast<double>(prev_res));
    truth.x_star = std::move(x);
    truth.method = TruthMethod::high_accuracy_solve;
  }
  truth.f_star = problem.value(truth.x_star);
  truth.residual_grad_norm = problem.gradient(truth.x_star).norm();
  if (truth.residual_grad_norm > tol)
    throw ConvergenceFailure("ground-truth gradient residual above tolerance",
                             static_cast<double>(truth.residual_grad_norm),
                             static_cast<double>(tol));
  return truth;
}

// ---------------------------------------------------------------------------
// Gradient checking
// ---------------------------------------------------------------------------
// Max over coordinates of |central difference - analytic| / (1 + |analytic|),
// with the step scaled by (1 + max|x_i|). Non-finite differences yield +inf.
template <class Scalar>
Scalar check_gradient(const ObjectiveOracle<Scalar>& oracle, const VecX<Scalar>& x, Scalar h) {
  const Eigen::Index n = oracle.dim();
  if (n == 0) return Scalar(0);
  const Scalar step = h * (Scalar(1) + x.template lpNorm<Eigen::Infinity>());
  const VecX<Scalar> g = oracle.gradient(x);
  VecX<Scalar> probe = x;
  Scalar worst = Scalar(0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar xi = x[i];
    probe[i] = xi + step;
    const Scalar fp = oracle.value(probe);
    probe[i] = xi - step;
    const Scalar fm = oracle.value(probe);
    probe[i] = xi;
    const Scalar fd = (fp - fm) / (Scalar(2) * step);
    Scalar err = std::abs(fd - g[i]) / (Scalar(1) + std::abs(g[i]));
    if (!std::isfinite(fd)) err = std::numeric_limits<Scalar>::infinity();
    worst = std::max(worst, err);
  }
  return worst;
}

}  // namespace sfgm
