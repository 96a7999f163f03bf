#include <chrono>
#include <cmath>
#include <limits>
#include <optional>

#include "romp/errors.hpp"
#include "romp/estimators.hpp"

namespace romp {
namespace {

double soft_threshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

// Cyclic coordinate descent on
//   1/2 ||y + z - X beta||^2 + lambda ||beta||_1 + gamma ||z||_1
// with z pinned to zero when gamma is absent (plain Lasso).
class CoordinateDescent {
 public:
  CoordinateDescent(const Matrix& X, const Vector& y, double lambda,
                    std::optional<double> gamma)
      : X_(X), y_(y), lambda_(lambda), gamma_(gamma) {
    col_sq_ = X_.colwise().squaredNorm().transpose();
    beta_ = Vector::Zero(X_.cols());
    z_ = Vector::Zero(X_.rows());
  }

  void warm_start(const Vector* beta, const Vector* z) {
    if (beta) {
      if (beta->size() != X_.cols()) throw InvalidArgument("warm start: beta has wrong length");
      beta_ = *beta;
    }
    if (z && gamma_) {
      if (z->size() != X_.rows()) throw InvalidArgument("warm start: z has wrong length");
      z_ = *z;
    }
  }

  Diagnostics run(const CoordinateDescentOptions& opt) {
    refresh_residual();
    double previous = objective();
    int sweeps = 0;
    bool converged = false;
    while (sweeps < opt.max_sweeps) {
      // Full sweep: every coordinate, which also lets the active set grow.
      sweep(/*active_only=*/false);
      ++sweeps;
      double current = objective();
      if (opt.on_sweep) opt.on_sweep(sweeps, current);
      if (small_change(previous, current, opt.tolerance)) {
        converged = true;
        break;
      }
      previous = current;
      // Inner sweeps over the nonzero coefficients until they settle.
      while (sweeps < opt.max_sweeps) {
        sweep(/*active_only=*/true);
        ++sweeps;
        current = objective();
        if (opt.on_sweep) opt.on_sweep(sweeps, current);
        const bool settled = small_change(previous, current, opt.tolerance);
        previous = current;
        if (settled) break;
      }
    }
    refresh_residual();
    Diagnostics d;
    d.iterations = sweeps;
    d.objective = objective();
    d.converged = converged;
    return d;
  }

  const Vector& beta() const { return beta_; }
  const Vector& z() const { return z_; }

 private:
  static bool small_change(double previous, double current, double tol) {
    const double scale = std::max(std::abs(current), std::numeric_limits<double>::min());
    return previous - current <= tol * scale;
  }

  void refresh_residual() { r_ = y_ + z_ - X_ * beta_; }

  double objective() const {
    double obj = 0.5 * r_.squaredNorm() + lambda_ * beta_.lpNorm<1>();
    if (gamma_) obj += *gamma_ * z_.lpNorm<1>();
    return obj;
  }

  void sweep(bool active_only) {
    for (Eigen::Index j = 0; j < X_.cols(); ++j) {
      const double old = beta_[j];
      if (active_only && old == 0.0) continue;
      const double c = col_sq_[j];
      double updated = 0.0;
      if (c > 0.0) {
        const double g = X_.col(j).dot(r_) + c * old;
        updated = soft_threshold(g, lambda_) / c;
      }
      if (updated != old) {
        r_.noalias() -= (updated - old) * X_.col(j);
        beta_[j] = updated;
      }
    }
    if (gamma_) {
      for (Eigen::Index i = 0; i < X_.rows(); ++i) {
        const double without = r_[i] - z_[i];
        const double updated = soft_threshold(-without, *gamma_);
        z_[i] = updated;
        r_[i] = without + updated;
      }
    }
  }

  Eigen::MatrixXd X_;
  const Vector& y_;
  double lambda_;
  std::optional<double> gamma_;
  Vector col_sq_;
  Vector beta_;
  Vector z_;
  Vector r_;
};

}  // namespace

LassoResult lasso(const Matrix& X, const Vector& y, double lambda,
                  const CoordinateDescentOptions& options, const Vector* warm_start) {
  if (X.rows() != y.size()) throw InvalidArgument("lasso: response length != rows");
  if (!(lambda >= 0.0)) throw InvalidArgument("lasso: lambda must be >= 0");
  const auto start = std::chrono::steady_clock::now();
  CoordinateDescent cd(X, y, lambda, std::nullopt);
  cd.warm_start(warm_start, nullptr);
  LassoResult out;
  out.diagnostics = cd.run(options);
  out.beta_hat = cd.beta();
  out.diagnostics.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!out.diagnostics.converged) {
    throw ConvergenceError("lasso: no convergence after " +
                               std::to_string(out.diagnostics.iterations) + " sweeps",
                           out.beta_hat, out.diagnostics.iterations);
  }
  return out;
}

double justice_pursuit_objective(const Matrix& X, const Vector& y, const Vector& beta,
                                 const Vector& z, double lambda, double gamma) {
  const Vector r = X * beta - y - z;
  return 0.5 * r.squaredNorm() + lambda * beta.lpNorm<1>() + gamma * z.lpNorm<1>();
}

JusticePursuitResult justice_pursuit(const Matrix& X, const Vector& y, double lambda,
                                     double gamma, const CoordinateDescentOptions& options,
                                     const Vector* warm_beta, const Vector* warm_z) {
  if (X.rows() != y.size()) throw InvalidArgument("justice_pursuit: response length != rows");
  if (!(lambda >= 0.0) || !(gamma >= 0.0)) {
    throw InvalidArgument("justice_pursuit: lambda and gamma must be >= 0");
  }
  const auto start = std::chrono::steady_clock::now();
  CoordinateDescent cd(X, y, lambda, gamma);
  cd.warm_start(warm_beta, warm_z);
  JusticePursuitResult out;
  out.diagnostics = cd.run(options);
  out.beta_hat = cd.beta();
  out.z_hat = cd.z();
  out.diagnostics.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!out.diagnostics.converged) {
    Vector joint(out.beta_hat.size() + out.z_hat.size());
    joint << out.beta_hat, out.z_hat;
    throw ConvergenceError("justice_pursuit: no convergence after " +
                               std::to_string(out.diagnostics.iterations) + " sweeps",
                           std::move(joint), out.diagnostics.iterations);
  }
  return out;
}

}  // namespace romp
