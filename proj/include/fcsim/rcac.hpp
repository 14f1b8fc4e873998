// Retrospective cost adaptive control, one channel per controlled variable.
//
// Each channel holds gains theta and covariance P of a regularized recursive least
// squares problem over the retrospective performance
//     z_hat(theta) = z + sigma * (phi_prev' theta - u_prev),
// i.e. the cumulative cost
//     J_k(theta) = sum_i [ Rz * z_hat_i(theta)^2 + Ru * (phi_i' theta)^2 ]
//                  + (theta - theta0)' (P0 I)^-1 (theta - theta0).
// sigma is the one-step filter numerator (G_f = sigma/q); its sign must match the sign
// of the plant's leading Markov parameter from the adaptive input to z.
#pragma once

#include <optional>
#include <vector>

#include "fcsim/core.hpp"

namespace fcsim {

struct RcacHyper {
  double p0 = 1.0;      // initial covariance scale (> 0)
  double ru = 1e-3;     // control weight (>= 0)
  double rz = 1.0;      // performance weight (> 0)
  double sigma = -0.1;  // filter coefficient (!= 0), sign = plant control direction
  std::vector<double> theta0;          // initial gains; empty = zeros
  std::optional<double> theta_max;     // per-component |theta| bound
  bool enabled = true;

  void validate() const {
    if (!(p0 > 0.0)) throw SimError(ErrorKind::Config, "rcac: P0 must be > 0");
    if (!(ru >= 0.0)) throw SimError(ErrorKind::Config, "rcac: Ru must be >= 0");
    if (!(rz > 0.0)) throw SimError(ErrorKind::Config, "rcac: Rz must be > 0");
    if (sigma == 0.0 || !std::isfinite(sigma))
      throw SimError(ErrorKind::Config, "rcac: sigma must be nonzero");
    if (theta_max && !(*theta_max > 0.0))
      throw SimError(ErrorKind::Config, "rcac: theta_max must be > 0");
  }
};

template <int N>
class RcacChannel {
 public:
  using VecN = Eigen::Matrix<double, N, 1>;
  using MatN = Eigen::Matrix<double, N, N>;

  explicit RcacChannel(const RcacHyper& hyper) : hyper_(hyper) {
    hyper_.validate();
    theta_.setZero();
    for (int i = 0; i < N && i < static_cast<int>(hyper_.theta0.size()); ++i)
      theta_[i] = hyper_.theta0[i];
    theta_init_ = theta_;
    p_ = hyper_.p0 * MatN::Identity();
  }

  // Consumes this step's performance z and regressor phi, returns the adaptive input
  // u = phi' theta using the just-updated gains. The first call buffers only (no data to
  // regress on yet); a disabled channel returns 0 and never updates.
  double update(double z, const VecN& phi) {
    if (!hyper_.enabled) return 0.0;
    if (!std::isfinite(z) || !phi.allFinite()) {
      frozen_ = true;
      return phi.allFinite() ? theta_.dot(phi) : 0.0;
    }
    if (frozen_) return theta_.dot(phi);

    if (k_ > 0) {
      // Two-row stacked regression: retrospective row weighted Rz, control row Ru.
      Eigen::Matrix<double, 2, N> reg;
      reg.row(0) = hyper_.sigma * phi_prev_.transpose();
      reg.row(1) = phi_prev_.transpose();
      const Eigen::Vector2d y(hyper_.sigma * u_prev_ - z, 0.0);
      const Eigen::Vector2d lam(hyper_.rz, hyper_.ru);

      // P' = P - P R' (I + L R P R')^-1 L R P, algebraic form valid for Ru = 0.
      const Eigen::Matrix2d gram = reg * p_ * reg.transpose();
      const Eigen::Matrix2d gain =
          (Eigen::Matrix2d::Identity() + lam.asDiagonal() * gram).inverse() *
          lam.asDiagonal().toDenseMatrix();
      MatN p_new = p_ - p_ * reg.transpose() * gain * reg * p_;
      p_new = (0.5 * (p_new + p_new.transpose())).eval();

      Eigen::LLT<MatN> llt(p_new);
      if (llt.info() != Eigen::Success) {
        frozen_ = true;  // covariance lost positive definiteness; hold gains
        return theta_.dot(phi);
      }
      p_ = p_new;
      theta_ += p_ * reg.transpose() * lam.asDiagonal() * (y - reg * theta_);
      if (hyper_.theta_max) {
        for (int i = 0; i < N; ++i)
          theta_[i] = clamp(theta_[i], -*hyper_.theta_max, *hyper_.theta_max);
      }
    }

    const double u = theta_.dot(phi);
    phi_prev_ = phi;
    u_prev_ = u;
    ++k_;
    return u;
  }

  const VecN& theta() const { return theta_; }
  const MatN& covariance() const { return p_; }
  const VecN& theta_init() const { return theta_init_; }
  bool frozen() const { return frozen_; }
  long steps() const { return k_; }
  bool enabled() const { return hyper_.enabled; }

 private:
  RcacHyper hyper_;
  VecN theta_, theta_init_;
  MatN p_;
  VecN phi_prev_ = VecN::Zero();
  double u_prev_ = 0.0;
  long k_ = 0;
  bool frozen_ = false;
};

// Proportional regressor for the angle channels.
inline Eigen::Matrix<double, 1, 1> regressor_p(double z) {
  Eigen::Matrix<double, 1, 1> phi;
  phi[0] = z;
  return phi;
}

// Proportional-integral regressor for the rate channels: phi = [z, integ + z*dt] with the
// integral clamped to the same anti-windup bound as the fixed loop. Returns the regressor
// and writes back the clamped integral.
inline Eigen::Vector2d regressor_pi(double z, double& integ, double dt, double bound) {
  integ = clamp(integ + z * dt, -bound, bound);
  return Eigen::Vector2d(z, integ);
}

}  // namespace fcsim
