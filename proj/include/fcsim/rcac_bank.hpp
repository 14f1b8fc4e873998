// Five independent adaptive channels around the attitude cascade: proportional channels
// on the pitch and roll angle errors, proportional-integral channels on the three rate
// errors. Channels share no state; the bank owns the PI regressor integrals.
#pragma once

#include "fcsim/attitude.hpp"
#include "fcsim/core.hpp"
#include "fcsim/defaults.hpp"
#include "fcsim/rcac.hpp"

namespace fcsim {

class RcacBank {
 public:
  RcacBank(const RcacBankConfig& cfg, const Vec3& pi_integ_limit)
      : theta_(cfg.theta),
        phi_(cfg.phi),
        wx_(cfg.omega_x),
        wy_(cfg.omega_y),
        wz_(cfg.omega_z),
        integ_limit_(pi_integ_limit) {}

  // One adaptation step on the performance variables of an attitude update. The returned
  // inputs are meant for the *next* control step (unit-delay loop closure, matching the
  // one-step retrospective filter).
  AdaptiveInputs update(const AttitudeDebug& perf, double dt) {
    AdaptiveInputs u;
    u.u_theta = theta_.update(perf.theta_err, regressor_p(perf.theta_err));
    u.u_phi = phi_.update(perf.phi_err, regressor_p(perf.phi_err));
    RcacChannel<2>* rate[3] = {&wx_, &wy_, &wz_};
    for (int i = 0; i < 3; ++i) {
      const double z = perf.omega_err[i];
      const Eigen::Vector2d reg = regressor_pi(z, integ_[i], dt, integ_limit_[i]);
      u.u_omega[i] = rate[i]->update(z, reg);
    }
    return u;
  }

  bool any_frozen() const {
    return theta_.frozen() || phi_.frozen() || wx_.frozen() || wy_.frozen() || wz_.frozen();
  }

  const RcacChannel<1>& theta_channel() const { return theta_; }
  const RcacChannel<1>& phi_channel() const { return phi_; }
  const RcacChannel<2>& omega_channel(int axis) const {
    return axis == 0 ? wx_ : (axis == 1 ? wy_ : wz_);
  }

 private:
  RcacChannel<1> theta_, phi_;
  RcacChannel<2> wx_, wy_, wz_;
  Vec3 integ_{0, 0, 0};
  Vec3 integ_limit_{0.4, 0.4, 0.4};
};

}  // namespace fcsim
