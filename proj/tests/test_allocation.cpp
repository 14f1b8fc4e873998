#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fcsim/allocation.hpp"
#include "fcsim/defaults.hpp"

using namespace fcsim;

TEST_CASE("pseudo-inverse is an exact right inverse of the effectiveness matrix") {
  const ControlAllocator alloc(default_airframe(), Environment{});
  const Mat3 prod = alloc.effectiveness() * alloc.pseudo_inverse();
  CHECK((prod - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pure roll demand drives the aileron pair antisymmetrically") {
  const ControlAllocator alloc(default_airframe(), Environment{});
  Flags flags = 0;
  const SurfaceCommand c = alloc.allocate(Vec3(10.0, 0.0, 0.0), 0.5, flags);
  CHECK(std::abs(c.aileron_left + c.aileron_right) < 1e-12);
  CHECK(c.aileron_left > 0.0);  // positive roll accel needs a positive rolling moment
  CHECK(std::abs(c.elevator) < 1e-12);
  CHECK(std::abs(c.rudder) < 1e-12);
  CHECK(flags == 0);
}

TEST_CASE("allocated surfaces realize the demanded moment inside the authority") {
  const AircraftParams p = default_airframe();
  const ControlAllocator alloc(p, Environment{});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const Vec3 alpha_s(30.0 * u(rng), 30.0 * u(rng), 8.0 * u(rng));
    Flags flags = 0;
    const SurfaceCommand c = alloc.allocate(alpha_s, 0.5, flags);
    REQUIRE(flags == 0);
    Eigen::Vector4d cmd(c.aileron_left, c.aileron_right, c.elevator, c.rudder);
    const Vec3 moment = alloc.effectiveness() * cmd;
    const Vec3 wanted(p.inertia[0] * alpha_s[0], p.inertia[1] * alpha_s[1],
                      p.inertia[2] * alpha_s[2]);
    REQUIRE((moment - wanted).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("saturation clamps the surfaces and raises the flag") {
  const ControlAllocator alloc(default_airframe(), Environment{});
  Flags flags = 0;
  const SurfaceCommand c = alloc.allocate(Vec3(500.0, 0.0, 0.0), 0.5, flags);
  CHECK(c.aileron_left == 1.0);
  CHECK(c.aileron_right == -1.0);
  CHECK((flags & flag::kSurfaceSaturated) != 0);
}

TEST_CASE("throttle passes through and does not raise the surface flag") {
  const ControlAllocator alloc(default_airframe(), Environment{});
  Flags flags = 0;
  CHECK(alloc.allocate(Vec3::Zero(), 0.37, flags).throttle == 0.37);
  CHECK(alloc.allocate(Vec3::Zero(), 1.4, flags).throttle == 1.0);  // clamped
  CHECK(flags == 0);  // throttle clamping is not a surface saturation
}

TEST_CASE("rank-deficient effectiveness is rejected at construction") {
  SECTION("no roll authority") {
    AircraftParams p = default_airframe();
    p.cl_delta_a = 0.0;
    CHECK_THROWS_AS(ControlAllocator(p, Environment{}), SimError);
  }
  SECTION("no pitch authority") {
    AircraftParams p = default_airframe();
    p.cm_delta_e = 0.0;
    CHECK_THROWS_AS(ControlAllocator(p, Environment{}), SimError);
  }
  SECTION("no yaw authority") {
    AircraftParams p = default_airframe();
    p.cn_delta_r = 0.0;
    CHECK_THROWS_AS(ControlAllocator(p, Environment{}), SimError);
  }
}

TEST_CASE("fixed allocation cancels the rate loop's dynamic-pressure scaling") {
  // The rate loop multiplies its PI terms by (V_I0/V_I)^2 while the allocator is built at
  // the cruise dynamic pressure; the realized angular acceleration from surface deflection
  // scales with (V/V0)^2, so the loop gain from rate error to achieved acceleration must
  // be airspeed-independent between the scale clamps.
  const AircraftParams p = default_airframe();
  Environment env;  // rho == rho0, so V_I == V_T
  const ControlAllocator alloc(p, env);

  AttitudeGains g;
  g.k_omega_p = Vec3(5.0, 5.0, 5.0);
  AttitudeConfig cfg;

  const Vec3 rate_err(0.2, -0.1, 0.05);
  Vec3 reference = Vec3::Zero();
  bool have_reference = false;
  for (double v : {10.0, 15.0, 20.0}) {
    RateLoopState state;
    Flags flags = 0;
    const Vec3 alpha_s = angular_accel_setpoint(rate_err, Vec3::Zero(), v, v, 15.0, 15.0,
                                                g, state, Vec3::Zero(), 0.004, cfg, flags);
    SurfaceCommand c = alloc.allocate(alpha_s, 0.0, flags);
    REQUIRE((flags & flag::kSurfaceSaturated) == 0);
    // Achieved acceleration at airspeed v: moments scale with qbar(v)/qbar(v0).
    const double qscale = (v * v) / (15.0 * 15.0);
    Eigen::Vector4d cmd(c.aileron_left, c.aileron_right, c.elevator, c.rudder);
    const Vec3 moment = qscale * (alloc.effectiveness() * cmd);
    const Vec3 achieved(moment[0] / p.inertia[0], moment[1] / p.inertia[1],
                        moment[2] / p.inertia[2]);
    if (!have_reference) {
      reference = achieved;
      have_reference = true;
    } else {
      REQUIRE((achieved - reference).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}
