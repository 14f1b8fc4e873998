#include <catch2/catch_amalgamated.hpp>

#include "fcsim/defaults.hpp"
#include "fcsim/guidance.hpp"
#include "fcsim/position.hpp"
#include "fcsim/tecs.hpp"

using namespace fcsim;

namespace {

TecsGains test_tecs_gains() {
  TecsGains k = default_position_gains().tecs;
  k.trim_throttle = 0.4;
  k.trim_pitch = 0.03;
  return k;
}

}  // namespace

TEST_CASE("altitude deficit raises both throttle and pitch") {
  const TecsGains k = test_tecs_gains();
  TecsState state;
  Flags flags = 0;
  const TecsOutput out = tecs_update(30.0, 20.0, 15.0, 15.0, 0.0, 0.0, state, k, kGravity,
                                     0.004, flags);
  CHECK(out.throttle > k.trim_throttle);
  CHECK(out.theta_s > k.trim_pitch);
  CHECK(flags == 0);
}

TEST_CASE("airspeed setpoint increase adds energy but pitches down") {
  const TecsGains k = test_tecs_gains();
  TecsState state;
  Flags flags = 0;
  // 2 m/s fast setpoint at matched altitude: total energy must rise (throttle up) while
  // the balance shifts toward kinetic (pitch down).
  const TecsOutput out = tecs_update(20.0, 20.0, 17.0, 15.0, 0.0, 0.0, state, k, kGravity,
                                     0.004, flags);
  CHECK(out.throttle > k.trim_throttle);
  CHECK(out.theta_s < k.trim_pitch);
}

TEST_CASE("energy controller outputs match the hand formula") {
  const TecsGains k = test_tecs_gains();
  TecsState state;
  state.energy_integ = 12.0;
  state.balance_integ = -8.0;
  Flags flags = 0;

  const double h_s = 25.0, h_m = 22.0, v_ts = 15.0, v_t = 14.0;
  const double climb = 0.8, accel = 0.2;
  const TecsOutput out =
      tecs_update(h_s, h_m, v_ts, v_t, climb, accel, state, k, kGravity, 0.004, flags);

  const double pot = kGravity * (h_s - h_m);
  const double kin = 0.5 * (v_ts * v_ts - v_t * v_t);
  const double e_rate = kGravity * climb + v_t * accel;
  const double b_rate = kGravity * climb - v_t * accel;
  const double thr = k.trim_throttle + k.throttle_p * (pot + kin) + k.throttle_i * 12.0 -
                     k.throttle_damp * e_rate;
  const double pitch = k.trim_pitch + k.pitch_p * (pot - kin) + k.pitch_i * (-8.0) -
                       k.pitch_damp * b_rate;
  CHECK(std::abs(out.throttle - clamp(thr, 0.0, 1.0)) < 1e-15);
  CHECK(std::abs(out.theta_s - clamp(pitch, k.theta_min, k.theta_max)) < 1e-15);
  // Strictly proper: integrators advance only after the output is formed.
  CHECK(std::abs(state.energy_integ - (12.0 + (pot + kin) * 0.004)) < 1e-12);
  CHECK(std::abs(state.balance_integ - (-8.0 + (pot - kin) * 0.004)) < 1e-12);
}

TEST_CASE("underspeed forces full throttle and pitch-down with integrators held") {
  const TecsGains k = test_tecs_gains();  // v_min = 8
  TecsState state;
  state.energy_integ = 5.0;
  state.balance_integ = -3.0;
  Flags flags = 0;
  const TecsOutput out =
      tecs_update(20.0, 20.0, 15.0, 7.9, 0.0, 0.0, state, k, kGravity, 0.004, flags);
  CHECK(out.throttle == 1.0);
  CHECK(out.theta_s == k.underspeed_pitch);
  CHECK((flags & flag::kUnderspeed) != 0);
  CHECK(state.energy_integ == 5.0);
  CHECK(state.balance_integ == -3.0);
}

TEST_CASE("energy integrators saturate at their limits") {
  TecsGains k = test_tecs_gains();
  k.integ_limit_throttle = 2.0;
  k.integ_limit_pitch = 1.0;
  TecsState state;
  Flags flags = 0;
  for (int i = 0; i < 100000; ++i)
    tecs_update(100.0, 0.0, 15.0, 15.0, 0.0, 0.0, state, k, kGravity, 0.004, flags);
  CHECK(state.energy_integ == 2.0);
  CHECK(state.balance_integ == 1.0);
}

TEST_CASE("pitch clamp raises the flag") {
  const TecsGains k = test_tecs_gains();
  TecsState state;
  Flags flags = 0;
  const TecsOutput out =
      tecs_update(500.0, 0.0, 15.0, 15.0, 0.0, 0.0, state, k, kGravity, 0.004, flags);
  CHECK(out.theta_s == k.theta_max);
  CHECK((flags & flag::kPitchClamp) != 0);
}

TEST_CASE("damping opposes the measured energy rates") {
  const TecsGains k = test_tecs_gains();
  TecsState state;
  Flags flags = 0;
  // Zero errors, pure climb: both channels must back off their trim values.
  const TecsOutput out =
      tecs_update(20.0, 20.0, 15.0, 15.0, 2.0, 0.0, state, k, kGravity, 0.004, flags);
  CHECK(std::abs(out.throttle - (k.trim_throttle - k.throttle_damp * kGravity * 2.0)) < 1e-15);
  CHECK(std::abs(out.theta_s - (k.trim_pitch - k.pitch_damp * kGravity * 2.0)) < 1e-15);
}

// ---------------------------------------------------------------------------------------

namespace {

GuidanceConfig guidance_cfg() { return default_position_gains().guidance; }

}  // namespace

TEST_CASE("on the line with aligned velocity the bank is level") {
  const PathSegment line = PathSegment::line(Vec3(0, 0, 0), Vec3(100, 0, 0));
  Flags flags = 0;
  const double phi = lateral_guidance(Vec3(50, 0, -20), Vec3(15, 0, 0), line,
                                      guidance_cfg(), kGravity, 0.3, flags);
  CHECK(std::abs(phi) < 1e-12);
  CHECK(flags == 0);
}

TEST_CASE("lateral offset banks back toward the line") {
  const PathSegment line = PathSegment::line(Vec3(0, 0, 0), Vec3(100, 0, 0));
  Flags flags = 0;
  // 5 m east of a northbound track, flying north: must bank left (negative).
  const double east = lateral_guidance(Vec3(50, 5, -20), Vec3(15, 0, 0), line,
                                       guidance_cfg(), kGravity, 0.0, flags);
  CHECK(east < -0.01);
  // Mirror image banks right.
  const double west = lateral_guidance(Vec3(50, -5, -20), Vec3(15, 0, 0), line,
                                       guidance_cfg(), kGravity, 0.0, flags);
  CHECK(west > 0.01);
  CHECK(std::abs(east + west) < 1e-12);
}

TEST_CASE("offsets beyond the lookahead still steer toward the line") {
  const PathSegment line = PathSegment::line(Vec3(0, 0, 0), Vec3(100, 0, 0));
  Flags flags = 0;
  // 80 m east is outside the lookahead circle; the reference saturates at the projection.
  const double phi = lateral_guidance(Vec3(50, 80, -20), Vec3(15, 0, 0), line,
                                      guidance_cfg(), kGravity, 0.0, flags);
  CHECK(std::isfinite(phi));
  CHECK(phi < 0.0);
}

TEST_CASE("steady loiter bank matches turn kinematics within two percent") {
  const GuidanceConfig cfg = guidance_cfg();
  const double radius = 30.0, speed = 15.0;
  const PathSegment arc = PathSegment::arc(Vec3(0, 0, 0), radius, +1);
  Flags flags = 0;
  // Clockwise from above at the northern point: heading east, on the circle.
  const double phi = lateral_guidance(Vec3(radius, 0, -20), Vec3(0, speed, 0), arc, cfg,
                                      kGravity, 0.0, flags);
  const double ideal = std::atan(speed * speed / (kGravity * radius));
  CHECK(phi > 0.0);
  CHECK(std::abs(phi - ideal) / ideal < 0.02);

  // Opposite direction at the same point: mirrored bank.
  const PathSegment ccw = PathSegment::arc(Vec3(0, 0, 0), radius, -1);
  const double phi_ccw = lateral_guidance(Vec3(radius, 0, -20), Vec3(0, -speed, 0), ccw,
                                          cfg, kGravity, 0.0, flags);
  CHECK(std::abs(phi_ccw + phi) < 1e-12);
}

TEST_CASE("degenerate geometry holds the fallback bank and flags") {
  const GuidanceConfig cfg = guidance_cfg();
  const PathSegment arc = PathSegment::arc(Vec3(10, 10, 0), 30.0, +1);

  SECTION("no ground speed") {
    Flags flags = 0;
    const double phi = lateral_guidance(Vec3(40, 10, -20), Vec3(0.2, 0.1, 0), arc, cfg,
                                        kGravity, 0.123, flags);
    CHECK(phi == 0.123);
    CHECK((flags & flag::kGuidanceDegenerate) != 0);
  }
  SECTION("standing on the arc center") {
    Flags flags = 0;
    const double phi = lateral_guidance(Vec3(10, 10, -20), Vec3(5, 0, 0), arc, cfg,
                                        kGravity, -0.2, flags);
    CHECK(phi == -0.2);
    CHECK((flags & flag::kGuidanceDegenerate) != 0);
  }
}

TEST_CASE("bank command clamps at the configured limit") {
  const GuidanceConfig cfg = guidance_cfg();
  const PathSegment line = PathSegment::line(Vec3(0, 0, 0), Vec3(100, 0, 0));
  Flags flags = 0;
  // Flying fast, perpendicular to the track: demanded acceleration far exceeds the limit.
  const double phi = lateral_guidance(Vec3(0, 40, -20), Vec3(0, 20, 0), line, cfg,
                                      kGravity, 0.0, flags);
  CHECK(std::abs(phi) == cfg.bank_limit);
  CHECK((flags & flag::kBankClamp) != 0);
}

TEST_CASE("path element validation") {
  CHECK_THROWS_AS(PathSegment::line(Vec3(1, 2, 0), Vec3(1, 2, -5)), SimError);
  CHECK_THROWS_AS(PathSegment::arc(Vec3(0, 0, 0), 0.0, 1), SimError);
  CHECK_THROWS_AS(PathSegment::arc(Vec3(0, 0, 0), 10.0, 2), SimError);
  CHECK_NOTHROW(PathSegment::arc(Vec3(0, 0, 0), 10.0, -1));
}

// ---------------------------------------------------------------------------------------

TEST_CASE("position loop wires the energy controller and guidance together") {
  const PositionGains k = default_position_gains();
  const PathSegment line = PathSegment::line(Vec3(0, 0, 0), Vec3(100, 0, 0));
  PositionSetpoint sp;
  sp.h_s = 25.0;
  sp.v_ts = 15.0;

  Measurements m;
  m.r_m = Vec3(50, 0, -20);
  m.h_m = 20.0;
  m.ground_vel = Vec3(15, 0, -1.0);  // climbing at 1 m/s
  m.v_true = 15.0;

  PositionState state;
  Flags flags = 0;
  const PositionOutput out = position_update(m, sp, line, state, k, kGravity, 0.004, flags);

  // First call: no previous airspeed, so the acceleration estimate is zero.
  TecsState ref_state;
  Flags f2 = 0;
  const TecsOutput ref =
      tecs_update(25.0, 20.0, 15.0, 15.0, 1.0, 0.0, ref_state, k.tecs, kGravity, 0.004, f2);
  CHECK(out.throttle == ref.throttle);
  CHECK(out.theta_s == ref.theta_s);
  CHECK(std::abs(out.phi_s) < 1e-12);  // on track
  CHECK(state.last_v_true == 15.0);
  CHECK(state.last_phi_s == out.phi_s);

  // Second call: finite-difference airspeed acceleration feeds the damping terms.
  Measurements m2 = m;
  m2.v_true = 15.004;
  Flags f3 = 0;
  const PositionOutput out2 = position_update(m2, sp, line, state, k, kGravity, 0.004, f3);
  TecsState ref_state2 = ref_state;
  Flags f4 = 0;
  const TecsOutput ref2 = tecs_update(25.0, 20.0, 15.0, 15.004, 1.0, (15.004 - 15.0) / 0.004,
                                      ref_state2, k.tecs, kGravity, 0.004, f4);
  CHECK(out2.throttle == ref2.throttle);
  CHECK(out2.theta_s == ref2.theta_s);
}

TEST_CASE("degenerate guidance holds the previous bank through the position loop") {
  const PositionGains k = default_position_gains();
  const PathSegment line = PathSegment::line(Vec3(0, 0, 0), Vec3(100, 0, 0));
  PositionSetpoint sp;
  sp.h_s = 20.0;
  sp.v_ts = 15.0;

  Measurements m;
  m.r_m = Vec3(50, 3, -20);
  m.h_m = 20.0;
  m.ground_vel = Vec3(0, 0, 0);  // no ground speed at all
  m.v_true = 15.0;

  PositionState state;
  state.last_phi_s = 0.31;
  Flags flags = 0;
  const PositionOutput out = position_update(m, sp, line, state, k, kGravity, 0.004, flags);
  CHECK(out.phi_s == 0.31);
  CHECK((flags & flag::kGuidanceDegenerate) != 0);
}
