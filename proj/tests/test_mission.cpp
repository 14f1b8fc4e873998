#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fcsim/mission.hpp"

using namespace fcsim;

namespace {

Measurements at(double n, double e, double h, double vn, double ve, double t,
                double climb = 0.0) {
  Measurements m;
  m.r_m = Vec3(n, e, -h);
  m.h_m = h;
  m.ground_vel = Vec3(vn, ve, -climb);
  m.v_ground = std::hypot(vn, ve);
  m.v_true = m.v_ground;
  m.t = t;
  return m;
}

}  // namespace

TEST_CASE("loiter capture requires proximity and closing velocity") {
  const Mission ms = sim_profile();  // center (250, 30), R 30, capture factor 1.5
  PhaseState ps;

  SECTION("inside the capture radius but opening keeps climbing") {
    const MissionOutput out = mission_update(at(250, -14, 20, 0, -10, 5.0), ms, ps);
    CHECK(out.phase == Phase::Climb);
  }
  SECTION("closing but outside the capture radius keeps climbing") {
    const MissionOutput out = mission_update(at(250, -16.5, 20, 0, 10, 5.0), ms, ps);
    CHECK(out.phase == Phase::Climb);  // 46.5 m from the center > 45 m
  }
  SECTION("inside and closing captures") {
    const MissionOutput out = mission_update(at(250, -14, 20, 0, 10, 5.0), ms, ps);
    CHECK(out.phase == Phase::Loiter);
    CHECK(ps.entry_time == 5.0);
    CHECK(out.segment.kind == PathSegment::Kind::Arc);
    CHECK(out.segment.radius == ms.loiter_radius);
  }
}

TEST_CASE("altitude setpoint is continuous at loiter entry") {
  const Mission ms = sim_profile();
  PhaseState ps;
  const MissionOutput before = mission_update(at(250, -20, 18, 0, 10, 4.0), ms, ps);
  REQUIRE(before.phase == Phase::Climb);
  const MissionOutput after = mission_update(at(250, -14, 18, 0, 10, 4.1), ms, ps);
  REQUIRE(after.phase == Phase::Loiter);
  CHECK(before.setpoint.h_s == ms.climb_altitude);
  CHECK(after.setpoint.h_s == ms.climb_altitude);
}

TEST_CASE("loiter exit is timed and hands over at the working altitude") {
  const Mission ms = sim_profile();
  PhaseState ps;
  ps.phase = Phase::Loiter;
  ps.entry_time = 10.0;

  const MissionOutput still = mission_update(at(280, 30, 20, 0, 15, 69.9), ms, ps);
  CHECK(still.phase == Phase::Loiter);

  // From any point on the loiter circle the glide setpoint clamps at the working
  // altitude, so the handover is continuous.
  for (int i = 0; i < 16; ++i) {
    PhaseState p2;
    p2.phase = Phase::Loiter;
    p2.entry_time = 10.0;
    const double a = 2.0 * kPi * i / 16.0;
    const double n = ms.loiter_center[0] + ms.loiter_radius * std::cos(a);
    const double e = ms.loiter_center[1] + ms.loiter_radius * std::sin(a);
    const MissionOutput out = mission_update(at(n, e, 20, 0, 15, 70.0), ms, p2);
    REQUIRE(out.phase == Phase::Land);
    REQUIRE(out.setpoint.h_s == ms.climb_altitude);
    REQUIRE(out.segment.kind == PathSegment::Kind::Line);
  }
}

TEST_CASE("glide setpoint ramps down the strip and ends at touchdown") {
  const Mission ms = sim_profile();  // strip (280,60) -> (650,60), slope 0.105
  PhaseState ps;
  ps.phase = Phase::Land;
  ps.entry_time = 70.0;

  double prev = ms.climb_altitude;
  for (double n = 460.0; n <= 640.0; n += 20.0) {
    const double to_go = 650.0 - n;
    const double expect = clamp(0.105 * to_go, 0.0, 20.0);
    PhaseState p2 = ps;
    const MissionOutput out = mission_update(at(n, 60, 15, 15, 0, 80.0), ms, p2);
    REQUIRE(out.phase == Phase::Land);
    REQUIRE(std::abs(out.setpoint.h_s - expect) < 1e-12);
    REQUIRE(out.setpoint.h_s <= prev + 1e-12);
    prev = out.setpoint.h_s;
  }

  const MissionOutput done = mission_update(at(630, 60, 0.9, 15, 0, 95.0), ms, ps);
  CHECK(done.phase == Phase::Done);
}

TEST_CASE("altitude setpoint never jumps along a synthetic fly-through") {
  const Mission ms = sim_profile();
  PhaseState ps;
  double prev_h_s = -1.0;
  bool saw[4] = {false, false, false, false};

  // Parametric tour: out along the climb leg, swing onto the circle, 60 s around it,
  // then down the landing line. Positions are continuous; speeds are ~15 m/s.
  double t = 0.0;
  const double dt = 0.1;
  auto feed = [&](double n, double e, double h, double vn, double ve) {
    const MissionOutput out = mission_update(at(n, e, h, vn, ve, t), ms, ps);
    saw[static_cast<int>(out.phase)] = true;
    if (prev_h_s >= 0.0) {
      REQUIRE(std::abs(out.setpoint.h_s - prev_h_s) < 0.5);
    }
    prev_h_s = out.setpoint.h_s;
    t += dt;
  };

  for (double n = 0.0; n < 236.0; n += 1.5) feed(n, 0, 5 + n * 0.08, 15, 0);
  // ~61 s on the circle so the timed exit fires while still flying it.
  for (double a = -kPi / 2.0; a < -kPi / 2.0 + 30.5; a += 0.05) {
    const double n = ms.loiter_center[0] + 30.0 * std::cos(a);
    const double e = ms.loiter_center[1] + 30.0 * std::sin(a);
    feed(n, e, 20, -15.0 * std::sin(a), 15.0 * std::cos(a));
  }
  for (double n = 280.0; n < 648.0; n += 1.5) {
    const double h = clamp(0.105 * (650.0 - n), 0.5, 20.0);
    feed(n, 60, h, 15, 0);
  }
  CHECK(saw[0]);
  CHECK(saw[1]);
  CHECK(saw[2]);
  CHECK(saw[3]);
}

TEST_CASE("closest point lies on the path and is idempotent") {
  SECTION("line") {
    const PathSegment line = PathSegment::line(Vec3(0, 0, 0), Vec3(100, 50, 0));
    const Vec3 pos(30, 40, -10);
    const Vec3 c = detail::closest_on_segment(pos, line, 17.0);
    CHECK(c[2] == -17.0);
    // Offset from the point to its projection is perpendicular to the track.
    const Vec3 d = pos - c;
    CHECK(std::abs(d[0] * 100.0 + d[1] * 50.0) < 1e-9);
    const Vec3 c2 = detail::closest_on_segment(c, line, 17.0);
    CHECK((c2 - c).head<2>().norm() < 1e-12);
  }
  SECTION("arc") {
    const PathSegment arc = PathSegment::arc(Vec3(10, -5, 0), 30.0, +1);
    const Vec3 pos(60, 20, -10);
    const Vec3 c = detail::closest_on_segment(pos, arc, 20.0);
    CHECK(std::abs((c.head<2>() - arc.center.head<2>()).norm() - 30.0) < 1e-12);
    const Vec3 c2 = detail::closest_on_segment(c, arc, 20.0);
    CHECK((c2 - c).head<2>().norm() < 1e-12);
  }
  SECTION("arc center degenerates to the northern point") {
    const PathSegment arc = PathSegment::arc(Vec3(10, -5, 0), 30.0, +1);
    const Vec3 c = detail::closest_on_segment(Vec3(10, -5, 0), arc, 20.0);
    CHECK(std::abs(c[0] - 40.0) < 1e-12);
    CHECK(std::abs(c[1] - (-5.0)) < 1e-12);
  }
}

TEST_CASE("scripted pilot interpolates and holds the endpoints") {
  const Mission ms = exp_profile();
  const auto& script = ms.climb_script;  // (0, .12, 0, .9) (10, .12, 0, .9) (14, .04, 0, .65)

  const ScriptedCommand before = scripted_pilot(-1.0, script);
  CHECK(before.attitude.theta_s == 0.12);
  CHECK(before.throttle == 0.9);

  const ScriptedCommand mid = scripted_pilot(5.0, script);
  CHECK(mid.attitude.theta_s == 0.12);
  CHECK(mid.throttle == 0.9);

  const ScriptedCommand interp = scripted_pilot(12.0, script);
  CHECK(std::abs(interp.attitude.theta_s - 0.08) < 1e-15);
  CHECK(std::abs(interp.throttle - 0.775) < 1e-15);

  const ScriptedCommand after = scripted_pilot(20.0, script);
  CHECK(after.attitude.theta_s == 0.04);
  CHECK(after.throttle == 0.65);

  CHECK_THROWS_AS(scripted_pilot(1.0, std::vector<ScriptPoint>{}), SimError);
}

TEST_CASE("pilot mode follows the mission profile") {
  SECTION("fully autonomous profile stays in mission mode") {
    const Mission ms = sim_profile();
    PhaseState ps;
    CHECK(mission_update(at(10, 0, 10, 15, 0, 1.0), ms, ps).mode == PilotMode::Mission);
    ps.phase = Phase::Land;
    ps.entry_time = 0.0;
    CHECK(mission_update(at(300, 60, 15, 15, 0, 80.0), ms, ps).mode == PilotMode::Mission);
  }
  SECTION("bracketed profile hands the non-loiter phases to the script") {
    const Mission ms = exp_profile();
    PhaseState ps;
    CHECK(mission_update(at(10, 0, 10, 15, 0, 1.0), ms, ps).mode == PilotMode::Stabilized);
    PhaseState loiter;
    loiter.phase = Phase::Loiter;
    loiter.entry_time = 0.0;
    CHECK(mission_update(at(220, 25, 20, 0, 12, 10.0), ms, loiter).mode ==
          PilotMode::Mission);
    PhaseState land;
    land.phase = Phase::Land;
    land.entry_time = 0.0;
    CHECK(mission_update(at(300, 60, 15, 12, 0, 80.0), ms, land).mode ==
          PilotMode::Stabilized);
  }
}

TEST_CASE("mission validation rejects degenerate geometry") {
  auto broken = [](auto mutate) {
    Mission ms = sim_profile();
    mutate(ms);
    return ms;
  };
  CHECK_THROWS_AS(broken([](Mission& m) { m.loiter_radius = 0.0; }).validate(), SimError);
  CHECK_THROWS_AS(broken([](Mission& m) { m.loiter_duration = 0.0; }).validate(), SimError);
  CHECK_THROWS_AS(broken([](Mission& m) { m.loiter_direction = 2; }).validate(), SimError);
  CHECK_THROWS_AS(broken([](Mission& m) { m.land_p1 = m.land_p0; }).validate(), SimError);
  CHECK_THROWS_AS(broken([](Mission& m) { m.target = m.launch; }).validate(), SimError);
  CHECK_THROWS_AS(broken([](Mission& m) { m.cruise_airspeed = 0.0; }).validate(), SimError);
  CHECK_THROWS_AS(broken([](Mission& m) {
                    m.stabilized_brackets = true;
                    m.climb_script.clear();
                  }).validate(),
                  SimError);
  CHECK_NOTHROW(sim_profile().validate());
  CHECK_NOTHROW(exp_profile().validate());
}
