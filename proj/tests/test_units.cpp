#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "core/constants.hpp"
#include "core/errors.hpp"
#include "doctest.h"

using namespace qbouncer;

TEST_CASE("defaults are the pinned reference values") {
  const Constants c = make_constants();
  CHECK(c.mass == 1.67492749804e-27);
  CHECK(c.gravity == 9.81);
  CHECK(c.hbar == 1.054571817e-34);
  CHECK(c.light_speed == 299792458.0);
  CHECK(c.magnetic_moment == 9.6623651e-27);
}

TEST_CASE("overrides replace only the named field") {
  ConstantOverrides o;
  o.gravity = 9.80665;
  const Constants c = make_constants(o);
  CHECK(c.gravity == 9.80665);
  CHECK(c.mass == make_constants().mass);
  CHECK(c.hbar == make_constants().hbar);
}

TEST_CASE("invalid overrides are rejected by name") {
  ConstantOverrides o;
  o.mass = -1.0;
  CHECK_THROWS_WITH_AS(make_constants(o), "m must be positive and finite",
                       ValidationError);
  ConstantOverrides o2;
  o2.gravity = 0.0;
  CHECK_THROWS_AS(make_constants(o2), ValidationError);
  ConstantOverrides o3;
  o3.hbar = std::nan("");
  CHECK_THROWS_AS(make_constants(o3), ValidationError);
}

TEST_CASE("derived scales against the arbitrary-precision oracle") {
  const Scales s = derive_scales(make_constants());
  CHECK(s.length / 5.86795936537984017e-6 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.energy / 9.64166677498537709e-32 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.time / 1.09376505288070319e-3 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.momentum / 1.79716959735922827e-29 == doctest::Approx(1.0).epsilon(1e-14));
  // eps0 in peV
  CHECK(s.energy / 1.602176634e-19 * 1e12 ==
        doctest::Approx(0.601785506689980669).epsilon(1e-12));
}

TEST_CASE("scale identities hold to machine precision") {
  const Constants c = make_constants();
  const Scales s = derive_scales(c);
  CHECK(c.mass * c.gravity * s.length / s.energy ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.time * s.energy / c.hbar == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.momentum * s.length / c.hbar == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("lambda scales as g^(-1/3)") {
  ConstantOverrides o;
  o.gravity = 8.0 * 9.81;
  const Scales s8 = derive_scales(make_constants(o));
  const Scales s1 = derive_scales(make_constants());
  CHECK(s8.length / (0.5 * s1.length) == doctest::Approx(1.0).epsilon(1e-14));
}
