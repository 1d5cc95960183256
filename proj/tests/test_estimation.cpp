#include <doctest.h>

#include <cmath>

#include "fso_acq/constants.hpp"
#include "fso_acq/estimation.hpp"
#include "fso_acq/linkbudget.hpp"
#include "fso_acq/specfun.hpp"

using namespace fso_acq;

TEST_CASE("centroid variance bound endpoints") {
  // No photon detected: estimate pinned to the array center.
  CHECK(centroid_variance_bound(0.0, 2.0, 1.0) == 1.0);
  // Worked value e^{-1} (|A|/2 + Ei(1) - gamma), frozen from the Ei oracle.
  CHECK(centroid_variance_bound(1.0, 2.0, 1.0) ==
        doctest::Approx(0.85271).epsilon(1e-4));
  CHECK(centroid_variance_bound(1.0, 2.0, 1.0) ==
        doctest::Approx(std::exp(-1.0) *
                        (1.0 + specfun::exp_integral_ei(1.0) - kEulerGamma)));
  CHECK_THROWS_AS(centroid_variance_bound(-1.0, 2.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(centroid_variance_bound(1.0, 0.0, 1.0), std::domain_error);
}

TEST_CASE("centroid variance bound asymptotics and continuity") {
  // Photon-rich limit decays like rho^2 / lambda.
  double b = centroid_variance_bound(1e6, 2.0, 1.0);
  CHECK(b < 1e-6 * (2.0 / 2.0 + 1.0));
  CHECK(b == doctest::Approx(1e-6).epsilon(1e-5));
  // Continuous at 0+.
  CHECK(centroid_variance_bound(1e-12, 2.0, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-11));
  // No overflow at the baseline photon counts (~2.5e6).
  CHECK(std::isfinite(centroid_variance_bound(2.5e6, 1e-6, 1e-4)));
}

TEST_CASE("angle error propagation") {
  CHECK(angle_error_variance_bound(0.0, 1e-3, 4e-8) ==
        doctest::Approx(4e-8 / 1e-6));
  CHECK(angle_error_variance_bound(kPi / 3.0, 1e-3, 4e-8) ==
        doctest::Approx(4.0 * angle_error_variance_bound(0.0, 1e-3, 4e-8)));
  double ratio = angle_error_variance_bound(0.6, 1e-3, 1.0) /
                 angle_error_variance_bound(0.1, 1e-3, 1.0);
  CHECK(ratio == doctest::Approx(1.4534).epsilon(1e-3));
  CHECK_THROWS_AS(angle_error_variance_bound(1.6, 1e-3, 1.0), std::domain_error);
  CHECK_THROWS_AS(angle_error_variance_bound(3.0, 1e-3, 1.0), std::domain_error);
}

TEST_CASE("circular uncertainty sphere") {
  SystemParams p = validate(SystemParams{});
  UncertaintySphere s = uncertainty_sphere(p, 0.5);
  CHECK(s.shape == SphereShape::Circular);
  CHECK(s.sigma_e_az == s.sigma_e_el);
  CHECK(s.radius_a_m == s.radius_b_m);
  CHECK(s.radius_a_m == doctest::Approx(3.0 * s.sigma_e_el * p.distance_m));
  CHECK(s.firing_var_1_m2 ==
        doctest::Approx(2.0 * s.sigma_e_el * s.sigma_e_el * p.distance_m *
                        p.distance_m));
  CHECK(s.firing_var_1_m2 == s.firing_var_2_m2);
  // Matches the composed bound explicitly.
  double lambda = link_budget(p, 0.5).mean_photon_count;
  double bound = centroid_variance_bound(lambda, p.array_area_m2, p.spot_radius_m);
  double var = angle_error_variance_bound(p.elevation_rad, p.focal_length_m, bound);
  CHECK(s.sigma_e_el == doctest::Approx(std::sqrt(var)));
}

TEST_CASE("more lidar energy never grows the sphere") {
  SystemParams p = validate(SystemParams{});
  double prev = uncertainty_sphere(p, 0.05).radius_a_m;
  for (double alpha = 0.15; alpha < 1.0; alpha += 0.1) {
    double r = uncertainty_sphere(p, alpha).radius_a_m;
    CHECK(r <= prev);
    prev = r;
  }
  // Photon-rich limit: radii collapse.
  CHECK(uncertainty_sphere(p, 0.9).radius_a_m < 0.05);
}

TEST_CASE("elliptical sphere with equal angles degenerates to circular") {
  SystemParams c;
  c.azimuth_rad = 0.3;
  c.elevation_rad = 0.3;
  c.sphere_shape = SphereShape::Circular;
  c = validate(c);
  SystemParams e = c;
  e.sphere_shape = SphereShape::Elliptical;
  e = validate(e);

  UncertaintySphere sc = uncertainty_sphere(c, 0.4);
  UncertaintySphere se = uncertainty_sphere(e, 0.4);
  CHECK(se.sigma_e_az == se.sigma_e_el);
  CHECK(se.sigma_e_az == sc.sigma_e_az);
  CHECK(se.radius_a_m == sc.radius_a_m);
  CHECK(se.radius_b_m == sc.radius_b_m);
  // The firing variances keep the documented factor-2 asymmetry.
  CHECK(sc.firing_var_1_m2 == doctest::Approx(2.0 * se.firing_var_1_m2));
  CHECK(se.firing_var_1_m2 == se.firing_var_2_m2);
}
