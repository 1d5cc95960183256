#include "fso_acq/acqstats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fso_acq/constants.hpp"
#include "fso_acq/linkbudget.hpp"

namespace fso_acq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// (1-p)^n via expm1/log1p, exact at the endpoints.
double pow_one_minus(double p, double n) {
  if (p >= 1.0) return 0.0;
  if (p == 0.0) return 1.0;
  return std::exp(n * std::log1p(-p));
}

// Truncated-geometric pmf normalizer for the given mode.
double pmf_normalizer(double p_n, int n0, NormalizationMode mode) {
  double tail = pow_one_minus(p_n, n0);  // (1-p)^N0
  if (mode == NormalizationMode::Corrected) {
    return 1.0 - tail;
  }
  return (1.0 - p_n) - tail;
}

// Combined per-axis miss variances (firing + UAV location) for the sphere.
void combined_axis_variances(const UncertaintySphere& s, double& v1, double& v2) {
  double d2 = s.distance_m * s.distance_m;
  v1 = s.firing_var_1_m2 + s.sigma_e_az * s.sigma_e_az * d2;
  v2 = s.firing_var_2_m2 + s.sigma_e_el * s.sigma_e_el * d2;
}

}  // namespace

double coverage_prob_circular(double fso_radius_m, double uav_radius_m,
                              double total_var_m2) {
  if (!(fso_radius_m > uav_radius_m)) {
    throw std::domain_error(
        "coverage_prob_circular: geometric infeasibility, requires fso_radius > uav_radius");
  }
  if (total_var_m2 < 0.0) {
    throw std::domain_error("coverage_prob_circular: total_var must be >= 0");
  }
  if (total_var_m2 == 0.0) return 1.0;
  double margin = fso_radius_m - uav_radius_m;
  return -std::expm1(-margin * margin / (2.0 * total_var_m2));
}

HoytParams hoyt_params(double azimuth_rad, double elevation_rad, double var1_m2,
                       double var2_m2) {
  if (!(var1_m2 > 0.0) || !(var2_m2 > 0.0)) {
    throw std::domain_error("hoyt_params: variances must be > 0");
  }
  double ca = std::cos(azimuth_rad);
  double ce = std::cos(elevation_rad);
  double r1 = (ca / ce) * (ca / ce);
  double r2 = (ce / ca) * (ce / ca);
  HoytParams h;
  h.q = std::min(r1, r2);
  h.omega_m2 = var1_m2 + var2_m2;
  return h;
}

double hoyt_pdf(double x, const HoytParams& h) {
  double q2 = h.q * h.q;
  double a = (1.0 + q2) * (1.0 + q2) / (4.0 * q2 * h.omega_m2);
  double b = (1.0 - q2 * q2) / (4.0 * q2 * h.omega_m2);
  double x2 = x * x;
  double lead = (1.0 + q2) / (h.q * h.omega_m2) * x;
  double by = b * x2;
  if (by > 30.0) {
    // exp(-a x^2) I0(b x^2) written as exp(-(a-b) x^2) * e^{-y} I0(y).
    return lead * std::exp(-(a - b) * x2) * specfun::bessel_i0_scaled(by);
  }
  return lead * std::exp(-a * x2) * specfun::bessel_i0(by);
}

double coverage_prob_elliptical(double fso_radius_m, double uav_radius_m,
                                const HoytParams& hoyt,
                                const specfun::QuadratureSpec& quad) {
  if (!(fso_radius_m > uav_radius_m)) {
    throw std::domain_error(
        "coverage_prob_elliptical: geometric infeasibility, requires fso_radius > uav_radius");
  }
  double upper = fso_radius_m - uav_radius_m;
  // Beyond exp(-a x^2) = e^-700 the integrand underflows; capping the interval
  // there keeps the quadrature sampling inside the pdf's support.
  double q2 = hoyt.q * hoyt.q;
  double a = (1.0 + q2) * (1.0 + q2) / (4.0 * q2 * hoyt.omega_m2);
  upper = std::min(upper, std::sqrt(700.0 / a));
  double mass = specfun::integrate(
      [&hoyt](double x) { return hoyt_pdf(x, hoyt); }, 0.0, upper, quad);
  return std::min(mass, 1.0);
}

double received_energy_coincident(const SystemParams& p, double alpha) {
  if (!p.validated) {
    throw std::invalid_argument("received_energy_coincident: params must be validated");
  }
  double r = p.uav_aperture_radius_m;
  double rf = p.fso_beam_radius_m;
  double per_pulse = (1.0 - alpha) * p.total_energy_j / p.max_pulses;
  return per_pulse * -std::expm1(-r * r / (2.0 * rf * rf));
}

double received_energy_point(const SystemParams& p, double alpha,
                             double total_var_m2) {
  if (!p.validated) {
    throw std::invalid_argument("received_energy_point: params must be validated");
  }
  if (total_var_m2 < 0.0) {
    throw std::domain_error("received_energy_point: total_var must be >= 0");
  }
  if (total_var_m2 == 0.0) {
    return received_energy_coincident(p, alpha);
  }
  double rf2 = p.fso_beam_radius_m * p.fso_beam_radius_m;
  double r2 = p.uav_aperture_radius_m * p.uav_aperture_radius_m;
  double v = total_var_m2;
  double a0 = -std::expm1(-rf2 / (2.0 * v));
  double per_pulse = (1.0 - alpha) * p.total_energy_j / p.max_pulses;
  return per_pulse * r2 / (2.0 * a0 * (rf2 + v)) * -std::expm1(-(v + rf2) / (2.0 * v));
}

double detection_prob(double signal_charge, double threshold, double noise_std) {
  if (!(noise_std > 0.0)) {
    throw std::domain_error("detection_prob: noise_std must be > 0");
  }
  return specfun::gaussian_q((threshold - signal_charge) / noise_std);
}

AcqProbabilities pulse_success_prob(const SystemParams& p, double alpha) {
  if (!p.validated) {
    throw std::invalid_argument("pulse_success_prob: params must be validated");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("pulse_success_prob: alpha must be in (0,1)");
  }
  UncertaintySphere sphere = uncertainty_sphere(p, alpha);
  double v1, v2;
  combined_axis_variances(sphere, v1, v2);

  AcqProbabilities out;
  out.n0 = p.max_pulses;
  double scalar_var;  // effective circular variance for the energy model
  if (p.sphere_shape == SphereShape::Circular) {
    scalar_var = v1;
    out.p_coverage = coverage_prob_circular(p.fso_beam_radius_m,
                                            p.uav_aperture_radius_m, scalar_var);
  } else {
    scalar_var = 0.5 * (v1 + v2);
    HoytParams h = hoyt_params(p.azimuth_rad, p.elevation_rad, v1, v2);
    out.p_coverage = coverage_prob_elliptical(p.fso_beam_radius_m,
                                              p.uav_aperture_radius_m, h);
  }

  double e_uav = p.energy_model == EnergyModel::CoincidentCenters
                     ? received_energy_coincident(p, alpha)
                     : received_energy_point(p, alpha, scalar_var);
  out.p_detect_given_coverage = detection_prob(
      p.photoconversion_efficiency * e_uav, p.threshold_resolved, p.noise_std);

  out.p_pulse = out.p_coverage * out.p_detect_given_coverage;
  out.p_attempt = 1.0 - pow_one_minus(out.p_pulse, p.max_pulses);
  return out;
}

double expected_pulses(double p_n, int n0, NormalizationMode mode) {
  if (n0 < 2) {
    throw std::domain_error("expected_pulses: n0 must be >= 2");
  }
  if (mode == NormalizationMode::PaperFaithful) {
    if (!(p_n > 0.0 && p_n < 1.0)) {
      throw std::domain_error(
          "expected_pulses: PaperFaithful normalizer divides by zero at p_n in {0,1}");
    }
  } else if (!(p_n > 0.0 && p_n <= 1.0)) {
    throw std::domain_error("expected_pulses: requires p_n in (0,1]");
  }
  if (p_n == 1.0) return 1.0;  // Corrected mode: first pulse always succeeds
  // 1 - (1-p)^n0 * (1 + n0*p), kept in expm1 form for small p.
  double numerator = -std::expm1(n0 * std::log1p(-p_n) + std::log1p(n0 * p_n));
  return numerator / (p_n * pmf_normalizer(p_n, n0, mode));
}

double expected_attempts(double p_x) {
  if (p_x < 0.0 || p_x > 1.0) {
    throw std::domain_error("expected_attempts: p_x must be in [0,1]");
  }
  if (p_x == 0.0) return kInf;
  return 1.0 / p_x;
}

AcqTimeModel time_model_from_pulse_prob(double p_n, int n0, double t1_s,
                                        double t2_s, NormalizationMode mode) {
  AcqTimeModel m;
  m.t1_s = t1_s;
  m.t2_s = t2_s;
  m.n0 = n0;
  m.p_pulse = p_n;
  m.normalization_mode = mode;
  if (p_n <= 0.0) {
    m.expected_attempts = kInf;
    m.expected_pulses = 0.5 * (n0 + 1);  // limiting uniform pmf
    m.expected_time_s = kInf;
    return m;
  }
  if (mode == NormalizationMode::PaperFaithful && p_n >= 1.0) {
    // PaperFaithful normalizer vanishes; E[N] and the CDF diverge.
    m.expected_attempts = 1.0;
    m.expected_pulses = kInf;
    m.expected_time_s = kInf;
    return m;
  }
  double p_x = 1.0 - pow_one_minus(p_n, n0);
  m.expected_attempts = expected_attempts(p_x);
  m.expected_pulses = expected_pulses(p_n, n0, mode);
  m.expected_time_s = (t1_s + n0 * t2_s) * m.expected_attempts +
                      t2_s * m.expected_pulses - n0 * t2_s;
  return m;
}

AcqTimeModel expected_time(const SystemParams& p, double alpha) {
  AcqProbabilities ap = pulse_success_prob(p, alpha);
  return time_model_from_pulse_prob(ap.p_pulse, p.max_pulses, p.t1_s, p.t2_s,
                                    p.normalization_mode);
}

double acq_time_cdf(const AcqTimeModel& m, double t_s) {
  if (t_s < 0.0) return 0.0;
  double p_n = m.p_pulse;
  if (p_n <= 0.0) return 0.0;
  if (m.normalization_mode == NormalizationMode::PaperFaithful && p_n >= 1.0) {
    throw std::domain_error(
        "acq_time_cdf: PaperFaithful normalizer divides by zero at p_n = 1");
  }
  double big_m = m.t1_s / m.t2_s + m.n0;
  double z = t_s / m.t2_s + m.n0;
  double kf = std::floor((z - 1.0) / big_m);
  if (kf < 1.0) return 0.0;  // below the support floor z = M+1
  double j = std::floor(z - kf * big_m);
  if (j > m.n0) j = m.n0;
  if (j < 1.0) j = 1.0;
  double p_x = 1.0 - pow_one_minus(p_n, m.n0);
  double a = pmf_normalizer(p_n, m.n0, m.normalization_mode);
  double attempts_tail = pow_one_minus(p_x, kf - 1.0);  // (1-p_X)^(k-1)
  double pulses_tail = pow_one_minus(p_n, j);           // (1-p_N)^j
  return p_x / a * (1.0 - attempts_tail * pulses_tail);
}

double acq_time_cdf(const SystemParams& p, double alpha, double t_s) {
  AcqProbabilities ap = pulse_success_prob(p, alpha);
  AcqTimeModel m = time_model_from_pulse_prob(ap.p_pulse, p.max_pulses, p.t1_s,
                                              p.t2_s, p.normalization_mode);
  return acq_time_cdf(m, t_s);
}

double pmf_n(int k, double p_n, int n0, NormalizationMode mode) {
  if (k < 1 || k > n0) return 0.0;
  if (p_n <= 0.0) return 0.0;
  double a = pmf_normalizer(p_n, n0, mode);
  return pow_one_minus(p_n, k - 1.0) * p_n / a;
}

double pmf_z(int k, double n, const AcqTimeModel& m) {
  if (k < 1) return 0.0;
  double big_m = m.t1_s / m.t2_s + m.n0;
  double offset = n - k * big_m;
  double rounded = std::round(offset);
  if (std::fabs(offset - rounded) > 1e-9 || rounded < 1.0 || rounded > m.n0) {
    return 0.0;
  }
  double p_x = 1.0 - pow_one_minus(m.p_pulse, m.n0);
  return pow_one_minus(p_x, k - 1.0) * p_x *
         pmf_n(static_cast<int>(rounded), m.p_pulse, m.n0, m.normalization_mode);
}

}  // namespace fso_acq
