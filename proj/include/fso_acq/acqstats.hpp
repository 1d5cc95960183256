#pragma once

#include "fso_acq/estimation.hpp"
#include "fso_acq/model.hpp"
#include "fso_acq/specfun.hpp"

namespace fso_acq {

/// Per-pulse and per-attempt success probabilities for one (alpha, N0).
struct AcqProbabilities {
  double p_coverage = 0.0;             // P(C)
  double p_detect_given_coverage = 0.0;  // P(D|C)
  double p_pulse = 0.0;                // p_N = P(C) * P(D|C)
  double p_attempt = 0.0;              // p_X = 1 - (1-p_N)^N0
  int n0 = 0;
};

/// Moments of the total acquisition time T = X*T1 + (X-1)*N0*T2 + N*T2,
/// with X geometric(p_attempt) and N truncated geometric(p_pulse) on
/// {1..N0} under the configured normalization.
struct AcqTimeModel {
  double expected_attempts = 0.0;  // E[X], +inf when p_pulse = 0
  double expected_pulses = 0.0;    // E[N]
  double expected_time_s = 0.0;    // E[T], +inf when p_pulse = 0
  double t1_s = 0.0;
  double t2_s = 0.0;
  int n0 = 0;
  double p_pulse = 0.0;
  NormalizationMode normalization_mode = NormalizationMode::Corrected;
};

/// Shape and scale of the miss-distance distribution in the elliptical case.
struct HoytParams {
  double q = 1.0;         // shape, in (0,1]
  double omega_m2 = 0.0;  // second moment of the miss distance
};

/// Coverage probability for the circular sphere: the miss distance is
/// Rayleigh with scale sqrt(total_var), so
///   P(C) = 1 - exp(-(rho_f - rho_uav)^2 / (2*total_var)).
/// total_var = 0 means exact pointing (returns 1).
double coverage_prob_circular(double fso_radius_m, double uav_radius_m,
                              double total_var_m2);

/// Hoyt shape/scale from the pointing geometry. q is the smaller of the two
/// squared cosine ratios; omega is the sum of the per-axis miss variances.
HoytParams hoyt_params(double azimuth_rad, double elevation_rad, double var1_m2,
                       double var2_m2);

/// Hoyt (Nakagami-q) pdf of the miss distance.
double hoyt_pdf(double x, const HoytParams& hoyt);

/// Coverage probability for the elliptical sphere: numeric integral of the
/// Hoyt pdf over [0, rho_f - rho_uav]. Degenerates to the Rayleigh form with
/// total_var = omega/2 when q = 1.
double coverage_prob_elliptical(double fso_radius_m, double uav_radius_m,
                                const HoytParams& hoyt,
                                const specfun::QuadratureSpec& quad = {});

/// Per-pulse energy captured by the UAV when the beam and aperture centers
/// coincide: (1-alpha)*(E_t/N0)*(1 - exp(-rho_uav^2/(2*rho_f^2))).
double received_energy_coincident(const SystemParams& params, double alpha);

/// Conditional average per-pulse energy under the point-detector
/// approximation, given coverage; total_var is the combined pointing variance
/// sigma_s^2 + sigma_E^2*D^2. Falls back to the coincident-centers value when
/// total_var = 0 (the limits agree).
double received_energy_point(const SystemParams& params, double alpha,
                             double total_var_m2);

/// Threshold detection with additive Gaussian noise:
/// Q((threshold - signal_charge)/noise_std).
double detection_prob(double signal_charge, double threshold, double noise_std);

/// Composes link budget -> uncertainty sphere -> coverage (by sphere shape)
/// -> received energy (by energy model) -> threshold detection.
AcqProbabilities pulse_success_prob(const SystemParams& params, double alpha);

/// E[N] for the truncated geometric on {1..N0}. PaperFaithful keeps the
/// normalizer (1-p) - (1-p)^N0 and requires p in (0,1); Corrected uses
/// 1 - (1-p)^N0 and accepts p in (0,1].
double expected_pulses(double p_n, int n0, NormalizationMode mode);

/// E[X] = 1/p_x; +inf when p_x = 0.
double expected_attempts(double p_x);

/// Builds the acquisition-time model directly from a per-pulse success
/// probability. p_n = 0 yields the +inf sentinel model.
AcqTimeModel time_model_from_pulse_prob(double p_n, int n0, double t1_s,
                                        double t2_s, NormalizationMode mode);

/// E[T] = (T1 + N0*T2)*E[X] + T2*E[N] - N0*T2 at the given alpha.
AcqTimeModel expected_time(const SystemParams& params, double alpha);

/// P(T <= t) in closed form. With M = T1/T2 + N0, z = t/T2 + N0 and
/// k = floor((z-1)/M), both branches of the piecewise CDF collapse to
///   (p_X/A) * (1 - (1-p_X)^(k-1) * (1-p_N)^j),  j = clamp(floor(z - k*M), 1, N0),
/// where A is the normalization-mode pmf normalizer. Zero below the support
/// floor z < M+1. PaperFaithful values can exceed 1 by construction.
double acq_time_cdf(const AcqTimeModel& model, double t_s);
double acq_time_cdf(const SystemParams& params, double alpha, double t_s);

/// pmf of N under the model's normalization; zero outside {1..N0}.
double pmf_n(int k, double p_n, int n0, NormalizationMode mode);

/// pmf of Z = M*X + N at support point n of block k:
/// (1-p_X)^(k-1)*p_X * pmf_N(n - k*M). Zero off the support.
double pmf_z(int k, double n, const AcqTimeModel& model);

}  // namespace fso_acq
