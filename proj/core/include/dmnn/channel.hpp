#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "dmnn/geometry.hpp"
#include "dmnn/rng.hpp"

namespace dmnn {

struct PropagationParams {
  // Per-path effective radiated power P_s^d [dB]; one entry per multipath.
  std::vector<double> path_power_db = {20.0, 16.0, 10.0};
  double small_scale_mean = 1.0;  // mu of the Gaussian small-scale factor
  double small_scale_var = 0.1;   // sigma^2, must be >= 0
  double wall_loss_db = 3.0;      // per concrete wall
  double door_loss_db = 0.2;      // per door
  double distance_coeff = 2.0;    // multiplies log10(r)

  int num_paths() const { return static_cast<int>(path_power_db.size()); }
};

// One multipath channel measurement between an office and a sensor.
struct CirSample {
  int office_id = 0;  // 1-based
  int sensor_id = 0;  // 1-based
  std::vector<std::complex<double>> taps;  // D complex gains
};

struct DatasetMeta {
  int num_offices = 0;          // K
  int num_sensors = 0;          // L
  int num_paths = 0;            // D
  int samples_per_office = 0;   // N
  double snr_db = 0.0;          // +inf means noiseless
  std::uint64_t seed = 0;
};

// Labeled fingerprint collection. Columns are samples, grouped office-major:
// office k occupies columns [(k-1)*N, k*N). Feature layout per column is
// (Re, Im) interleaved per tap, taps grouped per sensor, sensors in index
// order, so the feature dimension is 2*D*L.
struct Dataset {
  Eigen::MatrixXd inputs;  // (2*D*L) x (K*N)
  Eigen::MatrixXd labels;  // K x (K*N), one-hot columns
  DatasetMeta meta;

  int feature_dim() const { return static_cast<int>(inputs.rows()); }
  int num_samples() const { return static_cast<int>(inputs.cols()); }
};

// Large-scale gain in dB for path index d (0-based):
//   P_s^d - (distance_coeff*log10(r) + wall_loss_db*n_wall + door_loss_db*n_door).
// Throws DomainError if r <= 0 or d is out of range.
double large_scale_gain_db(const PropagationParams& params, int path,
                           double r_m, int n_wall, int n_door);

// Draws one CIR: per tap, amplitude = N(mu, sigma^2) * sqrt(linear large-scale
// gain) and phase uniform in [0, 2*pi). Distance and obstacle counts are taken
// from the office centre to the sensor. Draw order per tap is amplitude factor
// then phase, so a seeded stream reproduces the sample exactly.
CirSample draw_cir(const OfficeLayout& layout, const PropagationParams& params,
                   int office_id, int sensor_id, Rng& rng);

// Generates N samples per office. Additive white Gaussian noise is applied to
// every real feature component with variance P_sig * 10^(-snr_db/10), where
// P_sig is the mean per-component power of the noiseless features; pass
// snr_db = +infinity to disable noise. Every office consumes an independently
// derived child stream of `seed` (signal and noise separately), so the result
// is invariant to any parallel schedule across offices.
Dataset generate_dataset(const OfficeLayout& layout,
                         const PropagationParams& params,
                         int samples_per_office, double snr_db,
                         std::uint64_t seed);

}  // namespace dmnn
