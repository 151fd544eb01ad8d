#include "dmnn/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dmnn/errors.hpp"

namespace dmnn {

namespace {

// Salt tags separating the per-office signal and noise streams.
constexpr std::uint64_t kSignalStream = 0x5349474eULL;
constexpr std::uint64_t kNoiseStream = 0x4e4f4953ULL;

}  // namespace

double large_scale_gain_db(const PropagationParams& params, int path,
                           double r_m, int n_wall, int n_door) {
  if (path < 0 || path >= params.num_paths()) {
    throw DomainError("path index out of range: " + std::to_string(path));
  }
  if (r_m <= 0.0) {
    throw DomainError("distance must be positive, got " + std::to_string(r_m));
  }
  return params.path_power_db[path] -
         (params.distance_coeff * std::log10(r_m) +
          params.wall_loss_db * n_wall + params.door_loss_db * n_door);
}

CirSample draw_cir(const OfficeLayout& layout, const PropagationParams& params,
                   int office_id, int sensor_id, Rng& rng) {
  const int num_offices = static_cast<int>(layout.office_centers.size());
  const int num_sensors = static_cast<int>(layout.sensor_positions.size());
  if (office_id < 1 || office_id > num_offices) {
    throw DomainError("office_id out of range: " + std::to_string(office_id));
  }
  if (sensor_id < 1 || sensor_id > num_sensors) {
    throw DomainError("sensor_id out of range: " + std::to_string(sensor_id));
  }

  const Point centre = layout.office_centers[office_id - 1];
  const Point sensor = layout.sensor_positions[sensor_id - 1];
  const double r = distance(centre, sensor);
  const ObstacleCount obstacles = count_obstacles(layout, centre, sensor);
  const double small_sd = std::sqrt(params.small_scale_var);

  CirSample sample;
  sample.office_id = office_id;
  sample.sensor_id = sensor_id;
  sample.taps.reserve(params.num_paths());
  for (int d = 0; d < params.num_paths(); ++d) {
    const double gain_db =
        large_scale_gain_db(params, d, r, obstacles.walls, obstacles.doors);
    const double amplitude = rng.normal(params.small_scale_mean, small_sd) *
                             std::sqrt(std::pow(10.0, gain_db / 10.0));
    const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    sample.taps.emplace_back(amplitude * std::cos(phase),
                             amplitude * std::sin(phase));
  }
  return sample;
}

Dataset generate_dataset(const OfficeLayout& layout,
                         const PropagationParams& params,
                         int samples_per_office, double snr_db,
                         std::uint64_t seed) {
  if (samples_per_office < 1) {
    throw DomainError("samples_per_office must be >= 1");
  }
  const int num_offices = static_cast<int>(layout.office_centers.size());
  const int num_sensors = static_cast<int>(layout.sensor_positions.size());
  const int num_paths = params.num_paths();
  const int dim = 2 * num_paths * num_sensors;
  const int total = num_offices * samples_per_office;

  Dataset ds;
  ds.inputs.resize(dim, total);
  ds.labels = Eigen::MatrixXd::Zero(num_offices, total);
  ds.meta = {num_offices, num_sensors, num_paths,
             samples_per_office, snr_db, seed};

  for (int k = 1; k <= num_offices; ++k) {
    Rng office_rng(mix_seed(mix_seed(seed, kSignalStream), k));
    for (int t = 0; t < samples_per_office; ++t) {
      const int col = (k - 1) * samples_per_office + t;
      for (int l = 1; l <= num_sensors; ++l) {
        const CirSample cir = draw_cir(layout, params, k, l, office_rng);
        for (int d = 0; d < num_paths; ++d) {
          const int base = 2 * ((l - 1) * num_paths + d);
          ds.inputs(base, col) = cir.taps[d].real();
          ds.inputs(base + 1, col) = cir.taps[d].imag();
        }
      }
      ds.labels(k - 1, col) = 1.0;
    }
  }

  if (std::isfinite(snr_db)) {
    const double signal_power =
        ds.inputs.squaredNorm() / (static_cast<double>(dim) * total);
    const double noise_sd =
        std::sqrt(signal_power * std::pow(10.0, -snr_db / 10.0));
    for (int k = 1; k <= num_offices; ++k) {
      Rng noise_rng(mix_seed(mix_seed(seed, kNoiseStream), k));
      for (int t = 0; t < samples_per_office; ++t) {
        const int col = (k - 1) * samples_per_office + t;
        for (int row = 0; row < dim; ++row) {
          ds.inputs(row, col) += noise_sd * noise_rng.normal();
        }
      }
    }
  }

  return ds;
}

}  // namespace dmnn
