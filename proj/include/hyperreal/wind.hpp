#pragma once

#include <cstdint>
#include <vector>

#include "hyperreal/vec3.hpp"

namespace hyperreal {

struct WindConfig {
  int resolution = 16;              // cells per side
  double viscosity = 0.5;           // m^2/s
  double dissipation = 1e-3;        // 1/s
  double forcing_amplitude = 0.05;  // m/s^2, RMS per forcing mode
  double forcing_timescale = 120.0; // s, correlation time of the forcing
  double update_interval = 1.0;     // s of simulated time between advances
  std::uint64_t seed = 1;

  friend bool operator==(const WindConfig&, const WindConfig&) = default;
};

/// Two-dimensional incompressible wind over the region, periodic in x and y.
///
/// Each advance is one stable-fluids update: add band-limited seeded forcing,
/// implicit diffusion, semi-Lagrangian self-advection, then projection onto
/// the divergence-free fields. Velocities live at cell centres. The field is
/// only ever queried; nothing in the rigid-body stepper reads it.
class WindField {
 public:
  explicit WindField(WindConfig config = {});

  void advance(double dt);
  /// Banks simulated time and advances once per update_interval.
  void accumulate(double dt);

  /// Bilinear sample at a region position; z of the result is always 0.
  /// Throws PositionOutOfRegion if x or y is outside [0, 256).
  Vec3 sample(const Vec3& position) const;

  Vec3 cell(int i, int j) const;
  void set_cell(int i, int j, double u, double v);
  void fill(double u, double v);

  /// Largest |div u| over all cells, using the same central differences the
  /// projection enforces.
  double max_divergence() const;

  /// Projects the current field; exposed for tests of arbitrary states.
  void project();

  int resolution() const { return n_; }
  double cell_size() const { return h_; }
  double time() const { return time_; }
  const WindConfig& config() const { return config_; }

  /// Exact comparison, used for determinism checks.
  friend bool operator==(const WindField&, const WindField&) = default;

 private:
  struct Mode {
    int kx;
    int ky;
    double phase;
    double amplitude;

    friend bool operator==(const Mode&, const Mode&) = default;
  };

  std::size_t index(int i, int j) const;
  double interpolate(const std::vector<double>& f, double gx, double gy) const;
  void add_forcing(double dt);
  void diffuse(double dt);
  void advect(double dt);
  void divergence(const std::vector<double>& u, const std::vector<double>& v, std::vector<double>& out) const;
  double next_uniform();
  double next_normal();

  WindConfig config_;
  int n_;
  double h_;
  double time_ = 0.0;
  double banked_ = 0.0;
  std::uint64_t rng_state_;
  std::vector<Mode> modes_;
  std::vector<double> u_;
  std::vector<double> v_;
};

}  // namespace hyperreal
