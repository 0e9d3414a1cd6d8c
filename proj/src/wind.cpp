#include "hyperreal/wind.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hyperreal/errors.hpp"
#include "hyperreal/world.hpp"

namespace hyperreal {
namespace {

constexpr int kDiffusionSweeps = 20;
constexpr int kMaxProjectionIterations = 2000;

int wrap(int i, int n) {
  const int r = i % n;
  return r < 0 ? r + n : r;
}

}  // namespace

WindField::WindField(WindConfig config)
    : config_(config),
      n_(config.resolution),
      h_(kRegionSide / config.resolution),
      rng_state_(config.seed),
      u_(static_cast<std::size_t>(n_ * n_), 0.0),
      v_(static_cast<std::size_t>(n_ * n_), 0.0) {
  if (n_ < 4) throw Error(ErrorCode::InvalidParameter, "wind resolution must be >= 4");
  // Low wavenumber band only.
  const int wavevectors[][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}, {1, 2}};
  for (const auto& k : wavevectors) {
    const double phase = 2.0 * std::numbers::pi * next_uniform();
    const double amplitude = config_.forcing_amplitude * next_normal();
    modes_.push_back({k[0], k[1], phase, amplitude});
  }
}

std::size_t WindField::index(int i, int j) const {
  return static_cast<std::size_t>(wrap(j, n_) * n_ + wrap(i, n_));
}

// splitmix64
double WindField::next_uniform() {
  std::uint64_t z = (rng_state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

double WindField::next_normal() {
  const double u1 = 1.0 - next_uniform();  // (0, 1]
  const double u2 = next_uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vec3 WindField::cell(int i, int j) const { return {u_[index(i, j)], v_[index(i, j)], 0.0}; }

void WindField::set_cell(int i, int j, double u, double v) {
  u_[index(i, j)] = u;
  v_[index(i, j)] = v;
}

void WindField::fill(double u, double v) {
  std::fill(u_.begin(), u_.end(), u);
  std::fill(v_.begin(), v_.end(), v);
}

double WindField::interpolate(const std::vector<double>& f, double gx, double gy) const {
  const double fx0 = std::floor(gx);
  const double fy0 = std::floor(gy);
  const double tx = gx - fx0;
  const double ty = gy - fy0;
  const int i0 = static_cast<int>(fx0);
  const int j0 = static_cast<int>(fy0);
  return (1.0 - tx) * (1.0 - ty) * f[index(i0, j0)] + tx * (1.0 - ty) * f[index(i0 + 1, j0)] +
         (1.0 - tx) * ty * f[index(i0, j0 + 1)] + tx * ty * f[index(i0 + 1, j0 + 1)];
}

Vec3 WindField::sample(const Vec3& position) const {
  if (!inside_region(position)) {
    throw Error(ErrorCode::PositionOutOfRegion, "wind sample outside the region");
  }
  const double gx = position.x / h_ - 0.5;
  const double gy = position.y / h_ - 0.5;
  return {interpolate(u_, gx, gy), interpolate(v_, gx, gy), 0.0};
}

void WindField::accumulate(double dt) {
  banked_ += dt;
  if (banked_ >= config_.update_interval) {
    advance(banked_);
    banked_ = 0.0;
  }
}

void WindField::advance(double dt) {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidParameter, "wind dt must be > 0");
  add_forcing(dt);
  diffuse(dt);
  advect(dt);
  project();
  time_ += dt;
}

void WindField::add_forcing(double dt) {
  if (config_.forcing_amplitude == 0.0) return;
  const double decay = std::exp(-dt / config_.forcing_timescale);
  const double kick = config_.forcing_amplitude * std::sqrt(1.0 - decay * decay);
  for (Mode& mode : modes_) mode.amplitude = mode.amplitude * decay + kick * next_normal();

  const double k0 = 2.0 * std::numbers::pi / kRegionSide;
  for (int j = 0; j < n_; ++j) {
    for (int i = 0; i < n_; ++i) {
      const double x = (i + 0.5) * h_;
      const double y = (j + 0.5) * h_;
      double fu = 0.0;
      double fv = 0.0;
      for (const Mode& mode : modes_) {
        // Curl of a stream-function mode: perpendicular to its wavevector.
        const double len = std::hypot(mode.kx, mode.ky);
        const double c = std::cos(k0 * (mode.kx * x + mode.ky * y) + mode.phase);
        fu += mode.amplitude * (mode.ky / len) * c;
        fv -= mode.amplitude * (mode.kx / len) * c;
      }
      u_[index(i, j)] += dt * fu;
      v_[index(i, j)] += dt * fv;
    }
  }
}

void WindField::diffuse(double dt) {
  if (config_.viscosity <= 0.0) return;
  const double a = config_.viscosity * dt / (h_ * h_);
  for (std::vector<double>* field : {&u_, &v_}) {
    const std::vector<double> source = *field;
    std::vector<double>& x = *field;
    for (int sweep = 0; sweep < kDiffusionSweeps; ++sweep) {
      for (int j = 0; j < n_; ++j) {
        for (int i = 0; i < n_; ++i) {
          x[index(i, j)] = (source[index(i, j)] + a * (x[index(i - 1, j)] + x[index(i + 1, j)] +
                                                       x[index(i, j - 1)] + x[index(i, j + 1)])) /
                           (1.0 + 4.0 * a);
        }
      }
    }
  }
}

void WindField::advect(double dt) {
  const std::vector<double> u0 = u_;
  const std::vector<double> v0 = v_;
  const double damping = 1.0 / (1.0 + config_.dissipation * dt);
  for (int j = 0; j < n_; ++j) {
    for (int i = 0; i < n_; ++i) {
      const std::size_t c = index(i, j);
      // Trace back in grid units.
      const double gx = i - dt * u0[c] / h_;
      const double gy = j - dt * v0[c] / h_;
      u_[c] = damping * interpolate(u0, gx, gy);
      v_[c] = damping * interpolate(v0, gx, gy);
    }
  }
}

void WindField::divergence(const std::vector<double>& u, const std::vector<double>& v, std::vector<double>& out) const {
  out.assign(u.size(), 0.0);
  for (int j = 0; j < n_; ++j) {
    for (int i = 0; i < n_; ++i) {
      out[index(i, j)] = (u[index(i + 1, j)] - u[index(i - 1, j)] + v[index(i, j + 1)] - v[index(i, j - 1)]) /
                         (2.0 * h_);
    }
  }
}

double WindField::max_divergence() const {
  std::vector<double> div;
  divergence(u_, v_, div);
  double worst = 0.0;
  for (double d : div) worst = std::max(worst, std::abs(d));
  return worst;
}

// Solves (D G) p = D u with conjugate gradients on the negated (positive
// semidefinite) operator, then subtracts G p. D and G are the same central
// differences, so the projected field has D u = 0 up to the solver residual.
void WindField::project() {
  const std::size_t cells = u_.size();
  auto gradient = [&](const std::vector<double>& p, std::vector<double>& gx, std::vector<double>& gy) {
    gx.assign(cells, 0.0);
    gy.assign(cells, 0.0);
    for (int j = 0; j < n_; ++j) {
      for (int i = 0; i < n_; ++i) {
        gx[index(i, j)] = (p[index(i + 1, j)] - p[index(i - 1, j)]) / (2.0 * h_);
        gy[index(i, j)] = (p[index(i, j + 1)] - p[index(i, j - 1)]) / (2.0 * h_);
      }
    }
  };
  std::vector<double> gx;
  std::vector<double> gy;
  auto apply = [&](const std::vector<double>& p, std::vector<double>& out) {
    gradient(p, gx, gy);
    divergence(gx, gy, out);
    for (double& value : out) value = -value;
  };
  auto inner = [](const std::vector<double>& a, const std::vector<double>& b) {
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) sum += a[k] * b[k];
    return sum;
  };

  std::vector<double> rhs;
  divergence(u_, v_, rhs);
  for (double& value : rhs) value = -value;

  std::vector<double> p(cells, 0.0);
  std::vector<double> r = rhs;
  std::vector<double> d = r;
  std::vector<double> ad;
  double rr = inner(r, r);
  const double tolerance = 1e-28 * std::max(1.0, rr);
  for (int iter = 0; iter < kMaxProjectionIterations && rr > tolerance; ++iter) {
    apply(d, ad);
    const double dad = inner(d, ad);
    if (dad <= 0.0) break;
    const double alpha = rr / dad;
    for (std::size_t k = 0; k < cells; ++k) {
      p[k] += alpha * d[k];
      r[k] -= alpha * ad[k];
    }
    const double rr_next = inner(r, r);
    const double beta = rr_next / rr;
    rr = rr_next;
    for (std::size_t k = 0; k < cells; ++k) d[k] = r[k] + beta * d[k];
  }

  gradient(p, gx, gy);
  for (std::size_t k = 0; k < cells; ++k) {
    u_[k] -= gx[k];
    v_[k] -= gy[k];
  }
}

}  // namespace hyperreal
