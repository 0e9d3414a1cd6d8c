#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hyperreal/laws.hpp"
#include "hyperreal/scenario.hpp"

namespace hyperreal {

/// freefall, buoyancy, airtrack, bumpers, cannon, brownian.
const std::vector<std::string_view>& demo_names();

/// Builds a bundled scenario. `law` overrides the region default law.
/// Throws Error(UnknownDemo).
Scenario demo_scenario(std::string_view name, std::optional<LawKind> law = std::nullopt, std::uint64_t seed = 1);

/// Watches a demo run and reports the quantities that demo is about.
class DemoProbe {
 public:
  virtual ~DemoProbe() = default;
  virtual void start(const Simulation& sim) = 0;
  virtual void observe(const Simulation& sim, const StepReport& report) = 0;
  virtual nlohmann::json extras() const = 0;
};

std::unique_ptr<DemoProbe> make_probe(std::string_view name);

/// Height of the first flight at half its horizontal range: z where x first
/// reaches x0 + (x_land - x0) / 2, interpolated between samples.
struct FlightTrace {
  std::vector<std::pair<double, double>> xz;  // until first ground contact
  bool landed = false;

  double mid_range_height() const;
  double range() const;
};

}  // namespace hyperreal
