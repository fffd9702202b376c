#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "asymptopia/quadrature.hpp"
#include "asymptopia/seqalg.hpp"

namespace asymptopia {

struct GridConfig {
  std::size_t n_radial = 64;
  int angular_order = 26;
  double r_max = 10.0;
};

// kind: "gaussian-momentum" (width = s or t) or "bump-position" (width =
// support radius). channel "g" gives a charge with amplitude q, channel "h" a
// chargeless test vector with h~(0) = amplitude.
struct ChargeConfig {
  std::string name;
  std::string kind = "gaussian-momentum";
  std::string channel = "g";
  double amplitude = 1.0;
  double width = 1.0;
};

struct ConeConfig {
  std::string name;
  Vec3 axis{1.0, 0.0, 0.0};
  double half_angle_deg = 30.0;
  double time_slope = 0.0;
  double time_exponent = 0.0;
  std::vector<Vec3> jitter;
};

struct Tolerances {
  double laws = 1e-12;
  double consistency = 1e-8;
  double sigma_oracle = 1e-6;
  double braiding = 1e-3;
  double homotopy = 1e-3;
  double decay = 1e-2;
  double gram = 1e-10;
  double commutator = 1e-10;
  double unitarity = 1e-12;
  double polar_ratio = 2.0;
};

struct ExperimentConfig {
  std::array<std::string, 2> pair{"gamma", "delta"};
  std::string cone = "S";
  // Offset c of the chargeless probes delta_c - delta and of the transported
  // arrow gamma -> gamma_c used by the decay suite.
  Vec3 probe_offset{2.0, 0.0, 0.0};
  std::size_t random_samples = 100;
  std::size_t homotopy_steps = 6;
  std::size_t stability_probes = 16;
  bool richardson = false;
};

struct RunConfig {
  GridConfig grid;
  std::vector<ChargeConfig> charges;
  std::vector<ConeConfig> cones;
  std::vector<double> radii;
  TailPolicy tail_policy;
  Tolerances tolerances;
  ExperimentConfig experiment;
  std::uint64_t seed = 0;
  std::string output_dir = "out";
};

// Two Gaussian charges, cone S along +x with half-angle 30 degrees, radii
// {10, 20, 30, 40}, grid (64, 26, 10).
RunConfig default_config();

// ConfigurationError on names that are not unique, radii that are not
// strictly increasing, non-positive tolerances or dangling references.
void validate(const RunConfig& config);

// JSON dialect; unknown keys are rejected, absent keys take the defaults above.
RunConfig parse_config(const std::string& text);
// "default" selects default_config().
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& config);
// FNV-1a of the serialized form.
std::uint64_t config_hash(const RunConfig& config);

}  // namespace asymptopia
