#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "asymptopia/category.hpp"
#include "asymptopia/config.hpp"
#include "asymptopia/report.hpp"

namespace asymptopia {

// Configuration turned into concrete objects on one grid.
struct Experiment {
  RunConfig config;
  GridPtr grid;
  std::map<std::string, ChargeAutomorphism> charges;
  std::map<std::string, ChargeConfig> charge_configs;
  std::map<std::string, ConeSpec> cones;

  const ChargeAutomorphism& first() const { return charges.at(config.experiment.pair[0]); }
  const ChargeAutomorphism& second() const { return charges.at(config.experiment.pair[1]); }
  const ConeSpec& cone() const { return cones.at(config.experiment.cone); }
};

ProfilePtr make_profile(const ChargeConfig& charge);
ConeSpec make_cone(const ConeConfig& cone);
Experiment build_experiment(const RunConfig& config);

// q c / sqrt(s^2 + t^2) when a is a momentum Gaussian in the g channel and b
// one in the h channel (negated for the reverse order); nothing otherwise.
std::optional<double> closed_form_sigma(const ChargeConfig& a, const ChargeConfig& b);

// Chargeless label delta_c - delta probing the dipole part of the decay.
FieldVector probe_label(const Experiment& e);

const std::vector<std::string>& suite_names();
// Rows run_suite will emit; printed before the run and checked after it.
std::size_t plan_rows(const Experiment& e, const std::string& suite);
// UsageError for an unknown suite.
Report run_suite(const Experiment& e, const std::string& suite);

}  // namespace asymptopia
