#include "asymptopia/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "asymptopia/errors.hpp"

namespace asymptopia {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigurationError(where + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) known = known || it.key() == k;
    if (!known) throw ConfigurationError(where + ": unknown key '" + it.key() + "'");
  }
}

template <class T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigurationError(where + "." + key + ": " + e.what());
  }
}

void read_vec3(const json& obj, const char* key, Vec3& out, const std::string& where) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_array() || v.size() != 3) throw ConfigurationError(where + "." + key + ": expected three numbers");
  std::array<double, 3> tmp{};
  read(json{{"v", v}}, "v", tmp, where + "." + key);
  out = tmp;
}

json vec3_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

}  // namespace

RunConfig default_config() {
  RunConfig c;
  c.charges = {{"gamma", "gaussian-momentum", "g", 1.0, 1.0}, {"delta", "gaussian-momentum", "h", 1.0, 1.0}};
  c.cones = {{"S", {1.0, 0.0, 0.0}, 30.0, 0.0, 0.0, {}}};
  c.radii = {10.0, 20.0, 30.0, 40.0};
  return c;
}

void validate(const RunConfig& c) {
  if (c.grid.n_radial < 4) throw ConfigurationError("grid.n_radial must be >= 4");
  if (c.grid.angular_order < 1) throw ConfigurationError("grid.angular_order must be >= 1");
  if (!(c.grid.r_max > 0.0) || !std::isfinite(c.grid.r_max)) throw ConfigurationError("grid.r_max must be > 0");

  std::set<std::string> names;
  for (const auto& q : c.charges) {
    if (q.name.empty()) throw ConfigurationError("charge with empty name");
    if (!names.insert(q.name).second) throw ConfigurationError("duplicate charge name '" + q.name + "'");
    if (q.kind != "gaussian-momentum" && q.kind != "bump-position")
      throw ConfigurationError("charge " + q.name + ": unknown kind '" + q.kind + "'");
    if (q.channel != "g" && q.channel != "h")
      throw ConfigurationError("charge " + q.name + ": channel must be 'g' or 'h'");
    if (!(q.width > 0.0) || !std::isfinite(q.width)) throw ConfigurationError("charge " + q.name + ": width must be > 0");
    if (!std::isfinite(q.amplitude)) throw ConfigurationError("charge " + q.name + ": amplitude must be finite");
  }
  if (c.charges.size() < 2) throw ConfigurationError("at least two charges are required");

  std::set<std::string> cone_names;
  for (const auto& k : c.cones) {
    if (k.name.empty()) throw ConfigurationError("cone with empty name");
    if (!cone_names.insert(k.name).second) throw ConfigurationError("duplicate cone name '" + k.name + "'");
    if (!(k.half_angle_deg > 0.0 && k.half_angle_deg < 90.0))
      throw ConfigurationError("cone " + k.name + ": half_angle_deg must lie in (0, 90)");
  }

  if (c.radii.size() < 3) throw ConfigurationError("at least three radii are required");
  for (std::size_t k = 0; k < c.radii.size(); ++k) {
    if (!(c.radii[k] > 0.0) || !std::isfinite(c.radii[k])) throw ConfigurationError("radii must be positive");
    if (k > 0 && !(c.radii[k] > c.radii[k - 1])) throw ConfigurationError("radii must be strictly increasing");
  }

  c.tail_policy.validate();
  const Tolerances& t = c.tolerances;
  for (double v : {t.laws, t.consistency, t.sigma_oracle, t.braiding, t.homotopy, t.decay, t.gram, t.commutator,
                   t.unitarity, t.polar_ratio})
    if (!(v > 0.0)) throw ConfigurationError("tolerances must be > 0");

  const ExperimentConfig& e = c.experiment;
  for (const auto& n : e.pair)
    if (!names.count(n)) throw ConfigurationError("experiment.pair refers to unknown charge '" + n + "'");
  if (e.pair[0] == e.pair[1]) throw ConfigurationError("experiment.pair must name two different charges");
  if (!cone_names.count(e.cone)) throw ConfigurationError("experiment.cone refers to unknown cone '" + e.cone + "'");
  if (e.random_samples < 1) throw ConfigurationError("experiment.random_samples must be >= 1");
  if (e.homotopy_steps < 1) throw ConfigurationError("experiment.homotopy_steps must be >= 1");
  if (c.output_dir.empty()) throw ConfigurationError("output_dir must not be empty");
}

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigurationError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(root,
                 {"grid", "charges", "cones", "radii", "tail_policy", "tolerances", "experiment", "seed", "output_dir"},
                 "config");
  RunConfig c = default_config();

  if (root.contains("grid")) {
    const json& g = root.at("grid");
    reject_unknown(g, {"n_radial", "angular_order", "r_max"}, "grid");
    read(g, "n_radial", c.grid.n_radial, "grid");
    read(g, "angular_order", c.grid.angular_order, "grid");
    read(g, "r_max", c.grid.r_max, "grid");
  }
  if (root.contains("charges")) {
    const json& list = root.at("charges");
    if (!list.is_array()) throw ConfigurationError("charges: expected an array");
    c.charges.clear();
    for (const json& q : list) {
      reject_unknown(q, {"name", "kind", "channel", "amplitude", "width"}, "charges[]");
      ChargeConfig cc;
      read(q, "name", cc.name, "charges[]");
      read(q, "kind", cc.kind, "charges[]");
      read(q, "channel", cc.channel, "charges[]");
      read(q, "amplitude", cc.amplitude, "charges[]");
      read(q, "width", cc.width, "charges[]");
      c.charges.push_back(cc);
    }
  }
  if (root.contains("cones")) {
    const json& list = root.at("cones");
    if (!list.is_array()) throw ConfigurationError("cones: expected an array");
    c.cones.clear();
    for (const json& k : list) {
      reject_unknown(k, {"name", "axis", "half_angle_deg", "time_slope", "time_exponent", "jitter"}, "cones[]");
      ConeConfig cc;
      read(k, "name", cc.name, "cones[]");
      read_vec3(k, "axis", cc.axis, "cones[]");
      read(k, "half_angle_deg", cc.half_angle_deg, "cones[]");
      read(k, "time_slope", cc.time_slope, "cones[]");
      read(k, "time_exponent", cc.time_exponent, "cones[]");
      if (k.contains("jitter")) {
        if (!k.at("jitter").is_array()) throw ConfigurationError("cones[].jitter: expected an array");
        for (const json& j : k.at("jitter")) {
          Vec3 v{};
          read_vec3(json{{"v", j}}, "v", v, "cones[].jitter");
          cc.jitter.push_back(v);
        }
      }
      c.cones.push_back(cc);
    }
  }
  read(root, "radii", c.radii, "config");
  if (root.contains("tail_policy")) {
    const json& t = root.at("tail_policy");
    reject_unknown(t, {"window_start", "sample_count", "tolerance"}, "tail_policy");
    read(t, "window_start", c.tail_policy.window_start, "tail_policy");
    read(t, "sample_count", c.tail_policy.sample_count, "tail_policy");
    read(t, "tolerance", c.tail_policy.tolerance, "tail_policy");
  }
  if (root.contains("tolerances")) {
    const json& t = root.at("tolerances");
    reject_unknown(t,
                   {"laws", "consistency", "sigma_oracle", "braiding", "homotopy", "decay", "gram", "commutator",
                    "unitarity", "polar_ratio"},
                   "tolerances");
    Tolerances& o = c.tolerances;
    read(t, "laws", o.laws, "tolerances");
    read(t, "consistency", o.consistency, "tolerances");
    read(t, "sigma_oracle", o.sigma_oracle, "tolerances");
    read(t, "braiding", o.braiding, "tolerances");
    read(t, "homotopy", o.homotopy, "tolerances");
    read(t, "decay", o.decay, "tolerances");
    read(t, "gram", o.gram, "tolerances");
    read(t, "commutator", o.commutator, "tolerances");
    read(t, "unitarity", o.unitarity, "tolerances");
    read(t, "polar_ratio", o.polar_ratio, "tolerances");
  }
  if (root.contains("experiment")) {
    const json& e = root.at("experiment");
    reject_unknown(e,
                   {"pair", "cone", "probe_offset", "random_samples", "homotopy_steps", "stability_probes",
                    "richardson"},
                   "experiment");
    ExperimentConfig& o = c.experiment;
    read(e, "pair", o.pair, "experiment");
    read(e, "cone", o.cone, "experiment");
    read_vec3(e, "probe_offset", o.probe_offset, "experiment");
    read(e, "random_samples", o.random_samples, "experiment");
    read(e, "homotopy_steps", o.homotopy_steps, "experiment");
    read(e, "stability_probes", o.stability_probes, "experiment");
    read(e, "richardson", o.richardson, "experiment");
  }
  read(root, "seed", c.seed, "config");
  read(root, "output_dir", c.output_dir, "config");
  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  if (path == "default") return default_config();
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string serialize_config(const RunConfig& c) {
  json root;
  root["grid"] = {{"n_radial", c.grid.n_radial}, {"angular_order", c.grid.angular_order}, {"r_max", c.grid.r_max}};
  json charges = json::array();
  for (const auto& q : c.charges)
    charges.push_back({{"name", q.name},
                       {"kind", q.kind},
                       {"channel", q.channel},
                       {"amplitude", q.amplitude},
                       {"width", q.width}});
  root["charges"] = charges;
  json cones = json::array();
  for (const auto& k : c.cones) {
    json jitter = json::array();
    for (const auto& j : k.jitter) jitter.push_back(vec3_json(j));
    cones.push_back({{"name", k.name},
                     {"axis", vec3_json(k.axis)},
                     {"half_angle_deg", k.half_angle_deg},
                     {"time_slope", k.time_slope},
                     {"time_exponent", k.time_exponent},
                     {"jitter", jitter}});
  }
  root["cones"] = cones;
  root["radii"] = c.radii;
  root["tail_policy"] = {{"window_start", c.tail_policy.window_start},
                         {"sample_count", c.tail_policy.sample_count},
                         {"tolerance", c.tail_policy.tolerance}};
  const Tolerances& t = c.tolerances;
  root["tolerances"] = {{"laws", t.laws},           {"consistency", t.consistency}, {"sigma_oracle", t.sigma_oracle},
                        {"braiding", t.braiding},   {"homotopy", t.homotopy},       {"decay", t.decay},
                        {"gram", t.gram},           {"commutator", t.commutator},   {"unitarity", t.unitarity},
                        {"polar_ratio", t.polar_ratio}};
  const ExperimentConfig& e = c.experiment;
  root["experiment"] = {{"pair", e.pair},
                        {"cone", e.cone},
                        {"probe_offset", vec3_json(e.probe_offset)},
                        {"random_samples", e.random_samples},
                        {"homotopy_steps", e.homotopy_steps},
                        {"stability_probes", e.stability_probes},
                        {"richardson", e.richardson}};
  root["seed"] = c.seed;
  root["output_dir"] = c.output_dir;
  return root.dump(2) + "\n";
}

std::uint64_t config_hash(const RunConfig& c) {
  const std::string text = serialize_config(c);
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace asymptopia
