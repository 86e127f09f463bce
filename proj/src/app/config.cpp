#include "casimir/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <set>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace casimir::cli {
namespace {

using json = nlohmann::json;

std::string join(const std::string& path, const std::string& key) { return path + "/" + key; }

void allow_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, _] : obj.items())
    if (!allowed.count(k)) throw ConfigError(join(path, k), "unknown field");
}

const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  return j;
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(join(path, key), "missing required field");
  return *it;
}

double as_number(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  }
  throw ConfigError(path, "expected a number (or \"inf\")");
}

json number_json(double v) {
  if (std::isinf(v) && v > 0) return "inf";
  return v;
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

template <class T>
void opt_number(const json& obj, const char* key, const std::string& path, T& out) {
  if (auto it = obj.find(key); it != obj.end()) out = static_cast<T>(as_number(*it, join(path, key)));
}

void opt_string(const json& obj, const char* key, const std::string& path, std::string& out) {
  if (auto it = obj.find(key); it != obj.end()) out = as_string(*it, join(path, key));
}

template <class E>
E parse_enum(const json& j, const std::string& path,
             std::initializer_list<std::pair<const char*, E>> table) {
  const auto s = as_string(j, path);
  std::string choices;
  for (const auto& [name, value] : table) {
    if (s == name) return value;
    choices += std::string(choices.empty() ? "" : ", ") + name;
  }
  throw ConfigError(path, "unknown value \"" + s + "\" (expected one of: " + choices + ")");
}

constexpr std::initializer_list<std::pair<const char*, Scenario>> kScenarios = {
    {"slab_force", Scenario::slab_force},
    {"atom_mirror", Scenario::atom_mirror},
    {"atom_atom", Scenario::atom_atom},
    {"validate", Scenario::validate}};
constexpr std::initializer_list<std::pair<const char*, SweepVariable>> kVariables = {
    {"d", SweepVariable::d}, {"r", SweepVariable::r}, {"d_s", SweepVariable::d_s}, {"N_B", SweepVariable::N_B}};
constexpr std::initializer_list<std::pair<const char*, Spacing>> kSpacings = {
    {"linear", Spacing::linear}, {"log", Spacing::log}};
constexpr std::initializer_list<std::pair<const char*, MirrorConfig::Kind>> kMirrors = {
    {"perfect", MirrorConfig::Kind::perfect},
    {"perfect_magnetic", MirrorConfig::Kind::perfect_magnetic},
    {"half_space", MirrorConfig::Kind::half_space},
    {"dilute", MirrorConfig::Kind::dilute}};
constexpr std::initializer_list<std::pair<const char*, PolarizabilityConvention>> kConventions = {
    {"local_field", PolarizabilityConvention::local_field},
    {"as_given", PolarizabilityConvention::as_given}};
constexpr std::initializer_list<std::pair<const char*, MediumTermVariant>> kMediumTerms = {
    {"displayed", MediumTermVariant::displayed}, {"uncorrected", MediumTermVariant::uncorrected}};
constexpr std::initializer_list<std::pair<const char*, InnerVariable>> kInner = {
    {"kappa", InnerVariable::kappa}, {"k", InnerVariable::k}};

template <class E>
const char* enum_name(E value, std::initializer_list<std::pair<const char*, E>> table) {
  for (const auto& [name, v] : table)
    if (v == value) return name;
  return "?";
}

OscillatorModel parse_oscillator(const json& j, const std::string& path) {
  require_object(j, path);
  allow_keys(j, path, {"baseline", "terms"});
  OscillatorModel m;
  opt_number(j, "baseline", path, m.baseline);
  if (auto it = j.find("terms"); it != j.end()) {
    const auto tpath = join(path, "terms");
    if (!it->is_array()) throw ConfigError(tpath, "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto ipath = join(tpath, std::to_string(i));
      const json& t = require_object((*it)[i], ipath);
      allow_keys(t, ipath, {"strength", "resonance", "damping"});
      OscillatorTerm term;
      term.strength = as_number(field(t, "strength", ipath), join(ipath, "strength"));
      opt_number(t, "resonance", ipath, term.resonance);
      opt_number(t, "damping", ipath, term.damping);
      m.terms.push_back(term);
    }
  }
  try {
    validate(m);
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
  return m;
}

json oscillator_json(const OscillatorModel& m) {
  json terms = json::array();
  for (const auto& t : m.terms)
    terms.push_back({{"strength", number_json(t.strength)},
                     {"resonance", number_json(t.resonance)},
                     {"damping", number_json(t.damping)}});
  return {{"baseline", number_json(m.baseline)}, {"terms", terms}};
}

AtomModel parse_atom(const json& j, const std::string& path) {
  require_object(j, path);
  allow_keys(j, path, {"alpha_e0", "omega_e", "alpha_m0", "omega_m"});
  AtomModel a;
  opt_number(j, "alpha_e0", path, a.alpha_e0);
  opt_number(j, "omega_e", path, a.omega_e);
  opt_number(j, "alpha_m0", path, a.alpha_m0);
  opt_number(j, "omega_m", path, a.omega_m);
  try {
    validate(a);
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
  return a;
}

json atom_json(const AtomModel& a) {
  return {{"alpha_e0", number_json(a.alpha_e0)},
          {"omega_e", number_json(a.omega_e)},
          {"alpha_m0", number_json(a.alpha_m0)},
          {"omega_m", number_json(a.omega_m)}};
}

std::string location(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

std::string_view to_string(Scenario s) { return enum_name(s, kScenarios); }
std::string_view to_string(SweepVariable v) { return enum_name(v, kVariables); }

double SweepGrid::at(std::size_t i) const {
  if (points <= 1) return start;
  const double f = static_cast<double>(i) / static_cast<double>(points - 1);
  if (i + 1 == points) return stop;
  if (spacing == Spacing::log) return start * std::pow(stop / start, f);
  return start + (stop - start) * f;
}

RunConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(location(text, e.byte), "JSON syntax error");
  }
  require_object(root, "");
  allow_keys(root, "", {"units", "materials", "atoms", "scenario", "system", "sweep", "quadrature"});

  RunConfig cfg;
  if (auto it = root.find("units"); it != root.end()) {
    const std::string path = "/units";
    require_object(*it, path);
    allow_keys(*it, path, {"system", "omega_ref"});
    cfg.units.kind = parse_enum<UnitSystem::Kind>(
        field(*it, "system", path), join(path, "system"),
        {{"gaussian", UnitSystem::Kind::gaussian}, {"reduced", UnitSystem::Kind::reduced}});
    opt_number(*it, "omega_ref", path, cfg.units.omega_ref);
    if (!(cfg.units.omega_ref > 0.0)) throw ConfigError(join(path, "omega_ref"), "must be > 0");
  }
  if (auto it = root.find("materials"); it != root.end()) {
    require_object(*it, "/materials");
    for (const auto& [name, m] : it->items()) {
      const auto path = "/materials/" + name;
      require_object(m, path);
      allow_keys(m, path, {"permittivity", "permeability"});
      Medium med;
      if (auto p = m.find("permittivity"); p != m.end())
        med.permittivity = parse_oscillator(*p, join(path, "permittivity"));
      if (auto p = m.find("permeability"); p != m.end())
        med.permeability = parse_oscillator(*p, join(path, "permeability"));
      cfg.materials.emplace(name, std::move(med));
    }
  }
  if (auto it = root.find("atoms"); it != root.end()) {
    require_object(*it, "/atoms");
    for (const auto& [name, a] : it->items()) cfg.atoms.emplace(name, parse_atom(a, "/atoms/" + name));
  }
  cfg.scenario = parse_enum(field(root, "scenario", ""), "/scenario", kScenarios);

  if (auto it = root.find("system"); it != root.end()) {
    const std::string path = "/system";
    require_object(*it, path);
    allow_keys(*it, path,
               {"host", "slab", "slab_thickness", "mirror", "atom", "atom_b", "distance",
                "separation", "polarizability", "medium_term"});
    auto& s = cfg.system;
    opt_string(*it, "host", path, s.host);
    opt_string(*it, "slab", path, s.slab);
    opt_number(*it, "slab_thickness", path, s.slab_thickness);
    opt_string(*it, "atom", path, s.atom);
    opt_string(*it, "atom_b", path, s.atom_b);
    opt_number(*it, "distance", path, s.distance);
    opt_number(*it, "separation", path, s.separation);
    if (auto p = it->find("polarizability"); p != it->end())
      s.polarizability = parse_enum(*p, join(path, "polarizability"), kConventions);
    if (auto p = it->find("medium_term"); p != it->end())
      s.medium_term = parse_enum(*p, join(path, "medium_term"), kMediumTerms);
    if (auto m = it->find("mirror"); m != it->end()) {
      const auto mpath = join(path, "mirror");
      require_object(*m, mpath);
      allow_keys(*m, mpath, {"kind", "medium", "atom", "number_density"});
      s.mirror.kind = parse_enum(field(*m, "kind", mpath), join(mpath, "kind"), kMirrors);
      opt_string(*m, "medium", mpath, s.mirror.medium);
      opt_string(*m, "atom", mpath, s.mirror.atom);
      opt_number(*m, "number_density", mpath, s.mirror.number_density);
    }
  }
  if (auto it = root.find("sweep"); it != root.end()) {
    const std::string path = "/sweep";
    require_object(*it, path);
    allow_keys(*it, path, {"variable", "start", "stop", "points", "spacing"});
    Sweep sw;
    sw.variable = parse_enum(field(*it, "variable", path), join(path, "variable"), kVariables);
    sw.grid.start = as_number(field(*it, "start", path), join(path, "start"));
    sw.grid.stop = as_number(field(*it, "stop", path), join(path, "stop"));
    const json& pts = field(*it, "points", path);
    if (!pts.is_number_integer() || pts.get<long long>() < 1)
      throw ConfigError(join(path, "points"), "expected an integer >= 1");
    sw.grid.points = pts.get<std::size_t>();
    if (auto p = it->find("spacing"); p != it->end())
      sw.grid.spacing = parse_enum(*p, join(path, "spacing"), kSpacings);
    cfg.sweep = sw;
  }
  if (auto it = root.find("quadrature"); it != root.end()) {
    const std::string path = "/quadrature";
    require_object(*it, path);
    allow_keys(*it, path, {"rel_tol", "abs_tol", "xi_cutoff_factor", "max_subdivisions", "inner_variable"});
    auto& q = cfg.quadrature;
    opt_number(*it, "rel_tol", path, q.rel_tol);
    opt_number(*it, "abs_tol", path, q.abs_tol);
    opt_number(*it, "xi_cutoff_factor", path, q.xi_cutoff_factor);
    if (auto p = it->find("max_subdivisions"); p != it->end()) {
      if (!p->is_number_integer() || p->get<long long>() < 1)
        throw ConfigError(join(path, "max_subdivisions"), "expected an integer >= 1");
      q.max_subdivisions = p->get<std::size_t>();
    }
    if (auto p = it->find("inner_variable"); p != it->end())
      q.inner_variable = parse_enum(*p, join(path, "inner_variable"), kInner);
  }
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open config file");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

std::string serialize_config(const RunConfig& cfg) {
  json root;
  root["units"] = {{"system", cfg.units.kind == UnitSystem::Kind::gaussian ? "gaussian" : "reduced"},
                   {"omega_ref", number_json(cfg.units.omega_ref)}};
  root["materials"] = json::object();
  for (const auto& [name, m] : cfg.materials)
    root["materials"][name] = {{"permittivity", oscillator_json(m.permittivity)},
                               {"permeability", oscillator_json(m.permeability)}};
  root["atoms"] = json::object();
  for (const auto& [name, a] : cfg.atoms) root["atoms"][name] = atom_json(a);
  root["scenario"] = enum_name(cfg.scenario, kScenarios);
  const auto& s = cfg.system;
  root["system"] = {{"host", s.host},
                    {"slab", s.slab},
                    {"slab_thickness", number_json(s.slab_thickness)},
                    {"mirror",
                     {{"kind", enum_name(s.mirror.kind, kMirrors)},
                      {"medium", s.mirror.medium},
                      {"atom", s.mirror.atom},
                      {"number_density", number_json(s.mirror.number_density)}}},
                    {"atom", s.atom},
                    {"atom_b", s.atom_b},
                    {"distance", number_json(s.distance)},
                    {"separation", number_json(s.separation)},
                    {"polarizability", enum_name(s.polarizability, kConventions)},
                    {"medium_term", enum_name(s.medium_term, kMediumTerms)}};
  if (cfg.sweep) {
    root["sweep"] = {{"variable", enum_name(cfg.sweep->variable, kVariables)},
                     {"start", number_json(cfg.sweep->grid.start)},
                     {"stop", number_json(cfg.sweep->grid.stop)},
                     {"points", cfg.sweep->grid.points},
                     {"spacing", enum_name(cfg.sweep->grid.spacing, kSpacings)}};
  }
  const auto& q = cfg.quadrature;
  root["quadrature"] = {{"rel_tol", number_json(q.rel_tol)},
                        {"abs_tol", number_json(q.abs_tol)},
                        {"xi_cutoff_factor", number_json(q.xi_cutoff_factor)},
                        {"max_subdivisions", q.max_subdivisions},
                        {"inner_variable", enum_name(q.inner_variable, kInner)}};
  return root.dump(2) + "\n";
}

const Medium& material(const RunConfig& cfg, const std::string& name, const std::string& where) {
  if (auto it = cfg.materials.find(name); it != cfg.materials.end()) return it->second;
  static const Medium vacuum = Medium::vacuum();
  if (name == "vacuum") return vacuum;
  throw ConfigError(where, "unknown material \"" + name + "\"");
}

namespace {

const AtomModel& atom_named(const RunConfig& cfg, const std::string& name, const std::string& where) {
  if (name.empty()) throw ConfigError(where, "missing atom name");
  if (auto it = cfg.atoms.find(name); it != cfg.atoms.end()) return it->second;
  throw ConfigError(where, "unknown atom \"" + name + "\"");
}

MirrorSpec mirror_spec(const RunConfig& cfg, double density_override, bool override_density) {
  const auto& m = cfg.system.mirror;
  switch (m.kind) {
    case MirrorConfig::Kind::perfect: return PerfectMirror{false};
    case MirrorConfig::Kind::perfect_magnetic: return PerfectMirror{true};
    case MirrorConfig::Kind::half_space:
      return HalfSpaceMirror{material(cfg, m.medium, "/system/mirror/medium")};
    case MirrorConfig::Kind::dilute:
      return DiluteMirror{override_density ? density_override : m.number_density,
                          atom_named(cfg, m.atom, "/system/mirror/atom"), cfg.system.polarizability};
  }
  return PerfectMirror{};
}

bool sweeps(const RunConfig& cfg, SweepVariable v) { return cfg.sweep && cfg.sweep->variable == v; }

void check_positive(double v, const std::string& where, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(where, std::string(what) + " must be a finite length > 0");
}

}  // namespace

SlabSystem slab_system(const RunConfig& cfg, double x) {
  SlabSystem s;
  s.host = material(cfg, cfg.system.host, "/system/host");
  if (cfg.system.slab == "perfect") {
    s.slab = PerfectMirror{};
  } else {
    s.slab = material(cfg, cfg.system.slab, "/system/slab");
  }
  s.slab_thickness = sweeps(cfg, SweepVariable::d_s) ? x : cfg.system.slab_thickness;
  s.mirror = mirror_spec(cfg, 0.0, false);
  s.distance = sweeps(cfg, SweepVariable::d) ? x : cfg.system.distance;
  s.constants = cfg.units.constants();
  return s;
}

std::vector<std::string> model_diagnostics(const RunConfig& cfg) {
  std::vector<std::string> names{cfg.system.host};
  if (cfg.scenario == Scenario::slab_force && cfg.system.slab != "perfect") names.push_back(cfg.system.slab);
  if (cfg.scenario != Scenario::atom_atom && cfg.system.mirror.kind == MirrorConfig::Kind::half_space)
    names.push_back(cfg.system.mirror.medium);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  std::vector<std::string> out;
  for (const auto& name : names)
    for (const auto& msg : diagnostics(material(cfg, name, "/system"))) out.push_back(name + ": " + msg);
  return out;
}

AtomMirrorSystem atom_mirror_system(const RunConfig& cfg, double x) {
  AtomMirrorSystem s;
  s.host = material(cfg, cfg.system.host, "/system/host");
  s.atom = atom_named(cfg, cfg.system.atom, "/system/atom");
  s.mirror = mirror_spec(cfg, x, sweeps(cfg, SweepVariable::N_B));
  s.distance = sweeps(cfg, SweepVariable::d) ? x : cfg.system.distance;
  s.constants = cfg.units.constants();
  s.convention = cfg.system.polarizability;
  s.medium_term = cfg.system.medium_term;
  return s;
}

PairSystem pair_system(const RunConfig& cfg, double x) {
  PairSystem p;
  p.host = material(cfg, cfg.system.host, "/system/host");
  p.atom_a = atom_named(cfg, cfg.system.atom, "/system/atom");
  p.atom_b = atom_named(cfg, cfg.system.atom_b, "/system/atom_b");
  p.separation = sweeps(cfg, SweepVariable::r) ? x : cfg.system.separation;
  p.constants = cfg.units.constants();
  p.convention = cfg.system.polarizability;
  return p;
}

void validate(const RunConfig& cfg) {
  try {
    validate(cfg.quadrature);
  } catch (const std::exception& e) {
    throw ConfigError("/quadrature", e.what());
  }
  const auto& s = cfg.system;
  material(cfg, s.host, "/system/host");
  if (s.mirror.kind == MirrorConfig::Kind::half_space) material(cfg, s.mirror.medium, "/system/mirror/medium");
  if (s.mirror.kind == MirrorConfig::Kind::dilute) {
    atom_named(cfg, s.mirror.atom, "/system/mirror/atom");
    if (!(s.mirror.number_density >= 0.0))
      throw ConfigError("/system/mirror/number_density", "must be >= 0");
  }

  std::vector<SweepVariable> allowed;
  switch (cfg.scenario) {
    case Scenario::slab_force:
      if (s.slab.empty()) throw ConfigError("/system/slab", "missing slab material (or \"perfect\")");
      if (s.slab != "perfect") material(cfg, s.slab, "/system/slab");
      check_positive(s.distance, "/system/distance", "d");
      if (!(s.slab_thickness >= 0.0)) throw ConfigError("/system/slab_thickness", "d_s must be >= 0");
      allowed = {SweepVariable::d, SweepVariable::d_s};
      break;
    case Scenario::atom_mirror:
      atom_named(cfg, s.atom, "/system/atom");
      check_positive(s.distance, "/system/distance", "d");
      allowed = {SweepVariable::d, SweepVariable::N_B};
      if (sweeps(cfg, SweepVariable::N_B) && s.mirror.kind != MirrorConfig::Kind::dilute)
        throw ConfigError("/sweep/variable", "sweeping N_B needs a dilute mirror");
      break;
    case Scenario::atom_atom:
      atom_named(cfg, s.atom, "/system/atom");
      atom_named(cfg, s.atom_b, "/system/atom_b");
      check_positive(s.separation, "/system/separation", "r");
      allowed = {SweepVariable::r};
      break;
    case Scenario::validate:
      atom_named(cfg, s.atom, "/system/atom");
      if (s.mirror.kind != MirrorConfig::Kind::dilute)
        throw ConfigError("/system/mirror/kind", "the consistency check needs a dilute mirror");
      check_positive(s.distance, "/system/distance", "d");
      allowed = {SweepVariable::d, SweepVariable::N_B};
      break;
  }
  if (cfg.sweep) {
    const auto& sw = *cfg.sweep;
    bool ok = false;
    for (auto v : allowed) ok = ok || v == sw.variable;
    if (!ok)
      throw ConfigError("/sweep/variable", std::string("cannot sweep ") + std::string(to_string(sw.variable)) +
                                               " in scenario " + std::string(to_string(cfg.scenario)));
    if (!(sw.grid.start < sw.grid.stop)) throw ConfigError("/sweep", "start must be < stop");
    if (!std::isfinite(sw.grid.start) || !std::isfinite(sw.grid.stop))
      throw ConfigError("/sweep", "start and stop must be finite");
    const bool length = sw.variable == SweepVariable::d || sw.variable == SweepVariable::r;
    if (length && !(sw.grid.start > 0.0))
      throw ConfigError("/sweep/start", "lengths must be > 0");
    if (!(sw.grid.start >= 0.0)) throw ConfigError("/sweep/start", "must be >= 0");
    if (sw.grid.spacing == Spacing::log && !(sw.grid.start > 0.0))
      throw ConfigError("/sweep/start", "log spacing needs start > 0");
  }
}

RunConfig example_config(Scenario scenario) {
  RunConfig cfg;
  cfg.units = {UnitSystem::Kind::reduced, 1.0};
  cfg.scenario = scenario;
  Medium host;
  host.permittivity = OscillatorModel::single(2.0, 1.0, 0.05);
  host.permeability = OscillatorModel::single(1.5, 1.0, 0.05);
  cfg.materials["host"] = host;
  Medium slab;
  slab.permittivity = OscillatorModel::single(4.0, 2.0, 0.1);
  cfg.materials["silica_like"] = slab;
  Medium metal;
  metal.permittivity = OscillatorModel{1.0, {{100.0, 0.0, 0.1}}};
  cfg.materials["drude_metal"] = metal;
  cfg.atoms["A"] = AtomModel{1e-3, 1.0, 2e-4, 1.5};
  cfg.atoms["B"] = AtomModel{2e-3, 0.8, 0.0, 1.0};

  auto& s = cfg.system;
  s.host = "host";
  switch (scenario) {
    case Scenario::slab_force:
      s.slab = "silica_like";
      s.slab_thickness = 0.5;
      s.mirror.kind = MirrorConfig::Kind::half_space;
      s.mirror.medium = "drude_metal";
      cfg.sweep = Sweep{SweepVariable::d, {0.1, 10.0, 25, Spacing::log}};
      break;
    case Scenario::atom_mirror:
      s.atom = "A";
      s.mirror.kind = MirrorConfig::Kind::half_space;
      s.mirror.medium = "drude_metal";
      cfg.sweep = Sweep{SweepVariable::d, {0.1, 10.0, 25, Spacing::log}};
      break;
    case Scenario::atom_atom:
      s.atom = "A";
      s.atom_b = "B";
      cfg.sweep = Sweep{SweepVariable::r, {0.01, 100.0, 25, Spacing::log}};
      break;
    case Scenario::validate:
      s.atom = "A";
      s.mirror.kind = MirrorConfig::Kind::dilute;
      s.mirror.atom = "B";
      s.mirror.number_density = 1e-2;
      cfg.sweep = Sweep{SweepVariable::d, {0.5, 5.0, 5, Spacing::log}};
      break;
  }
  return cfg;
}

}  // namespace casimir::cli
