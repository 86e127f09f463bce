#pragma once

// Run configuration for the command-line front end: named materials and
// atoms, one scenario, an optional sweep and quadrature settings. Stored as
// JSON.

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "casimir/atom_forces.hpp"
#include "casimir/pairwise.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/slab_forces.hpp"
#include "casimir/units.hpp"

namespace casimir::cli {

// Parse or validation failure. `where` is a JSON pointer ("/system/distance")
// or "line L, column C" for syntax errors.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

enum class Scenario { slab_force, atom_mirror, atom_atom, validate };
enum class SweepVariable { d, r, d_s, N_B };
enum class Spacing { linear, log };

std::string_view to_string(Scenario s);
std::string_view to_string(SweepVariable v);

struct UnitSystem {
  enum class Kind { gaussian, reduced } kind = Kind::reduced;
  double omega_ref = 1.0;  // rad/s; labels reduced output

  Constants constants() const {
    return kind == Kind::gaussian ? Constants::gaussian() : Constants::reduced();
  }
  friend bool operator==(const UnitSystem&, const UnitSystem&) = default;
};

struct SweepGrid {
  double start = 0.0;
  double stop = 1.0;
  std::size_t points = 1;
  Spacing spacing = Spacing::linear;

  double at(std::size_t i) const;
  friend bool operator==(const SweepGrid&, const SweepGrid&) = default;
};

struct Sweep {
  SweepVariable variable = SweepVariable::d;
  SweepGrid grid;
  friend bool operator==(const Sweep&, const Sweep&) = default;
};

struct MirrorConfig {
  enum class Kind { perfect, perfect_magnetic, half_space, dilute } kind = Kind::perfect;
  std::string medium;  // half_space
  std::string atom;    // dilute
  double number_density = 0.0;
  friend bool operator==(const MirrorConfig&, const MirrorConfig&) = default;
};

// Scenario geometry by material/atom name. Fields a scenario does not use
// stay empty.
struct SystemConfig {
  std::string host = "vacuum";
  std::string slab;  // material name or "perfect"
  double slab_thickness = 0.0;
  MirrorConfig mirror;
  std::string atom;
  std::string atom_b;
  double distance = 1.0;    // d
  double separation = 1.0;  // r
  PolarizabilityConvention polarizability = PolarizabilityConvention::local_field;
  MediumTermVariant medium_term = MediumTermVariant::displayed;
  friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

struct RunConfig {
  UnitSystem units;
  std::map<std::string, Medium> materials;
  std::map<std::string, AtomModel> atoms;
  Scenario scenario = Scenario::slab_force;
  SystemConfig system;
  std::optional<Sweep> sweep;
  QuadratureConfig quadrature;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const RunConfig& config);

// Checks names, lengths, sweep/scenario compatibility. Throws ConfigError.
void validate(const RunConfig& config);

// A small self-consistent example for the scenario.
RunConfig example_config(Scenario scenario);

// Resolved physical systems at one sweep value.
const Medium& material(const RunConfig& config, const std::string& name, const std::string& where);
SlabSystem slab_system(const RunConfig& config, double sweep_value);
AtomMirrorSystem atom_mirror_system(const RunConfig& config, double sweep_value);
PairSystem pair_system(const RunConfig& config, double sweep_value);

// Model warnings for the materials the scenario actually uses, each
// prefixed with the material name.
std::vector<std::string> model_diagnostics(const RunConfig& config);

}  // namespace casimir::cli
