#pragma once

// Material response on the imaginary-frequency axis.
//
// Permittivities and permeabilities are sums of Lorentz oscillators,
//   eps(i xi) = baseline + sum_j wp_j^2 / (w0_j^2 + gamma_j xi + xi^2),
// which are real, positive and non-increasing in xi for gamma >= 0.
// A Drude term is the w0 = 0 special case. Atoms carry single-oscillator
// electric and magnetic polarizabilities.

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace casimir {

struct OscillatorTerm {
  double strength = 0.0;   // wp^2
  double resonance = 0.0;  // w0
  double damping = 0.0;    // gamma

  friend bool operator==(const OscillatorTerm&, const OscillatorTerm&) = default;
};

struct OscillatorModel {
  double baseline = 1.0;
  std::vector<OscillatorTerm> terms;

  static OscillatorModel vacuum() { return {}; }
  static OscillatorModel constant(double value) { return {value, {}}; }
  // One Lorentz term whose static value is `static_value`.
  static OscillatorModel single(double static_value, double resonance, double damping = 0.0);

  double static_value() const;
  // Largest of w0, wp and gamma over all terms; 0 for a model with no terms.
  double max_frequency() const;
  // Smallest positive w0 or wp; 0 for a model with no terms.
  double min_frequency() const;
  bool is_nondispersive() const { return terms.empty(); }

  friend bool operator==(const OscillatorModel&, const OscillatorModel&) = default;
};

enum class Channel { electric, magnetic };

// Single-oscillator atom: alpha(i xi) = alpha0 / (1 + xi^2 / omega^2).
// omega = +inf gives a nondispersive polarizability.
struct AtomModel {
  double alpha_e0 = 0.0;
  double omega_e = 1.0;
  double alpha_m0 = 0.0;
  double omega_m = 1.0;

  static AtomModel electric(double alpha0, double omega) { return {alpha0, omega, 0.0, 1.0}; }
  static AtomModel magnetic(double alpha0, double omega) { return {0.0, 1.0, alpha0, omega}; }

  double alpha0(Channel ch) const { return ch == Channel::electric ? alpha_e0 : alpha_m0; }
  double omega(Channel ch) const { return ch == Channel::electric ? omega_e : omega_m; }
  bool is_polarizable() const { return alpha_e0 != 0.0 || alpha_m0 != 0.0; }

  friend bool operator==(const AtomModel&, const AtomModel&) = default;
};

// Atoms dispersed in a host at low number density (Clausius-Mossotti mixture).
struct Admixture {
  double number_density = 0.0;
  AtomModel atom;

  friend bool operator==(const Admixture&, const Admixture&) = default;
};

struct Response {
  double eps = 1.0;
  double mu = 1.0;
  double n2() const { return eps * mu; }
};

struct Medium {
  OscillatorModel permittivity;
  OscillatorModel permeability;
  std::optional<Admixture> admixture;

  static Medium vacuum() { return {}; }
  static Medium nondispersive(double eps, double mu) {
    return {OscillatorModel::constant(eps), OscillatorModel::constant(mu), std::nullopt};
  }

  Response at(double xi) const;
  // Batched evaluation over xi; eps and mu must have xi.size() entries.
  void at(std::span<const double> xi, std::span<double> eps, std::span<double> mu) const;
  double refractive_index(double xi) const;
  Response static_response() const { return at(0.0); }

  double max_frequency() const;
  double min_frequency() const;

  friend bool operator==(const Medium&, const Medium&) = default;
};

double eval_response(const OscillatorModel& model, double xi);
double eval_polarizability(const AtomModel& atom, Channel channel, double xi);

// Local-field enhanced polarizability of an atom embedded in a host with
// response x (eps for the electric channel, mu for the magnetic one):
// alpha0 ((x + 2) / 3)^2, to leading order in N alpha0.
double effective_polarizability(double atom_vacuum_alpha, double host_response);

struct Polarizabilities {
  double electric = 0.0;
  double magnetic = 0.0;
};

// How atomic polarizabilities enter the force formulas.
enum class PolarizabilityConvention {
  local_field,  // vacuum values dressed by effective_polarizability in the host
  as_given,     // values are already the in-medium ones
};

Polarizabilities atom_polarizabilities(const AtomModel& atom, const Response& host, double xi,
                                       PolarizabilityConvention convention);

struct MixResult {
  double epsilon_s = 1.0;
  double mu_s = 1.0;
  // max(4 pi N alpha_e, 4 pi N alpha_m); the linearised mixture needs this << 1.
  double dilution = 0.0;
};

MixResult dilute_mix(const Medium& host, double number_density, const AtomModel& atom, double xi);

// Host with atoms of `atom` mixed in at `number_density`.
Medium with_admixture(Medium host, double number_density, const AtomModel& atom);

// Electric <-> magnetic exchange.
Medium dual(const Medium& medium);
AtomModel dual(const AtomModel& atom);

// Human-readable warnings about models that are legal but suspicious
// (nondispersive response above one, non-dilute admixtures).
std::vector<std::string> diagnostics(const Medium& medium);

void validate(const OscillatorModel& model);
void validate(const AtomModel& atom);
void validate(const Medium& medium);

}  // namespace casimir
