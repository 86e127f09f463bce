#include "casimir/materials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "casimir/errors.hpp"
#include "casimir/simd.hpp"
#include "casimir/units.hpp"

namespace casimir {
namespace {

void require_frequency(double xi) {
  if (!(xi >= 0.0)) {
    std::ostringstream os;
    os << "imaginary frequency must be >= 0, got " << xi;
    throw DomainError(os.str());
  }
}

double frequency_scale(const OscillatorTerm& t) {
  return std::max({t.resonance, std::sqrt(t.strength), t.damping});
}

}  // namespace

OscillatorModel OscillatorModel::single(double static_value, double resonance, double damping) {
  return {1.0, {{(static_value - 1.0) * resonance * resonance, resonance, damping}}};
}

double OscillatorModel::static_value() const { return eval_response(*this, 0.0); }

double OscillatorModel::max_frequency() const {
  double w = 0.0;
  for (const auto& t : terms) w = std::max(w, frequency_scale(t));
  return w;
}

double OscillatorModel::min_frequency() const {
  double w = 0.0;
  for (const auto& t : terms) {
    const double s = t.resonance > 0.0 ? t.resonance : std::sqrt(t.strength);
    if (s > 0.0 && (w == 0.0 || s < w)) w = s;
  }
  return w;
}

double eval_response(const OscillatorModel& model, double xi) {
  require_frequency(xi);
  double acc = model.baseline;
  for (const auto& t : model.terms)
    acc += t.strength / (t.resonance * t.resonance + xi * (t.damping + xi));
  return acc;
}

double eval_polarizability(const AtomModel& atom, Channel channel, double xi) {
  require_frequency(xi);
  const double a0 = atom.alpha0(channel);
  const double u = xi / atom.omega(channel);
  return a0 / (1.0 + u * u);
}

double effective_polarizability(double atom_vacuum_alpha, double host_response) {
  const double f = (host_response + 2.0) / 3.0;
  return atom_vacuum_alpha * f * f;
}

Polarizabilities atom_polarizabilities(const AtomModel& atom, const Response& host, double xi,
                                       PolarizabilityConvention convention) {
  Polarizabilities p{eval_polarizability(atom, Channel::electric, xi),
                     eval_polarizability(atom, Channel::magnetic, xi)};
  if (convention == PolarizabilityConvention::local_field) {
    p.electric = effective_polarizability(p.electric, host.eps);
    p.magnetic = effective_polarizability(p.magnetic, host.mu);
  }
  return p;
}

Response Medium::at(double xi) const {
  Response r{eval_response(permittivity, xi), eval_response(permeability, xi)};
  if (admixture) {
    const auto& [n, atom] = *admixture;
    const auto a = atom_polarizabilities(atom, r, xi, PolarizabilityConvention::local_field);
    r.eps += 4.0 * pi * n * a.electric;
    r.mu += 4.0 * pi * n * a.magnetic;
  }
  return r;
}

void Medium::at(std::span<const double> xi, std::span<double> eps, std::span<double> mu) const {
  const auto& k = simd::active();
  auto fill = [&](const OscillatorModel& m, std::span<double> out) {
    constexpr std::size_t kStack = 8;
    const std::size_t terms = m.terms.size();
    if (terms <= kStack) {
      double s[kStack], w2[kStack], g[kStack];
      for (std::size_t j = 0; j < terms; ++j) {
        s[j] = m.terms[j].strength;
        w2[j] = m.terms[j].resonance * m.terms[j].resonance;
        g[j] = m.terms[j].damping;
      }
      k.oscillator_sum(m.baseline, s, w2, g, terms, xi.data(), out.data(), xi.size());
    } else {
      std::vector<double> s(terms), w2(terms), g(terms);
      for (std::size_t j = 0; j < terms; ++j) {
        s[j] = m.terms[j].strength;
        w2[j] = m.terms[j].resonance * m.terms[j].resonance;
        g[j] = m.terms[j].damping;
      }
      k.oscillator_sum(m.baseline, s.data(), w2.data(), g.data(), terms, xi.data(), out.data(),
                       xi.size());
    }
  };
  fill(permittivity, eps);
  fill(permeability, mu);
  if (admixture) {
    const auto& [n, atom] = *admixture;
    for (std::size_t i = 0; i < xi.size(); ++i) {
      const auto a = atom_polarizabilities(atom, {eps[i], mu[i]}, xi[i],
                                           PolarizabilityConvention::local_field);
      eps[i] += 4.0 * pi * n * a.electric;
      mu[i] += 4.0 * pi * n * a.magnetic;
    }
  }
}

double Medium::refractive_index(double xi) const { return std::sqrt(at(xi).n2()); }

double Medium::max_frequency() const {
  double w = std::max(permittivity.max_frequency(), permeability.max_frequency());
  if (admixture) {
    const auto& a = admixture->atom;
    if (a.alpha_e0 != 0.0 && std::isfinite(a.omega_e)) w = std::max(w, a.omega_e);
    if (a.alpha_m0 != 0.0 && std::isfinite(a.omega_m)) w = std::max(w, a.omega_m);
  }
  return w;
}

double Medium::min_frequency() const {
  double w = 0.0;
  auto take = [&w](double s) {
    if (s > 0.0 && std::isfinite(s) && (w == 0.0 || s < w)) w = s;
  };
  take(permittivity.min_frequency());
  take(permeability.min_frequency());
  if (admixture) {
    const auto& a = admixture->atom;
    if (a.alpha_e0 != 0.0) take(a.omega_e);
    if (a.alpha_m0 != 0.0) take(a.omega_m);
  }
  return w;
}

MixResult dilute_mix(const Medium& host, double number_density, const AtomModel& atom, double xi) {
  const Response h = host.at(xi);
  const auto a = atom_polarizabilities(atom, h, xi, PolarizabilityConvention::local_field);
  const double ke = 4.0 * pi * number_density * a.electric;
  const double km = 4.0 * pi * number_density * a.magnetic;
  return {h.eps + ke, h.mu + km, std::max(std::abs(ke), std::abs(km))};
}

Medium with_admixture(Medium host, double number_density, const AtomModel& atom) {
  if (host.admixture) throw DomainError("medium already carries an admixture");
  if (!(number_density >= 0.0)) throw DomainError("number density must be >= 0");
  host.admixture = Admixture{number_density, atom};
  return host;
}

AtomModel dual(const AtomModel& atom) {
  return {atom.alpha_m0, atom.omega_m, atom.alpha_e0, atom.omega_e};
}

Medium dual(const Medium& medium) {
  Medium out{medium.permeability, medium.permittivity, medium.admixture};
  if (out.admixture) out.admixture->atom = dual(out.admixture->atom);
  return out;
}

std::vector<std::string> diagnostics(const Medium& medium) {
  std::vector<std::string> out;
  auto check = [&out](const OscillatorModel& m, const char* what) {
    if (m.is_nondispersive() && m.baseline > 1.0) {
      std::ostringstream os;
      os << what << " is nondispersive (" << m.baseline
         << " at all frequencies); the high-frequency tail is bounded only by the xi cutoff";
      out.push_back(os.str());
    }
  };
  check(medium.permittivity, "permittivity");
  check(medium.permeability, "permeability");
  if (medium.admixture) {
    const double probe = 4.0 * pi * medium.admixture->number_density *
                         std::max(std::abs(medium.admixture->atom.alpha_e0),
                                  std::abs(medium.admixture->atom.alpha_m0));
    if (probe > 0.1) {
      std::ostringstream os;
      os << "admixture is not dilute (4 pi N alpha0 = " << probe << ")";
      out.push_back(os.str());
    }
  }
  return out;
}

void validate(const OscillatorModel& model) {
  if (!(model.baseline >= 1.0) || !std::isfinite(model.baseline))
    throw DomainError("response baseline must be finite and >= 1");
  for (const auto& t : model.terms) {
    if (!(t.strength >= 0.0) || !(t.resonance >= 0.0) || !(t.damping >= 0.0) ||
        !std::isfinite(t.strength) || !std::isfinite(t.resonance) || !std::isfinite(t.damping))
      throw DomainError("oscillator strength, resonance and damping must be finite and >= 0");
    if (t.resonance == 0.0 && t.damping == 0.0 && t.strength > 0.0)
      throw DomainError("Drude term (resonance 0) needs a positive damping");
  }
}

void validate(const AtomModel& atom) {
  if (!(atom.alpha_e0 >= 0.0) || !(atom.alpha_m0 >= 0.0))
    throw DomainError("static polarizabilities must be >= 0");
  if (!(atom.omega_e > 0.0) || !(atom.omega_m > 0.0))
    throw DomainError("atomic resonance frequencies must be > 0 (use inf for nondispersive)");
}

void validate(const Medium& medium) {
  validate(medium.permittivity);
  validate(medium.permeability);
  if (medium.admixture) {
    validate(medium.admixture->atom);
    if (!(medium.admixture->number_density >= 0.0))
      throw DomainError("number density must be >= 0");
  }
}

}  // namespace casimir
