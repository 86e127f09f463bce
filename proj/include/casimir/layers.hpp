#pragma once

// Perpendicular wavevectors and reflection/transmission coefficients on the
// imaginary-frequency axis, where all of them are real.

#include <variant>

#include "casimir/materials.hpp"

namespace casimir {

enum class Polarization { p, s };  // TM, TE

struct KPoint {
  double xi = 0.0;  // imaginary frequency
  double k = 0.0;   // in-plane wavevector
};

struct SlabCoeffs {
  double r = 0.0;
  double t = 1.0;
};

// Semi-infinite mirror filled with `medium`.
struct HalfSpaceMirror {
  Medium medium;
  friend bool operator==(const HalfSpaceMirror&, const HalfSpaceMirror&) = default;
};

// Host medium with a small density of atoms, reflection to first order in
// the density.
struct DiluteMirror {
  double number_density = 0.0;
  AtomModel atom;
  PolarizabilityConvention convention = PolarizabilityConvention::local_field;
  friend bool operator==(const DiluteMirror&, const DiluteMirror&) = default;
};

// Perfect conductor: (R^p, R^s) = (+1, -1). The magnetic flavour is its
// dual, (-1, +1).
struct PerfectMirror {
  bool magnetic = false;
  friend bool operator==(const PerfectMirror&, const PerfectMirror&) = default;
};

using MirrorSpec = std::variant<PerfectMirror, HalfSpaceMirror, DiluteMirror>;

// kappa = sqrt(n^2 xi^2 / c^2 + k^2)
double kappa(KPoint point, const Medium& medium, double c = 1.0);

// Fresnel coefficient for a wave in `from` hitting `to`.
double interface_r(Polarization q, const Medium& from, const Medium& to, KPoint point,
                   double c = 1.0);

// Slab of thickness d_s bounded by `host` on both sides. Phases are referred
// to the slab faces, so slab == host gives (0, exp(-kappa d_s)).
SlabCoeffs slab_rt(Polarization q, const Medium& host, const Medium& slab, double d_s, KPoint point,
                   double c = 1.0);

double mirror_R(Polarization q, const Medium& host, const MirrorSpec& mirror, KPoint point,
                double c = 1.0);

MirrorSpec dual(const MirrorSpec& mirror);

void validate(const MirrorSpec& mirror);

}  // namespace casimir
