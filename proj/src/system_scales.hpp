#pragma once

#include <algorithm>
#include <cmath>

#include "casimir/layers.hpp"

namespace casimir::detail {

// Lowest and highest characteristic frequencies over all models in a system.
struct FrequencyRange {
  double min = 0.0;
  double max = 0.0;

  void add_frequency(double w) {
    if (!(w > 0.0) || !std::isfinite(w)) return;
    min = min == 0.0 ? w : std::min(min, w);
    max = std::max(max, w);
  }
  void add(const Medium& m) {
    add_frequency(m.min_frequency());
    add_frequency(m.max_frequency());
  }
  void add(const AtomModel& a) {
    if (a.alpha_e0 != 0.0) add_frequency(a.omega_e);
    if (a.alpha_m0 != 0.0) add_frequency(a.omega_m);
  }
  void add(const MirrorSpec& mirror) {
    if (const auto* h = std::get_if<HalfSpaceMirror>(&mirror)) add(h->medium);
    if (const auto* d = std::get_if<DiluteMirror>(&mirror)) add(d->atom);
  }
};

}  // namespace casimir::detail
