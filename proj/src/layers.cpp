#include "casimir/layers.hpp"

#include <cmath>
#include <sstream>

#include "casimir/errors.hpp"
#include "layers_kernels.hpp"

namespace casimir {
namespace {

void require_point(KPoint p) {
  if (!(p.xi >= 0.0) || !(p.k >= 0.0)) {
    std::ostringstream os;
    os << "k-point needs xi >= 0 and k >= 0, got (" << p.xi << ", " << p.k << ")";
    throw DomainError(os.str());
  }
}

double kappa_of(const Response& r, KPoint p, double c) {
  const double x = p.xi / c;
  return std::sqrt(r.n2() * x * x + p.k * p.k);
}

}  // namespace

double kappa(KPoint point, const Medium& medium, double c) {
  require_point(point);
  return kappa_of(medium.at(point.xi), point, c);
}

double interface_r(Polarization q, const Medium& from, const Medium& to, KPoint point, double c) {
  require_point(point);
  const Response a = from.at(point.xi);
  const Response b = to.at(point.xi);
  const double ka = kappa_of(a, point, c);
  const double kb = kappa_of(b, point, c);
  return q == Polarization::p ? detail::fresnel(a.eps, ka, b.eps, kb)
                              : detail::fresnel(a.mu, ka, b.mu, kb);
}

SlabCoeffs slab_rt(Polarization q, const Medium& host, const Medium& slab, double d_s, KPoint point,
                   double c) {
  if (!(d_s >= 0.0)) throw DomainError("slab thickness must be >= 0");
  const double rho = interface_r(q, host, slab, point, c);
  const double ks = kappa(point, slab, c);
  return detail::slab_from_interface(rho, std::exp(-ks * d_s));
}

double mirror_R(Polarization q, const Medium& host, const MirrorSpec& mirror, KPoint point,
                double c) {
  require_point(point);
  const Response h = host.at(point.xi);
  const auto slice = detail::make_mirror_slice(mirror, h, point.xi, c);
  const double kap = kappa_of(h, point, c);
  const double kap_m = std::sqrt(std::max(kap * kap + slice.shift, 0.0));
  double rp = 0.0, rs = 0.0;
  slice.reflect(kap, kap_m, rp, rs);
  return q == Polarization::p ? rp : rs;
}

MirrorSpec dual(const MirrorSpec& mirror) {
  return std::visit(
      [](const auto& m) -> MirrorSpec {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PerfectMirror>) {
          return PerfectMirror{!m.magnetic};
        } else if constexpr (std::is_same_v<T, HalfSpaceMirror>) {
          return HalfSpaceMirror{dual(m.medium)};
        } else {
          return DiluteMirror{m.number_density, dual(m.atom), m.convention};
        }
      },
      mirror);
}

void validate(const MirrorSpec& mirror) {
  if (const auto* h = std::get_if<HalfSpaceMirror>(&mirror)) validate(h->medium);
  if (const auto* d = std::get_if<DiluteMirror>(&mirror)) {
    validate(d->atom);
    if (!(d->number_density >= 0.0)) throw DomainError("mirror number density must be >= 0");
  }
}

namespace detail {

MirrorSlice make_mirror_slice(const MirrorSpec& mirror, const Response& host, double xi, double c) {
  MirrorSlice s;
  s.eps = host.eps;
  s.mu = host.mu;
  s.n2 = host.n2();
  s.xi2_over_c2 = (xi / c) * (xi / c);
  if (const auto* p = std::get_if<PerfectMirror>(&mirror)) {
    s.kind = MirrorSlice::Kind::perfect;
    s.rp_const = p->magnetic ? -1.0 : 1.0;
    s.rs_const = -s.rp_const;
  } else if (const auto* h = std::get_if<HalfSpaceMirror>(&mirror)) {
    s.kind = MirrorSlice::Kind::half_space;
    const Response m = h->medium.at(xi);
    s.eps_m = m.eps;
    s.mu_m = m.mu;
    s.shift = (m.n2() - s.n2) * s.xi2_over_c2;
  } else {
    const auto& d = std::get<DiluteMirror>(mirror);
    s.kind = MirrorSlice::Kind::dilute;
    s.density = d.number_density;
    const auto a = atom_polarizabilities(d.atom, host, xi, d.convention);
    s.alpha_e = a.electric;
    s.alpha_m = a.magnetic;
  }
  return s;
}

}  // namespace detail
}  // namespace casimir
