#include "dnls/gauge.hpp"

#include <cmath>
#include <ostream>

#include "dnls/spectral.hpp"

namespace dnls {

Index gauge_grid(int n_max) { return padded_grid(n_max, 4.0); }

SpectralField gauge_phase(const SpectralField& u) {
  const int n = u.n_max();
  auto x = inverse_transform(u, gauge_grid(n));
  for (auto& z : x) z = std::norm(z);
  SpectralField m = from_samples(x, 2 * n);
  SpectralField G = antiderivative_mean_free(m);
  // |u|^2 is real, so G is real: enforce the conjugate symmetry exactly.
  for (int k = 1; k <= 2 * n; ++k) {
    const cplx a = 0.5 * (G(k) + std::conj(G(-k)));
    G(k) = a;
    G(-k) = std::conj(a);
  }
  return G;
}

namespace {

struct Twist {
  SpectralField out;
  double residual = 0.0;  // l2 share outside the band
};

// e^{sign i G} u on the gauge grid, truncated to the band of u.
Twist multiply_phase(const SpectralField& u, const SpectralField& G, double sign) {
  const Index M = gauge_grid(u.n_max());
  auto x = inverse_transform(u, M);
  auto g = inverse_transform(G, M);
  for (std::size_t j = 0; j < x.size(); ++j) x[j] *= std::polar(1.0, sign * g[j].real());
  SpectralField full = forward_transform(x);
  Twist t{resize_band(full, u.n_max()), 0.0};
  const double total = full.modes().squaredNorm();
  if (total > 0.0) t.residual = std::sqrt(std::max(0.0, 1.0 - t.out.modes().squaredNorm() / total));
  return t;
}

SpectralField translate(const SpectralField& f, double shift) {
  SpectralField g(f.n_max());
  for (int k = -f.n_max(); k <= f.n_max(); ++k) g(k) = f(k) * std::polar(1.0, -double(k) * shift);
  return g;
}

Index origin_row(const SpaceTimeField& u, const char* who) {
  u.require_physical();
  if (!u.time.has_point(0.0)) throw InvalidArgument(std::string(who) + ": the time grid must contain t = 0");
  return u.time.nearest(0.0);
}

}  // namespace

SpectralField gauge_data(const SpectralField& u0) {
  return multiply_phase(u0, gauge_phase(u0), -1.0).out;
}

SpaceTimeField gauge_forward(const SpaceTimeField& u, GaugeRecord* record, GaugeDiagnostics* diag) {
  const Index j0 = origin_row(u, "gauge_forward");
  const double mu = u.physical.row(j0).squaredNorm();
  SpaceTimeField v(u.n_max, u.time);
  GaugeDiagnostics d;
  d.grid = gauge_grid(u.n_max);
  if (record) {
    record->mu = mu;
    record->G = SpaceTimeField(2 * u.n_max, u.time);
  }
  for (Index j = 0; j < u.time.n; ++j) {
    const SpectralField s = u.slice(j);
    const SpectralField G = gauge_phase(s);
    Twist tw = multiply_phase(s, G, -1.0);
    const SpectralField out = translate(tw.out, 2.0 * mu * u.time[j]);
    v.set_slice(j, out);
    if (record) record->G.set_slice(j, G);
    const double nu = s.modes().norm();
    d.max_mean_drift = std::max(d.max_mean_drift, std::abs(s.modes().squaredNorm() - mu));
    d.max_dealias_residual = std::max(d.max_dealias_residual, tw.residual);
    if (nu > 0.0) d.max_l2_defect = std::max(d.max_l2_defect, std::abs(out.modes().norm() - nu) / nu);
  }
  if (diag) *diag = d;
  return v;
}

SpaceTimeField gauge_inverse(const SpaceTimeField& v, GaugeDiagnostics* diag) {
  const Index j0 = origin_row(v, "gauge_inverse");
  const double mu = v.physical.row(j0).squaredNorm();
  SpaceTimeField u(v.n_max, v.time);
  GaugeDiagnostics d;
  d.grid = gauge_grid(v.n_max);
  for (Index j = 0; j < v.time.n; ++j) {
    const SpectralField s = v.slice(j);
    const SpectralField v0 = translate(s, -2.0 * mu * v.time[j]);
    Twist tw = multiply_phase(v0, gauge_phase(v0), 1.0);
    u.set_slice(j, tw.out);
    const double nv = s.modes().norm();
    d.max_mean_drift = std::max(d.max_mean_drift, std::abs(s.modes().squaredNorm() - mu));
    d.max_dealias_residual = std::max(d.max_dealias_residual, tw.residual);
    if (nv > 0.0) d.max_l2_defect = std::max(d.max_l2_defect, std::abs(tw.out.modes().norm() - nv) / nv);
  }
  if (diag) *diag = d;
  return u;
}

void write_gauge_diagnostics(std::ostream& os, const GaugeDiagnostics& d, double mu) {
  os.precision(17);
  os << "# dnls-gauge-diagnostics v1\n";
  os << "mu = " << mu << '\n';
  os << "grid = " << d.grid << '\n';
  os << "max_mean_drift = " << d.max_mean_drift << '\n';
  os << "max_dealias_residual = " << d.max_dealias_residual << '\n';
  os << "max_l2_defect = " << d.max_l2_defect << '\n';
}

}  // namespace dnls
