#include "dnls/solver.hpp"

#include <cmath>
#include <sstream>

#include "dnls/duhamel.hpp"
#include "dnls/spectral.hpp"

namespace dnls {

void IntegratorConfig::validate() const {
  if (n_max < 0) throw InvalidArgument("IntegratorConfig: n_max must be >= 0");
  if (!(dt > 0.0)) throw InvalidArgument("IntegratorConfig: dt must be > 0");
  if (!std::isfinite(T)) throw InvalidArgument("IntegratorConfig: T must be finite");
  if (!(dealias >= 2.0)) throw InvalidArgument("IntegratorConfig: dealias factor must be >= 2");
  if (save_every < 1) throw InvalidArgument("IntegratorConfig: save_every must be >= 1");
  if (scheme != "if-rk4") throw InvalidArgument("IntegratorConfig: unknown scheme '" + scheme + "'");
  if (dt * double(std::max(n_max, 1)) > 0.5)
    throw InvalidArgument("IntegratorConfig: stability bound dt * n_max <= 0.5 violated");
}

Index IntegratorConfig::grid_size() const { return padded_grid(n_max, dealias); }

SpectralField dnls_nonlinearity(const SpectralField& u, Index grid) {
  auto x = inverse_transform(u, grid);
  for (auto& z : x) z *= std::norm(z);
  SpectralField c = resize_band(forward_transform(x), u.n_max());
  return derivative(c);
}

namespace {

// Right-hand side for w = e^{ik^2 t} u:  w_k' = e^{ik^2 t} N_k(e^{-ik^2 t} w).
SpectralField if_rhs(const SpectralField& w, double t, Index grid) {
  SpectralField u = linear_flow(w, t);
  SpectralField n = dnls_nonlinearity(u, grid);
  return linear_flow(n, -t);
}

double l2(const SpectralField& f) { return f.modes().norm(); }

}  // namespace

SpaceTimeField integrate_dnls(const SpectralField& u0, const IntegratorConfig& cfg0) {
  IntegratorConfig cfg = cfg0;
  cfg.n_max = u0.n_max();
  cfg.validate();
  const Index grid = cfg.grid_size();
  const long long steps = std::max<long long>(0, std::llround(std::abs(cfg.T) / cfg.dt));
  const double h = steps == 0 ? 0.0 : cfg.T / double(steps);

  std::vector<long long> saved;
  for (long long s = 0; s <= steps; s += cfg.save_every) saved.push_back(s);
  if (saved.back() != steps) saved.push_back(steps);
  // Saved times are uniform except possibly the last; keep a uniform grid by requiring divisibility.
  if (steps % cfg.save_every != 0)
    throw InvalidArgument("integrate_dnls: number of steps must be a multiple of save_every");

  const double save_dt = h * double(cfg.save_every);
  TimeGrid tg{0.0, save_dt == 0.0 ? 1.0 : save_dt, Index(saved.size())};
  if (save_dt < 0.0) tg = TimeGrid{cfg.T, -save_dt, Index(saved.size())};
  SpaceTimeField out(u0.n_max(), tg);
  auto store = [&](long long idx, const SpectralField& u) {
    const Index row = save_dt < 0.0 ? Index(saved.size()) - 1 - Index(idx) : Index(idx);
    out.set_slice(row, u);
  };

  SpectralField w = u0;
  store(0, u0);
  double last_stable = 0.0;
  for (long long s = 1; s <= steps; ++s) {
    const double t = double(s - 1) * h;
    const SpectralField k1 = if_rhs(w, t, grid);
    const SpectralField k2 = if_rhs(w + cplx(0.5 * h) * k1, t + 0.5 * h, grid);
    const SpectralField k3 = if_rhs(w + cplx(0.5 * h) * k2, t + 0.5 * h, grid);
    const SpectralField k4 = if_rhs(w + cplx(h) * k3, t + h, grid);
    w += cplx(h / 6.0) * (k1 + cplx(2.0) * k2 + cplx(2.0) * k3 + k4);
    const double norm = l2(w);
    if (!std::isfinite(norm) || norm > 1e6) {
      std::ostringstream os;
      os << "last stable time " << last_stable << ", l2 norm " << norm;
      throw NumericError("integrate_dnls: blow-up detected", os.str());
    }
    last_stable = double(s) * h;
    if (s % cfg.save_every == 0) store(s / cfg.save_every, linear_flow(w, double(s) * h));
  }
  return out;
}

SpaceTimeField picard_iterate_integral(const SpectralField& u0, int n_iter, const IntegratorConfig& cfg0,
                                       std::vector<double>* history) {
  IntegratorConfig cfg = cfg0;
  cfg.n_max = u0.n_max();
  cfg.validate();
  if (n_iter < 0) throw InvalidArgument("picard_iterate_integral: n_iter must be >= 0");
  if (!(cfg.T > 0.0)) throw InvalidArgument("picard_iterate_integral: T must be > 0");
  const Index grid = cfg.grid_size();
  const long long steps = std::max<long long>(1, std::llround(cfg.T / cfg.dt));
  const TimeGrid tg{0.0, cfg.T / double(steps), Index(steps + 1)};

  SpaceTimeField freev(u0.n_max(), tg);
  for (Index j = 0; j < tg.n; ++j) freev.set_slice(j, linear_flow(u0, tg[j]));

  SpaceTimeField u = freev;
  std::vector<double> diffs;
  for (int it = 0; it < n_iter; ++it) {
    SpaceTimeField F(u0.n_max(), tg);
    for (Index j = 0; j < tg.n; ++j) F.set_slice(j, dnls_nonlinearity(u.slice(j), grid));
    SpaceTimeField next = duhamel_trajectory(F);
    next.physical += freev.physical;
    const double d = (next.physical - u.physical).cwiseAbs().maxCoeff();
    diffs.push_back(d);
    if (history) history->push_back(d);
    u = std::move(next);
    if (diffs.size() >= 2 && d > 2.0 * diffs[diffs.size() - 2] &&
        d > 1e-12 * std::max(1.0, u.physical.cwiseAbs().maxCoeff()))
      throw DivergenceError("picard_iterate_integral: successive differences doubled", diffs);
  }
  return u;
}

SpectralField exact_plane_wave(cplx a, int k, double t, int n_max) {
  SpectralField f(n_max);
  const double kk = double(k);
  const double ph = (kk * std::norm(a) - kk * kk) * t;
  f.at(k) = a * std::polar(1.0, ph);
  return f;
}

double mass(const SpectralField& u) { return u.modes().squaredNorm(); }

double sup_norm(const SpectralField& u) {
  auto x = inverse_transform(u, padded_grid(u.n_max()));
  double m = 0.0;
  for (const auto& z : x) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace dnls
