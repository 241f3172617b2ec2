#pragma once

#include <unsupported/Eigen/FFT>
#include <iosfwd>
#include <vector>

#include "dnls/fields.hpp"

namespace dnls {

template <typename Real>
using SampleVector = std::vector<std::complex<Real>>;

/// Fourier coefficients (1/2pi) int e^{-ikx} u(x) dx from M uniform samples on
/// [0, 2pi).  The band kept is |k| <= (M - 2)/2 so that M >= 2 n_max + 2.
template <typename Real>
BasicSpectralField<Real> forward_transform(const SampleVector<Real>& samples) {
  const Index M = Index(samples.size());
  if (M == 0) throw InvalidArgument("forward_transform: empty sample vector");
  if (M < 2) throw InvalidArgument("forward_transform: need at least 2 samples");
  const int n = int((M - 2) / 2);
  Eigen::FFT<Real> fft;
  SampleVector<Real> spec;
  fft.fwd(spec, samples);
  BasicSpectralField<Real> f(n);
  const Real inv = Real(1) / Real(M);
  for (int k = -n; k <= n; ++k) f(k) = spec[((k % M) + M) % M] * inv;
  return f;
}

/// Samples of sum_k f_k e^{ikx} at x_j = 2 pi j / M.
template <typename Real>
SampleVector<Real> inverse_transform(const BasicSpectralField<Real>& f, Index M) {
  if (M < 2 * Index(f.n_max()) + 2)
    throw AliasingError("inverse_transform: grid of " + std::to_string(M) +
                        " points cannot hold n_max=" + std::to_string(f.n_max()));
  SampleVector<Real> spec(M, std::complex<Real>(0)), out;
  for (int k = -f.n_max(); k <= f.n_max(); ++k) spec[((k % M) + M) % M] = f(k);
  Eigen::FFT<Real> fft;
  fft.SetFlag(Eigen::FFT<Real>::Unscaled);
  fft.inv(out, spec);
  return out;
}

/// Restrict to |k| <= n (or zero-extend when n > n_max).
template <typename Real>
BasicSpectralField<Real> resize_band(const BasicSpectralField<Real>& f, int n) {
  BasicSpectralField<Real> g(n);
  const int m = std::min(n, f.n_max());
  for (int k = -m; k <= m; ++k) g(k) = f(k);
  return g;
}

/// Forward transform of samples followed by truncation to |k| <= n_out.
template <typename Real>
BasicSpectralField<Real> from_samples(const SampleVector<Real>& samples, int n_out) {
  return resize_band(forward_transform(samples), n_out);
}

template <typename Real>
struct Projection {
  std::complex<Real> mean;
  BasicSpectralField<Real> mean_free;
};

template <typename Real>
Projection<Real> project(const BasicSpectralField<Real>& f) {
  Projection<Real> p{f(0), f};
  p.mean_free(0) = 0;
  return p;
}

/// Mean-zero antiderivative: mode k -> f_k / (ik), mode 0 -> 0.
template <typename Real>
BasicSpectralField<Real> antiderivative_mean_free(const BasicSpectralField<Real>& f) {
  BasicSpectralField<Real> g(f.n_max());
  for (int k = -f.n_max(); k <= f.n_max(); ++k)
    if (k != 0) g(k) = f(k) / std::complex<Real>(0, Real(k));
  return g;
}

template <typename Real>
BasicSpectralField<Real> derivative(const BasicSpectralField<Real>& f) {
  BasicSpectralField<Real> g(f.n_max());
  for (int k = -f.n_max(); k <= f.n_max(); ++k) g(k) = f(k) * std::complex<Real>(0, Real(k));
  return g;
}

/// Free Schrodinger group e^{it d_x^2}: mode k picks up e^{-ik^2 t}.
template <typename Real>
BasicSpectralField<Real> linear_flow(const BasicSpectralField<Real>& f, Real t) {
  BasicSpectralField<Real> g(f.n_max());
  for (int k = -f.n_max(); k <= f.n_max(); ++k) {
    const Real ph = -Real(k) * Real(k) * t;
    g(k) = f(k) * std::complex<Real>(std::cos(ph), std::sin(ph));
  }
  return g;
}

/// Smallest power of two M with M >= factor * (2 n + 2); used for padded products.
inline Index padded_grid(int n_max, double factor = 2.0) {
  Index M = 2;
  while (double(M) < factor * double(2 * n_max + 2)) M <<= 1;
  return M;
}

/// u~(k, lambda) = (1/2pi) int e^{-i lambda t} e^{ik^2 t} u_k(t) dt by the
/// trapezoid rule on the time grid.  The field must vanish at both ends of the
/// time window, and the lambda grid must stay inside the band the time
/// sampling resolves.
SpaceTimeField twist(const SpaceTimeField& F, const LambdaGrid& lambda);

/// Inverse of twist: u_k(t) = e^{-ik^2 t} int e^{i lambda t} u~(k, lambda) dlambda.
SpaceTimeField untwist(const SpaceTimeField& F, const TimeGrid& time);

/// Largest symmetric lambda grid with the given spacing that a time grid can feed.
LambdaGrid lambda_grid_for(const TimeGrid& time, double extent = 4096.0, double spacing = 0.25);

/// Text serialization: header "dnls-field v1 n_max=<N>", then lines "k re im".
void write_field(std::ostream& os, const SpectralField& f);
SpectralField read_field(std::istream& is);
void write_spacetime(std::ostream& os, const SpaceTimeField& f);
SpaceTimeField read_spacetime(std::istream& is);

}  // namespace dnls
