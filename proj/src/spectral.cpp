#include "dnls/spectral.hpp"

#include <iomanip>
#include <map>
#include <string>
#include <istream>
#include <ostream>
#include <sstream>

#include "dnls/quadrature.hpp"

namespace dnls {

SpaceTimeField twist(const SpaceTimeField& F, const LambdaGrid& lg) {
  F.require_physical();
  const TimeGrid& tg = F.time;
  if (lg.n < 1 || !(lg.step > 0)) throw InvalidArgument("twist: empty lambda grid");
  const double nyquist = M_PI / tg.step;
  if (lg.extent() > nyquist * (1.0 + 1e-12))
    throw InvalidArgument("twist: lambda grid extent " + std::to_string(lg.extent()) +
                          " exceeds the time-sampling band pi/dt = " + std::to_string(nyquist));
  const double support = std::max(std::abs(tg.start), std::abs(tg.back()));
  if (support > 0 && lg.step > M_PI / support * (1.0 + 1e-12))
    throw InvalidArgument("twist: lambda spacing " + std::to_string(lg.step) +
                          " too coarse for a time support of half-width " + std::to_string(support));

  const double scale = F.physical.cwiseAbs().maxCoeff();
  if (scale > 0) {
    const double edge = std::max(F.physical.row(0).cwiseAbs().maxCoeff(),
                                 F.physical.row(tg.n - 1).cwiseAbs().maxCoeff());
    if (edge > 1e-9 * scale)
      throw InvalidArgument("twist: field is not compactly supported inside the time window");
  }

  SpaceTimeField out = F;
  out.lambda = lg;
  out.twisted.setZero(lg.n, F.modes());
  std::vector<cplx> col(tg.n);
  for (int k = -F.n_max; k <= F.n_max; ++k) {
    const Index c = F.col(k);
    for (Index j = 0; j < tg.n; ++j) col[j] = F.physical(j, c);
    // e^{ik^2 t} e^{-i lambda t} = e^{-i (lambda - k^2) t}
    auto y = chirp_z(col, tg.start, tg.step, lg.start - double(k) * k, lg.step, lg.n, -1);
    for (Index m = 0; m < lg.n; ++m) out.twisted(m, c) = y[m] * (tg.step / (2.0 * M_PI));
  }
  // The trapezoid sum is spectrally accurate for smooth compactly supported traces.
  out.quadrature_tol = 1e-10;
  return out;
}

SpaceTimeField untwist(const SpaceTimeField& F, const TimeGrid& tg) {
  F.require_twisted();
  const LambdaGrid& lg = F.lambda;
  SpaceTimeField out(F.n_max, tg);
  out.lambda = lg;
  out.twisted = F.twisted;
  std::vector<cplx> col(lg.n);
  for (int k = -F.n_max; k <= F.n_max; ++k) {
    const Index c = F.col(k);
    for (Index m = 0; m < lg.n; ++m) col[m] = F.twisted(m, c);
    col.front() *= 0.5;
    col.back() *= 0.5;
    auto y = chirp_z(col, lg.start - double(k) * k, lg.step, tg.start, tg.step, tg.n, +1);
    for (Index j = 0; j < tg.n; ++j) out.physical(j, c) = y[j] * lg.step;
  }
  return out;
}

LambdaGrid lambda_grid_for(const TimeGrid& time, double extent, double spacing) {
  const double nyquist = M_PI / time.step;
  double e = extent;
  while (e > nyquist) e *= 0.5;
  const Index m = static_cast<Index>(std::floor(e / spacing + 1e-9));
  return LambdaGrid{-double(m) * spacing, spacing, 2 * m + 1};
}

namespace {

std::map<std::string, std::string> parse_header(const std::string& line, const char* who) {
  std::istringstream ss(line);
  std::string magic, version;
  ss >> magic >> version;
  if (magic != "dnls-field" || version != "v1")
    throw InvalidArgument(std::string(who) + ": not a dnls-field v1 stream");
  std::map<std::string, std::string> kv;
  std::string tok;
  while (ss >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw InvalidArgument(std::string(who) + ": bad header token " + tok);
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  if (!kv.count("n_max")) throw InvalidArgument(std::string(who) + ": header lacks n_max");
  return kv;
}

void write_modes(std::ostream& os, const SpectralField& f) {
  for (int k = -f.n_max(); k <= f.n_max(); ++k)
    os << k << ' ' << f(k).real() << ' ' << f(k).imag() << '\n';
}

void read_modes(std::istream& is, SpectralField& f) {
  for (int i = 0; i < 2 * f.n_max() + 1; ++i) {
    int k;
    double re, im;
    if (!(is >> k >> re >> im)) throw InvalidArgument("read_field: truncated mode list");
    f.at(k) = cplx(re, im);
  }
}

}  // namespace

void write_field(std::ostream& os, const SpectralField& f) {
  os << std::setprecision(17);
  os << "dnls-field v1 n_max=" << f.n_max() << '\n';
  write_modes(os, f);
}

SpectralField read_field(std::istream& is) {
  std::string line;
  while (std::getline(is, line) && (line.empty() || line[0] == '#')) {
  }
  auto kv = parse_header(line, "read_field");
  SpectralField f(std::stoi(kv["n_max"]));
  read_modes(is, f);
  return f;
}

void write_spacetime(std::ostream& os, const SpaceTimeField& F) {
  F.require_physical();
  os << std::setprecision(17);
  os << "dnls-field v1 n_max=" << F.n_max << " t_start=" << F.time.start << " t_end=" << F.time.back()
     << " dt=" << F.time.step << '\n';
  for (Index j = 0; j < F.time.n; ++j) {
    os << "t " << F.time[j] << '\n';
    write_modes(os, F.slice(j));
  }
}

SpaceTimeField read_spacetime(std::istream& is) {
  std::string line;
  while (std::getline(is, line) && (line.empty() || line[0] == '#')) {
  }
  auto kv = parse_header(line, "read_spacetime");
  if (!kv.count("t_start") || !kv.count("t_end") || !kv.count("dt"))
    throw InvalidArgument("read_spacetime: header lacks the time grid");
  const double t0 = std::stod(kv["t_start"]), t1 = std::stod(kv["t_end"]), dt = std::stod(kv["dt"]);
  SpaceTimeField F(std::stoi(kv["n_max"]), TimeGrid::span(t0, t1, dt));
  for (Index j = 0; j < F.time.n; ++j) {
    std::string tag;
    double t;
    if (!(is >> tag >> t) || tag != "t") throw InvalidArgument("read_spacetime: missing time block");
    SpectralField f(F.n_max);
    read_modes(is, f);
    F.set_slice(j, f);
  }
  return F;
}

}  // namespace dnls
