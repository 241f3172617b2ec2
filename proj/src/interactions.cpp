#include "dnls/interactions.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <sstream>

#include "dnls/spectral.hpp"

namespace dnls {

namespace {

constexpr Wide kTwo10 = Wide(1) << 10;
constexpr Wide kTwo20 = Wide(1) << 20;

Wide wabs(long long x) { return x < 0 ? -Wide(x) : Wide(x); }

}  // namespace

const char* to_string(TripleClass c) {
  switch (c) {
    case TripleClass::H: return "H";
    case TripleClass::L: return "L";
    case TripleClass::S: return "S";
    case TripleClass::N: return "N";
  }
  return "?";
}

std::optional<TripleClass> parse_triple_class(const std::string& s) {
  if (s == "H") return TripleClass::H;
  if (s == "L") return TripleClass::L;
  if (s == "S") return TripleClass::S;
  if (s == "N") return TripleClass::N;
  return std::nullopt;
}

bool is_diagonal(long long k, long long k1, long long k2, long long k3) {
  return k1 == k && k2 == k && k3 == k;
}

bool in_V3(long long k, long long k1, long long k2, long long k3) {
  if (Wide(k2) + k3 - k1 != Wide(k)) return false;
  if (is_diagonal(k, k1, k2, k3)) return true;
  return wabs(k2) >= wabs(k3) && k != k2 && k != k3;
}

bool in_XH(long long k, long long, long long, long long k3) { return wabs(k3) * kTwo20 >= wabs(k); }
bool in_XL(long long k, long long, long long k2, long long) { return wabs(k2) * kTwo20 < wabs(k); }
bool in_XS(long long k, long long k1, long long, long long k3) {
  return wabs(k1) <= kTwo10 * wabs(k3) && wabs(k3) * kTwo20 < wabs(k);
}

TripleClass classify_triple(long long k, long long k1, long long k2, long long k3) {
  if (!in_V3(k, k1, k2, k3))
    throw InvalidArgument("classify_triple: (" + std::to_string(k1) + "," + std::to_string(k2) + "," +
                          std::to_string(k3) + ") is not in V3 for k=" + std::to_string(k));
  if (in_XH(k, k1, k2, k3)) return TripleClass::H;
  if (in_XL(k, k1, k2, k3)) return TripleClass::L;
  if (in_XS(k, k1, k2, k3)) return TripleClass::S;
  return TripleClass::N;
}

Wide resonance_delta(long long k, long long k1, long long k2, long long k3) {
  const Wide d = Wide(k) * k + Wide(k1) * k1 - Wide(k2) * k2 - Wide(k3) * k3;
  if (Wide(k2) + k3 - k1 == Wide(k)) {
    const Wide f = 2 * (Wide(k) - k2) * (Wide(k) - k3);
    if (f != d) throw AssertionFailure("resonance_delta: factorized form disagrees");
  }
  return d;
}

CubicTriple make_triple(long long k, long long k1, long long k2, long long k3) {
  CubicTriple t;
  t.k = k;
  t.k1 = k1;
  t.k2 = k2;
  t.k3 = k3;
  t.cls = classify_triple(k, k1, k2, k3);
  t.diagonal = is_diagonal(k, k1, k2, k3);
  t.delta = resonance_delta(k, k1, k2, k3);
  return t;
}

Multiplier::Multiplier(int arity, Rule rule, double bound, std::string source)
    : arity_(arity), rule_(std::move(rule)), bound_(bound), source_(std::move(source)) {
  if (arity != 3 && arity != 5) throw InvalidArgument("Multiplier: arity must be 3 or 5");
}

Multiplier Multiplier::unit(int arity) {
  Multiplier m(arity, [](std::span<const long long>) { return cplx(1.0, 0.0); }, 1.0, "unit");
  m.unit_ = true;
  return m;
}

Multiplier Multiplier::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("multiplier file not readable: " + path);
  std::string line;
  while (std::getline(in, line) && (line.empty() || line[0] == '#')) {
  }
  std::istringstream hs(line);
  std::string magic, version, tok;
  hs >> magic >> version;
  if (magic != "dnls-multiplier" || version != "v1")
    throw InvalidArgument("multiplier file lacks the 'dnls-multiplier v1' header: " + path);
  int arity = 0;
  double bound = -1.0;
  cplx dflt(1.0, 0.0);
  while (hs >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw InvalidArgument("multiplier header: bad token " + tok);
    const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "arity") arity = std::stoi(val);
    else if (key == "bound") bound = std::stod(val);
    else if (key == "default") {
      const auto c = val.find(',');
      dflt = c == std::string::npos ? cplx(std::stod(val), 0.0)
                                    : cplx(std::stod(val.substr(0, c)), std::stod(val.substr(c + 1)));
    } else {
      throw InvalidArgument("multiplier header: unknown key " + key);
    }
  }
  if (arity != 3 && arity != 5) throw InvalidArgument("multiplier header: arity must be 3 or 5");
  if (!(bound >= 0.0)) throw InvalidArgument("multiplier header: bound must be given and >= 0");
  auto table = std::make_shared<std::map<std::vector<long long>, cplx>>();
  const int width = arity + 1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<long long> key(width);
    double re, im;
    for (auto& x : key)
      if (!(ls >> x)) throw InvalidArgument("multiplier file: malformed line '" + line + "'");
    if (!(ls >> re >> im)) throw InvalidArgument("multiplier file: malformed line '" + line + "'");
    const cplx v(re, im);
    if (std::abs(v) > bound * (1.0 + 1e-12))
      throw InvalidArgument("multiplier file: entry exceeds the declared bound: '" + line + "'");
    (*table)[key] = v;
  }
  if (std::abs(dflt) > bound * (1.0 + 1e-12))
    throw InvalidArgument("multiplier file: default exceeds the declared bound");
  auto rule = [table, dflt](std::span<const long long> t) {
    auto it = table->find(std::vector<long long>(t.begin(), t.end()));
    return it == table->end() ? dflt : it->second;
  };
  return Multiplier(arity, rule, bound, path);
}

cplx Multiplier::operator()(std::span<const long long> tuple) const {
  if (Index(tuple.size()) != arity_ + 1) throw InvalidArgument("Multiplier: tuple length mismatch");
  return rule_(tuple);
}

CubicKind cubic_kind(TripleClass c) {
  switch (c) {
    case TripleClass::H: return CubicKind::H;
    case TripleClass::L: return CubicKind::L;
    case TripleClass::S: return CubicKind::S;
    case TripleClass::N: return CubicKind::N;
  }
  return CubicKind::Full;
}

SpectralField CubicParts::full() const {
  SpectralField f = H;
  f += L;
  f += S;
  f += N;
  return f;
}

const SpectralField& CubicParts::part(TripleClass c) const {
  switch (c) {
    case TripleClass::H: return H;
    case TripleClass::L: return L;
    case TripleClass::S: return S;
    case TripleClass::N: return N;
  }
  return H;
}

namespace {

void require_same_band(std::initializer_list<const SpectralField*> fs) {
  const int n = (*fs.begin())->n_max();
  for (auto* f : fs)
    if (f->n_max() != n) throw InvalidArgument("nonlinearity inputs must share n_max");
}

}  // namespace

CubicParts cubic_parts(const SpectralField& v1, const SpectralField& v2, const SpectralField& v3,
                       const Multiplier& M) {
  require_same_band({&v1, &v2, &v3});
  if (M.arity() != 3) throw InvalidArgument("cubic nonlinearity needs a multiplier of arity 3");
  const int n = v1.n_max();
  CubicParts out{SpectralField(n), SpectralField(n), SpectralField(n), SpectralField(n)};
  for (int k = -n; k <= n; ++k) {
    cplx acc[4] = {};
    for (int k2 = -n; k2 <= n; ++k2) {
      for (int k3 = -n; k3 <= n; ++k3) {
        const long long k1 = (long long)k2 + k3 - k;
        if (!v1.in_band(k1) || !in_V3(k, k1, k2, k3)) continue;
        const cplx term = double(k1) * M(k, k1, k2, k3) * std::conj(v1(int(k1))) * v2(k2) * v3(k3);
        acc[int(classify_triple(k, k1, k2, k3))] += term;
      }
    }
    out.H(k) = acc[0];
    out.L(k) = acc[1];
    out.S(k) = acc[2];
    out.N(k) = acc[3];
  }
  return out;
}

SpectralField cubic_apply(CubicKind kind, const SpectralField& v1, const SpectralField& v2,
                          const SpectralField& v3, const Multiplier& M) {
  const CubicParts p = cubic_parts(v1, v2, v3, M);
  switch (kind) {
    case CubicKind::Full: return p.full();
    case CubicKind::H: return p.H;
    case CubicKind::L: return p.L;
    case CubicKind::S: return p.S;
    case CubicKind::N: return p.N;
  }
  return p.full();
}

std::vector<ResonanceGroup> resonance_groups(int n, TripleClass cls, const Multiplier& M) {
  if (M.arity() != 3) throw InvalidArgument("resonance_groups: multiplier arity must be 3");
  std::vector<ResonanceGroup> out;
  for (int k = -n; k <= n; ++k) {
    std::map<long long, std::size_t> slot;
    for (int k2 = -n; k2 <= n; ++k2) {
      for (int k3 = -n; k3 <= n; ++k3) {
        const long long k1 = (long long)k2 + k3 - k;
        if (k1 < -n || k1 > n || !in_V3(k, k1, k2, k3)) continue;
        if (classify_triple(k, k1, k2, k3) != cls) continue;
        const long long d = (long long)resonance_delta(k, k1, k2, k3);
        auto it = slot.find(d);
        if (it == slot.end()) {
          it = slot.emplace(d, out.size()).first;
          out.push_back(ResonanceGroup{k, d, {}, {}});
        }
        out[it->second].triples.push_back({k1, (long long)k2, (long long)k3});
        out[it->second].coef.push_back(double(k1) * M(k, k1, k2, k3));
      }
    }
  }
  return out;
}

SpectralField quintic_apply(const SpectralField& v1, const SpectralField& v2, const SpectralField& v3,
                            const SpectralField& v4, const SpectralField& v5, const Multiplier& M,
                            bool force_direct) {
  require_same_band({&v1, &v2, &v3, &v4, &v5});
  if (M.arity() != 5) throw InvalidArgument("quintic nonlinearity needs a multiplier of arity 5");
  const int n = v1.n_max();
  if (M.is_unit() && !force_direct) {
    // Band 5n product sampled on more than 6n points: modes |k| <= n are alias free.
    const Index G = padded_grid(n, 3.0);
    auto a = inverse_transform(v1, G), b = inverse_transform(v2, G), c = inverse_transform(v3, G),
         d = inverse_transform(v4, G), e = inverse_transform(v5, G);
    SampleVector<double> p(G);
    for (Index j = 0; j < G; ++j) p[j] = a[j] * std::conj(b[j]) * c[j] * std::conj(d[j]) * e[j];
    return resize_band(forward_transform(p), n);
  }
  SpectralField out(n);
  for (int k = -n; k <= n; ++k) {
    cplx acc{};
    long long t[6];
    t[0] = k;
    for (int k1 = -n; k1 <= n; ++k1)
      for (int k2 = -n; k2 <= n; ++k2)
        for (int k3 = -n; k3 <= n; ++k3)
          for (int k4 = -n; k4 <= n; ++k4) {
            const long long k5 = (long long)k - k1 + k2 - k3 + k4;
            if (k5 < -n || k5 > n) continue;
            t[1] = k1;
            t[2] = k2;
            t[3] = k3;
            t[4] = k4;
            t[5] = k5;
            acc += M(std::span<const long long>(t, 6)) * v1(k1) * std::conj(v2(k2)) * v3(k3) *
                   std::conj(v4(k4)) * v5(int(k5));
          }
    out(k) = acc;
  }
  return out;
}

PairingChoice pairing_and_index(const QuinticTuple& t) {
  const auto& v = t.ks;
  if (Wide(v[0]) - v[1] + v[2] - v[3] + v[4] != Wide(t.k))
    throw InvalidArgument("pairing_and_index: tuple violates k1 - k2 + k3 - k4 + k5 = k");
  auto plus = [](int i) { return i % 2 == 0; };  // 0-based: indices 0, 2, 4 carry +
  auto is_pair = [&](int i, int j) { return plus(i) != plus(j) && v[i] == v[j]; };
  PairingChoice out;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      if (is_pair(i, j)) out.pairings.emplace_back(i + 1, j + 1);

  auto argmax = [&](const std::vector<int>& idx) {
    int best = idx.front();
    for (int i : idx)
      if (wabs(v[i]) > wabs(v[best])) best = i;
    return best;
  };
  int chosen;
  if (out.pairings.empty()) {
    chosen = argmax({0, 1, 2, 3, 4});
  } else {
    const auto [p, q] = out.pairings.front();
    std::vector<int> rest;
    for (int i = 0; i < 5; ++i)
      if (i != p - 1 && i != q - 1) rest.push_back(i);
    std::optional<std::pair<int, int>> inner;
    for (std::size_t a = 0; a < rest.size() && !inner; ++a)
      for (std::size_t b = a + 1; b < rest.size() && !inner; ++b)
        if (is_pair(rest[a], rest[b])) inner = std::make_pair(rest[a], rest[b]);
    if (inner) {
      chosen = -1;
      for (int i : rest)
        if (i != inner->first && i != inner->second) chosen = i;
    } else {
      chosen = argmax(rest);
    }
  }
  out.index = chosen + 1;
  out.ratio = double(wabs(v[chosen])) / std::max(1.0, double(wabs(t.k)));
  return out;
}

}  // namespace dnls
