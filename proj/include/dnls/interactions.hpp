#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dnls/fields.hpp"

namespace dnls {

/// Exact integer type for class thresholds and resonance factors.
using Wide = __int128;

enum class TripleClass { H, L, S, N };
const char* to_string(TripleClass c);
std::optional<TripleClass> parse_triple_class(const std::string& s);

/// Cubic interaction tuple with k2 + k3 - k1 = k.
struct CubicTriple {
  long long k = 0, k1 = 0, k2 = 0, k3 = 0;
  TripleClass cls = TripleClass::H;
  bool diagonal = false;
  Wide delta = 0;
};

/// Membership of V3: k2 + k3 - k1 = k with |k2| >= |k3| and k not in {k2, k3}, or (k, k, k).
bool in_V3(long long k, long long k1, long long k2, long long k3);
bool is_diagonal(long long k, long long k1, long long k2, long long k3);

/// Class of a V3 triple from cross-multiplied integer comparisons:
///   H: |k3| 2^20 >= |k|;   L: |k2| 2^20 < |k|;   S: |k1| <= 2^10 |k3| and |k3| 2^20 < |k|;   N: otherwise.
TripleClass classify_triple(long long k, long long k1, long long k2, long long k3);
/// The three defining predicates on their own (used for the disjointness checks).
bool in_XH(long long k, long long k1, long long k2, long long k3);
bool in_XL(long long k, long long k1, long long k2, long long k3);
bool in_XS(long long k, long long k1, long long k2, long long k3);

/// Delta = k^2 + k1^2 - k2^2 - k3^2; when k2 + k3 - k1 = k checks the factorized form
/// 2 (k - k2)(k - k3) and throws AssertionFailure if they differ.
Wide resonance_delta(long long k, long long k1, long long k2, long long k3);

CubicTriple make_triple(long long k, long long k1, long long k2, long long k3);

/// Frequency-dependent coefficient of arity 3 (k, k1, k2, k3) or 5 (k, k1, ..., k5).
class Multiplier {
 public:
  using Rule = std::function<cplx(std::span<const long long>)>;
  Multiplier(int arity, Rule rule, double bound, std::string source);

  static Multiplier unit(int arity);
  /// Table file: header "dnls-multiplier v1 arity=<3|5> bound=<B> [default=<re>,<im>]"
  /// followed by lines "k k1 ... re im"; tuples not listed take the default (1 if omitted).
  static Multiplier from_file(const std::string& path);

  int arity() const { return arity_; }
  double bound() const { return bound_; }
  bool is_unit() const { return unit_; }
  const std::string& source() const { return source_; }
  cplx operator()(std::span<const long long> tuple) const;
  cplx operator()(long long k, long long k1, long long k2, long long k3) const {
    const long long t[4] = {k, k1, k2, k3};
    return (*this)(std::span<const long long>(t, 4));
  }

 private:
  int arity_;
  Rule rule_;
  double bound_;
  std::string source_;
  bool unit_ = false;
};

enum class CubicKind { Full, H, L, S, N };
CubicKind cubic_kind(TripleClass c);

/// Per-class cubic sums  sum k1 M3 conj(v1(k1)) v2(k2) v3(k3) over the class, lexicographic in
/// (k2, k3).  The full sum is ((H + L) + S) + N of the class accumulators, which makes the
/// splitting identity exact in floating point.
struct CubicParts {
  SpectralField H, L, S, N;
  SpectralField full() const;
  const SpectralField& part(TripleClass c) const;
};
CubicParts cubic_parts(const SpectralField& v1, const SpectralField& v2, const SpectralField& v3,
                       const Multiplier& M);
SpectralField cubic_apply(CubicKind kind, const SpectralField& v1, const SpectralField& v2,
                          const SpectralField& v3, const Multiplier& M);

/// Terms of one class grouped by output mode and resonance factor; the building block of the
/// time-domain resonance splitting.  Entry (k, Delta) lists the triples (k1, k2, k3) in
/// lexicographic (k2, k3) order with their coefficient k1 M3.
struct ResonanceGroup {
  long long k = 0;
  long long delta = 0;
  std::vector<std::array<long long, 3>> triples;
  std::vector<cplx> coef;
};
std::vector<ResonanceGroup> resonance_groups(int n_max, TripleClass cls, const Multiplier& M);

/// Direct sum over V5 within the band; unit multipliers take an exact pseudospectral path
/// unless `force_direct` is set.
SpectralField quintic_apply(const SpectralField& v1, const SpectralField& v2, const SpectralField& v3,
                            const SpectralField& v4, const SpectralField& v5, const Multiplier& M,
                            bool force_direct = false);

/// Quintic tuple with k1 - k2 + k3 - k4 + k5 = k.
struct QuinticTuple {
  long long k = 0;
  std::array<long long, 5> ks{};
};

struct PairingChoice {
  std::vector<std::pair<int, int>> pairings;  // 1-based (odd, even) index pairs with equal values
  int index = 0;                              // chosen 1-based index
  double ratio = 0.0;                         // |k_i| / max(1, |k|)
};

/// Pairing detection and index selection: no pairing -> largest |k_i| (smallest index on ties);
/// one pairing -> largest |k_i| among the other three unless they contain a pairing, in which
/// case the index left over.
PairingChoice pairing_and_index(const QuinticTuple& t);

}  // namespace dnls
