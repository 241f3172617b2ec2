#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dnls/eta.hpp"
#include "dnls/interactions.hpp"
#include "dnls/norms.hpp"

namespace dnls {

/// A localized free wave  u(k, t) = f(k) phi(t) e^{i lambda0 t} e^{-i k^2 t}  with finitely many
/// nonzero f(k).  Its twisted transform is f(k) phi^(lambda - lambda0), so every restriction-type
/// norm factorizes into a spatial and a modulation part.
struct SparseInput {
  std::vector<std::pair<int, cplx>> modes;  // (k, f(k)), distinct k
  int lambda0 = 0;                          // integer modulation
  int n_max = 0;
};

/// || <k>^s <lambda>^b u~ ||_{l^p L^q}, exactly factorized.
double input_norm(const SparseInput& u, const NormSpec& spec);

enum class ProbeOperator { Trilinear, EY_N, EY_L };
const char* to_string(ProbeOperator op);

/// Twisted output of one operator applied to three sparse inputs, mode by mode:
///   Trilinear:  phi(t) I(phi(s) C(v1, v2, v3))               (all V3 triples)
///   EY_N, EY_L: phi(t) E^Y_*(phi(s) v1, v2, v3)              (triples of the class only)
/// Values are sampled on a per-mode lambda set: 1/8-spaced windows around every resonance and
/// around 0, graded points across the broad eta-scaled support in between.
struct OutputSpectrum {
  struct Mode {
    int k = 0;
    std::vector<double> lambda;
    std::vector<cplx> value;
  };
  std::vector<Mode> modes;
  long long groups = 0;  // (k, Delta) groups that contributed
};

OutputSpectrum probe_output(ProbeOperator op, const SparseInput& v1, const SparseInput& v2, const SparseInput& v3,
                            const Multiplier& M, const EtaProfile& eta = default_eta());

/// || <k>^s <lambda>^b h~ ||_{l^p L^q} with the trapezoid rule on each mode's lambda set.
double output_norm(const OutputSpectrum& out, const NormSpec& spec);

/// Input families of the probe ensembles: random modes anywhere in the band; a high v1 against
/// low v2 and v3 (the low-frequency-pair geometry); high v1 and v2 against a low v3.
enum class ProbeFamily { Isotropic, HighLowA, HighLowB };
const char* to_string(ProbeFamily f);

/// Draws the three inputs of sample `index` for the given operator.  Each input carries a few
/// modes; the E^Y classes force the zero mode where the desk-scale class thresholds need it
/// (v3 for N; v2 and v3 for L).
std::array<SparseInput, 3> draw_probe_inputs(ProbeOperator op, ProbeFamily family, int n_max,
                                             std::mt19937_64& rng, int modes_per_input = 4);

struct ProbeCell {
  double p = 0.0;
  int n_max = 0;
  int samples = 0;    // samples with nonzero inputs and output
  std::uint64_t seed = 0;
  double constant = 0.0;  // max over samples of ||out|| / product of input norms (a lower bound)
  ProbeFamily argmax_family = ProbeFamily::Isotropic;
};

struct ProbeReport {
  std::string estimate;
  std::vector<ProbeCell> cells;
  std::map<double, double> slope;  // per p: least-squares slope of log C against log n_max
  std::string grid_note;
  /// max over consecutive n_max doublings of C(2n) / C(n), per p.
  std::map<double, double> max_doubling_growth() const;
};

/// Trilinear estimate with s = 1/2, b = 1/2 + delta, q = 2, over the p and n_max lists.
ProbeReport trilinear_probe(const std::vector<double>& ps, const std::vector<int>& n_maxes, int samples,
                            std::uint64_t seed, const ParameterLadder& L);

/// E^Y bounds: ||E^Y_N||_{Y1} / (||v1||_{Z0} ||v2||_{Z0} ||v3||_{Y0}) and
/// ||E^Y_L||_{Y1} / (||v1||_{Z0} ||v2||_{Y0} ||v3||_{Y0}).
ProbeReport ey_bound_probe(TripleClass star, const std::vector<int>& n_maxes, int samples, std::uint64_t seed,
                           const ParameterLadder& L);

/// CSV with the header line  estimate,p,n_max,samples,seed,constant,slope.
void write_probe_csv(std::ostream& os, const ProbeReport& r);

}  // namespace dnls
