#include <cmath>
#include <sstream>

#include "doctest.h"
#include "dnls/cutoff.hpp"
#include "dnls/duhamel.hpp"
#include "dnls/probes.hpp"
#include "dnls/random.hpp"
#include "dnls/spectral.hpp"

using namespace dnls;

namespace {

SpaceTimeField realize(const SparseInput& u, const TimeGrid& tg) {
  SpaceTimeField f(u.n_max, tg);
  for (Index j = 0; j < tg.n; ++j) {
    const double t = tg[j];
    for (const auto& [k, c] : u.modes)
      f.physical(j, f.col(k)) = c * cutoff_phi(t) * std::polar(1.0, u.lambda0 * t - double(k) * k * t);
  }
  return f;
}

// Full time-domain evaluation of the probed operator, then the twisted transform.
SpaceTimeField time_domain(ProbeOperator op, const std::array<SparseInput, 3>& in, const TimeGrid& tg,
                           const LambdaGrid& lg) {
  const SpaceTimeField a = realize(in[0], tg), b = realize(in[1], tg), c = realize(in[2], tg);
  const Multiplier M = Multiplier::unit(3);
  SpaceTimeField h;
  if (op == ProbeOperator::Trilinear) {
    h = ic_apply(TripleClass::H, a, b, c, M, true);
    for (TripleClass cl : {TripleClass::L, TripleClass::S, TripleClass::N})
      h.physical += ic_apply(cl, a, b, c, M, true).physical;
  } else {
    h = EY_apply(op == ProbeOperator::EY_N ? TripleClass::N : TripleClass::L, a, b, c, M, true);
  }
  return twist(h, lg);
}

}  // namespace

TEST_CASE("semi-analytic probe output matches the time-domain operator at n_max = 4") {
  const TimeGrid tg = UniformGrid::symmetric(2.0, 1.0 / 1024.0);
  const LambdaGrid lg = UniformGrid::span(-200.0, 200.0, 0.125);
  const RngStreams rs(7);
  int s = 0;
  for (ProbeOperator op : {ProbeOperator::Trilinear, ProbeOperator::EY_N, ProbeOperator::EY_L}) {
    auto rng = rs.stream("x" + std::to_string(s));
    const auto in = draw_probe_inputs(op, ProbeFamily(s % 3), 4, rng, 3);
    ++s;
    const OutputSpectrum out = probe_output(op, in[0], in[1], in[2], Multiplier::unit(3));
    CHECK(out.groups > 0);
    const SpaceTimeField ref = time_domain(op, in, tg, lg);
    double err = 0.0, peak = 0.0;
    for (const auto& m : out.modes)
      for (std::size_t i = 0; i < m.lambda.size(); ++i) {
        const double l = m.lambda[i];
        if (std::abs(l) > 199.0 || !lg.has_point(l)) continue;
        const cplx r = ref.twisted(lg.nearest(l), ref.col(m.k));
        err = std::max(err, std::abs(r - m.value[i]));
        peak = std::max(peak, std::abs(r));
      }
    CHECK(peak > 0.0);
    CHECK(err <= 1e-3 * peak);
  }
}

TEST_CASE("input norms factorize into spatial and modulation parts") {
  SparseInput u;
  u.n_max = 8;
  u.lambda0 = 3;
  u.modes = {{1, cplx(0.5, 0.5)}, {-4, cplx(0.0, -1.0)}};
  const NormSpec spec{0.5, 0.75, 4.0, 1.9};
  double spatial = 0.0;
  for (const auto& [k, c] : u.modes) spatial += std::pow(std::pow(japanese(k), 0.5) * std::abs(c), 4.0);
  spatial = std::pow(spatial, 0.25);
  const auto& phi = phi_transform();
  const auto w = [&](double l) { return std::pow(std::pow(japanese(l), 0.75) * std::abs(phi.hat_direct(l - 3.0)), 1.9); };
  double modulation = 0.0;
  const double h = 1.0 / 64.0;
  for (double l = -200.0; l <= 200.0; l += h) modulation += w(l) * h;
  modulation = std::pow(modulation, 1.0 / 1.9);
  CHECK(input_norm(u, spec) == doctest::Approx(spatial * modulation).epsilon(1e-4));
}

TEST_CASE("zero inputs produce no output") {
  SparseInput zero;
  zero.n_max = 8;
  SparseInput one;
  one.n_max = 8;
  one.modes = {{2, cplx(1.0)}};
  const OutputSpectrum out = probe_output(ProbeOperator::Trilinear, one, zero, one, Multiplier::unit(3));
  CHECK(out.groups == 0);
  CHECK(output_norm(out, {0.5, 0.51, 2.0, 2.0}) == 0.0);
}

TEST_CASE("class-restricted draws respect the desk-scale class conditions") {
  const RngStreams rs(3);
  auto rng = rs.stream("draws");
  for (int i = 0; i < 20; ++i) {
    const auto n = draw_probe_inputs(ProbeOperator::EY_N, ProbeFamily(i % 3), 16, rng);
    bool v3_zero = false;
    for (const auto& [k, c] : n[2].modes) v3_zero |= k == 0;
    CHECK(v3_zero);
    const auto l = draw_probe_inputs(ProbeOperator::EY_L, ProbeFamily(i % 3), 16, rng);
    bool v2_zero = false;
    for (const auto& [k, c] : l[1].modes) v2_zero |= k == 0;
    CHECK(v2_zero);
  }
}

TEST_CASE("probe reports are reproducible and monotone in the sample count") {
  const ParameterLadder L = ladder(4.0, 0.01);
  const ProbeReport a = trilinear_probe({2.0}, {8, 16}, 4, 99, L);
  const ProbeReport b = trilinear_probe({2.0}, {8, 16}, 4, 99, L);
  std::ostringstream sa, sb;
  write_probe_csv(sa, a);
  write_probe_csv(sb, b);
  CHECK(sa.str() == sb.str());
  CHECK(sa.str().rfind("estimate,p,n_max,samples,seed,constant,slope", 0) != std::string::npos);

  // Sample i uses its own stream, so more samples can only raise the maximum.
  const ProbeReport c = trilinear_probe({2.0}, {8, 16}, 8, 99, L);
  REQUIRE(a.cells.size() == c.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) CHECK(c.cells[i].constant >= a.cells[i].constant);

  const ProbeReport d = trilinear_probe({2.0}, {8, 16}, 4, 100, L);
  std::ostringstream sd;
  write_probe_csv(sd, d);
  CHECK(sd.str() != sa.str());
}

TEST_CASE("E^Y probe constants are positive and finite") {
  const ParameterLadder L = ladder(4.0, 0.01);
  for (TripleClass star : {TripleClass::N, TripleClass::L}) {
    const ProbeReport r = ey_bound_probe(star, {8, 16}, 4, 5, L);
    REQUIRE(r.cells.size() == 2);
    for (const auto& cell : r.cells) {
      CHECK(cell.samples > 0);
      CHECK(std::isfinite(cell.constant));
      CHECK(cell.constant > 0.0);
    }
  }
  CHECK_THROWS_AS(ey_bound_probe(TripleClass::H, {8}, 2, 5, L), InvalidArgument);
}
