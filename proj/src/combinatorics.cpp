#include "dnls/combinatorics.hpp"

#include <cmath>
#include <sstream>

#include "parallel.hpp"

namespace dnls {

namespace {

Wide wabs(long long x) { return x < 0 ? -Wide(x) : Wide(x); }
double jb(long long x) { return japanese(double(x)); }

std::string tuple_str(std::initializer_list<long long> xs) {
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (long long x : xs) {
    if (!first) os << ',';
    os << x;
    first = false;
  }
  os << ')';
  return os.str();
}

void merge(CaseRow& into, const CaseRow& from) {
  if (into.name.empty()) into.name = from.name;
  into.count += from.count;
  into.violations += from.violations;
  if (from.count > 0 && (into.witness.empty() || from.max_ratio > into.max_ratio)) {
    into.max_ratio = from.max_ratio;
    into.witness = from.witness;
  }
  for (const auto& v : from.violation_examples)
    if (into.violation_examples.size() < 8) into.violation_examples.push_back(v);
}

}  // namespace

void CaseRow::observe(double ratio, const std::string& tuple) {
  ++count;
  if (witness.empty() || ratio > max_ratio) {
    max_ratio = ratio;
    witness = tuple;
  }
}

void CaseRow::violate(const std::string& what) {
  ++violations;
  if (violation_examples.size() < 8) violation_examples.push_back(what);
}

bool Prop23Report::exact_items_ok() const {
  for (const auto& r : item)
    if (r.violations != 0) return false;
  return partition_violations == 0 && delta_mismatches == 0;
}

Prop23Report verify_prop23(long long K) {
  if (K < 1) throw InvalidArgument("verify_prop23: K must be >= 1");
  const long long span = 2 * K + 1;
  std::vector<Prop23Report> part(span);
  detail::parallel_for(span, [&](long long idx) {
    const long long k = idx - K;
    Prop23Report& R = part[idx];
    for (int i = 0; i < 4; ++i) R.item[i].name = "item" + std::to_string(i + 1);
    for (long long k2 = -K; k2 <= K; ++k2) {
      for (long long k3 = -K; k3 <= K; ++k3) {
        const long long k1 = k2 + k3 - k;
        if (k1 < -K || k1 > K || !in_V3(k, k1, k2, k3)) continue;
        ++R.triples;
        const bool h = in_XH(k, k1, k2, k3), l = in_XL(k, k1, k2, k3), s = in_XS(k, k1, k2, k3);
        if (int(h) + int(l) + int(s) > 1) ++R.partition_violations;
        const TripleClass c = classify_triple(k, k1, k2, k3);
        ++R.class_counts[to_string(c)];

        const Wide d = Wide(k) * k + Wide(k1) * k1 - Wide(k2) * k2 - Wide(k3) * k3;
        if (d != 2 * (Wide(k) - k2) * (Wide(k) - k3)) ++R.delta_mismatches;

        const Wide ak = wabs(k), ak1 = wabs(k1), ak2 = wabs(k2), ak3 = wabs(k3);
        const std::string tup = tuple_str({k, k1, k2, k3});
        switch (c) {
          case TripleClass::H:
            R.item[0].count++;
            if (!(ak2 >= ak3 && (ak3 << 20) >= ak)) R.item[0].violate(tup);
            break;
          case TripleClass::L:
            R.item[1].count++;
            if (!(2 * ak1 >= ak && ak1 <= 2 * ak && std::min(ak, ak1) >= (std::max(ak2, ak3) << 18)))
              R.item[1].violate(tup);
            break;
          case TripleClass::S:
            R.item[2].count++;
            if (!(2 * ak2 >= ak && ak2 <= 2 * ak && ak >= (ak3 << 20) && (ak3 << 10) >= ak1))
              R.item[2].violate(tup);
            break;
          case TripleClass::N:
            R.item[3].count++;
            if (!((ak2 << 22) >= std::max(ak, ak1) && std::min(ak, ak1) >= (ak3 << 10)))
              R.item[3].violate(tup);
            break;
        }
        if (c == TripleClass::H || c == TripleClass::S) {
          const double r = double(std::abs(k1)) * std::sqrt(jb(k) / (jb(k1) * jb(k2) * jb(k3)));
          R.ratio_high.observe(r, tup);
        } else {
          const double r = std::abs(double(d)) / (jb(k) * jb(k1));
          R.delta_max.observe(r, tup);
          R.delta_min.observe(1.0 / r, tup);
        }
      }
    }
  });
  Prop23Report out;
  out.K = K;
  for (int i = 0; i < 4; ++i) out.item[i].name = "item" + std::to_string(i + 1);
  out.ratio_high.name = "ratio_high";
  out.delta_max.name = "|Delta|/(<k><k1>) max";
  out.delta_min.name = "(<k><k1>)/|Delta| max";
  for (const auto& R : part) {
    out.triples += R.triples;
    out.partition_violations += R.partition_violations;
    out.delta_mismatches += R.delta_mismatches;
    for (const auto& [c, n] : R.class_counts) out.class_counts[c] += n;
    for (int i = 0; i < 4; ++i) merge(out.item[i], R.item[i]);
    merge(out.ratio_high, R.ratio_high);
    merge(out.delta_max, R.delta_max);
    merge(out.delta_min, R.delta_min);
  }
  return out;
}

long long Prop24Report::structural_violations() const {
  long long v = 0;
  for (const auto& [name, row] : cases) v += row.violations;
  return v;
}

namespace {

const char* kCaseNames[] = {"1a", "1b-i", "1b-ii", "2a", "2b-i", "2b-ii", "3", "3-k5"};

void check_chain(long long k, long long k1, long long k2, long long kp, TripleClass star, long long k3,
                 long long k4, long long k5, TripleClass hash, std::map<std::string, CaseRow>& rows,
                 long long& unclassified) {
  const Wide D = Wide(k) * k + Wide(k1) * k1 - Wide(kp) * kp - Wide(k2) * k2;
  const Wide Dp = Wide(kp) * kp + Wide(k3) * k3 - Wide(k4) * k4 - Wide(k5) * k5;
  const double jD = japanese(double(D)), jDp = japanese(double(Dp));
  const double n13 = double(std::abs(k1)) * double(std::abs(k3));
  const double alpha = n13 / jD, beta = n13 / (jD * jDp), gamma = n13 / jDp;
  const Wide a = wabs(k), a1 = wabs(k1), a2 = wabs(k2), ap = wabs(kp), a3 = wabs(k3), a4 = wabs(k4),
             a5 = wabs(k5);
  const std::string tup = tuple_str({k, k1, k2, kp, k3, k4, k5});
  const bool star_HS = star == TripleClass::H || star == TripleClass::S;
  const bool star_LN = star == TripleClass::L || star == TripleClass::N;

  if (star_HS) {
    if (star == TripleClass::H && a1 >= (ap << 40)) {
      if (hash == TripleClass::L || a3 <= (ap << 30)) {
        CaseRow& r = rows["1b-i"];
        const double m = std::max({jb(k3), jb(k4), jb(k5), jb(k)});
        r.observe(gamma * m / jb(k1), tup);
        const Wide mx = std::max({a3, a4, a5});
        bool ok = 2 * a2 >= a1 && a2 <= 2 * a1 && a1 >= (mx << 5) && k1 != k2;
        ok = ok && (hash == TripleClass::L ? a3 == mx : (a3 == mx || a4 == mx));
        if (!ok) r.violate(tup);
      } else {
        CaseRow& r = rows["1b-ii"];
        const double m = std::max({jb(k), jb(k5), jb(k1 - k2)});
        r.observe(alpha * m / jb(k1), tup);
        const bool ok = 2 * a2 >= a1 && a2 <= 2 * a1 && 2 * a4 >= a3 && a4 <= 2 * a3 &&
                        a1 >= (std::max(a, a5) << 5);
        if (!ok) r.violate(tup);
      }
    } else {
      rows["1a"].observe(gamma, tup);
    }
    return;
  }
  if (!star_LN) {
    ++unclassified;
    return;
  }
  if (hash == TripleClass::N && a3 >= (a << 40)) {
    if (star == TripleClass::L || a1 <= (a << 30)) {
      CaseRow& r = rows["2b-i"];
      const double m = std::max({jb(k1), jb(k2), jb(k5), jb(k)});
      r.observe(gamma * m / jb(k3), tup);
      const Wide mx = std::max({a1, a2, a5});
      bool ok = 2 * a4 >= a3 && a4 <= 2 * a3 && a3 >= (mx << 5) && k3 != k4;
      ok = ok && (star == TripleClass::L ? a1 == mx : (a1 == mx || a2 == mx));
      if (!ok) r.violate(tup);
    } else {
      CaseRow& r = rows["2b-ii"];
      r.observe(alpha * std::max(jb(k), jb(k5)) / jb(k3), tup);
      const bool ok = 2 * a2 >= a1 && a2 <= 2 * a1 && 2 * a4 >= a3 && a4 <= 2 * a3 &&
                      a3 >= (std::max(a, a5) << 5) && a != a5;
      if (!ok) r.violate(tup);
    }
  } else {
    rows["2a"].observe(alpha, tup);
  }
  // Case (3) applies to every chain with *, # in {L, N}.
  rows["3"].observe(beta * jb(k) * jb(k4 - k3), tup);
  rows["3-k5"].observe(jb(k5) / jb(k), tup);
}

}  // namespace

Prop24Report verify_prop24(long long K) {
  if (K < 1) throw InvalidArgument("verify_prop24: K must be >= 1");
  const long long span = 2 * K + 1;
  struct Part {
    long long chains = 0, unclassified = 0;
    std::map<std::string, CaseRow> rows;
  };
  std::vector<Part> part(span);
  detail::parallel_for(span, [&](long long idx) {
    const long long k = idx - K;
    Part& P = part[idx];
    for (long long k2 = -K; k2 <= K; ++k2) {
      for (long long kp = -K; kp <= K; ++kp) {
        const long long k1 = k2 + kp - k;
        if (k1 < -K || k1 > K || !in_V3(k, k1, k2, kp)) continue;
        const TripleClass star = classify_triple(k, k1, k2, kp);
        // Second triple (k3, k4, k5) with output k' and class L or N; both classes fail the
        // XH test, so |k5| 2^20 < |k'| bounds the k5 loop exactly.
        const long long k5max = (long long)((wabs(kp) - 1) >> 20);
        for (long long k5 = -k5max; k5 <= k5max; ++k5) {
          for (long long k3 = -K; k3 <= K; ++k3) {
            const long long k4 = kp + k3 - k5;
            if (k4 < -K || k4 > K || !in_V3(kp, k3, k4, k5)) continue;
            const TripleClass hash = classify_triple(kp, k3, k4, k5);
            if (hash != TripleClass::L && hash != TripleClass::N) continue;
            ++P.chains;
            check_chain(k, k1, k2, kp, star, k3, k4, k5, hash, P.rows, P.unclassified);
          }
        }
      }
    }
  });
  Prop24Report out;
  out.K = K;
  for (const char* n : kCaseNames) out.cases[n].name = n;
  for (const auto& P : part) {
    out.chains += P.chains;
    out.unclassified += P.unclassified;
    for (const auto& [name, row] : P.rows) {
      CaseRow r = row;
      r.name = name;
      merge(out.cases[name], r);
    }
  }
  return out;
}

std::map<std::string, double> ratio_growth(const Prop24Report& small, const Prop24Report& big) {
  std::map<std::string, double> g;
  for (const auto& [name, row] : big.cases) {
    auto it = small.cases.find(name);
    if (it == small.cases.end() || it->second.count == 0 || row.count == 0) continue;
    g[name] = row.max_ratio / it->second.max_ratio - 1.0;
  }
  return g;
}

}  // namespace dnls
