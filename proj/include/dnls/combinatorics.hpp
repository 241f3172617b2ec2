#pragma once

#include <map>
#include <string>
#include <vector>

#include "dnls/interactions.hpp"

namespace dnls {

/// One row of a case table: how many instances, how many broke an exact claim, and the
/// largest value of the case's implicit-constant ratio with the tuple attaining it.
struct CaseRow {
  std::string name;
  long long count = 0;
  long long violations = 0;
  double max_ratio = 0.0;
  std::string witness;
  std::vector<std::string> violation_examples;  // at most a handful

  void observe(double ratio, const std::string& tuple);
  void violate(const std::string& what);
};

struct Prop23Report {
  long long K = 0;
  long long triples = 0;               // V3 triples enumerated
  long long partition_violations = 0;  // triples in more than one of XH, XL, XS
  long long delta_mismatches = 0;      // Delta != 2 (k - k2)(k - k3)
  std::map<std::string, long long> class_counts;
  CaseRow item[4];     // items (1)-(4): exact inequalities per class
  CaseRow ratio_high;   // item (5): |k1| <k>^{1/2} (<k1><k2><k3>)^{-1/2} on XH u XS
  CaseRow delta_max;   // item (6): |Delta| / (<k><k1>) on XL u XN, largest
  CaseRow delta_min;   //           and smallest (ratio stored as its reciprocal)
  bool exact_items_ok() const;
};

/// Exhaustive check over V3 triples with |k|, |k_j| <= K.
Prop23Report verify_prop23(long long K);

struct Prop24Report {
  long long K = 0;
  long long chains = 0;
  long long unclassified = 0;
  std::map<std::string, CaseRow> cases;  // 1a, 1b-i, 1b-ii, 2a, 2b-i, 2b-ii, 3, 3-k5
  long long structural_violations() const;
};

/// Enumerates chains (k1, k2, k') in X_* feeding k' = k4 + k5 - k3 with (k3, k4, k5) in X_#,
/// # in {L, N}, all frequencies bounded by K.  Case (3) is an extra claim on every chain
/// with * in {L, N}, so those chains appear in both a (2x) row and rows 3 / 3-k5
/// (the beta bound and <k5> <~ <k>).
Prop24Report verify_prop24(long long K);

/// Relative growth of the ratio columns between two reports (row name -> big/small - 1).
std::map<std::string, double> ratio_growth(const Prop24Report& small, const Prop24Report& big);

}  // namespace dnls
