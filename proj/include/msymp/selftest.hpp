#pragma once

// Embedded identity suite run by `msymp selftest`.

#include <string>
#include <utility>
#include <vector>

namespace msymp {

struct SelftestRow {
  std::string identity;
  std::vector<bool> passed;  ///< one entry per bundle
};

struct SelftestReport {
  std::vector<std::pair<int, int>> bundles;
  std::vector<SelftestRow> rows;

  bool all_passed() const;
  /// Fixed-width pass/fail table followed by a summary line.
  std::string table() const;
};

/// Checks every identity on bundles (1,1), (2,1), (2,2) with `instances`
/// seeded random instances each.
SelftestReport run_selftest(int instances = 3);

}  // namespace msymp
