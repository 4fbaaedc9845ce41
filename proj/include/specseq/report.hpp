#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace specseq {

struct IdentityFailure {
  std::string identity;
  int r = 0;
  int n = 0;
  int s = 0;
  int t = -1;  // second filtration index of a Betti identity; -1 when unused
  long expected = 0;
  long actual = 0;

  friend bool operator==(const IdentityFailure&, const IdentityFailure&) = default;
  friend bool operator<(const IdentityFailure& a, const IdentityFailure& b) {
    return std::tie(a.r, a.n, a.s, a.t, a.identity) < std::tie(b.r, b.n, b.s, b.t, b.identity);
  }
};

/// Pass/fail tallies for a batch of identity checks.
struct CheckReport {
  std::map<std::string, std::size_t> checked;
  std::vector<IdentityFailure> failures;

  bool ok() const noexcept { return failures.empty(); }

  void expect(const std::string& identity, int r, int n, int s, long expected, long actual) {
    ++checked[identity];
    if (expected != actual) failures.push_back({identity, r, n, s, -1, expected, actual});
  }

  /// Betti-number identities indexed by (n, s, t) rather than a page.
  void expect_betti(const std::string& identity, int n, int s, int t, long expected, long actual) {
    ++checked[identity];
    if (expected != actual) failures.push_back({identity, 0, n, s, t, expected, actual});
  }

  std::size_t total_checked() const {
    std::size_t total = 0;
    for (const auto& [k, v] : checked) total += v;
    return total;
  }

  /// Failure with the smallest (r, n, s).
  std::optional<IdentityFailure> minimal_failure() const {
    if (failures.empty()) return std::nullopt;
    return *std::min_element(failures.begin(), failures.end());
  }

  void merge(const CheckReport& other) {
    for (const auto& [k, v] : other.checked) checked[k] += v;
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  }
};

}  // namespace specseq
