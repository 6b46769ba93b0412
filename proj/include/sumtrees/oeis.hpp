// Verification of our sequences against OEIS b-file snapshots.
//
// Fixtures ship in-repo; nothing here touches the network.  Each supported
// sequence has a hard-coded index mapping onto one of our functions (the
// b-file index k on the left):
//
//   A001147  a(k) = count_all(k+1)        k >= 0
//   A001710  a(k) = count_ladder(k)       k >= 2  (a(0), a(1) skipped)
//   A096351  a(k) = sigma_pairwise(k)     k >= 1
//   A268289  a(k) = epsilon(k+1)          k >= 0
//   A000992  a(k) = alpha(k)              k >= 1
//   A002620  a(k) = tau2_closed(k+3)      k >= 0  (quarter-squares)
//   A011371  a(k) = beta(k)               k >= 1  (a(0) skipped)
//   A049606  a(k) = k! / 2^beta(k)        k >= 1  (a(0) skipped)

#pragma once

#include <filesystem>

#include "sumtrees/enumerate.hpp"

namespace sumtrees {

struct OeisFixture {
  std::string id;
  std::vector<std::pair<std::int64_t, BigCount>> terms;  // (index, value)

  // b-file format: "index term" per line, '#' comments ignored.  Indices must
  // increase by exactly 1.
  static OeisFixture parse_file(const std::filesystem::path& path);
  static OeisFixture parse_text(const std::string& id, std::string_view text);
};

struct OeisCheckResult {
  bool ok = false;
  std::size_t terms_checked = 0;
  std::int64_t mismatch_index = -1;
  BigCount expected;  // fixture value at the mismatch
  BigCount actual;    // our value at the mismatch
};

bool oeis_sequence_supported(const std::string& id);

// Compares our function against the fixture, term by term, up to max_terms
// usable terms (0 means all).
OeisCheckResult oeis_check(const std::string& id, const OeisFixture& fixture,
                           std::size_t max_terms = 0);

}  // namespace sumtrees
