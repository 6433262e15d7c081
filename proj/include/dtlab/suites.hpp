#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dtlab/bounds.hpp"
#include "dtlab/reduction.hpp"

namespace dtlab {

/// patchup, harddist, xor, savicky, gadget, coreset, params, all.
std::span<const std::string_view> suite_names();

/// Seeded randomized audits. `trials` is the number of random cases; a case
/// may yield several reports. Throws InvalidArgument on an unknown name.
std::vector<BoundReport> run_suite(std::string_view name, std::size_t trials, std::uint64_t seed);

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string summary;
  /// Failed reports, then anything worth printing under the summary line.
  std::vector<BoundReport> failures;
  std::vector<std::string> notes;
  /// decide_vc runs, for criterion 9.
  std::vector<VcTranscript> transcripts;
};

inline constexpr int kLibraryCriteria = 11;

/// Runs acceptance criterion `id` (1..11) with all randomness drawn from
/// `seed`. Output is a function of (id, seed) only.
CriterionResult run_criterion(int id, std::uint64_t seed);

}  // namespace dtlab
