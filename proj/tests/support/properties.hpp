#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace freeiso::testing {

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t checks = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty() && cases > 0; }
};

SuiteResult words_suite(std::uint64_t seed, std::size_t cases);
SuiteResult snf_suite(std::uint64_t seed, std::size_t cases);
SuiteResult stallings_suite(std::uint64_t seed, std::size_t cases);
SuiteResult word_problem_suite(std::uint64_t seed, std::size_t cases);

// All four suites with the committed seed table.
std::vector<SuiteResult> run_property_suites();

}  // namespace freeiso::testing
