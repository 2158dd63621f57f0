#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace skylink {

enum class VerifyLevel { Quick, Full };

struct AcceptanceOptions {
  VerifyLevel level = VerifyLevel::Full;
  std::uint64_t seed = 0;
  bool mutate_sign = false;  // flips the counting sign; the suite must then fail
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

// Runs criteria 1..8 in order, reporting each as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

std::string format_result(const CriterionResult& r);

}  // namespace skylink
