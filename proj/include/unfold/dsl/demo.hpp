#pragma once

#include <span>
#include <string_view>

#include "unfold/dsl/runner.hpp"

namespace unfold::dsl {

struct DemoScenario {
  std::string_view name;
  std::string_view source;
};

/// The built-in case-study scenarios, embedded at build time.
std::span<const DemoScenario> demo_corpus();

/// Parses and runs every demo scenario; one summarized row each. A scenario
/// that fails to parse yields an error row.
Report run_demo(const RunOptions& options = {});

}  // namespace unfold::dsl
