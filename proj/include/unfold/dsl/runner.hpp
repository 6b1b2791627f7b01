#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "unfold/dsl/syntax.hpp"

namespace unfold::dsl {

enum class Status { Pass, Violation, Mismatch, Error };

std::string_view status_name(Status s);

struct CallReport {
  std::string name;
  Status status = Status::Pass;
  std::optional<Value> result;
  // Violation: kind name and visited length when detected.
  std::optional<std::string> violation;
  std::optional<std::size_t> step;
  std::string detail;
  std::size_t invariant_checks = 0;
  std::size_t variant_checks = 0;
  double millis = 0;
};

struct Report {
  std::vector<CallReport> rows;

  /// 0 when every row passed, 2 when any row hit an error, 1 otherwise.
  int exit_code() const;
};

struct RunOptions {
  std::uint64_t seed = 0;
  /// Receives one line per invariant, variant and next event.
  std::function<void(const std::string&)> trace;
  /// Receives every raw engine event, with the name of the top-level call.
  std::function<void(const std::string&, const TraceEvent&)> on_event;
};

/// Runs every top-level call in order. Contract violations and evaluation
/// failures are recorded per call; later calls still run.
Report run_scenario(const Scenario& s, const RunOptions& options = {});

/// One row per named scenario: the worst status of its calls, the result of
/// its last call and the summed check counts.
CallReport summarize(const std::string& name, const Report& r);

std::string format_text(const Report& r);
std::string format_json(const Report& r);

/// Value as JSON text: numbers, booleans, arrays; graphs as
/// {"dom": [...], "suc": {...}}.
std::string value_json(const Value& v);

}  // namespace unfold::dsl
