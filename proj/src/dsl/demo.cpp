#include "unfold/dsl/demo.hpp"

#include <chrono>

#include "unfold/dsl/desugar.hpp"
#include "unfold/dsl/parser.hpp"

namespace unfold::dsl {

Report run_demo(const RunOptions& options) {
  Report out;
  for (const auto& demo : demo_corpus()) {
    const std::string name(demo.name);
    try {
      const Scenario s = parse_scenario(demo.source);
      desugar_scenario(s);
      out.rows.push_back(summarize(name, run_scenario(s, options)));
    } catch (const DslError& e) {
      CallReport row;
      row.name = name;
      row.status = Status::Error;
      row.detail = e.what();
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

}  // namespace unfold::dsl
