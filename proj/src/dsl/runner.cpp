#include "unfold/dsl/runner.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "unfold/dsl/desugar.hpp"
#include "unfold/dsl/render.hpp"
#include "unfold/graph_model.hpp"
#include "unfold/tree.hpp"

namespace unfold::dsl {

namespace {

using json = nlohmann::json;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Value random_tree(std::mt19937_64& rng, long long size, long long lo, long long hi) {
  if (size <= 0) return Value::tree(nullptr);
  std::uniform_int_distribution<long long> split(0, size - 1), pick(lo, hi);
  const long long left = split(rng);
  Value l = random_tree(rng, left, lo, hi);
  Value v = Value::integer(pick(rng));
  Value r = random_tree(rng, size - 1 - left, lo, hi);
  return Value::tree(std::make_shared<TreeNode>(TreeNode{l.as_tree(), std::move(v), r.as_tree()}));
}

Value build_collection(const CollectionItem& c, const Env& env, std::uint64_t seed,
                       std::size_t index) {
  using K = CollectionItem::Kind;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  switch (c.kind) {
    case K::Term:
      return eval(c.term, env);
    case K::Graph:
      return Value::graph(make_graph(c.vertices, c.edges));
    case K::Tree:
      return c.tree;
    case K::Stack:
      return Value::stack();
    case K::Queue:
      return Value::queue();
    case K::Ref:
      return Value::ref(eval(c.term, env));
    case K::RandomSeq: {
      std::uniform_int_distribution<long long> pick(c.params[1], c.params[2]);
      std::vector<Value> items;
      for (long long i = 0; i < c.params[0]; ++i) items.push_back(Value::integer(pick(rng)));
      return Value::seq(std::move(items));
    }
    case K::RandomGraph: {
      std::vector<long long> vs;
      std::vector<std::pair<long long, long long>> es;
      std::uniform_int_distribution<int> percent(0, 99);
      for (long long u = 0; u < c.params[0]; ++u) vs.push_back(u);
      for (long long u = 0; u < c.params[0]; ++u)
        for (long long v = 0; v < c.params[0]; ++v)
          if (percent(rng) < c.params[1]) es.emplace_back(u, v);
      return Value::graph(make_graph(vs, es));
    }
    case K::RandomTree:
      return random_tree(rng, c.params[0], c.params[1], c.params[2]);
  }
  return {};
}

Value integer_of(const Value& v, std::string_view what) {
  if (!v.is(Value::Kind::Int))
    throw EvaluationError(EvaluationError::Kind::TypeMismatch,
                          std::string(what) + " expects an integer, got " + v.to_string());
  return v;
}

RefCell& ref_of(const Value& v, std::string_view what) {
  if (!v.is(Value::Kind::Ref))
    throw EvaluationError(EvaluationError::Kind::TypeMismatch,
                          std::string(what) + " expects a reference, got " + v.to_string());
  return v.as_ref();
}

void bump(const Value& r, std::string_view what) {
  RefCell& cell = ref_of(r, what);
  cell.value = Value::integer(integer_of(cell.value, what).as_int() + 1);
}

class Executor {
 public:
  Executor(const Scenario& s, InvariantContext& ctx)
      : s_(s), ctx_(ctx) {}

  Value run(const CallItem& call, const Env& env, std::vector<Enclosing>& nesting) {
    const DeclItem& decl = *s_.find_decl(call.decl);
    const DeclSpec& d = decl.spec;
    const Value collection = eval(call.spec.collection, env);
    const Env with_collection = env.bind("collection", collection);
    Cursor cursor = create_cursor(traversal_producer(d.traversal(), collection),
                                  predicate_of(eval(d.permitted, with_collection)),
                                  predicate_of(eval(d.complete, with_collection)));

    const Annotations notes = annotations(d, call.spec, nesting);
    const ArgOrder order = enclosing(d).order;
    ClientContract contract{eval(call.spec.inv, env), eval(call.spec.convergence, env),
                            collection, order, call.name, notes.invariant, notes.variant};

    const ConsumerSpec& k = call.consumer;
    const Value lambda = k.kind == ConsumerSpec::Kind::Lambda ? eval(k.lambda, env) : Value();
    std::vector<Value> args;
    for (const auto& a : k.args) args.push_back(eval(a, env));

    // Nested consumers bind their parameters and run the inner call.
    auto nested = [&](std::vector<Value> actual) {
      Env inner = env;
      for (std::size_t i = 0; i < k.params.size(); ++i) {
        const Param& p = k.params[i];
        if (!p.tuple) {
          inner = inner.bind(p.names[0], actual[i]);
          continue;
        }
        if (!actual[i].is(Value::Kind::Tuple) || actual[i].items().size() != p.names.size())
          throw EvaluationError(EvaluationError::Kind::TypeMismatch,
                                "cannot bind " + actual[i].to_string() + " to a tuple pattern");
        for (std::size_t j = 0; j < p.names.size(); ++j)
          inner = inner.bind(p.names[j], actual[i].items()[j]);
      }
      nesting.push_back(enclosing(d));
      struct Pop {
        std::vector<Enclosing>& n;
        ~Pop() { n.pop_back(); }
      } pop{nesting};
      return run(*s_.find_call(k.name), inner, nesting);
    };

    switch (call.spec.pattern) {
      case Pattern::Folds: {
        FoldConsumer f = [&](const Value& acc, const Value& x, InvariantContext&) -> Value {
          const bool acc_first = order == ArgOrder::AccumulatorFirst;
          switch (k.kind) {
            case ConsumerSpec::Kind::Lambda:
              return acc_first ? apply_lambda(lambda, {acc, x}) : apply_lambda(lambda, {x, acc});
            case ConsumerSpec::Kind::Nested:
              return acc_first ? nested({acc, x}) : nested({x, acc});
            case ConsumerSpec::Kind::Builtin:
              if (k.name == "add")
                return Value::integer(integer_of(acc, "add").as_int() + integer_of(x, "add").as_int());
              if (k.name == "count") return Value::integer(integer_of(acc, "count").as_int() + 1);
              {
                auto items = acc.sequence_view();
                items.push_back(x);
                return Value::seq(std::move(items));
              }
          }
          return acc;
        };
        return checked_fold(f, eval(*call.init, env), cursor, contract, ctx_);
      }
      case Pattern::Iters: {
        IterConsumer f = [&](const Value& x, InvariantContext&) {
          switch (k.kind) {
            case ConsumerSpec::Kind::Lambda:
              apply_lambda(lambda, {x});
              return;
            case ConsumerSpec::Kind::Nested:
              nested({x});
              return;
            case ConsumerSpec::Kind::Builtin:
              builtin_iter(k.name, args, x);
              return;
          }
        };
        checked_iter(f, cursor, contract, ctx_);
        return Value::unit();
      }
      case Pattern::Maps: {
        ElementMap f = [&](const Value& x, InvariantContext&) -> Value {
          switch (k.kind) {
            case ConsumerSpec::Kind::Lambda: return apply_lambda(lambda, {x});
            case ConsumerSpec::Kind::Nested: return nested({x});
            case ConsumerSpec::Kind::Builtin:
              bump(args[0], "counted");
              return apply_lambda(args[1], {x});
          }
          return x;
        };
        return checked_map(f, cursor, contract, ctx_);
      }
      case Pattern::Filters: {
        ElementFilter f = [&](const Value& x, InvariantContext&) -> bool {
          Value r;
          switch (k.kind) {
            case ConsumerSpec::Kind::Lambda: r = apply_lambda(lambda, {x}); break;
            case ConsumerSpec::Kind::Nested: r = nested({x}); break;
            case ConsumerSpec::Kind::Builtin:
              bump(args[0], "counted");
              r = apply_lambda(args[1], {x});
              break;
          }
          if (!r.is(Value::Kind::Bool))
            throw EvaluationError(EvaluationError::Kind::TypeMismatch,
                                  "filter predicate returned " + r.to_string());
          return r.as_bool();
        };
        return checked_filter(f, cursor, contract, ctx_);
      }
    }
    return {};
  }

 private:
  static void builtin_iter(const std::string& name, const std::vector<Value>& args,
                           const Value& x) {
    if (name == "push_stack") {
      if (!args[0].is(Value::Kind::Stack))
        throw EvaluationError(EvaluationError::Kind::TypeMismatch, "push_stack expects a stack");
      args[0].as_stack().items.push_back(x);
    } else if (name == "push_queue") {
      if (!args[0].is(Value::Kind::Queue))
        throw EvaluationError(EvaluationError::Kind::TypeMismatch, "push_queue expects a queue");
      args[0].as_queue().items.push_back(x);
    } else if (name == "incr") {
      bump(args[0], "incr");
    } else if (name == "count_gt") {
      if (integer_of(x, "count_gt").as_int() > integer_of(args[1], "count_gt").as_int())
        bump(args[0], "count_gt");
    } else if (name == "path_step") {
      RefCell& ok = ref_of(args[0], "path_step");
      RefCell& prev = ref_of(args[1], "path_step");
      if (!args[2].is(Value::Kind::Graph))
        throw EvaluationError(EvaluationError::Kind::TypeMismatch, "path_step expects a graph");
      const GraphModel& g = args[2].as_graph();
      bool step_ok = g.contains(x);
      if (!prev.value.is(Value::Kind::Unit)) step_ok = step_ok && g.suc(prev.value).set_contains(x);
      ok.value = Value::boolean(ok.value.as_bool() && step_ok);
      prev.value = x;
    }
  }

  const Scenario& s_;
  InvariantContext& ctx_;
};

std::string event_line(const std::string& call, const TraceEvent& e) {
  std::ostringstream out;
  out << call << " " << std::string(2 * e.depth, ' ');
  switch (e.kind) {
    case TraceEvent::Kind::Invariant:
      out << "invariant { " << e.text << " } = " << e.value.to_string();
      break;
    case TraceEvent::Kind::Variant:
      out << "variant { " << e.text << " } = " << e.value.to_string();
      break;
    case TraceEvent::Kind::Next:
      out << "next " << e.value.to_string();
      break;
  }
  out << "  [step " << e.step << "]";
  return out.str();
}

json to_json(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Unit: return nullptr;
    case Value::Kind::Bool: return v.as_bool();
    case Value::Kind::Int: {
      const Integer& i = v.as_int();
      if (i >= std::numeric_limits<long long>::min() && i <= std::numeric_limits<long long>::max())
        return static_cast<long long>(i);
      return i.str();
    }
    case Value::Kind::Tuple:
    case Value::Kind::Seq:
    case Value::Kind::Set: {
      json a = json::array();
      for (const auto& x : v.items()) a.push_back(to_json(x));
      return a;
    }
    case Value::Kind::Stack:
    case Value::Kind::Queue: {
      json a = json::array();
      for (const auto& x : v.sequence_view()) a.push_back(to_json(x));
      return a;
    }
    case Value::Kind::Ref:
      return to_json(v.as_ref().value);
    case Value::Kind::Graph: {
      const GraphModel& g = v.as_graph();
      json suc = json::object();
      for (const auto& [from, to] : g.successor_map()) suc[from.to_string()] = to_json(to);
      return json{{"dom", to_json(g.dom())}, {"suc", suc}};
    }
    default:
      return v.to_string();
  }
}

}  // namespace

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Violation: return "violation";
    case Status::Mismatch: return "mismatch";
    case Status::Error: return "error";
  }
  return "?";
}

int Report::exit_code() const {
  int code = 0;
  for (const auto& r : rows) {
    if (r.status == Status::Error) return 2;
    if (r.status != Status::Pass) code = 1;
  }
  return code;
}

Report run_scenario(const Scenario& s, const RunOptions& options) {
  Report report;
  Env env;

  auto fail_all = [&](const std::string& what) {
    for (const CallItem* c : s.top_level_calls()) {
      CallReport row;
      row.name = c->name;
      row.status = Status::Error;
      row.detail = what;
      report.rows.push_back(std::move(row));
    }
    return report;
  };

  for (const auto& item : s.order) {
    using K = Scenario::Item::Kind;
    if (item.kind == K::Collection) {
      const auto& c = s.collections[item.index];
      try {
        env = env.bind(c.name, build_collection(c, env, options.seed, item.index));
      } catch (const std::exception& e) {
        return fail_all("collection '" + c.name + "': " + e.what());
      }
    } else if (item.kind == K::Predicate) {
      const auto& p = s.predicates[item.index];
      env = env.bind(p.name, eval(term::lambda(p.params, p.body), env));
    } else if (item.kind == K::Call) {
      const CallItem& call = s.calls[item.index];
      const auto top = s.top_level_calls();
      if (std::find(top.begin(), top.end(), &call) == top.end()) continue;

      CallReport row;
      row.name = call.name;
      InvariantContext ctx;
      if (options.trace || options.on_event)
        ctx.set_tracer([&](const TraceEvent& e) {
          if (options.on_event) options.on_event(call.name, e);
          if (options.trace) options.trace(event_line(call.name, e));
        });
      const auto start = std::chrono::steady_clock::now();
      try {
        Executor exec(s, ctx);
        std::vector<Enclosing> nesting;
        Value raw = exec.run(call, env, nesting);
        Env after = env.bind(call.name, raw);
        Value result = call.result ? eval(*call.result, after) : raw;
        after = env.bind(call.name, result);
        row.result = result;
        if (call.expect) {
          const Value want = eval(*call.expect, after);
          if (!(want == result)) {
            row.status = Status::Mismatch;
            row.detail = "expected " + want.to_string() + ", got " + result.to_string();
          }
        }
        if (row.status == Status::Pass && call.ensures) {
          const Value ok = eval(*call.ensures, after);
          if (!ok.is(Value::Kind::Bool) || !ok.as_bool()) {
            row.status = Status::Mismatch;
            row.detail = "ensures " + render_term(*call.ensures) + " does not hold";
          }
        }
        env = after;
      } catch (const ContractViolation& v) {
        row.status = Status::Violation;
        row.violation = std::string(violation_name(v.kind()));
        row.step = v.step();
        row.detail = v.detail();
      } catch (const std::exception& e) {
        row.status = Status::Error;
        row.detail = e.what();
      }
      row.millis = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
      row.invariant_checks = ctx.stats().invariant_checks;
      row.variant_checks = ctx.stats().variant_checks;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

CallReport summarize(const std::string& name, const Report& r) {
  CallReport out;
  out.name = name;
  auto rank = [](Status s) {
    switch (s) {
      case Status::Pass: return 0;
      case Status::Mismatch: return 1;
      case Status::Violation: return 2;
      case Status::Error: return 3;
    }
    return 3;
  };
  for (const auto& row : r.rows) {
    out.invariant_checks += row.invariant_checks;
    out.variant_checks += row.variant_checks;
    out.millis += row.millis;
    out.result = row.result;
    if (rank(row.status) > rank(out.status)) {
      out.status = row.status;
      out.violation = row.violation;
      out.step = row.step;
      out.detail = row.name + ": " + row.detail;
    }
  }
  return out;
}

std::string format_text(const Report& r) {
  std::size_t width = 4;
  for (const auto& row : r.rows) width = std::max(width, row.name.size());
  std::ostringstream out;
  std::size_t passed = 0;
  for (const auto& row : r.rows) {
    std::string status(status_name(row.status));
    std::transform(status.begin(), status.end(), status.begin(), ::toupper);
    out << std::left << std::setw(10) << status << std::setw(static_cast<int>(width) + 2)
        << row.name << "inv=" << std::setw(6) << row.invariant_checks
        << "variant=" << std::setw(6) << row.variant_checks << std::right << std::fixed
        << std::setprecision(2) << std::setw(9) << row.millis << " ms";
    if (row.result) out << "  result=" << row.result->to_string();
    out << "\n";
    if (row.status == Status::Pass) {
      ++passed;
      continue;
    }
    out << "          ";
    if (row.violation) out << *row.violation << " at step " << *row.step << ": ";
    out << row.detail << "\n";
  }
  out << passed << "/" << r.rows.size() << " passed\n";
  return out.str();
}

std::string value_json(const Value& v) { return to_json(v).dump(); }

std::string format_json(const Report& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json j;
    j["name"] = row.name;
    j["status"] = std::string(status_name(row.status));
    j["result"] = row.result ? to_json(*row.result) : json(nullptr);
    if (row.violation)
      j["violation"] = {{"kind", *row.violation}, {"step", *row.step}, {"detail", row.detail}};
    else if (row.status != Status::Pass)
      j["detail"] = row.detail;
    j["checks"] = {{"inv", row.invariant_checks}, {"variant", row.variant_checks}};
    j["millis"] = row.millis;
    rows.push_back(std::move(j));
  }
  return rows.dump(2) + "\n";
}

}  // namespace unfold::dsl
