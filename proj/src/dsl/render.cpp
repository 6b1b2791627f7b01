#include "unfold/dsl/render.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "unfold/graph_model.hpp"

namespace unfold::dsl {

namespace {

// Binding strength, loosest first. A child is parenthesized when the slot
// it occupies asks for more than the child provides.
enum Prec {
  kForm = 0,     // fun, forall, let, if
  kImplies = 1,
  kOr = 2,
  kAnd = 3,
  kNot = 4,
  kCompare = 5,
  kSetOp = 6,
  kAdditive = 7,
  kMultiplicative = 8,
  kUnary = 9,
  kApp = 10,
  kDeref = 11,
  kPostfix = 12,
  kAtom = 13,
};

std::string render_value(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Unit: return "()";
    case Value::Kind::Bool: return v.as_bool() ? "true" : "false";
    case Value::Kind::Int: return v.as_int().str();
    case Value::Kind::Tuple:
    case Value::Kind::Seq:
    case Value::Kind::Set: {
      const char* open = v.is(Value::Kind::Tuple) ? "(" : v.is(Value::Kind::Seq) ? "[" : "{";
      const char* close = v.is(Value::Kind::Tuple) ? ")" : v.is(Value::Kind::Seq) ? "]" : "}";
      std::string out = open;
      bool first = true;
      for (const auto& x : v.items()) {
        if (!first) out += ", ";
        first = false;
        out += render_value(x);
      }
      return out + close;
    }
    default:
      return v.to_string();
  }
}

std::string params_text(const std::vector<Param>& ps) {
  std::string out;
  for (const auto& p : ps) {
    if (!out.empty()) out += " ";
    if (p.tuple) {
      out += "(";
      for (std::size_t i = 0; i < p.names.size(); ++i) {
        if (i) out += ", ";
        out += p.names[i];
      }
      out += ")";
    } else {
      out += p.names[0];
    }
  }
  return out;
}

const char* binary_symbol(Op op) {
  switch (op) {
    case Op::Implies: return "->";
    case Op::Or: return "\\/";
    case Op::And: return "/\\";
    case Op::Eq: return "=";
    case Op::Ne: return "<>";
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Gt: return ">";
    case Op::Ge: return ">=";
    case Op::Mem: return "mem";
    case Op::Subset: return "subset";
    case Op::Union: return "union";
    case Op::Inter: return "inter";
    case Op::Diff: return "diff";
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    default: return nullptr;
  }
}

const char* primitive_word(Op op) {
  switch (op) {
    case Op::Len: return "len";
    case Op::Reverse: return "reverse";
    case Op::Distinct: return "distinct";
    case Op::SetOf: return "setof";
    case Op::Flatten: return "flatten";
    case Op::Levels: return "levels";
    case Op::CopyGraph: return "copy";
    case Op::Prefix: return "prefix";
    case Op::SetAdd: return "add";
    case Op::Filter: return "filter";
    case Op::AddVertex: return "add_vertex";
    case Op::AddEdge: return "add_edge";
    case Op::Sum: return "sum";
    default: return nullptr;
  }
}

class Renderer {
 public:
  std::string operator()(const Term& t, int want) {
    const auto [text, prec] = render(t);
    return prec < want ? "(" + text + ")" : text;
  }

 private:
  struct Out {
    std::string text;
    int prec;
  };

  // Arguments of applications: `.suc` chains are readable only in parens.
  std::string arg(const Term& t) {
    if (t.op() == Op::Suc) return "(" + (*this)(t, kAtom - 1) + ")";
    return (*this)(t, kDeref);
  }

  Out render(const Term& t) {
    const TermNode& n = t.node();
    const auto& k = n.kids;
    switch (n.op) {
      case Op::Var:
        return {n.name, kAtom};
      case Op::Lit:
        if (n.literal.is(Value::Kind::Int) && n.literal.as_int() < 0)
          return {n.literal.as_int().str(), kUnary};
        return {render_value(n.literal), kAtom};
      case Op::Neg: {
        std::string inner = (*this)(k[0], kUnary);
        // `-3` and `-3.dom` would read back as a negative literal.
        if (!inner.empty() && (inner[0] == '-' || std::isdigit(static_cast<unsigned char>(inner[0]))))
          inner = "(" + inner + ")";
        return {"-" + inner, kUnary};
      }
      case Op::Implies:
        return {(*this)(k[0], kOr) + " -> " + (*this)(k[1], kForm), kImplies};
      case Op::Or:
        return {(*this)(k[0], kOr) + " \\/ " + (*this)(k[1], kAnd), kOr};
      case Op::And:
        return {(*this)(k[0], kAnd) + " /\\ " + (*this)(k[1], kNot), kAnd};
      case Op::Not:
        return {"not " + (*this)(k[0], kNot), kNot};
      case Op::Eq: case Op::Ne: case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge:
      case Op::Mem: case Op::Subset:
        return {(*this)(k[0], kSetOp) + " " + binary_symbol(n.op) + " " + (*this)(k[1], kSetOp),
                kCompare};
      case Op::Union: case Op::Inter: case Op::Diff:
        return {(*this)(k[0], kSetOp) + " " + binary_symbol(n.op) + " " +
                    (*this)(k[1], kAdditive),
                kSetOp};
      case Op::Add: case Op::Sub:
        return {(*this)(k[0], kAdditive) + " " + binary_symbol(n.op) + " " +
                    (*this)(k[1], kMultiplicative),
                kAdditive};
      case Op::Mul:
        return {(*this)(k[0], kMultiplicative) + " * " + (*this)(k[1], kUnary), kMultiplicative};
      case Op::If:
        return {"if " + (*this)(k[0], kForm) + " then " + (*this)(k[1], kForm) + " else " +
                    (*this)(k[2], kForm),
                kForm};
      case Op::Index:
        return {(*this)(k[0], kPostfix) + "[" + (*this)(k[1], kForm) + "]", kPostfix};
      case Op::Dom:
        return {(*this)(k[0], kPostfix) + ".dom", kPostfix};
      case Op::Suc:
        return {(*this)(k[0], kPostfix) + ".suc " + (*this)(k[1], kAtom), kPostfix};
      case Op::EmptyGraph:
        return {"empty_graph", kAtom};
      case Op::SeqLit:
      case Op::SetLit:
      case Op::Tuple: {
        const bool tuple = n.op == Op::Tuple;
        std::string out = tuple ? "(" : n.op == Op::SeqLit ? "[" : "{";
        for (std::size_t i = 0; i < k.size(); ++i) {
          if (i) out += ", ";
          out += (*this)(k[i], kForm);
        }
        out += tuple ? ")" : n.op == Op::SeqLit ? "]" : "}";
        return {out, kAtom};
      }
      case Op::LetTuple: {
        std::string names;
        for (std::size_t i = 0; i < n.params[0].names.size(); ++i) {
          if (i) names += ", ";
          names += n.params[0].names[i];
        }
        return {"let (" + names + ") = " + (*this)(k[0], kForm) + " in " + (*this)(k[1], kForm),
                kForm};
      }
      case Op::ForallIn:
        return {"forall " + n.name + ". " + n.name + " mem " + (*this)(k[0], kSetOp) + " -> " +
                    (*this)(k[1], kForm),
                kForm};
      case Op::ForallRange:
        return {"forall " + n.name + ". " + (*this)(k[0], kSetOp) + " <= " + n.name +
                    (n.inclusive ? " <= " : " < ") + (*this)(k[1], kSetOp) + " -> " +
                    (*this)(k[2], kForm),
                kForm};
      case Op::Lambda:
        return {"fun " + params_text(n.params) + " -> " + (*this)(k[0], kForm), kForm};
      case Op::App: {
        std::string out = (*this)(k[0], kDeref);
        for (std::size_t i = 1; i < k.size(); ++i) out += " " + arg(k[i]);
        return {out, kApp};
      }
      case Op::Deref:
        return {"!" + (*this)(k[0], kDeref), kDeref};
      default: {
        const char* word = primitive_word(n.op);
        if (!word) throw std::invalid_argument("cannot render term operator");
        std::string out = word;
        for (const auto& c : k) out += " " + arg(c);
        return {out, kApp};
      }
    }
  }
};

bool atomic_type(const TypeExpr& t) {
  return t.kind == TypeExpr::Kind::Var ||
         (t.kind == TypeExpr::Kind::Con && t.args.empty());
}

std::string type_text(const TypeExpr& t, int want) {
  // 0: arrow, 1: tuple member, 2: constructor argument
  switch (t.kind) {
    case TypeExpr::Kind::Var:
      return "'" + t.name;
    case TypeExpr::Kind::Con: {
      std::string out;
      for (const auto& a : t.args) out += type_text(a, 2) + " ";
      return out + t.name;
    }
    case TypeExpr::Kind::Tuple: {
      std::string out;
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) out += " * ";
        out += type_text(t.args[i], 2);
      }
      return want > 0 ? "(" + out + ")" : out;
    }
    case TypeExpr::Kind::Arrow: {
      std::string out = type_text(t.args[0], 1) + " -> " + type_text(t.args[1], 0);
      return want > 0 ? "(" + out + ")" : out;
    }
  }
  return {};
}

std::string clause_type(const TypeExpr& t) {
  return atomic_type(t) ? render_type(t) : "(" + render_type(t) + ")";
}

}  // namespace

std::string render_term(const Term& t) { return Renderer{}(t, kForm); }

std::string render_atom(const Term& t) { return Renderer{}(t, kAtom); }

std::string render_type(const TypeExpr& t) { return type_text(t, 0); }

std::string render_decl(const DeclSpec& d) {
  std::ostringstream out;
  if (d.signature) out << "val " << d.function << " : " << render_type(*d.signature) << "\n";
  out << "(*@ " << d.result << " = " << d.function;
  for (const auto& a : d.arguments) out << " " << a;
  out << "\n    " << pattern_keyword(d.pattern) << " ~permitted:" << render_atom(d.permitted)
      << "\n    " << std::string(pattern_keyword(d.pattern).size() + 1, ' ')
      << "~complete:" << render_atom(d.complete) << "\n    with structure = "
      << clause_type(d.structure) << ", elt = " << clause_type(d.elt);
  if (d.accumulator) out << ", accumulator = " << *d.accumulator;
  out << " *)\n";
  return out.str();
}

std::string render_call(const CallSpec& c) {
  std::ostringstream out;
  const std::string pad(4 + pattern_keyword(c.pattern).size() + 1, ' ');
  out << "(*@ " << pattern_keyword(c.pattern) << " ~inv:" << render_atom(c.inv) << "\n"
      << pad << "~collection:" << render_atom(c.collection) << "\n"
      << pad << "~convergence:" << render_atom(c.convergence) << " *)\n";
  return out.str();
}

}  // namespace unfold::dsl
