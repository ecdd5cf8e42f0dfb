#include "mtpi/formula.h"

#include <algorithm>
#include <functional>
#include <ostream>

#include "mtpi/errors.h"

namespace mtpi {

struct Formula::Node {
  Op op;
  std::string name;
  std::vector<Formula> children;
  std::string str;
  std::size_t hash;
  int depth;
  std::size_t size;
};

namespace {

std::string Render(Op op, const std::string& name, const std::vector<Formula>& children) {
  switch (op) {
    case Op::kVar: return name;
    case Op::kTrue: return "true";
    case Op::kFalse: return "false";
    case Op::kNot: return "~" + children[0].str();
    case Op::kBox: return "[]" + children[0].str();
    case Op::kDia: return "<>" + children[0].str();
    case Op::kAnd:
    case Op::kOr: {
      const char* sep = op == Op::kAnd ? " & " : " | ";
      std::string out = "(";
      for (std::size_t i = 0; i < children.size(); ++i) {
        if (i > 0) out += sep;
        out += children[i].str();
      }
      out += ")";
      return out;
    }
  }
  return {};
}

bool CanonicalLess(const Formula& a, const Formula& b) {
  const auto& x = a.str();
  const auto& y = b.str();
  if (x.size() != y.size()) return x.size() < y.size();
  return x < y;
}

}  // namespace

Formula Formula::Make(Op op, std::string name, std::vector<Formula> children) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->str = Render(op, name, children);
  node->hash = std::hash<std::string>{}(node->str);
  node->depth = 0;
  node->size = 1;
  for (const auto& c : children) {
    node->depth = std::max(node->depth, c.modal_depth());
    node->size += c.size();
  }
  if (op == Op::kBox || op == Op::kDia) ++node->depth;
  node->name = std::move(name);
  node->children = std::move(children);
  return Formula(std::move(node));
}

Formula::Formula() : Formula(True()) {}

Formula Formula::Var(std::string name) { return Make(Op::kVar, std::move(name), {}); }

Formula Formula::True() {
  static const Formula t = Make(Op::kTrue, {}, {});
  return t;
}

Formula Formula::False() {
  static const Formula f = Make(Op::kFalse, {}, {});
  return f;
}

Formula Formula::Not(Formula f) {
  if (f.is(Op::kTrue)) return False();
  if (f.is(Op::kFalse)) return True();
  return Make(Op::kNot, {}, {std::move(f)});
}

namespace {

// Shared canonicalization of And (absorbing = false, neutral = true) and Or
// (absorbing = true, neutral = false).
std::optional<std::vector<Formula>> Flatten(Op op, std::vector<Formula> in, Op neutral,
                                            Op absorbing) {
  std::vector<Formula> out;
  out.reserve(in.size());
  for (auto& f : in) {
    if (f.is(absorbing)) return std::nullopt;
    if (f.is(neutral)) continue;
    if (f.is(op)) {
      for (const auto& g : f.children()) out.push_back(g);
    } else {
      out.push_back(std::move(f));
    }
  }
  std::sort(out.begin(), out.end(), CanonicalLess);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Formula Formula::And(std::vector<Formula> children) {
  auto flat = Flatten(Op::kAnd, std::move(children), Op::kTrue, Op::kFalse);
  if (!flat) return False();
  if (flat->empty()) return True();
  if (flat->size() == 1) return (*flat)[0];
  return Make(Op::kAnd, {}, std::move(*flat));
}

Formula Formula::Or(std::vector<Formula> children) {
  auto flat = Flatten(Op::kOr, std::move(children), Op::kFalse, Op::kTrue);
  if (!flat) return True();
  if (flat->empty()) return False();
  if (flat->size() == 1) return (*flat)[0];
  return Make(Op::kOr, {}, std::move(*flat));
}

Formula Formula::Box(Formula f) {
  if (f.is(Op::kTrue)) return True();
  return Make(Op::kBox, {}, {std::move(f)});
}

Formula Formula::Dia(Formula f) {
  if (f.is(Op::kFalse)) return False();
  return Make(Op::kDia, {}, {std::move(f)});
}

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
std::span<const Formula> Formula::children() const { return node_->children; }
const Formula& Formula::child() const { return node_->children.at(0); }
const std::string& Formula::str() const { return node_->str; }
std::size_t Formula::hash() const { return node_->hash; }
int Formula::modal_depth() const { return node_->depth; }
std::size_t Formula::size() const { return node_->size; }

bool operator==(const Formula& a, const Formula& b) {
  return a.node_ == b.node_ || a.str() == b.str();
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  const auto& x = a.str();
  const auto& y = b.str();
  if (auto c = x.size() <=> y.size(); c != 0) return c;
  return x.compare(y) <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << f.str(); }

Formula Nnf(const Formula& f) {
  switch (f.op()) {
    case Op::kVar:
    case Op::kTrue:
    case Op::kFalse:
      return f;
    case Op::kNot:
      return Negate(f.child());
    case Op::kAnd:
    case Op::kOr: {
      std::vector<Formula> cs;
      for (const auto& c : f.children()) cs.push_back(Nnf(c));
      return f.is(Op::kAnd) ? Formula::And(std::move(cs)) : Formula::Or(std::move(cs));
    }
    case Op::kBox: return Formula::Box(Nnf(f.child()));
    case Op::kDia: return Formula::Dia(Nnf(f.child()));
  }
  return f;
}

Formula Negate(const Formula& f) {
  switch (f.op()) {
    case Op::kVar: return Formula::Not(f);
    case Op::kTrue: return Formula::False();
    case Op::kFalse: return Formula::True();
    case Op::kNot: return Nnf(f.child());
    case Op::kAnd:
    case Op::kOr: {
      std::vector<Formula> cs;
      for (const auto& c : f.children()) cs.push_back(Negate(c));
      return f.is(Op::kAnd) ? Formula::Or(std::move(cs)) : Formula::And(std::move(cs));
    }
    case Op::kBox: return Formula::Dia(Negate(f.child()));
    case Op::kDia: return Formula::Box(Negate(f.child()));
  }
  return f;
}

const char* ToString(FormulaClass c) {
  switch (c) {
    case FormulaClass::kLiteral: return "literal";
    case FormulaClass::kClause: return "clause";
    case FormulaClass::kTerm: return "term";
    case FormulaClass::kGeneral: return "general";
  }
  return "?";
}

std::optional<LiteralKind> LiteralKindOf(const Formula& f) {
  switch (f.op()) {
    case Op::kVar: return LiteralKind::kPosAtom;
    case Op::kNot:
      if (f.child().is(Op::kVar)) return LiteralKind::kNegAtom;
      return std::nullopt;
    case Op::kBox: return LiteralKind::kBox;
    case Op::kDia: return LiteralKind::kDia;
    default: return std::nullopt;
  }
}

bool IsLiteral(const Formula& f) { return LiteralKindOf(f).has_value(); }

bool IsPropositionalLiteral(const Formula& f) {
  auto k = LiteralKindOf(f);
  return k == LiteralKind::kPosAtom || k == LiteralKind::kNegAtom;
}

FormulaClass Classify(const Formula& f) {
  if (IsLiteral(f)) return FormulaClass::kLiteral;
  if (f.is(Op::kFalse)) return FormulaClass::kClause;
  if (f.is(Op::kTrue)) return FormulaClass::kTerm;
  if (f.is(Op::kOr) || f.is(Op::kAnd)) {
    for (const auto& c : f.children()) {
      if (!IsLiteral(c)) return FormulaClass::kGeneral;
    }
    return f.is(Op::kOr) ? FormulaClass::kClause : FormulaClass::kTerm;
  }
  return FormulaClass::kGeneral;
}

bool IsClause(const Formula& f) {
  auto c = Classify(f);
  return c == FormulaClass::kLiteral || c == FormulaClass::kClause;
}

bool IsTerm(const Formula& f) {
  auto c = Classify(f);
  return c == FormulaClass::kLiteral || c == FormulaClass::kTerm;
}

namespace {

template <typename Parts>
void Split(const Formula& lit, Parts& parts) {
  switch (*LiteralKindOf(lit)) {
    case LiteralKind::kPosAtom:
    case LiteralKind::kNegAtom:
      parts.prop.push_back(lit);
      break;
    case LiteralKind::kDia:
      parts.dia.push_back(lit.child());
      break;
    case LiteralKind::kBox:
      parts.box.push_back(lit.child());
      break;
  }
}

template <typename Parts>
std::vector<Formula> Literals(const Parts& parts) {
  std::vector<Formula> lits = parts.prop;
  for (const auto& d : parts.dia) lits.push_back(Formula::Dia(d));
  for (const auto& b : parts.box) lits.push_back(Formula::Box(b));
  return lits;
}

}  // namespace

Formula ClauseParts::Reassemble() const { return Formula::Or(Literals(*this)); }
Formula TermParts::Reassemble() const { return Formula::And(Literals(*this)); }

ClauseParts DecomposeClause(const Formula& c) {
  if (!IsClause(c)) throw ShapeError("not a clause: " + c.str());
  ClauseParts parts;
  if (c.is(Op::kOr)) {
    for (const auto& l : c.children()) Split(l, parts);
  } else if (!c.is(Op::kFalse)) {
    Split(c, parts);
  }
  return parts;
}

TermParts DecomposeTerm(const Formula& t) {
  if (!IsTerm(t)) throw ShapeError("not a term: " + t.str());
  TermParts parts;
  if (t.is(Op::kAnd)) {
    for (const auto& l : t.children()) Split(l, parts);
  } else if (!t.is(Op::kTrue)) {
    Split(t, parts);
  }
  return parts;
}

namespace {

void CollectVars(const Formula& f, std::set<std::string>& out) {
  if (f.is(Op::kVar)) {
    out.insert(f.name());
    return;
  }
  for (const auto& c : f.children()) CollectVars(c, out);
}

}  // namespace

std::set<std::string> Vars(const Formula& f) {
  std::set<std::string> out;
  CollectVars(f, out);
  return out;
}

Formula Conjoin(std::span<const Formula> fs) {
  return Formula::And(std::vector<Formula>(fs.begin(), fs.end()));
}

Formula Disjoin(std::span<const Formula> fs) {
  return Formula::Or(std::vector<Formula>(fs.begin(), fs.end()));
}

}  // namespace mtpi
