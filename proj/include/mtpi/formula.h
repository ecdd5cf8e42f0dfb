#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mtpi {

enum class Op : std::uint8_t { kVar, kTrue, kFalse, kNot, kAnd, kOr, kBox, kDia };

// Immutable modal formula. Construction goes through the static factories,
// which canonicalize on the fly:
//   - And/Or children are flattened, deduplicated and sorted by printed form
//     (shorter first, then lexicographic);
//   - x & true = x, x & false = false, x | false = x, x | true = true,
//     [] true = true, <> false = false, ~true = false, ~false = true;
//   - an And/Or with a single remaining child collapses to that child.
// Two formulas are equal iff their canonical printed forms are equal.
class Formula {
 public:
  // The constant `true`.
  Formula();

  static Formula Var(std::string name);
  static Formula True();
  static Formula False();
  static Formula Not(Formula f);
  static Formula And(std::vector<Formula> children);
  static Formula Or(std::vector<Formula> children);
  static Formula And(Formula a, Formula b) { return And(std::vector<Formula>{std::move(a), std::move(b)}); }
  static Formula Or(Formula a, Formula b) { return Or(std::vector<Formula>{std::move(a), std::move(b)}); }
  static Formula Box(Formula f);
  static Formula Dia(Formula f);

  Op op() const;
  bool is(Op op) const { return this->op() == op; }

  // Variable name; empty unless op() == kVar.
  const std::string& name() const;
  // Operands: one for Not/Box/Dia, at least two for And/Or, none otherwise.
  std::span<const Formula> children() const;
  // The single operand of a Not/Box/Dia.
  const Formula& child() const;

  // Canonical printed form, e.g. "[](<>p2 & (p1 | p2))".
  const std::string& str() const;
  std::size_t hash() const;
  // Maximal nesting of [] and <>.
  int modal_depth() const;
  // Number of nodes in the formula tree.
  std::size_t size() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula Make(Op op, std::string name, std::vector<Formula> children);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

std::ostream& operator<<(std::ostream& os, const Formula& f);

// Canonical printed form; parse(print(f)) == f.
inline const std::string& Print(const Formula& f) { return f.str(); }

// Parses the ASCII grammar:
//   atoms  [a-zA-Z][a-zA-Z0-9_]*   constants true false
//   unary  ~ [] <>                 binary & | -> <->  (in decreasing precedence)
// `->` is right-associative; `->` and `<->` are expanded into ~, &, |.
// Throws ParseError. `first_line` offsets the reported line numbers.
Formula Parse(std::string_view text, std::size_t first_line = 1);

// Negation normal form: ~ only in front of variables, the constants folded.
Formula Nnf(const Formula& f);
// Nnf(~f).
Formula Negate(const Formula& f);

enum class FormulaClass { kLiteral, kClause, kTerm, kGeneral };
const char* ToString(FormulaClass c);

enum class LiteralKind { kPosAtom, kNegAtom, kBox, kDia };
// nullopt when f is not a literal (a, ~a, []F, <>F).
std::optional<LiteralKind> LiteralKindOf(const Formula& f);
bool IsLiteral(const Formula& f);
bool IsPropositionalLiteral(const Formula& f);

// Most specific class of an NNF formula. A literal is reported as a literal;
// `false` counts as the empty clause and `true` as the empty term.
FormulaClass Classify(const Formula& f);
bool IsClause(const Formula& f);
bool IsTerm(const Formula& f);

// A clause split into its propositional literals, the bodies of its <>
// literals and the bodies of its [] literals.
struct ClauseParts {
  std::vector<Formula> prop;
  std::vector<Formula> dia;
  std::vector<Formula> box;

  Formula Reassemble() const;
};

// Same split for a term.
struct TermParts {
  std::vector<Formula> prop;
  std::vector<Formula> dia;
  std::vector<Formula> box;

  Formula Reassemble() const;
};

// Throw ShapeError when the input is not a clause (resp. term).
ClauseParts DecomposeClause(const Formula& c);
TermParts DecomposeTerm(const Formula& t);

std::set<std::string> Vars(const Formula& f);
inline int ModalDepth(const Formula& f) { return f.modal_depth(); }
inline bool IsPropositional(const Formula& f) { return f.modal_depth() == 0; }

// The conjunction/disjunction of a list of formulas (true/false when empty).
Formula Conjoin(std::span<const Formula> fs);
Formula Disjoin(std::span<const Formula> fs);

}  // namespace mtpi
