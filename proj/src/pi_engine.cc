#include "mtpi/pi_engine.h"

#include <algorithm>
#include <chrono>
#include <set>
#include <string>

#include "mtpi/errors.h"

namespace mtpi {

namespace {

void SortUnique(std::vector<Formula>& fs) {
  std::sort(fs.begin(), fs.end());
  fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
}

bool HasClash(const std::vector<Formula>& prop) {
  std::set<std::string> pos, neg;
  for (const auto& l : prop) {
    if (l.is(Op::kVar)) {
      pos.insert(l.name());
    } else if (l.is(Op::kNot)) {
      neg.insert(l.child().name());
    }
  }
  for (const auto& v : pos) {
    if (neg.count(v)) return true;
  }
  return false;
}

}  // namespace

std::vector<Formula> CompilationResult::Omega() const {
  std::vector<Formula> out = theta;
  out.push_back(box_y);
  return out;
}

std::vector<Formula> TermCandidates(const TermParts& term) {
  if (HasClash(term.prop)) throw ShapeError("inconsistent term: " + term.Reassemble().str());
  std::vector<Formula> out = term.prop;
  const Formula gamma = Conjoin(term.box);
  for (const auto& b : term.dia) out.push_back(Formula::Dia(Formula::And(b, gamma)));
  if (!term.box.empty()) out.push_back(Formula::Box(gamma));
  SortUnique(out);
  return out;
}

Engine::Engine(System sys, EngineOptions options)
    : reasoner_(sys, options.prover), options_(options) {}

std::vector<Formula> Engine::SaturatedTerms(const Formula& f) {
  const NormalFormOptions nf{options_.max_terms};
  std::vector<Formula> terms = ToDnf(Nnf(f), nf).terms;
  if (system() == System::kT) {
    // In T every [] body also holds at the current world. Conjoin the bodies
    // into the term until no new body shows up.
    struct Pending {
      Formula term;
      std::set<Formula> added;
    };
    std::vector<Pending> work;
    for (auto& t : terms) work.push_back({t, {}});
    std::vector<Formula> done;
    while (!work.empty()) {
      Pending p = std::move(work.back());
      work.pop_back();
      const TermParts parts = DecomposeTerm(p.term);
      std::vector<Formula> fresh;
      for (const auto& b : parts.box) {
        if (!p.added.count(b)) fresh.push_back(b);
      }
      if (fresh.empty()) {
        done.push_back(p.term);
        continue;
      }
      for (const auto& b : fresh) p.added.insert(b);
      fresh.push_back(p.term);
      for (auto& t : ToDnf(Conjoin(fresh), nf).terms) {
        work.push_back({t, p.added});
        if (work.size() + done.size() > options_.max_terms) {
          throw CapacityError("too many terms while saturating " + f.str());
        }
      }
    }
    terms = std::move(done);
    SortUnique(terms);
  }
  std::erase_if(terms, [&](const Formula& t) { return !reasoner_.IsSatisfiable(t); });
  return terms;
}

std::vector<Formula> Engine::PruneEntailed(std::vector<Formula> clauses) {
  SortUnique(clauses);
  const std::size_t n = clauses.size();
  std::vector<bool> drop(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n && !drop[i]; ++j) {
      if (i == j || drop[j]) continue;
      if (!reasoner_.Entails(clauses[j], clauses[i])) continue;
      // Among equivalent clauses the canonically smaller one survives.
      if (j < i || !reasoner_.Entails(clauses[i], clauses[j])) drop[i] = true;
    }
  }
  std::vector<Formula> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!drop[i]) out.push_back(clauses[i]);
  }
  return out;
}

std::vector<Formula> Engine::Candidates(const Formula& f) {
  const std::vector<Formula> terms = SaturatedTerms(f);
  if (terms.empty()) return {Formula::False()};
  std::vector<Formula> acc{Formula::False()};
  for (std::size_t k = 0; k < terms.size(); ++k) {
    std::vector<Formula> cands = PruneEntailed(TermCandidates(DecomposeTerm(terms[k])));
    if (cands.empty()) cands.push_back(Formula::True());
    if (acc.size() * cands.size() > options_.max_terms) {
      throw CapacityError("candidate set exceeds " + std::to_string(options_.max_terms));
    }
    std::vector<Formula> next;
    next.reserve(acc.size() * cands.size());
    for (const auto& c : acc) {
      for (const auto& l : cands) next.push_back(Formula::Or(c, l));
    }
    acc = k + 1 < terms.size() ? PruneEntailed(std::move(next)) : std::move(next);
  }
  SortUnique(acc);
  return acc;
}

std::vector<Formula> Engine::Residue(const std::vector<Formula>& clauses, const Formula& theory) {
  std::vector<Formula> cs = clauses;
  SortUnique(cs);
  const std::size_t n = cs.size();
  std::vector<std::vector<char>> entails(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      entails[i][j] = i == j || reasoner_.EntailsMod(cs[i], theory, cs[j]);
    }
  }
  // Representatives: the first member of each equivalence class.
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < n; ++i) {
    bool first = true;
    for (std::size_t r : reps) {
      if (entails[i][r] && entails[r][i]) {
        first = false;
        break;
      }
    }
    if (first) reps.push_back(i);
  }
  std::vector<Formula> out;
  for (std::size_t r : reps) {
    bool entailed = false;
    for (std::size_t s : reps) {
      if (s != r && entails[s][r]) {
        entailed = true;
        break;
      }
    }
    if (!entailed) out.push_back(cs[r]);
  }
  return out;
}

std::vector<Formula> Engine::PrimeImplicates(const Formula& x) {
  return Residue(Candidates(x), Formula::True());
}

CompilationResult Engine::ModalTpi(const Formula& x, const Formula& y) {
  if (!IsPropositional(y)) throw ShapeError("Y must be propositional: " + y.str());
  const auto start = std::chrono::steady_clock::now();
  const std::size_t calls_before = reasoner_.entailment_calls();
  if (!reasoner_.Entails(x, y)) {
    throw PreconditionError("X does not entail Y: " + x.str() + " |/= " + y.str());
  }
  CompilationResult r;
  r.x = x;
  r.y = y;
  r.system = system();
  r.box_y = Formula::Box(Nnf(y));
  r.candidates = Candidates(Formula::And(x, r.box_y));
  r.theta = Residue(r.candidates, r.box_y);
  r.horn_advisory = IsHorn(y);
  r.stats.nb_cl_candidates = r.candidates.size();
  r.stats.nb_cl_theta = r.theta.size();
  r.stats.entailment_calls = reasoner_.entailment_calls() - calls_before;
  r.stats.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

bool IsHorn(const Formula& y) {
  if (!IsPropositional(y)) throw ShapeError("not propositional: " + y.str());
  for (const auto& c : ToCnf(Nnf(y)).clauses) {
    const ClauseParts parts = DecomposeClause(c);
    const auto positive = std::count_if(parts.prop.begin(), parts.prop.end(),
                                        [](const Formula& l) { return l.is(Op::kVar); });
    if (positive > 1) return false;
  }
  return true;
}

Formula DefaultTheory(const Formula& x) {
  std::vector<Formula> keep;
  for (const auto& c : ToCnf(Nnf(x)).clauses) {
    if (IsPropositional(c)) keep.push_back(c);
  }
  return Conjoin(keep);
}

}  // namespace mtpi
