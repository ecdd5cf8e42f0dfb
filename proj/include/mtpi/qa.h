#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mtpi/formula.h"
#include "mtpi/pi_engine.h"
#include "mtpi/semantics.h"

namespace mtpi {

enum class QaMode {
  // True iff some member of Theta + {[]Y} entails the query modulo []Y.
  kExistential,
  // True iff every member does (the loop as literally written).
  kStrict,
};

enum class QaMethod { kCompiled, kDirect };
const char* ToString(QaMethod m);

struct QueryVerdict {
  Formula query;
  bool answer = false;
  QaMethod method = QaMethod::kCompiled;
  // Compiled method, answer true: a member that entails the query.
  std::optional<Formula> witness;
  // Direct method, answer false: a model of X & []Y & ~Q.
  std::optional<PointedModel> countermodel;
};

// Answers a clausal query against a compilation. Throws ShapeError when the
// query is not a literal or clause (after NNF).
QueryVerdict Qa(const CompilationResult& comp, const Formula& query,
                QaMode mode = QaMode::kExistential, const ProverOptions& options = {});

// X |=_[]Y Q decided directly on X. Accepts any query.
bool QaDirect(const Formula& x, const Formula& y, const Formula& query, System sys,
              const ProverOptions& options = {});

// QaDirect with a countermodel on a negative answer.
QueryVerdict QaDirectVerdict(const Formula& x, const Formula& y, const Formula& query, System sys,
                             const ProverOptions& options = {});

struct KnowledgeBaseFile {
  std::filesystem::path source;
  std::vector<Formula> formulas;
  // Formulas after a `[theory]` header line, if present.
  std::optional<std::vector<Formula>> theory;

  Formula Conjunction() const { return Conjoin(formulas); }
};

// One formula per line; `#` starts a comment; blank lines are skipped.
// Throws IoError or ParseError (with the file line number).
KnowledgeBaseFile LoadKb(const std::filesystem::path& path);
KnowledgeBaseFile ParseKb(const std::string& text, const std::filesystem::path& source = {});

inline constexpr int kSchemaVersion = 1;

nlohmann::json ToJson(const CompilationResult& comp);
// Throws IoError on a schema mismatch or missing field, ParseError on a bad
// formula string.
CompilationResult CompilationFromJson(const nlohmann::json& j);
void SaveCompilation(const CompilationResult& comp, const std::filesystem::path& path);
CompilationResult LoadCompilation(const std::filesystem::path& path);

// {worlds: n, root, relation: [[from, to], ...], valuation: [[true vars of world 0], ...]}
nlohmann::json ToJson(const PointedModel& m);

}  // namespace mtpi
