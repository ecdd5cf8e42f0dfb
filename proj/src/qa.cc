#include "mtpi/qa.h"

#include <fstream>
#include <sstream>

#include "mtpi/errors.h"

namespace mtpi {

namespace {

void RequireClause(const Formula& q) {
  const FormulaClass c = Classify(Nnf(q));
  if (c != FormulaClass::kLiteral && c != FormulaClass::kClause) {
    throw ShapeError("query is not a clause: " + q.str());
  }
}

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

const char* ToString(QaMethod m) { return m == QaMethod::kCompiled ? "compiled" : "direct"; }

QueryVerdict Qa(const CompilationResult& comp, const Formula& query, QaMode mode,
                const ProverOptions& options) {
  RequireClause(query);
  Reasoner r(comp.system, options);
  QueryVerdict v;
  v.query = query;
  v.method = QaMethod::kCompiled;
  const std::vector<Formula> members = comp.Omega();
  if (mode == QaMode::kExistential) {
    for (const auto& m : members) {
      if (r.EntailsMod(m, comp.box_y, query)) {
        v.answer = true;
        v.witness = m;
        break;
      }
    }
  } else {
    v.answer = true;
    for (const auto& m : members) {
      if (!r.EntailsMod(m, comp.box_y, query)) {
        v.answer = false;
        v.witness = m;
        break;
      }
    }
  }
  return v;
}

bool QaDirect(const Formula& x, const Formula& y, const Formula& query, System sys,
              const ProverOptions& options) {
  return EntailsMod(x, Formula::Box(y), query, sys, options);
}

QueryVerdict QaDirectVerdict(const Formula& x, const Formula& y, const Formula& query, System sys,
                             const ProverOptions& options) {
  QueryVerdict v;
  v.query = query;
  v.method = QaMethod::kDirect;
  v.countermodel = FindModel(Formula::And({x, Formula::Box(y), Negate(query)}), sys, options);
  v.answer = !v.countermodel.has_value();
  return v;
}

KnowledgeBaseFile ParseKb(const std::string& text, const std::filesystem::path& source) {
  KnowledgeBaseFile kb;
  kb.source = source;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view view(raw);
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    const std::string line = Trim(view);
    if (line.empty()) continue;
    if (line == "[theory]") {
      if (kb.theory) throw ParseError("duplicate [theory] section", line_no, 1);
      kb.theory.emplace();
      continue;
    }
    // Keep the original columns in error messages.
    const std::size_t indent = raw.find_first_not_of(" \t");
    try {
      Formula f = Parse(line, line_no);
      (kb.theory ? *kb.theory : kb.formulas).push_back(std::move(f));
    } catch (const ParseError& e) {
      std::string msg = e.what();
      msg = msg.substr(0, msg.rfind(" at line "));
      if (!source.empty()) msg = source.string() + ": " + msg;
      throw ParseError(msg, e.line(), e.column() + indent);
    }
  }
  return kb;
}

KnowledgeBaseFile LoadKb(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseKb(buf.str(), path);
}

nlohmann::json ToJson(const CompilationResult& comp) {
  auto strings = [](const std::vector<Formula>& fs) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& f : fs) a.push_back(f.str());
    return a;
  };
  return {
      {"schema", kSchemaVersion},
      {"system", ToString(comp.system)},
      {"x", comp.x.str()},
      {"y", comp.y.str()},
      {"box_y", comp.box_y.str()},
      {"candidates", strings(comp.candidates)},
      {"theta", strings(comp.theta)},
      {"stats",
       {{"nb_cl_candidates", comp.stats.nb_cl_candidates},
        {"nb_cl_theta", comp.stats.nb_cl_theta},
        {"entailment_calls", comp.stats.entailment_calls},
        {"elapsed_ms", comp.stats.elapsed_ms}}},
      {"horn_advisory", comp.horn_advisory},
  };
}

CompilationResult CompilationFromJson(const nlohmann::json& j) {
  try {
    const int schema = j.at("schema").get<int>();
    if (schema != kSchemaVersion) {
      throw IoError("unsupported compilation schema " + std::to_string(schema) + ", expected " +
                    std::to_string(kSchemaVersion));
    }
    CompilationResult c;
    const auto sys = ParseSystem(j.at("system").get<std::string>());
    if (!sys) throw IoError("unknown system " + j.at("system").dump());
    c.system = *sys;
    c.x = Parse(j.at("x").get<std::string>());
    c.y = Parse(j.at("y").get<std::string>());
    c.box_y = Parse(j.at("box_y").get<std::string>());
    for (const auto& s : j.at("candidates")) c.candidates.push_back(Parse(s.get<std::string>()));
    for (const auto& s : j.at("theta")) c.theta.push_back(Parse(s.get<std::string>()));
    const auto& st = j.at("stats");
    c.stats.nb_cl_candidates = st.at("nb_cl_candidates").get<std::size_t>();
    c.stats.nb_cl_theta = st.at("nb_cl_theta").get<std::size_t>();
    c.stats.entailment_calls = st.at("entailment_calls").get<std::size_t>();
    c.stats.elapsed_ms = st.at("elapsed_ms").get<double>();
    c.horn_advisory = j.at("horn_advisory").get<bool>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed compilation: ") + e.what());
  }
}

void SaveCompilation(const CompilationResult& comp, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << ToJson(comp).dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

CompilationResult LoadCompilation(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  return CompilationFromJson(j);
}

nlohmann::json ToJson(const PointedModel& m) {
  nlohmann::json relation = nlohmann::json::array();
  for (const auto& [from, to] : m.model.Edges()) relation.push_back({from, to});
  nlohmann::json valuation = nlohmann::json::array();
  for (World w = 0; w < m.model.num_worlds(); ++w) valuation.push_back(m.model.valuation(w));
  return {{"worlds", m.model.num_worlds()},
          {"root", m.world},
          {"relation", relation},
          {"valuation", valuation}};
}

}  // namespace mtpi
