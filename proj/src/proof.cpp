#include "prehist/proof.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace prehist {

using nlohmann::json;

std::string render(const Sequent& s) {
  std::string out;
  for (size_t i = 0; i < s.ant.size(); i++) {
    if (i) out += ", ";
    out += render(s.ant[i]);
  }
  out += s.ant.empty() ? "=>" : " =>";
  for (size_t i = 0; i < s.suc.size(); i++) {
    out += i ? ", " : " ";
    out += render(s.suc[i]);
  }
  return out;
}

Sequent parse_sequent(const std::string& text, Language lang, const Lexicon& lex) {
  // Split on "=>" or UTF-8 "⊃" at top level, then on commas.
  size_t sep = std::string::npos, sep_len = 0;
  int depth = 0;
  for (size_t i = 0; i < text.size(); i++) {
    if (text[i] == '(') depth++;
    if (text[i] == ')') depth--;
    if (depth) continue;
    if (text[i] == '=' && i + 1 < text.size() && text[i + 1] == '>') { sep = i; sep_len = 2; break; }
    if (text.compare(i, 3, "⊃") == 0) { sep = i; sep_len = 3; break; }
  }
  if (sep == std::string::npos) throw ParseError("sequent needs '=>' (or UTF-8 superset arrow)", 0);
  auto split = [&](const std::string& part, std::vector<const Formula*>& out) {
    size_t start = 0;
    int d = 0;
    auto flush = [&](size_t end) {
      std::string piece = part.substr(start, end - start);
      size_t a = piece.find_first_not_of(" \t\r\n");
      if (a == std::string::npos) return;  // empty
      out.push_back(parse_formula(piece, lang, lex));
    };
    for (size_t i = 0; i < part.size(); i++) {
      if (part[i] == '(') d++;
      if (part[i] == ')') d--;
      if (part[i] == ',' && d == 0) { flush(i); start = i + 1; }
    }
    flush(part.size());
  };
  Sequent s;
  split(text.substr(0, sep), s.ant);
  split(text.substr(sep + sep_len), s.suc);
  return s;
}

Sequent desugar(const Sequent& s) {
  Sequent out;
  for (auto* f : s.ant) out.ant.push_back(desugar(f));
  for (auto* f : s.suc) out.suc.push_back(desugar(f));
  return out;
}

Sequent erase_annotations(const Sequent& s) {
  Sequent out;
  for (auto* f : s.ant) out.ant.push_back(erase_annotations(f));
  for (auto* f : s.suc) out.suc.push_back(erase_annotations(f));
  return out;
}

Sequent forgetful(const Sequent& s) {
  Sequent out;
  for (auto* f : s.ant) out.ant.push_back(forgetful(f));
  for (auto* f : s.suc) out.suc.push_back(forgetful(f));
  return out;
}

bool multiset_eq(const std::vector<const Formula*>& a, const std::vector<const Formula*>& b) {
  if (a.size() != b.size()) return false;
  auto sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  return sa == sb;
}

bool multiset_leq(const std::vector<const Formula*>& a, const std::vector<const Formula*>& b) {
  std::map<const Formula*, int> count;
  for (auto* f : b) count[f]++;
  for (auto* f : a)
    if (--count[f] < 0) return false;
  return true;
}

// ---------------------------------------------------------------------------

namespace {
struct RuleInfo {
  Rule rule;
  const char* name;
  const char* display;
  int premises;
};
const RuleInfo kRules[] = {
    {Rule::Ax, "ax", "(Ax)", 0},
    {Rule::BotL, "bot-l", "(bot =>)", 0},
    {Rule::NotL, "not-l", "(~ =>)", 1},
    {Rule::NotR, "not-r", "(=> ~)", 1},
    {Rule::AndL, "and-l", "(& =>)", 1},
    {Rule::AndR, "and-r", "(=> &)", 2},
    {Rule::OrL, "or-l", "(| =>)", 2},
    {Rule::OrR, "or-r", "(=> |)", 1},
    {Rule::ImpL, "imp-l", "(-> =>)", 2},
    {Rule::ImpR, "imp-r", "(=> ->)", 1},
    {Rule::BoxL, "box-l", "([] =>)", 1},
    {Rule::BoxR, "box-r", "(=> [])", 1},
    {Rule::DiaL, "dia-l", "(<> =>)", 1},
    {Rule::DiaR, "dia-r", "(=> <>)", 1},
    {Rule::Cut, "cut", "(Cut)", 2},
    {Rule::BoxCut, "boxcut", "([]Cut)", 2},
    {Rule::ColonL, "colon-l", "(: =>)", 1},
    {Rule::ColonRc, "colon-r-const", "(=> :)c", 1},
    {Rule::ColonRt, "colon-r-term", "(=> :)t", 1},
    {Rule::BangR, "bang-r", "(=> !)", 1},
    {Rule::PlusR, "plus-r", "(=> +)", 1},
    {Rule::DotR, "dot-r", "(=> *)", 2},
};
const RuleInfo& info(Rule r) {
  for (const auto& ri : kRules)
    if (ri.rule == r) return ri;
  throw std::logic_error("unknown rule");
}
}  // namespace

const char* rule_name(Rule r) { return info(r).name; }
const char* rule_display(Rule r) { return info(r).display; }
int rule_premise_count(Rule r) { return info(r).premises; }

std::optional<Rule> rule_from_name(const std::string& s) {
  for (const auto& ri : kRules)
    if (s == ri.name) return ri.rule;
  return std::nullopt;
}

int add_node(Proof& p, Rule r, Sequent s, PrincipalRef pr, std::vector<int> premises) {
  p.nodes.push_back(ProofNode{r, std::move(s), pr, std::move(premises)});
  return int(p.nodes.size()) - 1;
}

int count_rule(const Proof& p, Rule r) {
  int n = 0;
  for (const auto& node : p.nodes) n += node.rule == r;
  return n;
}

Proof erase_proof_annotations(const Proof& p) {
  Proof out = p;
  for (auto& node : out.nodes) {
    node.sequent = erase_annotations(node.sequent);
    if (node.principal.cut) node.principal.cut = erase_annotations(node.principal.cut);
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

json node_to_json(const Proof& p, int id, Language lang) {
  const ProofNode& n = p.at(id);
  json j;
  j["rule"] = rule_name(n.rule);
  json ant = json::array(), suc = json::array();
  for (auto* f : n.sequent.ant) ant.push_back(render(f));
  for (auto* f : n.sequent.suc) suc.push_back(render(f));
  j["sequent"] = {{"ant", ant}, {"suc", suc}};
  if (n.principal.cut) {
    j["principal"] = {{"cut", render(n.principal.cut)}};
  } else if (n.principal.has_occ) {
    j["principal"] = {{"side", n.principal.side == Side::Ant ? "ant" : "suc"},
                      {"index", n.principal.index}};
  }
  json prem = json::array();
  for (int q : n.premises) prem.push_back(node_to_json(p, q, lang));
  j["premises"] = prem;
  return j;
}

bool node_is_lp(const json& j) {
  std::string rule = j.at("rule").get<std::string>();
  if (rule.rfind("colon", 0) == 0 || rule == "bang-r" || rule == "plus-r" || rule == "dot-r")
    return true;
  for (const auto& q : j.at("premises"))
    if (node_is_lp(q)) return true;
  return false;
}

int node_from_json(const json& j, Proof& p, Language lang, const Lexicon& lex) {
  auto rule = rule_from_name(j.at("rule").get<std::string>());
  if (!rule) throw std::invalid_argument("unknown rule tag: " + j.at("rule").dump());
  Sequent s;
  for (const auto& t : j.at("sequent").at("ant")) s.ant.push_back(parse_formula(t.get<std::string>(), lang, lex));
  for (const auto& t : j.at("sequent").at("suc")) s.suc.push_back(parse_formula(t.get<std::string>(), lang, lex));
  PrincipalRef pr;
  if (j.contains("principal")) {
    const json& pj = j.at("principal");
    if (pj.contains("cut")) {
      pr.cut = parse_formula(pj.at("cut").get<std::string>(), lang, lex);
    } else {
      pr.has_occ = true;
      pr.side = pj.at("side").get<std::string>() == "ant" ? Side::Ant : Side::Suc;
      pr.index = pj.at("index").get<int>();
    }
  }
  std::vector<int> premises;
  for (const auto& q : j.at("premises")) premises.push_back(node_from_json(q, p, lang, lex));
  return add_node(p, *rule, std::move(s), pr, std::move(premises));
}

}  // namespace

std::string proof_to_json(const Proof& p, Language lang) {
  json j;
  j["format"] = "prehist/1";
  j["proof"] = node_to_json(p, p.root, lang);
  return j.dump(2);
}

Proof proof_from_json(const std::string& text, const Lexicon& lex) {
  json j = json::parse(text);
  const json& root = j.contains("proof") ? j.at("proof") : j;
  Language lang = node_is_lp(root) ? Language::Lp : Language::Modal;
  // LP formulas never contain boxes, so parsing modal-looking strings with
  // the LP grammar would reject them; detect the language from the rules and
  // fall back to LP when any formula uses term syntax.
  Proof p;
  try {
    p.root = node_from_json(root, p, lang, lex);
  } catch (const ParseError&) {
    if (lang == Language::Lp) throw;
    p = Proof{};
    p.root = node_from_json(root, p, Language::Lp, lex);
  }
  return p;
}

namespace {
void render_tree_rec(const Proof& p, int id, int depth, std::string& out) {
  const ProofNode& n = p.at(id);
  out.append(size_t(2 * depth), ' ');
  out += render(n.sequent);
  out += "   ";
  out += rule_display(n.rule);
  out += '\n';
  for (int q : n.premises) render_tree_rec(p, q, depth + 1, out);
}
}  // namespace

std::string render_tree(const Proof& p) {
  std::string out;
  render_tree_rec(p, p.root, 0, out);
  return out;
}

}  // namespace prehist
