// prehist: a workbench for G3s / G3lp proofs, prehistoric relations and
// self-referentiality analyses. See README.md for the formats.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "prehist/correspond.hpp"
#include "prehist/families.hpp"
#include "prehist/lp_analysis.hpp"
#include "prehist/prover.hpp"
#include "prehist/selftest.hpp"
#include "prehist/semantics.hpp"
#include "prehist/transforms.hpp"

using namespace prehist;
using nlohmann::json;

namespace {

// exit codes: 0 success / positive answer, 1 negative answer, 2 bound, 3 input error
constexpr int kYes = 0, kNo = 1, kBound = 2, kBad = 3;

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CalculusVariant variant_arg(const std::string& s) {
  auto v = variant_from_name(s);
  if (!v) throw CLI::ValidationError("--calculus", "unknown calculus: " + s);
  return *v;
}

AxiomChecker axiom_arg(const std::string& mode, const std::string& schema_file) {
  if (mode == "tautology") return AxiomChecker::tautology();
  if (mode != "schema-list") throw CLI::ValidationError("--axiom-mode", "unknown mode: " + mode);
  std::vector<const Formula*> schemas;
  if (schema_file.empty()) {
    schemas = AxiomChecker::default_schemas();
  } else {
    json j = json::parse(slurp(schema_file));
    for (const auto& s : j.at("schemas"))
      schemas.push_back(parse_formula(s.get<std::string>(), Language::Lp));
  }
  return AxiomChecker::schema_list(std::move(schemas));
}

json proof_json(const Proof& p, Language lang) { return json::parse(proof_to_json(p, lang)); }

json graph_json(const PrehistoricGraph& g) { return json::parse(g.to_json()); }

int emit(const json& j) {
  std::cout << j.dump(2) << "\n";
  return kYes;
}

GraphMode mode_arg(const std::string& s) {
  if (s == "g3s-principal") return GraphMode::G3sPrincipal;
  if (s == "all-box") return GraphMode::AllBox;
  if (s == "lp-term") return GraphMode::LpTerm;
  if (s == "labeled") return GraphMode::Labeled;
  throw CLI::ValidationError("--mode", "unknown graph mode: " + s);
}

CalculusVariant guess_variant(const Proof& p) {
  bool lp = false, cut = false, boxcut = false, classical_only = true;
  for (const auto& n : p.nodes) {
    switch (n.rule) {
      case Rule::ColonL:
      case Rule::ColonRc:
      case Rule::ColonRt:
      case Rule::BangR:
      case Rule::PlusR:
      case Rule::DotR:
        lp = true;
        break;
      case Rule::Cut: cut = true; break;
      case Rule::BoxCut: boxcut = true; break;
      default: break;
    }
    (void)classical_only;
  }
  if (lp) return CalculusVariant::G3lp;
  if (boxcut) return CalculusVariant::G3sBoxCut;
  if (cut) return CalculusVariant::G3sCut;
  return CalculusVariant::G3sFull;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prehist: sequent proofs, prehistoric relations, self-referentiality"};
  app.require_subcommand(1);
  std::string calculus = "g3s-full", axiom_mode = "tautology", schema_file, format = "json";
  std::string mode = "g3s-principal";
  bool cycle_free = false, no_constants = false, left_only = false;
  int depth = 64;

  // parse
  auto* cmd_parse = app.add_subcommand("parse", "parse a formula and print its canonical form");
  std::string parse_lang = "modal", parse_text;
  cmd_parse->add_option("--lang", parse_lang, "modal|lp")->capture_default_str();
  cmd_parse->add_option("text", parse_text, "formula text")->required();

  // check
  auto* cmd_check = app.add_subcommand("check", "validate a proof file");
  std::string check_file;
  cmd_check->add_option("proof", check_file, "proof JSON file (- for stdin)")->required();
  cmd_check->add_option("--calculus", calculus, "g3s-min|g3s-full|g3s-cut|g3s-boxcut|g3lp")
      ->capture_default_str();
  cmd_check->add_option("--axiom-mode", axiom_mode, "tautology|schema-list")->capture_default_str();
  cmd_check->add_option("--schemas", schema_file, "schema list JSON for schema-list mode");

  // annotate
  auto* cmd_annotate = app.add_subcommand("annotate", "annotate a cut-free G3s proof");
  std::string annotate_file;
  cmd_annotate->add_option("proof", annotate_file)->required();

  // graph
  auto* cmd_graph = app.add_subcommand("graph", "prehistoric-relation graph of a proof");
  std::string graph_file;
  cmd_graph->add_option("proof", graph_file)->required();
  cmd_graph->add_option("--mode", mode, "g3s-principal|all-box|lp-term|labeled")
      ->capture_default_str();
  cmd_graph->add_option("--format", format, "json|dot")->capture_default_str();

  // cycle
  auto* cmd_cycle = app.add_subcommand("cycle", "find a prehistoric cycle");
  std::string cycle_file;
  cmd_cycle->add_option("proof", cycle_file)->required();
  cmd_cycle->add_option("--mode", mode, "g3s-principal|all-box|lp-term|labeled")
      ->capture_default_str();
  cmd_cycle->add_flag("--left-only", left_only, "restrict to left prehistoric relations");

  // prove
  auto* cmd_prove = app.add_subcommand("prove", "backward proof search");
  std::string prove_calculus = "g3s", prove_text, out_file;
  cmd_prove->add_option("sequent", prove_text, "sequent text, e.g. \"=> ~[](P & ~[]P)\"")
      ->required();
  cmd_prove->add_option("--calculus", prove_calculus, "g3s|g3lp")->capture_default_str();
  cmd_prove->add_flag("--cycle-free", cycle_free, "search for a prehistoric-cycle-free proof");
  cmd_prove->add_flag("--no-constants", no_constants, "G3lp: disable (=> :)c");
  cmd_prove->add_option("--depth", depth, "G3lp depth bound")->capture_default_str();
  cmd_prove->add_option("--out", out_file, "write the proof JSON to a file");
  cmd_prove->add_option("--axiom-mode", axiom_mode, "tautology|schema-list")->capture_default_str();
  cmd_prove->add_option("--schemas", schema_file, "schema list JSON");

  // transforms
  auto* cmd_elim_cut = app.add_subcommand("elim-cut", "eliminate every (Cut) in a proof");
  std::string elim_file;
  cmd_elim_cut->add_option("proof", elim_file)->required();
  auto* cmd_elim_boxcut = app.add_subcommand("elim-boxcut", "eliminate every ([]Cut) in a proof");
  std::string elim_box_file;
  cmd_elim_boxcut->add_option("proof", elim_box_file)->required();
  auto* cmd_double_box = app.add_subcommand("double-box", "replace []A by [][]A at a succedent occurrence");
  std::string double_file;
  int double_index = 0;
  cmd_double_box->add_option("proof", double_file)->required();
  cmd_double_box->add_option("--index", double_index, "succedent occurrence index")
      ->capture_default_str();
  auto* cmd_project = app.add_subcommand("project", "forgetful projection of a G3lp proof");
  std::string project_file;
  cmd_project->add_option("proof", project_file)->required();
  cmd_project->add_option("--axiom-mode", axiom_mode, "tautology|schema-list")->capture_default_str();
  cmd_project->add_option("--schemas", schema_file, "schema list JSON");

  // lp analysis
  auto* cmd_inputs = app.add_subcommand("inputs", "input set of a G3lp proof");
  std::string inputs_file;
  cmd_inputs->add_option("proof", inputs_file)->required();
  auto* cmd_selfref = app.add_subcommand("selfref", "classify a set of justified formulas");
  std::vector<std::string> selfref_formulas;
  std::string selfref_file;
  cmd_selfref->add_option("formulas", selfref_formulas, "formulas t:A");
  cmd_selfref->add_option("--proof", selfref_file, "take the input set of this G3lp proof");
  auto* cmd_realize = app.add_subcommand("realize-apply", "apply a realization function");
  std::string realize_map, realize_text;
  cmd_realize->add_option("--map", realize_map, "JSON file {\"p0\": \"t*x\", ...}")->required();
  cmd_realize->add_option("formula", realize_text, "annotated modal formula")->required();
  auto* cmd_hilbert = app.add_subcommand("check-hilbert", "check a Hilbert-style LP derivation");
  std::string hilbert_file;
  cmd_hilbert->add_option("derivation", hilbert_file)->required();
  cmd_hilbert->add_option("--axiom-mode", axiom_mode, "tautology|schema-list")->capture_default_str();
  cmd_hilbert->add_option("--schemas", schema_file, "schema list JSON");

  // kripke
  auto* cmd_kripke = app.add_subcommand("kripke", "Kripke model evaluation");
  std::string kripke_action = "eval", kripke_model, kripke_world = "w", kripke_formula;
  cmd_kripke->add_option("action", kripke_action, "eval|s4check")->required();
  cmd_kripke->add_option("model", kripke_model, "model JSON file")->required();
  cmd_kripke->add_option("--world", kripke_world, "world name")->capture_default_str();
  cmd_kripke->add_option("--formula", kripke_formula, "modal formula");

  auto* cmd_selftest = app.add_subcommand("selftest", "run the acceptance suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_parse) {
      Language lang = parse_lang == "lp" ? Language::Lp : Language::Modal;
      const Formula* f = parse_formula(parse_text, lang);
      json j;
      j["format"] = "prehist/1";
      j["canonical"] = render(f);
      j["minimal"] = render(desugar(f));
      if (lang == Language::Lp) j["forgetful"] = render(forgetful(f));
      return emit(j);
    }
    if (*cmd_check) {
      Proof p = proof_from_json(slurp(check_file));
      ValidationReport rep = check_proof(p, variant_arg(calculus), axiom_arg(axiom_mode, schema_file));
      json j;
      j["format"] = "prehist/1";
      j["valid"] = rep.ok;
      json issues = json::array();
      for (const auto& i : rep.issues)
        issues.push_back({{"node", i.node}, {"message", i.message}});
      j["issues"] = issues;
      emit(j);
      return rep.ok ? kYes : kNo;
    }
    if (*cmd_annotate) {
      Proof p = proof_from_json(slurp(annotate_file));
      AnnotatedProof ap = classify_and_annotate(p, CalculusVariant::G3sFull);
      json j;
      j["format"] = "prehist/1";
      j["proof"] = proof_json(ap.proof, Language::Modal)["proof"];
      json fams = json::array();
      for (const auto& fi : ap.analysis.families)
        fams.push_back({{"name", fi.name}, {"sample", render(erase_annotations(fi.sample))}});
      j["families"] = fams;
      return emit(j);
    }
    if (*cmd_graph || *cmd_cycle) {
      std::string file = *cmd_graph ? graph_file : cycle_file;
      Proof p = proof_from_json(slurp(file));
      CalculusVariant v = guess_variant(p);
      GraphMode m = mode_arg(mode);
      if (m == GraphMode::G3sPrincipal &&
          (v == CalculusVariant::G3sCut || v == CalculusVariant::G3sBoxCut))
        throw std::invalid_argument("g3s-principal mode needs a cut-free proof");
      PrehistoricGraph g = prehistoric_graph(p, m, v);
      if (*cmd_graph) {
        if (format == "dot") {
          std::cout << g.to_dot();
          return kYes;
        }
        return emit(graph_json(g));
      }
      auto cyc = find_cycle(g, left_only);
      json j;
      j["format"] = "prehist/1";
      if (cyc) {
        json names = json::array();
        for (int vtx : *cyc) names.push_back(g.vertex_names[size_t(vtx)]);
        j["cycle"] = names;
        emit(j);
        return kYes;
      }
      j["cycle"] = nullptr;
      emit(j);
      return kNo;
    }
    if (*cmd_prove) {
      json j;
      j["format"] = "prehist/1";
      SearchResult r;
      if (prove_calculus == "g3lp") {
        Sequent s = parse_sequent(prove_text, Language::Lp);
        G3lpOptions opts;
        opts.forbid_const_intro = no_constants;
        opts.depth_bound = depth;
        opts.ax = axiom_arg(axiom_mode, schema_file);
        r = search_g3lp(s, opts);
      } else {
        Sequent s = parse_sequent(prove_text, Language::Modal);
        r = cycle_free ? find_cycle_free_proof(s) : decide_g3s(s);
      }
      j["result"] = search_result_name(r.kind);
      j["expanded"] = r.stats.expanded;
      j["loop_hits"] = r.stats.loop_hits;
      if (r.proof) j["proof"] = proof_json(*r.proof, Language::Modal)["proof"];
      if (!out_file.empty() && r.proof) {
        std::ofstream out(out_file);
        out << proof_to_json(*r.proof,
                             prove_calculus == "g3lp" ? Language::Lp : Language::Modal);
      }
      emit(j);
      switch (r.kind) {
        case SearchResult::Kind::Proved:
        case SearchResult::Kind::CycleFreeProved:
          return kYes;
        case SearchResult::Kind::BoundExceeded:
          return kBound;
        default:
          return kNo;
      }
    }
    if (*cmd_elim_cut || *cmd_elim_boxcut) {
      std::string file = *cmd_elim_cut ? elim_file : elim_box_file;
      Proof p = proof_from_json(slurp(file));
      TransformReport rep = *cmd_elim_cut ? eliminate_cuts(p) : eliminate_boxcuts(p);
      json j;
      j["format"] = "prehist/1";
      j["proof"] = proof_json(rep.output, Language::Modal)["proof"];
      j["input_graph"] = graph_json(rep.input_graph);
      j["output_graph"] = graph_json(rep.output_graph);
      j["input_cyclic"] = rep.input_cyclic;
      j["output_cyclic"] = rep.output_cyclic;
      json steps = json::array();
      for (const auto& st : rep.steps) {
        json edges = json::array();
        for (const auto& e : st.new_edges)
          edges.push_back({{"from", e.from}, {"to", e.to}, {"via", e.via}, {"justified", e.justified}});
        steps.push_back({{"new_edges", edges}, {"all_justified", st.all_justified}});
      }
      j["steps"] = steps;
      return emit(j);
    }
    if (*cmd_double_box) {
      Proof p = proof_from_json(slurp(double_file));
      Proof out = double_box(p, double_index);
      json j;
      j["format"] = "prehist/1";
      j["proof"] = proof_json(out, Language::Modal)["proof"];
      return emit(j);
    }
    if (*cmd_project) {
      Proof p = proof_from_json(slurp(project_file));
      ProjectionReport rep = project_proof(p, axiom_arg(axiom_mode, schema_file));
      json j;
      j["format"] = "prehist/1";
      j["proof"] = proof_json(rep.output, Language::Modal)["proof"];
      json fam;
      for (auto& [cls, labels] : rep.family_map) {
        json ls = json::array();
        for (int l : labels) ls.push_back("t" + std::to_string(l));
        fam["f" + std::to_string(cls)] = ls;
      }
      j["family_map"] = fam;
      j["map_total"] = rep.map_total;
      j["map_single_valued"] = rep.map_single_valued;
      j["edge_map_ok"] = rep.edge_map_ok;
      j["source_graph"] = graph_json(rep.source_graph);
      j["output_graph"] = graph_json(rep.output_graph);
      return emit(j);
    }
    if (*cmd_inputs) {
      Proof p = proof_from_json(slurp(inputs_file));
      ValidationReport vr = check_proof(p, CalculusVariant::G3lp);
      if (!vr.ok) throw std::invalid_argument("not a valid G3lp proof: " + vr.summary());
      json j;
      j["format"] = "prehist/1";
      json arr = json::array();
      for (const auto& e : inputs_of(p)) {
        json sources = json::array();
        if (e.from_term_rule) sources.push_back("term");
        if (e.from_const_rule) sources.push_back("const");
        arr.push_back({{"formula", render(e.formula)}, {"sources", sources}});
      }
      j["inputs"] = arr;
      return emit(j);
    }
    if (*cmd_selfref) {
      std::vector<const Formula*> entries;
      if (!selfref_file.empty()) {
        Proof p = proof_from_json(slurp(selfref_file));
        for (const auto& e : inputs_of(p)) entries.push_back(e.formula);
      }
      for (const auto& t : selfref_formulas) entries.push_back(parse_formula(t, Language::Lp));
      SelfRefVerdict v = classify_selfref(entries);
      json j;
      j["format"] = "prehist/1";
      j["verdict"] = v.kind == SelfRefKind::Direct ? "directly-self-referential"
                   : v.kind == SelfRefKind::Cyclic ? "self-referential"
                                                   : "non-self-referential";
      json w = json::array();
      for (auto* f : v.witness) w.push_back(render(f));
      j["witness"] = w;
      emit(j);
      return v.kind == SelfRefKind::NonSelfReferential ? kNo : kYes;
    }
    if (*cmd_realize) {
      RealizationFunction rf = RealizationFunction::from_json(slurp(realize_map));
      const Formula* f = parse_formula(realize_text, Language::Modal);
      const Formula* out = apply_realization(rf, f);
      json j;
      j["format"] = "prehist/1";
      j["formula"] = render(out);
      j["forgetful"] = render(forgetful(out));
      return emit(j);
    }
    if (*cmd_hilbert) {
      auto [steps, assumptions] = hilbert_from_json(slurp(hilbert_file));
      HilbertReport rep = check_hilbert(steps, assumptions, axiom_arg(axiom_mode, schema_file));
      json j;
      j["format"] = "prehist/1";
      j["valid"] = rep.ok;
      j["issues"] = rep.issues;
      json cs = json::array();
      for (auto* f : rep.generated_cs) cs.push_back(render(f));
      j["constant_specification"] = cs;
      emit(j);
      return rep.ok ? kYes : kNo;
    }
    if (*cmd_kripke) {
      KripkeModel m = KripkeModel::from_json(slurp(kripke_model));
      json j;
      j["format"] = "prehist/1";
      if (kripke_action == "s4check") {
        bool ok = is_s4_frame(m);
        j["s4_frame"] = ok;
        emit(j);
        return ok ? kYes : kNo;
      }
      if (kripke_formula.empty()) throw std::invalid_argument("kripke eval needs --formula");
      const Formula* f = parse_formula(kripke_formula, Language::Modal);
      bool v = eval(m, kripke_world, f);
      j["value"] = v;
      emit(j);
      return v ? kYes : kNo;
    }
    if (*cmd_selftest) {
      int failures = print_acceptance(std::cout);
      return failures == 0 ? kYes : kNo;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBad;
  }
  return kBad;
}
