#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "prehist/correspond.hpp"
#include "prehist/families.hpp"
#include "prehist/lp_analysis.hpp"
#include "prehist/prover.hpp"
#include "prehist/selftest.hpp"
#include "prehist/semantics.hpp"
#include "prehist/transforms.hpp"

namespace py = pybind11;
using namespace prehist;
using nlohmann::json;

namespace {

py::object json_to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return py::none();
    case json::value_t::boolean: return py::bool_(j.get<bool>());
    case json::value_t::number_integer: return py::int_(j.get<long long>());
    case json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
    case json::value_t::number_float: return py::float_(j.get<double>());
    case json::value_t::string: return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const auto& e : j) out.append(json_to_py(e));
      return out;
    }
    case json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it) out[py::str(it.key())] = json_to_py(it.value());
      return out;
    }
    default: return py::none();
  }
}

Language lang_arg(const std::string& s) { return s == "lp" ? Language::Lp : Language::Modal; }

Proof proof_arg(const py::object& p) {
  if (py::isinstance<py::str>(p)) return proof_from_json(p.cast<std::string>());
  py::object dumps = py::module_::import("json").attr("dumps");
  return proof_from_json(dumps(p).cast<std::string>());
}

py::object proof_out(const Proof& p, Language lang) {
  return json_to_py(json::parse(proof_to_json(p, lang)));
}

py::object search_out(const SearchResult& r, Language lang) {
  json j;
  j["result"] = search_result_name(r.kind);
  j["expanded"] = r.stats.expanded;
  py::dict out = json_to_py(j);
  if (r.proof) out["proof"] = proof_out(*r.proof, lang);
  return out;
}

}  // namespace

PYBIND11_MODULE(_prehist, m) {
  m.doc() = "sequent proofs for S4/LP, prehistoric relations, self-referentiality";

  m.def("parse", [](const std::string& text, const std::string& lang) {
    return render(parse_formula(text, lang_arg(lang)));
  }, py::arg("text"), py::arg("lang") = "modal",
     "Parse a formula and return its canonical rendering.");

  m.def("desugar", [](const std::string& text, const std::string& lang) {
    return render(desugar(parse_formula(text, lang_arg(lang))));
  }, py::arg("text"), py::arg("lang") = "modal");

  m.def("forgetful", [](const std::string& text) {
    return render(forgetful(parse_formula(text, Language::Lp)));
  }, py::arg("text"), "Forgetful projection of an LP formula.");

  m.def("prove", [](const std::string& sequent) {
    SearchResult r = decide_g3s(parse_sequent(sequent, Language::Modal));
    return search_out(r, Language::Modal);
  }, py::arg("sequent"), "Backward G3s proof search.");

  m.def("prove_cycle_free", [](const std::string& sequent) {
    SearchResult r = find_cycle_free_proof(parse_sequent(sequent, Language::Modal));
    return search_out(r, Language::Modal);
  }, py::arg("sequent"), "Exhaustive search for a prehistoric-cycle-free proof.");

  m.def("prove_g3lp", [](const std::string& sequent, bool no_constants, int depth) {
    G3lpOptions opts;
    opts.forbid_const_intro = no_constants;
    opts.depth_bound = depth;
    SearchResult r = search_g3lp(parse_sequent(sequent, Language::Lp), opts);
    return search_out(r, Language::Lp);
  }, py::arg("sequent"), py::arg("no_constants") = false, py::arg("depth") = 64);

  m.def("check", [](const py::object& proof, const std::string& calc) {
    Proof p = proof_arg(proof);
    auto v = variant_from_name(calc);
    if (!v) throw std::invalid_argument("unknown calculus: " + calc);
    ValidationReport rep = check_proof(p, *v);
    py::dict out;
    out["valid"] = rep.ok;
    py::list issues;
    for (const auto& i : rep.issues) issues.append(py::str(i.message));
    out["issues"] = issues;
    return out;
  }, py::arg("proof"), py::arg("calculus") = "g3s-full");

  m.def("annotate", [](const py::object& proof) {
    AnnotatedProof ap = classify_and_annotate(proof_arg(proof), CalculusVariant::G3sFull);
    py::dict out;
    out["proof"] = proof_out(ap.proof, Language::Modal);
    py::list fams;
    for (const auto& fi : ap.analysis.families) {
      py::dict d;
      d["name"] = fi.name;
      d["sample"] = render(erase_annotations(fi.sample));
      fams.append(d);
    }
    out["families"] = fams;
    return out;
  }, py::arg("proof"));

  m.def("graph", [](const py::object& proof, const std::string& mode, const std::string& calc) {
    Proof p = proof_arg(proof);
    auto v = variant_from_name(calc);
    if (!v) throw std::invalid_argument("unknown calculus: " + calc);
    GraphMode gm = mode == "all-box" ? GraphMode::AllBox
                 : mode == "lp-term" ? GraphMode::LpTerm
                 : mode == "labeled" ? GraphMode::Labeled
                                     : GraphMode::G3sPrincipal;
    return json_to_py(json::parse(prehistoric_graph(p, gm, *v).to_json()));
  }, py::arg("proof"), py::arg("mode") = "g3s-principal", py::arg("calculus") = "g3s-full");

  m.def("find_cycle", [](const py::object& proof, const std::string& mode,
                         const std::string& calc, bool left_only) -> py::object {
    Proof p = proof_arg(proof);
    auto v = variant_from_name(calc);
    if (!v) throw std::invalid_argument("unknown calculus: " + calc);
    GraphMode gm = mode == "all-box" ? GraphMode::AllBox
                 : mode == "lp-term" ? GraphMode::LpTerm
                 : mode == "labeled" ? GraphMode::Labeled
                                     : GraphMode::G3sPrincipal;
    PrehistoricGraph g = prehistoric_graph(p, gm, *v);
    auto c = find_cycle(g, left_only);
    if (!c) return py::none();
    py::list out;
    for (int vtx : *c) out.append(py::str(g.vertex_names[size_t(vtx)]));
    return out;
  }, py::arg("proof"), py::arg("mode") = "g3s-principal", py::arg("calculus") = "g3s-full",
     py::arg("left_only") = false);

  m.def("eliminate_cuts", [](const py::object& proof) {
    TransformReport rep = eliminate_cuts(proof_arg(proof));
    py::dict out;
    out["proof"] = proof_out(rep.output, Language::Modal);
    out["input_cyclic"] = rep.input_cyclic;
    out["output_cyclic"] = rep.output_cyclic;
    out["new_edges_justified"] = rep.all_new_edges_justified;
    return out;
  }, py::arg("proof"));

  m.def("eliminate_boxcuts", [](const py::object& proof) {
    TransformReport rep = eliminate_boxcuts(proof_arg(proof));
    py::dict out;
    out["proof"] = proof_out(rep.output, Language::Modal);
    out["input_cyclic"] = rep.input_cyclic;
    out["output_cyclic"] = rep.output_cyclic;
    return out;
  }, py::arg("proof"));

  m.def("project", [](const py::object& proof) {
    ProjectionReport rep = project_proof(proof_arg(proof));
    py::dict out;
    out["proof"] = proof_out(rep.output, Language::Modal);
    out["map_total"] = rep.map_total;
    out["map_single_valued"] = rep.map_single_valued;
    out["edge_map_ok"] = rep.edge_map_ok;
    return out;
  }, py::arg("proof"), "Forgetful projection of a G3lp proof into G3s+BoxCut.");

  m.def("inputs", [](const py::object& proof) {
    py::list out;
    for (const auto& e : inputs_of(proof_arg(proof))) {
      py::dict d;
      d["formula"] = render(e.formula);
      d["from_term_rule"] = e.from_term_rule;
      d["from_const_rule"] = e.from_const_rule;
      out.append(d);
    }
    return out;
  }, py::arg("proof"));

  m.def("classify_selfref", [](const std::vector<std::string>& formulas) {
    std::vector<const Formula*> entries;
    for (const auto& t : formulas) entries.push_back(parse_formula(t, Language::Lp));
    SelfRefVerdict v = classify_selfref(entries);
    py::dict out;
    out["verdict"] = v.kind == SelfRefKind::Direct ? "direct"
                   : v.kind == SelfRefKind::Cyclic ? "cyclic"
                                                   : "none";
    py::list w;
    for (auto* f : v.witness) w.append(render(f));
    out["witness"] = w;
    return out;
  }, py::arg("formulas"));

  m.def("kripke_eval", [](const py::object& model, const std::string& world,
                          const std::string& formula) {
    py::object dumps = py::module_::import("json").attr("dumps");
    KripkeModel m = KripkeModel::from_json(dumps(model).cast<std::string>());
    return eval(m, world, parse_formula(formula, Language::Modal));
  }, py::arg("model"), py::arg("world"), py::arg("formula"));

  m.def("selftest", []() {
    py::list out;
    for (const auto& r : run_acceptance()) {
      py::dict d;
      d["number"] = r.number;
      d["title"] = r.title;
      d["pass"] = r.pass;
      d["detail"] = r.detail;
      out.append(d);
    }
    return out;
  }, "Run the acceptance criteria; returns one record per criterion.");
}
