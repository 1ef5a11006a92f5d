import prehist


def test_parse_roundtrip():
    assert prehist.parse("~ [] (P & ~ [] P)") == "~[](P & ~[]P)"
    assert prehist.parse("x:(P & ~ (t*x):P)", "lp") == "x:(P & ~(t*x):P)"
    assert prehist.desugar("P & Q") == "(P -> Q -> bot) -> bot"
    assert prehist.forgetful("x:(P & ~(t*x):P)") == "[](P & ~[]P)"


def test_prove_and_check():
    r = prehist.prove("=> ~[](P & ~[]P)")
    assert r["result"] == "proved"
    chk = prehist.check(r["proof"], "g3s-full")
    assert chk["valid"]


def test_cycle_free_counterexample():
    goal = "=> [](P & ~[]P -> P) -> ~[](P & ~[]P)"
    assert prehist.prove(goal)["result"] == "proved"
    assert prehist.prove_cycle_free(goal)["result"] == "no-cycle-free-proof"


def test_g3lp_and_analyses():
    r = prehist.prove_g3lp("=> ~x:(P & ~(t*x):P)")
    assert r["result"] == "proved"
    ins = prehist.inputs(r["proof"])
    assert any(e["from_const_rule"] for e in ins)
    cyc = prehist.find_cycle(r["proof"], "lp-term", "g3lp")
    assert cyc is not None
    proj = prehist.project(r["proof"])
    assert proj["map_total"] and proj["map_single_valued"]


def test_annotate_and_graph():
    r = prehist.prove("=> ~[](P & ~[]P)")
    ann = prehist.annotate(r["proof"])
    names = {f["name"] for f in ann["families"]}
    assert names == {"n0", "p0"}
    cyc = prehist.find_cycle(r["proof"])
    assert cyc == ["p0"]


def test_selfref_and_kripke():
    v = prehist.classify_selfref(["t:(P & ~(t*x):P -> P)"])
    assert v["verdict"] == "direct"
    model = {"worlds": ["w"], "relation": [["w", "w"]], "valuation": {"P": []}}
    assert not prehist.kripke_eval(model, "w", "[](P & ~[]P -> P) -> P")
    assert prehist.kripke_eval(model, "w", "[](P & ~[]P -> P)")
