from fractions import Fraction

import pytest

import gridlab


def star(leaves):
    return gridlab.Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def test_extract_and_verify():
    rep = gridlab.Representation()
    rep.add("H", 0, 0)
    rep.add("V", Fraction(1, 2), Fraction(-1, 2))
    rep.add("V", 3, 0)
    g = gridlab.extract_graph(rep)
    assert g.edges() == [(0, 1)]
    assert gridlab.verify(rep, g) == []
    assert gridlab.verify(rep, gridlab.Graph(3, [(0, 2)]))
    assert gridlab.boundary_size(rep) == Fraction(9, 2)


def test_text_round_trip():
    rep = gridlab.Representation()
    rep.add("H", Fraction(1, 3), Fraction(-2, 7))
    rep.add("V", "1/2", 0)
    text = gridlab.emit_rep(rep)
    assert gridlab.parse_rep(text) == rep
    assert rep.segments()[0] == ("H", Fraction(1, 3), Fraction(-2, 7), Fraction(1))
    with pytest.raises(gridlab.ParseError):
        gridlab.parse_rep("0 H 0.5 0 1\n")
    with pytest.raises(gridlab.ParseError):
        gridlab.parse_graph("2 2\n0 1\n1 0\n")


def test_recognize_and_canonicalize():
    res = gridlab.recognize_ugig(star(4))
    assert res["outcome"] == "accept"
    rep = res["rep"]
    assert gridlab.verify(rep, star(4)) == []
    canon = gridlab.canonicalize(rep)
    assert gridlab.check_canonical(canon) == []
    assert gridlab.extract_graph(canon) == star(4)
    assert gridlab.recognize_ugig(gridlab.Graph(3, [(0, 1), (1, 2), (0, 2)]))["outcome"] == "reject"
    assert gridlab.recognize_ugig(star(4), node_budget=3)["outcome"] == "budget-exceeded"
    assert gridlab.recognize_gig(star(6))["outcome"] == "accept"


def test_reduction_and_synthesis():
    inst = gridlab.parse_instance(
        "p cnf 3 1\nx relaxed\n1 -2 3 0\nf 1 0 0\ne 1 0 1\ne 2 1 -1\ne 3 -1 -1\n"
    )
    assert inst.clauses == [[1, -2, 3]]
    graph, roles = gridlab.build_gf(inst, 300)
    assert gridlab.girth(graph) is None or gridlab.girth(graph) >= 300
    assert len(roles) == len(graph)
    rep = gridlab.synth(inst, 300, [True, True, False])
    assert gridlab.verify(rep, graph) == []
    with pytest.raises(gridlab.UnsatisfiableAssignment):
        gridlab.synth(inst, 300, [False, True, False])
    assert sum(gridlab.clause_ordering_feasible(t) for t in range(8)) == 7


def test_tree_and_svg():
    t2 = gridlab.gen_tree(2)
    assert t2.degree(0) == 33
    assert len(t2) == 67
    rep = gridlab.Representation()
    rep.add("H", Fraction(1, 4), Fraction(1, 2))
    svg = gridlab.render_svg(rep)
    assert svg.count("<line ") == 1
    assert 'x1="16" y1="-32" x2="80" y2="-32"' in svg
    assert gridlab.render_svg(rep) == svg
    assert gridlab.render_svg(gridlab.Representation()).startswith("<svg")
