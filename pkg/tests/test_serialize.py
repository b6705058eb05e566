import json

import pytest

from graphcodes.bch import build_columns, certify_strength
from graphcodes.constructions import (
    ExplicitGraphCode,
    clique_linear_code,
    doubled_clique_certificate,
    small_clique_code,
    star_code,
)
from graphcodes.errors import DomainError
from graphcodes.families import AllCliques, CliquesUpTo, Explicit, IsoCopiesOf, Matching, Star
from graphcodes.graph import LabeledGraph
from graphcodes.search import max_code_exact, min_codim_exact
from graphcodes.serialize import (
    certificate_from_json,
    certificate_to_json,
    code_from_json,
    code_to_json,
    columnset_from_json,
    columnset_to_json,
    dumps,
    graph_from_json,
    graph_to_json,
    graphs_from_json,
    mode_from_json,
    mode_to_json,
    parse_family,
    report_to_json,
    result_to_json,
)
from graphcodes.verification import EXHAUSTIVE, Sampled, verify_code


def roundtrip(obj):
    return json.loads(dumps(obj))


def test_graph_roundtrip():
    g = LabeledGraph.from_edges(6, [(4, 1), (0, 5)])
    obj = roundtrip(graph_to_json(g))
    assert obj == {"n": 6, "edges": [[0, 5], [1, 4]]}
    assert graph_from_json(obj) == g


@pytest.mark.parametrize("bad", [
    {"n": 3, "edges": [[0, 1], [1, 0]]},
    {"n": 3, "edges": [[0, 3]]},
    {"n": 3, "edges": [[1, 1]]},
    {"n": 3, "edges": [[0]]},
    {"n": 3, "edges": [[0, True]]},
    {"n": "3", "edges": []},
    {"n": 0, "edges": []},
    [1, 2],
])
def test_graph_reader_rejects(bad):
    with pytest.raises(DomainError):
        graph_from_json(bad)


def test_graph_list_shapes():
    g = {"n": 3, "edges": [[0, 1]]}
    assert len(graphs_from_json(g)) == 1
    assert len(graphs_from_json([g, g])) == 2
    assert len(graphs_from_json({"graphs": [g]})) == 1
    assert len(graphs_from_json({"copies": [g, g, g]})) == 3


@pytest.mark.parametrize("code", [clique_linear_code(9), star_code(12, 2), small_clique_code(7, 1)],
                         ids=["clique", "star", "small"])
def test_linear_code_roundtrip(code):
    back = code_from_json(roundtrip(code_to_json(code)))
    assert back == code and back.provenance == code.provenance
    assert back.codim == code.codim


def test_explicit_code_roundtrip():
    members = (LabeledGraph.empty(4), LabeledGraph.from_edges(4, [(0, 1), (2, 3)]))
    code = ExplicitGraphCode(4, members)
    assert code_from_json(roundtrip(code_to_json(code))) == code


def test_code_reader_rejects_overlong_row():
    obj = code_to_json(clique_linear_code(4))
    obj["parity_rows"][0] = "ff"  # 8 bits for 6 edges
    with pytest.raises(DomainError):
        code_from_json(obj)
    obj["type"] = "mystery"
    with pytest.raises(DomainError):
        code_from_json(obj)


def test_columnset_roundtrip():
    cs = build_columns(5, 2, True)
    rep = certify_strength(cs)
    obj = roundtrip(columnset_to_json(cs, rep))
    assert columnset_from_json(obj) == cs
    assert obj["certification"]["violations"] == []


def test_certificate_roundtrip_and_tamper():
    cert = doubled_clique_certificate(LabeledGraph.from_edges(3, [(0, 1), (1, 2)]), [0], 9)
    obj = roundtrip(certificate_to_json(cert))
    assert obj["bound"] == "1/4" and obj["m"] == 4
    assert certificate_from_json(obj) == cert
    obj["copies"][0]["edges"] = [[0, 1]]
    with pytest.raises(DomainError):
        certificate_from_json(obj)


def test_mode_roundtrip():
    for mode in (EXHAUSTIVE, Sampled(7, 123)):
        assert mode_from_json(roundtrip(mode_to_json(mode))) == mode


def test_report_and_result_are_deterministic():
    rep = verify_code(star_code(6, 1), Matching(2))
    assert dumps(report_to_json(rep)) == dumps(report_to_json(verify_code(star_code(6, 1), Matching(2))))
    r1 = max_code_exact(3, Star(2))
    r2 = max_code_exact(3, Star(2))
    assert dumps(result_to_json(r1, Star(2))) == dumps(result_to_json(r2, Star(2)))
    assert "elapsed" not in dumps(result_to_json(r1))
    back = code_from_json(roundtrip(result_to_json(min_codim_exact(4, AllCliques())))["witness"])
    assert back.codim == 2


def test_parse_family_grammar(tmp_path):
    assert parse_family("star:3") == Star(3)
    assert parse_family("matching:2") == Matching(2)
    assert parse_family("cliques") == AllCliques()
    assert parse_family("cliques<=7") == CliquesUpTo(7)
    tri = LabeledGraph.from_edges(3, [(0, 1), (0, 2), (1, 2)])
    (tmp_path / "tri.json").write_text(dumps(graph_to_json(tri)))
    assert parse_family("iso:tri.json", tmp_path) == IsoCopiesOf(tri)
    (tmp_path / "ex.json").write_text(dumps([graph_to_json(tri)]))
    assert parse_family("explicit:ex.json", tmp_path) == Explicit((tri,))
    for bad in ("star:", "star:x", "wheel:3", "cliques<=", ""):
        with pytest.raises(DomainError):
            parse_family(bad)


def test_descriptors_parse_back():
    for fam in (Star(2), Matching(4), AllCliques(), CliquesUpTo(5)):
        assert parse_family(fam.descriptor()) == fam
