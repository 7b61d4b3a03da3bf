from __future__ import annotations

import json

import pytest

from paritygraph import CompiledHypergraph, Graph, Hypergraph, InputError
from paritygraph.cli import main, parse_problem, parse_problem_spec

from cases import BOWTIE_A, BOWTIE_B, DIAMOND, DIAMOND_TAIL, complete_bipartite


def write(tmp_path, name, h: Hypergraph) -> str:
    path = tmp_path / name
    path.write_text(json.dumps(h.to_json()))
    return str(path)


def run(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_five_spin_all_to_all():
    text = "\n".join(f"1.0 s{i} s{j}" for i in range(1, 6) for j in range(i + 1, 6))
    g = parse_problem(text)
    assert len(g.vertices) == 5 and len(g.edges) == 10


def test_parse_trivial_inputs():
    assert parse_problem("") == Graph()
    g = parse_problem("x1 x2; x2 x3")
    assert g == Graph.from_edges([(1, 2), (2, 3)])


def test_parse_numeric_ids_kept():
    assert parse_problem("-0.5 3 7\n2 7 9") == Graph.from_edges([(3, 7), (7, 9)])


def test_parse_errors_and_notices():
    with pytest.raises(InputError):
        parse_problem("a a")
    with pytest.raises(InputError):
        parse_problem("1.0 a")
    with pytest.raises(InputError):
        parse_problem("a b c d")
    spec = parse_problem_spec("a b\nb a  # same term\n2.5 b c")
    assert len(spec.terms) == 2
    assert any("duplicate" in n for n in spec.notices)
    assert any("coefficient" in n for n in spec.notices)


def test_rect_compile_k45(tmp_path, capsys):
    code, out, _ = run(capsys, "rect-compile", write(tmp_path, "k45.json", complete_bipartite(4, 5)))
    data = json.loads(out)
    assert code == 0 and (data["m"], data["n"]) == (4, 5) and len(data["plaquettes"]) == 12


def test_rect_compile_ascii(tmp_path, capsys):
    code, out, _ = run(capsys, "rect-compile", "--ascii", write(tmp_path, "k23.json", complete_bipartite(2, 3)))
    assert code == 0 and out.count("#") == 2


def test_rect_compile_triangle(tmp_path, capsys):
    path = tmp_path / "triangle.ising"
    path.write_text("1 a b\n1 b c\n1 a c\n")
    code, _, err = run(capsys, "rect-compile", str(path))
    assert code == 1 and "not complete bipartite" in err


def test_par_equal(tmp_path, capsys):
    a = write(tmp_path, "a.json", DIAMOND)
    b = write(tmp_path, "b.json", DIAMOND_TAIL)
    code, out, _ = run(capsys, "par-equal", a, b)
    assert code == 0 and out.strip() == "equal"
    c = write(tmp_path, "c.json", complete_bipartite(2, 3))
    code, out, _ = run(capsys, "par-equal", a, c)
    assert code == 1 and out.strip() == "not equal"


def test_iso(tmp_path, capsys):
    a = write(tmp_path, "a.json", BOWTIE_A)
    b = write(tmp_path, "b.json", BOWTIE_B)
    assert run(capsys, "iso", a, b)[0] == 1
    moved = write(tmp_path, "m.json", BOWTIE_A.relabel({v: v + 10 for v in BOWTIE_A.vertices}))
    code, out, err = run(capsys, "iso", a, moved)
    assert code == 0 and out.strip() == "isomorphic"
    mapping = {int(k): v for k, v in json.loads(err).items()}
    assert BOWTIE_A.relabel(mapping) == Hypergraph.from_json(json.loads((tmp_path / "m.json").read_text()))


def test_cycles_and_constraints(tmp_path, capsys):
    code, out, _ = run(capsys, "cycles", write(tmp_path, "d.json", DIAMOND))
    assert code == 0 and json.loads(out)["dim"] == 2
    h = Hypergraph(range(1, 5), [(1, 2, 3, 4), (1, 2), (3, 4)])
    code, out, _ = run(capsys, "constraints", write(tmp_path, "h.json", h))
    assert code == 0 and json.loads(out)["dim"] == 1


def test_compile_and_preimage_pipeline(tmp_path, capsys):
    src = write(tmp_path, "k33.json", complete_bipartite(3, 3))
    code, out, _ = run(capsys, "compile", src)
    assert code == 0
    compiled = CompiledHypergraph.from_json(json.loads(out))
    assert compiled.to_json() == json.loads(out)
    layout = tmp_path / "layout.json"
    layout.write_text(out)
    code, out, _ = run(capsys, "preimage", str(layout))
    data = json.loads(out)
    assert code == 0 and data["exhaustive"] and len(data["graphs"]) == 1
    g = Graph.from_json(data["graphs"][0])
    assert len(g.vertices) == 6 and len(g.edges) == 9


def test_compile_by_index(tmp_path, capsys):
    src = write(tmp_path, "d.json", DIAMOND)
    outs = set()
    for k in range(3):
        code, out, _ = run(capsys, "compile", "--basis", str(k), src)
        assert code == 0
        outs.add(out)
    assert len(outs) == 3
    assert run(capsys, "compile", "--basis", "3", src)[0] == 2
    assert run(capsys, "compile", "--basis", "x", src)[0] == 2


def test_compiled_set_and_cap(tmp_path, capsys):
    src = write(tmp_path, "d.json", DIAMOND)
    code, out, _ = run(capsys, "compiled-set", src)
    assert code == 0 and len(json.loads(out)["classes"]) == 2
    code, out, _ = run(capsys, "--threads", "2", "compiled-set", "--cap", "1", src)
    assert code == 3 and not json.loads(out)["exhaustive"]


def test_input_errors(tmp_path, capsys):
    assert run(capsys, "cycles", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "cycles", str(bad))[0] == 2
    hyper = write(tmp_path, "h.json", Hypergraph(range(1, 4), [(1, 2, 3)]))
    assert run(capsys, "cycles", hyper)[0] == 2
    short = write(tmp_path, "s.json", Hypergraph(range(1, 4), [(1, 2), (1, 2, 3)]))
    assert run(capsys, "preimage", short)[0] == 2


def test_preimage_label_guard(tmp_path, capsys):
    chain = Hypergraph(range(1, 11), [(1, 2, 3, 4), (2, 5, 6, 7), (6, 8, 9, 10)])
    code, _, err = run(capsys, "preimage", "--max-labels", "4", write(tmp_path, "c.json", chain))
    assert code == 3 and "max_labels" in err


def test_json_outputs_reparse(tmp_path, capsys):
    src = write(tmp_path, "k23.json", complete_bipartite(2, 3))
    for cmd in (["cycles"], ["compile"], ["compiled-set"], ["rect-compile"]):
        code, out, _ = run(capsys, *cmd, src)
        assert code == 0
        data = json.loads(out)
        assert json.loads(json.dumps(data)) == data
