import io
import json
from fractions import Fraction

import pytest

from mpv import scenarios
from mpv.cli import main
from mpv.document import dump_config, emit, parse_config, parse_document
from mpv.errors import (DocumentSyntaxError, ExpressionSyntaxError,
                        ScalingError, SchemaError)
from mpv.exactring import RingElem, from_machine_dict
from mpv.parsing import parse_expression
from mpv.stratconfig import MotClass, closed_strata_input
from mpv.zetapv import pv

EX34A = {
    "dimension": 2, "denominator": 2,
    "components": [{"id": "C1", "alpha": "-1/2"}, {"id": "C2", "alpha": "-1/2"}],
    "strata": [
        {"subset": [], "class": {"L": "L^2 - L"}},
        {"subset": ["C1"], "class": {"L": "L"}},
        {"subset": ["C2"], "class": {"L": "L"}},
        {"subset": ["C1", "C2"], "class": {"L": "1"}},
    ],
}


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


# -- documents ----------------------------------------------------------------------

def test_parse_config_example34a():
    c = parse_config(json.dumps(EX34A))
    assert pv(c).expr == 0
    assert c == scenarios.example34a().with_strata(
        {k: MotClass(v.lpoly, None) for k, v in scenarios.example34a().open_strata.items()})


def test_parse_config_scaling_error():
    doc = dict(EX34A, strata=[{"subset": [], "class": {"L": "L^(1/3)"}}])
    with pytest.raises(ScalingError):
        parse_config(json.dumps(doc))
    doc = dict(EX34A, components=[{"id": "C1", "alpha": "1/3"}], strata=[])
    with pytest.raises(ScalingError):
        parse_config(json.dumps(doc))


def test_parse_config_empty_strata():
    c = parse_config(json.dumps(dict(EX34A, strata=[])))
    assert pv(c).expr == 0


def test_closed_strata_document():
    c = scenarios.example34b()
    doc = parse_document(dump_config(c, closed_strata_input(c)))
    assert doc.config == c
    assert doc.closed.strata == closed_strata_input(c).strata
    only_closed = json.loads(dump_config(c, closed_strata_input(c)))
    del only_closed["strata"]
    assert parse_config(json.dumps(only_closed)) == c
    bad = json.loads(dump_config(c, closed_strata_input(c)))
    bad["closed_strata"][0]["class"]["L"] = "L^2"
    with pytest.raises(SchemaError):
        parse_document(json.dumps(bad))


@pytest.mark.parametrize("text, exc", [
    ("{", DocumentSyntaxError),
    ("[]", SchemaError),
    ('{"dimension": 2}', SchemaError),
    ('{"dimension": 0, "denominator": 1}', SchemaError),
    ('{"dimension": 1, "denominator": 1, "extra": 1}', SchemaError),
    ('{"dimension": 1, "denominator": 1, "components": [{"id": "A", "alpha": "1", "nu": "1"}]}', SchemaError),
    ('{"dimension": 1, "denominator": 1, "components": [{"id": "A", "nu": "1"}]}', SchemaError),
    ('{"dimension": 1, "denominator": 1, "components": [{"id": "A", "alpha": "x"}]}', SchemaError),
    ('{"dimension": 1, "denominator": 1, "strata": [{"subset": ["Q"], "class": {"L": "1"}}]}', SchemaError),
    ('{"dimension": 1, "denominator": 1, "strata": [{"subset": [], "class": {"L": "L +"}}]}',
     ExpressionSyntaxError),
    ('{"dimension": 1, "denominator": 1, "strata": [{"subset": [], "class": {"L": "u"}}]}',
     ExpressionSyntaxError),
    ('{"dimension": 1, "denominator": 1, "strata": [{"subset": [], "class": {"L": "1/(L-1)"}}]}', SchemaError),
])
def test_bad_documents(text, exc):
    with pytest.raises(exc):
        parse_document(text)


def test_dump_parse_round_trip_on_scenarios():
    configs = [scenarios.example34a(), scenarios.example34b()]
    configs += [s.config for s in scenarios.figure2chain()]
    configs += [scenarios.random_config(s, resolution=True) for s in range(10)]
    configs += [scenarios.random_config(s, hodge="general") for s in range(10)]
    for c in configs:
        assert parse_config(dump_config(c)) == c


# -- emit -------------------------------------------------------------------------------

def test_emit_zero():
    assert emit(RingElem(0), 2) == "0"
    assert emit(RingElem(0), 2, "json") == '{"num": [], "den": [{"exp": {}, "coef": "1"}], "m": 2}'
    assert json.loads(emit(RingElem(0), 2, "json")) == {"num": [], "den": [{"exp": {}, "coef": "1"}], "m": 2}


def test_emit_example34b_json():
    d = json.loads(emit(pv(scenarios.example34b()).expr, 2, "json"))
    assert len(d["num"]) == 3
    assert len(d["den"]) == 1 and d["den"][0]["exp"] == {"t": 3}
    assert from_machine_dict(d) == pv(scenarios.example34b()).expr


def test_emit_default_is_pretty():
    assert emit(RingElem.var("t"), 2) == "L^(1/2)"


# -- commands -----------------------------------------------------------------------------

def test_scenario_example34b():
    code, out = run(["scenario", "example34b", "--format", "pretty"])
    assert code == 0
    assert out.strip() == "-(L + L^(1/2) + 1)/L^(3/2)"


def test_blowup_then_pv_reports_pole(tmp_path, capsys):
    cfg = write(tmp_path, "cfg.json", EX34A)
    s1 = str(tmp_path / "s1.json")
    s2 = str(tmp_path / "s2.json")
    assert run(["blowup", cfg, "--center", "curve:C2", "--out", s1])[0] == 0
    assert parse_config(open(s1).read()).component("C3").alpha == Fraction(1, 2)
    assert run(["blowup", s1, "--center", "point:C2,C3", "--out", s2])[0] == 0
    capsys.readouterr()
    code, out = run(["pv", s2])
    assert code == 3
    assert out == ""
    assert "C4" in capsys.readouterr().err


def test_pv_empty_divisor(tmp_path):
    doc = {"dimension": 2, "denominator": 1, "strata": [{"subset": [], "class": {"L": "L^2 + L + 1"}}]}
    code, out = run(["pv", write(tmp_path, "e.json", doc)])
    assert code == 0 and out.strip() == "(L^2 + L + 1)/L^2"


def test_pv_options(tmp_path):
    cfg = write(tmp_path, "b.json", dump_config(scenarios.example34b()))
    assert run(["pv", cfg, "--unnormalized"])[1].strip() == "-L^(3/2) - L - L^(1/2)"
    assert run(["pv", cfg, "--realization", "hodge"])[1].strip() == "-(uv + (uv)^(1/2) + 1)/(uv)^(3/2)"
    code, out = run(["pv", cfg, "--format", "json"])
    assert from_machine_dict(json.loads(out)) == pv(scenarios.example34b()).expr


def test_zeta_and_hodge_pv_commands(tmp_path):
    cfg = write(tmp_path, "b.json", dump_config(scenarios.example34b()))
    code, out = run(["zeta", cfg, "--s", "1"])
    assert code == 0 and out.strip() == "-(L + L^(1/2) + 1)/L^(3/2)"
    code, out = run(["zeta", cfg])
    assert code == 0 and "T" in out
    hodge = "-(uv + (uv)^(1/2) + 1)/(uv)^(3/2)"
    assert run(["hodge-pv", cfg])[1].strip() == hodge
    assert run(["hodge-pv", cfg, "--a", "2"])[1].strip() == hodge
    assert run(["hodge-pv", cfg, "--a", "1/2"])[0] == 4
    assert run(["hodge-pv", cfg, "--s", "0"])[0] == 4
    assert run(["hodge-pv", cfg, "--s", "1"])[0] == 0


def test_check_command(tmp_path):
    c = scenarios.example34a()
    cfg = write(tmp_path, "a.json", dump_config(c, closed_strata_input(c)))
    code, out = run(["check", cfg])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines and all(line.startswith("[PASS]") for line in lines)
    assert any("duality" in line for line in lines)
    code, out = run(["check", cfg, "--format", "json"])
    assert all(item["passed"] for item in json.loads(out))


def test_check_resolution_and_units(tmp_path):
    c = scenarios.augment_with_units(scenarios.random_config(4), 4)
    code, out = run(["check", write(tmp_path, "u.json", dump_config(c))])
    assert code == 0 and "deleting alpha = 1" in out
    c = scenarios.random_config(5, resolution=True)
    code, out = run(["check", write(tmp_path, "r.json", dump_config(c))])
    assert code == 0 and "nu + N" in out


def test_check_with_pole(tmp_path):
    s2 = scenarios.figure2chain()[2].config
    code, out = run(["check", write(tmp_path, "s2.json", dump_config(s2))])
    assert code == 3 and "[FAIL]" in out


def test_specialize(tmp_path):
    cfg = write(tmp_path, "b.json", dump_config(scenarios.example34b()))
    assert run(["specialize", cfg, "--L", "4"])[1].strip() == "-7/8"
    assert run(["specialize", cfg, "--uv", "4"])[1].strip() == "-7/8"
    assert json.loads(run(["specialize", cfg, "--L", "4", "--format", "json"])[1]) == {"value": "-7/8"}
    code, out = run(["specialize", cfg, "--L", "2"])
    assert code == 0 and abs(float(out) - (-(2 + 2 ** 0.5 + 1) / 2 ** 1.5)) < 1e-12
    assert run(["specialize", cfg])[0] == 4
    assert run(["specialize", cfg, "--L", "-4"])[0] == 4


def test_scenario_chain_and_figure1():
    code, out = run(["scenario", "figure2chain"])
    assert code == 0
    assert "S2: [C1: -3/2, C2: -3/2, C3: -1/2, C4: -1] -> PV not defined: C4" in out
    assert "P2 vs S1: PV equal" in out
    code, out = run(["scenario", "figure1mult"])
    assert code == 0 and "coefficient in div = 0" in out


def test_scenario_out_document(tmp_path):
    path = str(tmp_path / "p1.json")
    code, out = run(["scenario", "p1points", "--alphas", "3/2,1/2,-1", "--out", path])
    assert code == 0
    doc = parse_document(open(path).read())
    assert doc.closed is not None
    assert parse_expression(out.strip(), 2) == pv(doc.config).expr


def test_output_is_byte_stable(tmp_path):
    c = scenarios.random_config(11)
    cfg = write(tmp_path, "r.json", dump_config(c))
    first = [run([cmd, cfg, "--format", fmt])[1] for cmd in ("pv", "zeta") for fmt in ("pretty", "json")]
    again = [run([cmd, cfg, "--format", fmt])[1] for cmd in ("pv", "zeta") for fmt in ("pretty", "json")]
    assert first == again
    assert dump_config(c) == dump_config(scenarios.random_config(11))


# -- exit codes ------------------------------------------------------------------------------

def bad_input_table(tmp_path):
    pole = dump_config(scenarios.figure2chain()[2].config)
    missing_hodge = json.dumps(EX34A)
    table = [
        (["pv", write(tmp_path, "syntax.json", "{not json")], 2),
        (["pv", write(tmp_path, "schema.json", '{"dimension": 2}')], 2),
        (["pv", write(tmp_path, "expr.json", json.dumps(
            dict(EX34A, strata=[{"subset": [], "class": {"L": "L^^2"}}])))], 2),
        (["pv", write(tmp_path, "scale.json", json.dumps(
            dict(EX34A, strata=[{"subset": [], "class": {"L": "L^(1/3)"}}])))], 2),
        (["pv", write(tmp_path, "pole.json", pole)], 3),
        (["check", write(tmp_path, "pole2.json", pole)], 3),
        (["pv", write(tmp_path, "nohodge.json", missing_hodge), "--realization", "hodge"], 4),
        (["blowup", write(tmp_path, "b.json", missing_hodge), "--center", "point:C1,C9"], 4),
        (["blowup", write(tmp_path, "c.json", missing_hodge), "--center", "nowhere"], 4),
        (["pv", str(tmp_path / "does-not-exist.json")], 4),
        (["pv"], 2),
        (["frobnicate"], 2),
        (["scenario", "p1points", "--alphas", "1,1"], 4),
        (["specialize", write(tmp_path, "d.json", missing_hodge), "--L", "x"], 2),
    ]
    return table


def test_exit_codes(tmp_path, capsys):
    for argv, expected in bad_input_table(tmp_path):
        assert main(argv, io.StringIO()) == expected, argv
        assert capsys.readouterr().err
