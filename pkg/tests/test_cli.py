import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from projprob import (
    amplitude,
    amplitude_via_symbol,
    born,
    conditional,
    consecutive,
    independence,
    interference,
)
from projprob.cli import load_scenario, main, run
from projprob.observables import evaluate, prob_density, support

R = 1 / math.sqrt(2)

SCENARIO = {
    "ambient_dim": 2,
    "states": {
        "e1": [1, 0],
        "plus": [R, R],
        "p2": [[R, 0.5], [0.5, 0]],
        "p3": [[0, R], [R, 0]],
    },
    "events": {
        "E1": [[1, 0]],
        "E2": {"projector": [[0, 0], [0, 1]]},
        "P": [[1, 1]],
        "I": [[1, 0], [0, 1]],
    },
    "propagators": {"rot": [[0, -1], [1, 0]], "big": [[2, 0], [0, 2]]},
    "observables": {
        "Z": {"atoms": [{"value": 0, "subspace": {"ambient_dim": 2, "columns": [[[1, 0], [0, 0]]]}},
                        {"value": 1, "subspace": {"ambient_dim": 2, "columns": [[[0, 0], [1, 0]]]}}]},
        "X": {"hermitian": [[0, 1], [1, 0]]},
    },
    "densities": {
        "mixed": {"atoms": [{"a": 0.5, "subspace": {"ambient_dim": 2,
                                                    "columns": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}}]},
        "rho": {"matrix": [[0.75, 0.25], [0.25, 0.25]]},
    },
    "tasks": [
        {"kind": "born", "state": "plus", "event": "E1"},
        {"kind": "consecutive", "state": "e1", "events": ["P", "E2"]},
        {"kind": "conditional", "state": "e1", "given": "P", "event": "E2"},
        {"kind": "collapse", "state": "e1", "event": "P"},
        {"kind": "independence", "state": "e1", "first": "P", "second": "E1"},
        {"kind": "consecutive_events", "events": ["E1", "P"]},
        {"kind": "timed", "initial": "E1", "steps": [{"propagator": "rot", "event": "E2"}]},
        {"kind": "interference", "state": "plus", "parts": ["E1", "E2"], "event": "P"},
        {"kind": "amplitude", "points": ["e1", "p2", "p3"]},
        {"kind": "amplitude_via_symbol", "points": ["e1", "p2", "p3"]},
        {"kind": "geodesic", "p": "e1", "q": "plus"},
        {"kind": "observable_eval", "observable": "Z",
         "query": {"intervals": [[0.5, 2, True, True]]}},
        {"kind": "support", "observable": "X"},
        {"kind": "density_prob", "density": "mixed", "event": "E1"},
        {"kind": "sample", "state": "e1", "events": ["P", "E2"], "n": 100000, "seed": 42},
    ],
}


def _write(tmp_path, data, name="scenario.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def _run(path, **kw):
    out, err = io.StringIO(), io.StringIO()
    code = run(path, out=out, err=err, **kw)
    return code, out.getvalue(), err.getvalue()


def test_worked_state_p2_matches_definition():
    psi1, psi3 = np.array([1, 0]), np.array([1j, 1]) / np.sqrt(2)
    p2 = (psi1 + psi3) / np.linalg.norm(psi1 + psi3)
    given = [complex(*z) for z in SCENARIO["states"]["p2"]]
    np.testing.assert_allclose(given, p2, atol=1e-15)


def test_reports(tmp_path):
    code, out, err = _run(_write(tmp_path, SCENARIO))
    assert code == 0, err
    reports = [json.loads(line) for line in out.splitlines()]
    assert [r["index"] for r in reports] == list(range(len(SCENARIO["tasks"])))
    by_kind = {r["kind"]: r for r in reports}
    assert by_kind["born"]["value"] == 0.5
    assert by_kind["consecutive"]["value"] == pytest.approx(0.25, abs=1e-14)
    assert by_kind["conditional"]["value"] == pytest.approx(0.5)
    np.testing.assert_allclose(by_kind["collapse"]["state"], [[R, 0], [R, 0]], atol=1e-14)
    assert by_kind["independence"]["entangled"] is True
    assert by_kind["consecutive_events"]["value"] == pytest.approx(0.5)
    assert by_kind["timed"]["value"] == pytest.approx(1)
    assert by_kind["interference"]["total"] == pytest.approx(1)
    assert by_kind["interference"]["cross_sum"]["re"] == pytest.approx(0.5)
    amp = by_kind["amplitude"]
    assert amp["re"] == pytest.approx(0.5) and amp["im"] == pytest.approx(-0.17678, abs=1e-5)
    assert by_kind["amplitude_via_symbol"]["im"] == pytest.approx(amp["im"], abs=1e-14)
    assert by_kind["geodesic"]["value"] == pytest.approx(math.pi / 4)
    assert by_kind["observable_eval"]["projective_dim"] == 0
    assert by_kind["support"]["support"] == pytest.approx([-1, 1])
    assert by_kind["density_prob"]["value"] == pytest.approx(0.5)
    sample = by_kind["sample"]
    assert sum(sample["path_counts"].values()) == 100000
    assert abs(sample["empirical"] - 0.25) <= 4 * sample["std_error"]


def _fmt(x):
    return float(format(x, ".15g"))


def test_reports_match_library(tmp_path):
    code, out, _ = _run(_write(tmp_path, SCENARIO))
    reports = [json.loads(line) for line in out.splitlines()]
    sc = load_scenario(SCENARIO)
    S, E = sc.states, sc.events
    assert reports[0]["value"] == _fmt(born(S["plus"], E["E1"]))
    assert reports[1]["value"] == _fmt(consecutive(S["e1"], [E["P"], E["E2"]]))
    assert reports[2]["value"] == _fmt(conditional(S["e1"], E["P"], E["E2"]))
    ind = independence(S["e1"], E["P"], E["E1"])
    assert (reports[4]["lhs"], reports[4]["rhs"]) == (_fmt(ind.lhs), _fmt(ind.rhs))
    itf = interference(S["plus"], [E["E1"], E["E2"]], E["P"])
    assert reports[7]["total"] == _fmt(itf.total)
    assert reports[7]["diagonal"] == [_fmt(x) for x in itf.diagonal]
    a = amplitude([S["e1"], S["p2"], S["p3"]])
    assert (reports[8]["re"], reports[8]["im"]) == (_fmt(a.real), _fmt(a.imag))
    b = amplitude_via_symbol([S["e1"], S["p2"], S["p3"]])
    assert (reports[9]["re"], reports[9]["im"]) == (_fmt(b.real), _fmt(b.imag))
    from projprob.cli import parse_query
    s = evaluate(sc.observables["Z"], parse_query(SCENARIO["tasks"][11]["query"]))
    assert reports[11]["projective_dim"] == s.projective_dim
    assert reports[12]["support"] == [_fmt(x) for x in support(sc.observables["X"])]
    assert reports[13]["value"] == _fmt(prob_density(sc.densities["mixed"], E["E1"]))


def test_byte_identical_output(tmp_path):
    path = _write(tmp_path, SCENARIO)
    assert _run(path)[1] == _run(path)[1]
    assert _run(path, fmt="text")[1] == _run(path, fmt="text")[1]


def test_text_format(tmp_path):
    code, out, _ = _run(_write(tmp_path, SCENARIO), fmt="text")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["index", "kind", "result"]
    assert len(lines) == 1 + len(SCENARIO["tasks"])
    assert lines[1].split()[1] == "born" and "value=0.5" in lines[1]
    # the result column starts at the same offset on every row
    assert len({line.index(line.split()[2]) for line in lines[1:]}) == 1


def test_seed_flag_is_default_for_sample(tmp_path):
    data = dict(SCENARIO, tasks=[{"kind": "sample", "state": "plus", "events": ["E1"], "n": 500}])
    path = _write(tmp_path, data)
    a, b = _run(path, seed=5)[1], _run(path, seed=6)[1]
    assert a != b and a == _run(path, seed=5)[1]


def test_tol_flag(tmp_path):
    data = dict(SCENARIO, densities={},
                tasks=[{"kind": "conditional", "state": "e1", "given": "P", "event": "E2"}])
    path = _write(tmp_path, data)
    assert json.loads(_run(path)[1])["value"] == 0.5
    assert json.loads(_run(path, tol=0.9)[1])["value"] == 0  # P(given) = 0.5 <= tol


@pytest.mark.parametrize("task,needle", [
    ({"kind": "nope"}, "unknown task kind"),
    ({"kind": "born", "state": "missing", "event": "E1"}, "undefined state 'missing'"),
    ({"kind": "born", "state": "e1"}, "missing field 'event'"),
    ({"kind": "sample", "state": "e1", "events": ["E1"], "n": 0}, "'n' must be"),
    ({"kind": "observable_eval", "observable": "Z", "query": {"intervals": [[2, 1, True, True]]}},
     "malformed query"),
])
def test_schema_errors(tmp_path, task, needle):
    data = dict(SCENARIO, tasks=[SCENARIO["tasks"][0], task])
    code, out, err = _run(_write(tmp_path, data))
    assert code == 1 and out == ""
    assert "task 1" in err and needle in err


def test_dimension_mismatch_is_schema_error(tmp_path):
    data = dict(SCENARIO, states={"e1": [1, 0, 0]})
    code, _, err = _run(_write(tmp_path, data))
    assert code == 1 and "state 'e1'" in err


def test_unreadable_scenario(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert _run(str(bad))[0] == 1
    assert _run(str(tmp_path / "absent.json"))[0] == 1


def test_numerical_precondition_exit_code(tmp_path):
    tasks = [SCENARIO["tasks"][0],
             {"kind": "timed", "initial": "E1", "steps": [{"propagator": "big", "event": "E2"}]}]
    code, out, err = _run(_write(tmp_path, dict(SCENARIO, tasks=tasks)))
    assert code == 2
    assert len(out.splitlines()) == 1
    assert "task 1 (timed)" in err and "contraction" in err

    tasks = [{"kind": "collapse", "state": "e1", "event": "E2"}]
    code, _, err = _run(_write(tmp_path, dict(SCENARIO, tasks=tasks)))
    assert code == 2 and "task 0 (collapse)" in err


def test_main_and_console_entry(tmp_path, capsys):
    path = _write(tmp_path, dict(SCENARIO, tasks=SCENARIO["tasks"][:1]))
    assert main([path, "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out) == {"index": 0, "kind": "born", "value": 0.5}
    proc = subprocess.run([sys.executable, "-m", "projprob.cli", path, "--format", "text"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "born" in proc.stdout
