"""Command-line front end: run the tasks of a JSON scenario file.

Usage::

    projprob scenario.json [--tol 1e-10] [--format json|text] [--seed 0]

A scenario declares named states, events, propagators, observables and
density matrices over one ambient dimension, then a list of tasks.  Each
task produces one report (a JSON line, or one row of a text table), in
task order.  Exit status is 0 on success, 1 for a malformed scenario and 2
when a numerical precondition fails (for example a propagator that is not
a contraction).

Complex numbers are written ``[re, im]`` (a bare real number is accepted as
well); matrices are lists of rows.  Events are either a list of spanning
vectors or ``{"projector": matrix}``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import amplitudes, observables, probability, sampler
from .errors import DimensionMismatchError, PreconditionError, ProjprobError
from .events import Event, StatePoint, Subspace, state_point, subspace_from_vectors
from .kernel import DEFAULT_TOL

EXIT_OK, EXIT_SCHEMA, EXIT_NUMERICAL = 0, 1, 2


class ScenarioError(ProjprobError, ValueError):
    """The scenario file does not follow the schema."""


# ---------------------------------------------------------------- parsing

def _complex(x) -> complex:
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return complex(x)
    if isinstance(x, list) and len(x) == 2 and all(isinstance(c, (int, float)) for c in x):
        return complex(x[0], x[1])
    raise ScenarioError(f"not a complex number: {x!r}")


def _vector(x, dim: int, what: str) -> np.ndarray:
    if not isinstance(x, list):
        raise ScenarioError(f"{what}: expected a list of complex entries")
    v = np.array([_complex(c) for c in x], dtype=complex)
    if v.size != dim:
        raise DimensionMismatchError(f"{what}: vector of length {v.size}, ambient dimension {dim}")
    return v


def _matrix(x, dim: int, what: str) -> np.ndarray:
    if not isinstance(x, list) or len(x) != dim:
        raise DimensionMismatchError(f"{what}: expected {dim} rows")
    return np.array([_vector(row, dim, what) for row in x], dtype=complex)


def _bound(x, default: float) -> float:
    if x is None:
        return default
    if x in ("inf", "+inf"):
        return math.inf
    if x == "-inf":
        return -math.inf
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return float(x)
    raise ScenarioError(f"bad interval endpoint {x!r}")


def parse_query(data) -> observables.BorelQuery:
    """Query schema: ``{"intervals": [[lo, hi, lo_closed, hi_closed], ...], "singletons": [...]}``.

    ``null`` or ``"-inf"``/``"inf"`` mark unbounded ends.
    """
    if not isinstance(data, dict):
        raise ScenarioError("query must be an object")
    intervals = []
    for iv in data.get("intervals", []):
        if not isinstance(iv, list) or len(iv) != 4:
            raise ScenarioError(f"interval must be [lo, hi, lo_closed, hi_closed], got {iv!r}")
        intervals.append((_bound(iv[0], -math.inf), _bound(iv[1], math.inf), iv[2], iv[3]))
    try:
        return observables.BorelQuery(tuple(intervals), tuple(data.get("singletons", [])))
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"malformed query: {exc}") from exc


def _subspace(data, dim: int, what: str, tol: float) -> Subspace:
    if not isinstance(data, dict) or "columns" not in data:
        raise ScenarioError(f"{what}: subspace needs 'ambient_dim' and 'columns'")
    if int(data.get("ambient_dim", dim)) != dim:
        raise DimensionMismatchError(f"{what}: subspace of C^{data['ambient_dim']} in C^{dim}")
    cols = [_vector(c, dim, what) for c in data["columns"]]
    return subspace_from_vectors(cols, dim=dim, tol=tol)


@dataclass
class Scenario:
    ambient_dim: int
    states: dict = field(default_factory=dict)
    events: dict = field(default_factory=dict)
    propagators: dict = field(default_factory=dict)
    observables: dict = field(default_factory=dict)
    densities: dict = field(default_factory=dict)
    tasks: list = field(default_factory=list)


def _event(name, entry, dim, tol) -> Event:
    what = f"event {name!r}"
    if isinstance(entry, list):
        return Event.from_vectors([_vector(v, dim, what) for v in entry], dim=dim, tol=tol)
    if isinstance(entry, dict) and "projector" in entry:
        return Event.from_projector(_matrix(entry["projector"], dim, what), tol=tol)
    if isinstance(entry, dict) and "span" in entry:
        return Event.from_vectors([_vector(v, dim, what) for v in entry["span"]], dim=dim, tol=tol)
    raise ScenarioError(f"{what}: expected a list of spanning vectors or {{'projector': ...}}")


def _observable(name, entry, dim, tol):
    what = f"observable {name!r}"
    if isinstance(entry, dict) and "hermitian" in entry:
        return observables.observable_from_hermitian(_matrix(entry["hermitian"], dim, what))
    if isinstance(entry, dict) and "atoms" in entry:
        atoms = tuple((float(a["value"]), _subspace(a["subspace"], dim, what, tol))
                      for a in entry["atoms"])
        return observables.GeometricObservable(dim, atoms)
    raise ScenarioError(f"{what}: expected {{'atoms': ...}} or {{'hermitian': matrix}}")


def _density(name, entry, dim, tol):
    what = f"density {name!r}"
    if isinstance(entry, dict) and "matrix" in entry:
        return observables.operator_to_density(_matrix(entry["matrix"], dim, what), tol=tol)
    if isinstance(entry, dict) and "atoms" in entry:
        atoms = tuple((float(a["a"]), _subspace(a["subspace"], dim, what, tol))
                      for a in entry["atoms"])
        return observables.GeometricDensityMatrix(dim, atoms)
    raise ScenarioError(f"{what}: expected {{'atoms': ...}} or {{'matrix': matrix}}")


# For each task kind: field -> namespace ("states", ...) or [namespace] for a
# list of names.  Optional fields are prefixed with "?".
TASK_FIELDS: dict[str, dict[str, Any]] = {
    "born": {"state": "states", "event": "events"},
    "consecutive": {"state": "states", "events": ["events"]},
    "conditional": {"state": "states", "given": "events", "event": "events"},
    "collapse": {"state": "states", "event": "events"},
    "independence": {"state": "states", "first": "events", "second": "events"},
    "consecutive_events": {"events": ["events"]},
    "timed": {"initial": "events", "steps": None, "?pre": "propagators", "?post": "propagators"},
    "interference": {"state": "states", "parts": ["events"], "event": "events"},
    "amplitude": {"points": ["states"]},
    "amplitude_via_symbol": {"points": ["states"]},
    "geodesic": {"p": "states", "q": "states"},
    "observable_eval": {"observable": "observables", "query": None},
    "support": {"observable": "observables"},
    "density_prob": {"density": "densities", "event": "events"},
    "sample": {"state": "states", "events": ["events"], "n": None, "?seed": None},
}


def _check_task(i: int, task, sc: Scenario):
    if not isinstance(task, dict) or "kind" not in task:
        raise ScenarioError(f"task {i}: expected an object with a 'kind'")
    kind = task["kind"]
    if kind not in TASK_FIELDS:
        raise ScenarioError(f"task {i}: unknown task kind {kind!r}")

    def need(name, namespace):
        if not isinstance(name, str) or name not in getattr(sc, namespace):
            raise ScenarioError(f"task {i} ({kind}): undefined {namespace[:-1]} {name!r}")

    for key, ns in TASK_FIELDS[kind].items():
        optional = key.startswith("?")
        key = key.lstrip("?")
        if key not in task:
            if optional:
                continue
            raise ScenarioError(f"task {i} ({kind}): missing field {key!r}")
        value = task[key]
        if isinstance(ns, list):
            if not isinstance(value, list) or not value:
                raise ScenarioError(f"task {i} ({kind}): {key!r} must be a non-empty list")
            for name in value:
                need(name, ns[0])
        elif ns is not None:
            need(value, ns)

    if kind == "timed":
        steps = task["steps"]
        if not isinstance(steps, list):
            raise ScenarioError(f"task {i} (timed): 'steps' must be a list")
        for st in steps:
            if not isinstance(st, dict):
                raise ScenarioError(f"task {i} (timed): each step is {{propagator, event}}")
            need(st.get("propagator"), "propagators")
            need(st.get("event"), "events")
    if kind == "sample":
        n = task["n"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise ScenarioError(f"task {i} (sample): 'n' must be a positive integer")
        if "seed" in task and (not isinstance(task["seed"], int) or isinstance(task["seed"], bool)):
            raise ScenarioError(f"task {i} (sample): 'seed' must be an integer")
    if kind == "observable_eval":
        try:
            parse_query(task["query"])
        except ScenarioError as exc:
            raise ScenarioError(f"task {i} (observable_eval): {exc}") from exc


def load_scenario(data: dict, tol: float = DEFAULT_TOL) -> Scenario:
    """Build a :class:`Scenario` from decoded JSON, validating every reference."""
    if not isinstance(data, dict):
        raise ScenarioError("scenario must be a JSON object")
    dim = data.get("ambient_dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ScenarioError("'ambient_dim' must be a positive integer")
    sc = Scenario(dim)
    for name, v in data.get("states", {}).items():
        sc.states[name] = state_point(_vector(v, dim, f"state {name!r}"), tol=tol)
    for name, entry in data.get("events", {}).items():
        sc.events[name] = _event(name, entry, dim, tol)
    for name, m in data.get("propagators", {}).items():
        sc.propagators[name] = _matrix(m, dim, f"propagator {name!r}")
    for name, entry in data.get("observables", {}).items():
        sc.observables[name] = _observable(name, entry, dim, tol)
    for name, entry in data.get("densities", {}).items():
        sc.densities[name] = _density(name, entry, dim, tol)
    tasks = data.get("tasks", [])
    if not isinstance(tasks, list):
        raise ScenarioError("'tasks' must be a list")
    for i, task in enumerate(tasks):
        _check_task(i, task, sc)
    sc.tasks = tasks
    return sc


# -------------------------------------------------------------- execution

def _num(x: float) -> float:
    return float(format(float(x), ".15g"))


def _cnum(z: complex) -> dict:
    return {"re": _num(z.real), "im": _num(z.imag)}


def _point_json(p: StatePoint) -> list:
    return [[_num(z.real), _num(z.imag)] for z in p.vector]


def _subspace_json(s: Subspace) -> dict:
    return {"ambient_dim": s.ambient_dim,
            "columns": [[[_num(z.real), _num(z.imag)] for z in s.basis[:, j]]
                        for j in range(s.rank)]}


def _run_task(task: dict, sc: Scenario, tol: float, default_seed: int) -> dict:
    kind = task["kind"]
    S, E = sc.states, sc.events
    if kind == "born":
        return {"value": _num(probability.born(S[task["state"]], E[task["event"]], tol=tol))}
    if kind == "consecutive":
        evs = [E[n] for n in task["events"]]
        return {"value": _num(probability.consecutive(S[task["state"]], evs, tol=tol))}
    if kind == "conditional":
        v = probability.conditional(S[task["state"]], E[task["given"]], E[task["event"]], tol=tol)
        return {"value": _num(v)}
    if kind == "collapse":
        return {"state": _point_json(probability.collapse(S[task["state"]], E[task["event"]], tol=tol))}
    if kind == "independence":
        r = probability.independence(S[task["state"]], E[task["first"]], E[task["second"]], tol=tol)
        return {"independent": r.independent, "entangled": r.entangled,
                "lhs": _num(r.lhs), "rhs": _num(r.rhs)}
    if kind == "consecutive_events":
        return {"value": _num(probability.consecutive_events([E[n] for n in task["events"]], tol=tol))}
    if kind == "timed":
        t = probability.TimedSequence(
            E[task["initial"]],
            tuple((sc.propagators[st["propagator"]], E[st["event"]]) for st in task["steps"]),
            pre=sc.propagators.get(task.get("pre")),
            post=sc.propagators.get(task.get("post")),
        )
        return {"value": _num(probability.timed_consecutive(t))}
    if kind == "interference":
        r = probability.interference(S[task["state"]], [E[n] for n in task["parts"]],
                                     E[task["event"]], tol=tol)
        return {"total": _num(r.total),
                "diagonal": [_num(x) for x in r.diagonal],
                "cross_terms": [{"j": j, "k": k, "value": _cnum(c)} for j, k, c in r.cross_terms],
                "cross_sum": _cnum(r.cross_sum)}
    if kind in ("amplitude", "amplitude_via_symbol"):
        fn = amplitudes.amplitude if kind == "amplitude" else amplitudes.amplitude_via_symbol
        a = fn([S[n] for n in task["points"]], tol=tol)
        return {**_cnum(a), "modulus_squared": _num(abs(a) ** 2)}
    if kind == "geodesic":
        return {"value": _num(probability.geodesic_distance(S[task["p"]], S[task["q"]], tol=tol))}
    if kind == "observable_eval":
        s = observables.evaluate(sc.observables[task["observable"]], parse_query(task["query"]), tol=tol)
        return {"projective_dim": s.projective_dim, "subspace": _subspace_json(s)}
    if kind == "support":
        return {"support": [_num(x) for x in observables.support(sc.observables[task["observable"]])]}
    if kind == "density_prob":
        return {"value": _num(observables.prob_density(sc.densities[task["density"]],
                                                       E[task["event"]], tol=tol))}
    if kind == "sample":
        rep = sampler.estimate(S[task["state"]], [E[n] for n in task["events"]], task["n"],
                               task.get("seed", default_seed), tol=tol)
        d = rep.to_dict()
        for key in ("exact", "empirical", "std_error"):
            d[key] = _num(d[key])
        return d
    raise ScenarioError(f"unknown task kind {kind!r}")  # unreachable after validation


def _text_cell(report: dict) -> str:
    return " ".join(f"{k}={json.dumps(v, separators=(',', ':'))}" for k, v in report.items())


def _write_text(rows: list[tuple[int, str, dict]], out):
    width = max([len("kind")] + [len(k) for _, k, _ in rows])
    out.write(f"{'index':>5}  {'kind':<{width}}  result\n")
    for i, kind, rep in rows:
        out.write(f"{i:>5}  {kind:<{width}}  {_text_cell(rep)}\n")


def run(scenario_path: str, tol: float = DEFAULT_TOL, fmt: str = "json", seed: int = 0,
        out=None, err=None) -> int:
    """Run every task of a scenario file; returns the process exit code."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        with open(scenario_path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        err.write(f"error: cannot read scenario: {exc}\n")
        return EXIT_SCHEMA

    try:
        sc = load_scenario(data, tol=tol)
    except (ScenarioError, DimensionMismatchError, KeyError, TypeError) as exc:
        err.write(f"error: invalid scenario: {exc}\n")
        return EXIT_SCHEMA
    except PreconditionError as exc:
        err.write(f"error: numerical precondition failed in scenario: {exc}\n")
        return EXIT_NUMERICAL

    rows = []
    for i, task in enumerate(sc.tasks):
        kind = task["kind"]
        try:
            report = _run_task(task, sc, tol, seed)
        except DimensionMismatchError as exc:
            err.write(f"error: task {i} ({kind}): {exc}\n")
            return _flush(rows, fmt, out, EXIT_SCHEMA)
        except PreconditionError as exc:
            err.write(f"error: task {i} ({kind}): numerical precondition failed: {exc}\n")
            return _flush(rows, fmt, out, EXIT_NUMERICAL)
        if fmt == "json":
            out.write(json.dumps({"index": i, "kind": kind, **report}) + "\n")
        rows.append((i, kind, report))
    return _flush(rows, fmt, out, EXIT_OK)


def _flush(rows, fmt, out, code) -> int:
    if fmt == "text" and rows:
        _write_text(rows, out)
    return code


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="projprob", description="Evaluate quantum probability tasks from a scenario file.")
    parser.add_argument("scenario", help="path to a JSON scenario file")
    parser.add_argument("--tol", type=float, default=DEFAULT_TOL,
                        help="global numerical tolerance (default %(default)g)")
    parser.add_argument("--format", choices=("json", "text"), default="json", dest="fmt")
    parser.add_argument("--seed", type=int, default=0, help="default seed for sample tasks")
    args = parser.parse_args(argv)
    return run(args.scenario, tol=args.tol, fmt=args.fmt, seed=args.seed)


if __name__ == "__main__":
    sys.exit(main())
