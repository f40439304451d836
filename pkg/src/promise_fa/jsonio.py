"""JSON encodings for machines and promise problems.

Classical machines::

    {"kind": "dfa" | "pvdfa" | "pfa", "alphabet": ["a", ...], "states": n,
     "initial": 0, "transitions": {"a": [next state per state]} (dfa/pvdfa)
                                  {"a": [["1/2", "1/2"], ...]}     (pfa),
     "accepting": [...], "rejecting": [...]}

A pfa may give ``initial`` as a distribution (list of "p/q" strings) and may
use JSON numbers instead of strings, which selects float arithmetic.

Quantum machines store complex entries as ``[re, im]`` pairs; see
:func:`quantum_to_json`.  Loading validates every invariant and raises
:class:`SchemaError` naming the first violation.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .classical import Dfa, Pfa, PvDfa
from .errors import AutomatonError, SchemaError
from .problems import PromiseProblem, RegularProblem, make_family
from .quantum import LEFT_END, RIGHT_END, Mo1Qfa, PvMo1Qfa, Qcfa1

CLASSICAL_KINDS = ("dfa", "pvdfa", "pfa")
QUANTUM_KINDS = ("mo1qfa", "pvmo1qfa", "qcfa1")


def _req(obj: dict, key: str, types, where: str):
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object")
    if key not in obj:
        raise SchemaError(f"{where}.{key}: missing")
    value = obj[key]
    if not isinstance(value, types) or isinstance(value, bool):
        raise SchemaError(f"{where}.{key}: expected {_type_name(types)}, got {type(value).__name__}")
    return value


def _type_name(types) -> str:
    if isinstance(types, tuple):
        return " or ".join(t.__name__ for t in types)
    return types.__name__


def _int_list(obj, key, where, required=True):
    if not required and key not in obj:
        return []
    values = _req(obj, key, list, where)
    for i, v in enumerate(values):
        if not isinstance(v, int) or isinstance(v, bool):
            raise SchemaError(f"{where}.{key}[{i}]: expected int, got {v!r}")
    return values


def _fraction(x, where):
    try:
        return Fraction(x) if isinstance(x, str) else x
    except (ValueError, ZeroDivisionError):
        raise SchemaError(f"{where}: {x!r} is not a rational 'p/q'") from None


# -- classical ------------------------------------------------------------------------


def classical_to_json(m) -> dict:
    if isinstance(m, Pfa):
        enc = (lambda x: f"{x.numerator}/{x.denominator}") if m.exact else float
        point = [i for i, x in enumerate(m.initial) if x == 1]
        initial = point[0] if len(point) == 1 else [enc(x) for x in m.initial]
        return {
            "kind": "pfa",
            "alphabet": list(m.alphabet),
            "states": m.num_states,
            "initial": initial,
            "transitions": {s: [[enc(x) for x in row] for row in mat] for s, mat in zip(m.alphabet, m.matrices)},
            "accepting": sorted(m.accepting),
        }
    out = {
        "kind": "pvdfa" if isinstance(m, PvDfa) else "dfa",
        "alphabet": list(m.alphabet),
        "states": m.num_states,
        "initial": m.initial,
        "transitions": {s: [m.delta[q][k] for q in range(m.num_states)] for k, s in enumerate(m.alphabet)},
        "accepting": sorted(m.accepting),
    }
    if isinstance(m, PvDfa):
        out["rejecting"] = sorted(m.rejecting)
    return out


def classical_from_json(obj: dict, where: str = "$"):
    kind = _req(obj, "kind", str, where)
    if kind not in CLASSICAL_KINDS:
        raise SchemaError(f"{where}.kind: expected one of {CLASSICAL_KINDS}, got {kind!r}")
    alphabet = _req(obj, "alphabet", list, where)
    for i, s in enumerate(alphabet):
        if not isinstance(s, str) or len(s) != 1:
            raise SchemaError(f"{where}.alphabet[{i}]: expected a single-character string, got {s!r}")
    if len(set(alphabet)) != len(alphabet):
        raise SchemaError(f"{where}.alphabet: repeated symbols")
    n = _req(obj, "states", int, where)
    if n < 1:
        raise SchemaError(f"{where}.states: must be >= 1")
    trans = _req(obj, "transitions", dict, where)
    for s in alphabet:
        if s not in trans:
            raise SchemaError(f"{where}.transitions.{s}: missing (transition must be total)")
    extra = sorted(set(trans) - set(alphabet))
    if extra:
        raise SchemaError(f"{where}.transitions: symbols {extra} not in alphabet")
    accepting = _int_list(obj, "accepting", where)
    try:
        if kind == "pfa":
            return _pfa_from_json(obj, alphabet, n, trans, accepting, where)
        initial = _req(obj, "initial", int, where)
        for s in alphabet:
            row = trans[s]
            if not isinstance(row, list) or len(row) != n:
                raise SchemaError(f"{where}.transitions.{s}: expected a list of {n} state indices")
            for q, t in enumerate(row):
                if not isinstance(t, int) or isinstance(t, bool) or not 0 <= t < n:
                    raise SchemaError(f"{where}.transitions.{s}[{q}]: {t!r} is not a state in 0..{n - 1}")
        delta = [[trans[s][q] for s in alphabet] for q in range(n)]
        if kind == "dfa":
            if "rejecting" in obj:
                raise SchemaError(f"{where}.rejecting: only allowed for kind 'pvdfa'")
            return Dfa(alphabet, delta, initial, accepting)
        return PvDfa(alphabet, delta, initial, accepting, _int_list(obj, "rejecting", where))
    except SchemaError:
        raise
    except AutomatonError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def _pfa_from_json(obj, alphabet, n, trans, accepting, where):
    mats = []
    floats = False
    for s in alphabet:
        mat = trans[s]
        if not isinstance(mat, list) or len(mat) != n:
            raise SchemaError(f"{where}.transitions.{s}: expected a {n}x{n} matrix")
        rows = []
        for r, row in enumerate(mat):
            if not isinstance(row, list) or len(row) != n:
                raise SchemaError(f"{where}.transitions.{s}[{r}]: expected {n} entries")
            floats |= any(isinstance(x, float) for x in row)
            rows.append([_fraction(x, f"{where}.transitions.{s}[{r}]") for x in row])
        mats.append(rows)
    init = obj.get("initial")
    if isinstance(init, int) and not isinstance(init, bool):
        if not 0 <= init < n:
            raise SchemaError(f"{where}.initial: {init} is not a state in 0..{n - 1}")
        dist = [1 if i == init else 0 for i in range(n)]
    elif isinstance(init, list) and len(init) == n:
        floats |= any(isinstance(x, float) for x in init)
        dist = [_fraction(x, f"{where}.initial") for x in init]
    else:
        raise SchemaError(f"{where}.initial: expected a state index or a distribution of length {n}")
    return Pfa(alphabet, mats, dist, accepting, exact=not floats)


# -- quantum --------------------------------------------------------------------------


def _cmat(u) -> list:
    u = np.asarray(u, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in u]


def _cmat_from(obj, d, where) -> np.ndarray:
    if not isinstance(obj, list) or len(obj) != d:
        raise SchemaError(f"{where}: expected a {d}x{d} matrix of [re, im] pairs")
    out = np.zeros((d, d), dtype=complex)
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != d:
            raise SchemaError(f"{where}[{i}]: expected {d} entries")
        for j, z in enumerate(row):
            if not (isinstance(z, list) and len(z) == 2 and all(isinstance(x, (int, float)) for x in z)):
                raise SchemaError(f"{where}[{i}][{j}]: expected [re, im], got {z!r}")
            out[i, j] = complex(z[0], z[1])
    return out


def quantum_to_json(m) -> dict:
    if isinstance(m, Qcfa1):
        return {
            "kind": "qcfa1",
            "dimension": m.dimension,
            "alphabet": list(m.alphabet),
            "classical_states": m.num_classical,
            "initial": m.initial,
            "quantum_initial": m.quantum_initial,
            "accepting": sorted(m.accepting),
            "rejecting": sorted(m.rejecting),
            "theta": [{"state": s, "symbol": a, "unitary": _cmat(u)} for (s, a), u in sorted(m.theta.items())],
            "measurements": [
                {"state": s, "symbol": a, "projectors": [_cmat(p) for p in ps]}
                for (s, a), ps in sorted(m._proj.items())
            ],
            "transitions": [
                {"state": s, "symbol": a, "outcome": c, "next": t}
                for (s, a, c), t in sorted(m.transitions.items())
            ],
        }
    out = {
        "kind": "pvmo1qfa" if isinstance(m, PvMo1Qfa) else "mo1qfa",
        "dimension": m.dimension,
        "alphabet": list(m.alphabet),
        "unitaries": {s: _cmat(u) for s, u in m.unitaries.items()},
        "accepting": sorted(m.accepting),
    }
    if isinstance(m, PvMo1Qfa):
        out["rejecting"] = sorted(m.rejecting)
    return out


def quantum_from_json(obj: dict, where: str = "$"):
    kind = _req(obj, "kind", str, where)
    if kind not in QUANTUM_KINDS:
        raise SchemaError(f"{where}.kind: expected one of {QUANTUM_KINDS}, got {kind!r}")
    d = _req(obj, "dimension", int, where)
    alphabet = _req(obj, "alphabet", list, where)
    accepting = _int_list(obj, "accepting", where)
    try:
        if kind == "qcfa1":
            return _qcfa_from_json(obj, d, alphabet, accepting, where)
        raw = _req(obj, "unitaries", dict, where)
        unitaries = {s: _cmat_from(u, d, f"{where}.unitaries.{s}") for s, u in raw.items()}
        if kind == "mo1qfa":
            return Mo1Qfa(d, alphabet, unitaries, accepting)
        return PvMo1Qfa(d, alphabet, unitaries, accepting, _int_list(obj, "rejecting", where))
    except SchemaError:
        raise
    except AutomatonError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def _qcfa_from_json(obj, d, alphabet, accepting, where):
    theta, meas, trans = {}, {}, {}
    for i, rec in enumerate(_req(obj, "theta", list, where)):
        at = f"{where}.theta[{i}]"
        key = (_req(rec, "state", int, at), _req(rec, "symbol", str, at))
        theta[key] = _cmat_from(_req(rec, "unitary", list, at), d, f"{at}.unitary")
    for i, rec in enumerate(_req(obj, "measurements", list, where)):
        at = f"{where}.measurements[{i}]"
        key = (_req(rec, "state", int, at), _req(rec, "symbol", str, at))
        meas[key] = [_cmat_from(p, d, f"{at}.projectors[{j}]") for j, p in enumerate(_req(rec, "projectors", list, at))]
    for i, rec in enumerate(_req(obj, "transitions", list, where)):
        at = f"{where}.transitions[{i}]"
        key = (_req(rec, "state", int, at), _req(rec, "symbol", str, at), _req(rec, "outcome", int, at))
        trans[key] = _req(rec, "next", int, at)
    return Qcfa1(
        dimension=d,
        alphabet=alphabet,
        num_classical=_req(obj, "classical_states", int, where),
        initial=_req(obj, "initial", int, where),
        accepting=accepting,
        rejecting=_int_list(obj, "rejecting", where),
        theta=theta,
        measurements=meas,
        transitions=trans,
        quantum_initial=obj.get("quantum_initial", 0),
    )


# -- generic ----------------------------------------------------------------------------


def machine_to_json(m) -> dict:
    if isinstance(m, (Mo1Qfa, Qcfa1)):
        return quantum_to_json(m)
    return classical_to_json(m)


def machine_from_json(obj: dict):
    kind = _req(obj, "kind", str, "$")
    if kind in CLASSICAL_KINDS:
        return classical_from_json(obj)
    if kind in QUANTUM_KINDS:
        return quantum_from_json(obj)
    raise SchemaError(f"$.kind: unknown machine kind {kind!r}")


def problem_to_json(p: RegularProblem) -> dict:
    return {
        "kind": "promise-problem",
        "name": p.name,
        "yes": classical_to_json(p.dfa_yes),
        "no": classical_to_json(p.dfa_no),
    }


def problem_from_json(obj: dict) -> PromiseProblem:
    """Accepts a family descriptor ``{"family", "params"}`` or a pair of DFAs."""
    if isinstance(obj, dict) and "family" in obj:
        name = _req(obj, "family", str, "$")
        params = obj.get("params", {})
        if not isinstance(params, dict):
            raise SchemaError("$.params: expected an object")
        try:
            return make_family(name, params)
        except AutomatonError as exc:
            raise SchemaError(f"$: {exc}") from None
    kind = _req(obj, "kind", str, "$")
    if kind != "promise-problem":
        raise SchemaError(f"$.kind: expected 'promise-problem', got {kind!r}")
    yes = classical_from_json(_req(obj, "yes", dict, "$"), "$.yes")
    no = classical_from_json(_req(obj, "no", dict, "$"), "$.no")
    for m, at in ((yes, "$.yes"), (no, "$.no")):
        if type(m) is not Dfa:
            raise SchemaError(f"{at}.kind: expected 'dfa'")
    try:
        return RegularProblem(yes, no, obj.get("name", "regular"))
    except AutomatonError as exc:
        raise SchemaError(f"$: {exc}") from None


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def load_json(path) -> dict:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def load_machine(path):
    return machine_from_json(load_json(path))


def save(obj: dict, path) -> None:
    Path(path).write_text(dumps(obj) + "\n", encoding="utf-8")


__all__ = [
    "LEFT_END",
    "RIGHT_END",
    "classical_from_json",
    "classical_to_json",
    "dumps",
    "load_json",
    "load_machine",
    "machine_from_json",
    "machine_to_json",
    "problem_from_json",
    "problem_to_json",
    "quantum_from_json",
    "quantum_to_json",
    "save",
]
