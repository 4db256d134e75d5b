"""JSON input format.

Indices in every sparse table are 1-based, matching basis labels ``e1, e2,
...`` and ``x1, x2, ...``.  Tables:

``A.mult``       ``[i, j, k, v]``: coefficient ``v`` of ``e_k`` in ``e_i e_j``
``L.bracket``    ``[i, j, k, v]``: coefficient of ``x_k`` in ``[x_i, x_j]`` (taken
                 literally, antisymmetric partners are not filled in)
``L.pmap``       ``[i, k, v]``: coefficient of ``x_k`` in ``x_i^[p]``
``action``       ``[a, j, k, v]``: coefficient of ``x_k`` in ``e_a . x_j``
``anchor``       ``[i, j, k, v]``: coefficient of ``e_k`` in ``rho(x_i)(e_j)``

Optional sections ``cochain``, ``deformation``, ``automorphism`` and
``candidate`` carry data for the cohomology and deformation commands; see the
README for their layout.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Any

import numpy as np

from .algebra import AlgebraPresentation, LiePresentation, RLRAlgebra
from .gfp import ModulusError, check_modulus


class InputError(ValueError):
    """Malformed input; the message names the offending field."""


@dataclass(eq=False)
class CochainData:
    """Raw degree-2 data ``(mu, omega, theta)``.

    ``mu`` is a full bilinear tensor, ``theta`` one A-endomorphism per basis
    vector of L.  ``omega`` is a table on basis vectors in characteristic 2 and
    a table on all ``p^dim L`` vectors otherwise (row index in
    :func:`vector_index` order).
    """

    mu: np.ndarray
    omega: np.ndarray
    theta: np.ndarray

    def __eq__(self, other):
        return (
            isinstance(other, CochainData)
            and np.array_equal(self.mu, other.mu)
            and np.array_equal(self.omega, other.omega)
            and np.array_equal(self.theta, other.theta)
        )

    __hash__ = object.__hash__


@dataclass(eq=False)
class CandidateData:
    gamma: np.ndarray  # (dL, dL): gamma[i] is the image of x_i
    d: np.ndarray  # (dA, dA) derivation matrix

    def __eq__(self, other):
        return isinstance(other, CandidateData) and np.array_equal(self.gamma, other.gamma) and np.array_equal(self.d, other.d)

    __hash__ = object.__hash__


@dataclass(eq=False)
class AlgebraFile:
    p: int
    name: str = ""
    A: AlgebraPresentation | None = None
    L: LiePresentation | None = None
    act: np.ndarray | None = None
    anchor: np.ndarray | None = None
    cochain: CochainData | None = None
    deformation: Any = None  # deformation.TruncatedDeformation
    automorphism: Any = None  # deformation.FormalAutomorphism
    candidate: CandidateData | None = None
    meta: dict = field(default_factory=dict)

    def rlr(self) -> RLRAlgebra:
        if self.A is None or self.L is None:
            raise InputError("both A and L sections are required")
        return RLRAlgebra(self.A, self.L, self.act, self.anchor, self.name)

    @property
    def has_rlr(self) -> bool:
        return self.A is not None and self.L is not None

    def __eq__(self, other):
        if not isinstance(other, AlgebraFile):
            return False

        def same(a, b):
            if a is None or b is None:
                return a is None and b is None
            if isinstance(a, np.ndarray):
                return np.array_equal(a, b)
            return a == b

        return (
            self.p == other.p
            and self.name == other.name
            and same(self.A, other.A)
            and same(self.L, other.L)
            and same(self.act, other.act)
            and same(self.anchor, other.anchor)
            and same(self.cochain, other.cochain)
            and same(self.deformation, other.deformation)
            and same(self.automorphism, other.automorphism)
            and same(self.candidate, other.candidate)
        )

    __hash__ = object.__hash__


def vector_index(v, p: int) -> int:
    """Position of ``v`` in the lexicographic enumeration of GF(p)^d."""
    out = 0
    for c in np.asarray(v, dtype=np.int64).reshape(-1):
        out = out * p + int(c) % p
    return out


def index_vector(idx: int, p: int, d: int) -> np.ndarray:
    out = np.zeros(d, dtype=np.int64)
    for k in range(d - 1, -1, -1):
        out[k] = idx % p
        idx //= p
    return out


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


def _get(obj: dict, key: str, where: str, kind=None, default=...):
    if key not in obj:
        if default is not ...:
            return default
        raise InputError(f"{where}: missing field '{key}'")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise InputError(f"{where}.{key}: expected {kind.__name__ if isinstance(kind, type) else kind}")
    return val


def _int(v, where: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise InputError(f"{where}: expected an integer, got {v!r}")
    return v


def _fill(table, shape: tuple[int, ...], p: int, where: str) -> np.ndarray:
    """Dense tensor from 1-based sparse entries ``[idx..., value]``."""
    out = np.zeros(shape, dtype=np.int64)
    if not isinstance(table, list):
        raise InputError(f"{where}: expected a list of entries")
    for n, entry in enumerate(table):
        w = f"{where}[{n}]"
        if not isinstance(entry, list) or len(entry) != len(shape) + 1:
            raise InputError(f"{w}: expected {len(shape) + 1} numbers")
        idx = [_int(e, w) for e in entry[:-1]]
        val = _int(entry[-1], w)
        for i, (k, s) in enumerate(zip(idx, shape)):
            if not 1 <= k <= s:
                raise InputError(f"{w}: index {k} out of range 1..{s} in position {i + 1}")
        if not 0 <= val < p:
            raise InputError(f"{w}: value {val} is not a residue mod {p}")
        out[tuple(k - 1 for k in idx)] = val
    return out


def _labels(obj, dim, where, prefix):
    labels = obj.get("labels")
    if labels is None:
        return tuple(f"{prefix}{i + 1}" for i in range(dim))
    if not isinstance(labels, list) or len(labels) != dim or not all(isinstance(s, str) for s in labels):
        raise InputError(f"{where}.labels: expected {dim} strings")
    return tuple(labels)


def _omega_table(entries, p: int, dL: int, where: str) -> np.ndarray:
    """``[[coords...], [values...]]`` entries for a full table on GF(p)^dL."""
    out = np.zeros((p**dL, dL), dtype=np.int64)
    if not isinstance(entries, list):
        raise InputError(f"{where}: expected a list")
    for n, entry in enumerate(entries):
        w = f"{where}[{n}]"
        if not (isinstance(entry, list) and len(entry) == 2 and all(isinstance(e, list) and len(e) == dL for e in entry)):
            raise InputError(f"{w}: expected [[point], [value]] with {dL} coordinates each")
        pt = [_int(c, w) for c in entry[0]]
        val = [_int(c, w) for c in entry[1]]
        if not all(0 <= c < p for c in pt + val):
            raise InputError(f"{w}: coordinates must be residues mod {p}")
        out[vector_index(pt, p)] = val
    return out


def parse_data(doc: Any) -> AlgebraFile:
    if not isinstance(doc, dict):
        raise InputError("top level: expected an object")
    p = _int(_get(doc, "p", "top level"), "p")
    try:
        check_modulus(p)
    except ModulusError as exc:
        raise InputError(f"p: {exc}") from None
    f = AlgebraFile(p=p, name=str(doc.get("name", "")))

    if "A" in doc and doc["A"] is not None:
        a = _get(doc, "A", "top level", dict)
        dA = _int(_get(a, "dim", "A"), "A.dim")
        mult = _fill(_get(a, "mult", "A", default=[]), (dA, dA, dA), p, "A.mult")
        f.A = AlgebraPresentation(p, dA, mult, name=str(a.get("name", "A")), basis_labels=_labels(a, dA, "A", "e"))
    if "L" in doc and doc["L"] is not None:
        l = _get(doc, "L", "top level", dict)
        dL = _int(_get(l, "dim", "L"), "L.dim")
        br = _fill(_get(l, "bracket", "L", default=[]), (dL, dL, dL), p, "L.bracket")
        pm = None
        if l.get("pmap") is not None:
            pm = _fill(l["pmap"], (dL, dL), p, "L.pmap")
        f.L = LiePresentation(p, dL, br, pm, name=str(l.get("name", "L")), basis_labels=_labels(l, dL, "L", "x"))
    if f.A is not None and f.L is not None:
        dA, dL = f.A.dim, f.L.dim
        act = _fill(_get(doc, "action", "top level", default=[]), (dA, dL, dL), p, "action")
        anc = _fill(_get(doc, "anchor", "top level", default=[]), (dL, dA, dA), p, "anchor")
        f.act = act
        f.anchor = np.transpose(anc, (0, 2, 1)).copy()  # anchor[i][k, j]
    else:
        for key in ("action", "anchor"):
            if doc.get(key):
                raise InputError(f"{key}: requires both A and L sections")

    needs_rlr = [k for k in ("cochain", "deformation", "automorphism", "candidate") if doc.get(k) is not None]
    if needs_rlr and not f.has_rlr:
        raise InputError(f"{needs_rlr[0]}: requires both A and L sections")
    if doc.get("cochain") is not None:
        f.cochain = _parse_cochain(doc["cochain"], f, "cochain")
    if doc.get("deformation") is not None:
        f.deformation = _parse_deformation(doc["deformation"], f)
    if doc.get("automorphism") is not None:
        f.automorphism = _parse_automorphism(doc["automorphism"], f)
    if doc.get("candidate") is not None:
        c = doc["candidate"]
        if not isinstance(c, dict):
            raise InputError("candidate: expected an object")
        dA, dL = f.A.dim, f.L.dim
        gamma = _fill(c.get("gamma", []), (dL, dL), p, "candidate.gamma")
        dmat = _fill(c.get("d", []), (dA, dA), p, "candidate.d")
        f.candidate = CandidateData(gamma, dmat.T.copy())
    if "meta" in doc:
        if not isinstance(doc["meta"], dict):
            raise InputError("meta: expected an object")
        f.meta = dict(doc["meta"])
    return f


def _parse_cochain(c, f: AlgebraFile, where: str) -> CochainData:
    if not isinstance(c, dict):
        raise InputError(f"{where}: expected an object")
    p, dA, dL = f.p, f.A.dim, f.L.dim
    mu = _fill(c.get("mu", []), (dL, dL, dL), p, f"{where}.mu")
    if p == 2:
        omega = _fill(c.get("omega", []), (dL, dL), p, f"{where}.omega")
    else:
        omega = _omega_table(c.get("omega", []), p, dL, f"{where}.omega")
    theta = np.transpose(_fill(c.get("theta", []), (dL, dA, dA), p, f"{where}.theta"), (0, 2, 1)).copy()
    return CochainData(mu, omega, theta)


def _series_keys(obj, order: int, where: str) -> dict[int, Any]:
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object keyed by t-degree")
    out = {}
    for k, v in obj.items():
        try:
            deg = int(k)
        except ValueError:
            raise InputError(f"{where}: key {k!r} is not a t-degree") from None
        if not 1 <= deg <= order:
            raise InputError(f"{where}: t-degree {deg} outside 1..{order}")
        out[deg] = v
    return out


def _parse_deformation(d, f: AlgebraFile):
    from .deformation import TruncatedDeformation

    if not isinstance(d, dict):
        raise InputError("deformation: expected an object")
    order = _int(_get(d, "order", "deformation"), "deformation.order")
    if order < 0:
        raise InputError("deformation.order: must be nonnegative")
    R = f.rlr()
    base = TruncatedDeformation.undeformed(R, order)
    mu, omega, rho = base.mu.copy(), base.omega.copy(), base.rho.copy()
    p, dA, dL = f.p, f.A.dim, f.L.dim
    for deg, tab in _series_keys(d.get("mu", {}), order, "deformation.mu").items():
        mu[deg] = _fill(tab, (dL, dL, dL), p, f"deformation.mu.{deg}")
    for deg, tab in _series_keys(d.get("omega", {}), order, "deformation.omega").items():
        if p == 2:
            omega[deg] = _fill(tab, (dL, dL), p, f"deformation.omega.{deg}")
        else:
            omega[deg] = _omega_table(tab, p, dL, f"deformation.omega.{deg}")
    for deg, tab in _series_keys(d.get("rho", {}), order, "deformation.rho").items():
        rho[deg] = np.transpose(_fill(tab, (dL, dA, dA), p, f"deformation.rho.{deg}"), (0, 2, 1))
    return TruncatedDeformation(R, mu, omega, rho)


def _parse_automorphism(a, f: AlgebraFile):
    from .deformation import FormalAutomorphism

    if not isinstance(a, dict):
        raise InputError("automorphism: expected an object")
    order = _int(_get(a, "order", "automorphism"), "automorphism.order")
    dL = f.L.dim
    phi = np.zeros((order + 1, dL, dL), dtype=np.int64)
    phi[0] = np.eye(dL, dtype=np.int64)
    for deg, tab in _series_keys(a.get("phi", {}), order, "automorphism.phi").items():
        phi[deg] = _fill(tab, (dL, dL), f.p, f"automorphism.phi.{deg}").T
    return FormalAutomorphism(f.p, phi)


def parse(text: str) -> AlgebraFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_data(doc)


def load(path) -> AlgebraFile:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    return parse(text)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _sparse(t: np.ndarray) -> list[list[int]]:
    t = np.asarray(t, dtype=np.int64)
    return [[*(i + 1 for i in idx), int(t[idx])] for idx in product(*(range(s) for s in t.shape)) if t[idx]]


def _omega_entries(table: np.ndarray, p: int, dL: int) -> list:
    out = []
    for idx in range(table.shape[0]):
        if table[idx].any():
            out.append([index_vector(idx, p, dL).tolist(), [int(c) for c in table[idx]]])
    return out


def to_data(f: AlgebraFile) -> dict:
    doc: dict[str, Any] = {"p": f.p}
    if f.name:
        doc["name"] = f.name
    if f.A is not None:
        doc["A"] = {"dim": f.A.dim, "labels": list(f.A.basis_labels), "mult": _sparse(f.A.mult), "name": f.A.name}
    if f.L is not None:
        sec = {"dim": f.L.dim, "labels": list(f.L.basis_labels), "bracket": _sparse(f.L.bracket), "name": f.L.name}
        if f.L.pmap_on_basis is not None:
            sec["pmap"] = _sparse(f.L.pmap_on_basis)
        doc["L"] = sec
    if f.has_rlr:
        doc["action"] = _sparse(f.act)
        doc["anchor"] = _sparse(np.transpose(f.anchor, (0, 2, 1)))
    if f.cochain is not None:
        c = f.cochain
        doc["cochain"] = {
            "mu": _sparse(c.mu),
            "omega": _sparse(c.omega) if f.p == 2 else _omega_entries(c.omega, f.p, f.L.dim),
            "theta": _sparse(np.transpose(c.theta, (0, 2, 1))),
        }
    if f.deformation is not None:
        d = f.deformation
        sec = {"order": d.order, "mu": {}, "omega": {}, "rho": {}}
        for k in range(1, d.order + 1):
            if d.mu[k].any():
                sec["mu"][str(k)] = _sparse(d.mu[k])
            if d.omega[k].any():
                sec["omega"][str(k)] = _sparse(d.omega[k]) if f.p == 2 else _omega_entries(d.omega[k], f.p, f.L.dim)
            if d.rho[k].any():
                sec["rho"][str(k)] = _sparse(np.transpose(d.rho[k], (0, 2, 1)))
        doc["deformation"] = sec
    if f.automorphism is not None:
        a = f.automorphism
        doc["automorphism"] = {
            "order": a.order,
            "phi": {str(k): _sparse(a.phi[k].T) for k in range(1, a.order + 1) if a.phi[k].any()},
        }
    if f.candidate is not None:
        doc["candidate"] = {"gamma": _sparse(f.candidate.gamma), "d": _sparse(f.candidate.d.T)}
    if f.meta:
        doc["meta"] = f.meta
    return doc


def serialize(f: AlgebraFile) -> str:
    return json.dumps(to_data(f), sort_keys=True, indent=1) + "\n"
