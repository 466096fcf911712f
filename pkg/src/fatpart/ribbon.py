"""Ribbon graphs with corner matrices: validation, monodromies, and a JSON file format.

A graph with ``n`` edges has signed labels ``+-1..+-n``. ``faces`` lists cycles of
side labels; corner ``a`` is the corner reached right after side ``a``. ``vertices``
lists cycles of corner labels in the order their matrices multiply into the vertex
monodromy. Writing ``phi`` for the face successor and ``tau`` for the vertex successor,
a valid map satisfies ``phi(a) = -tau(a)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

import numpy as np

from . import _exact
from .ensembles import EnsembleSpec
from .symfun import as_matrix


def _coerce_entry(x):
    if isinstance(x, (str, int, Fraction)) and not isinstance(x, bool):
        return Fraction(x)
    x = complex(x)
    return x if x.imag else x.real


def _cycles(raw) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(a) for a in cyc) for cyc in raw)


def _successor(cycles) -> dict[int, int]:
    out = {}
    for cyc in cycles:
        for i, a in enumerate(cyc):
            out[a] = cyc[(i + 1) % len(cyc)]
    return out


def canonical_rotation(cycle: Sequence[int]) -> tuple[int, ...]:
    """Rotate a cycle to start at its lowest absolute label (positive label first on ties)."""
    if not cycle:
        return ()
    start = min(range(len(cycle)), key=lambda i: (abs(cycle[i]), cycle[i] < 0))
    return tuple(cycle[start:]) + tuple(cycle[:start])


@dataclass(frozen=True)
class RibbonGraph:
    n: int
    faces: tuple
    vertices: tuple

    def __post_init__(self):
        object.__setattr__(self, "faces", _cycles(self.faces))
        object.__setattr__(self, "vertices", _cycles(self.vertices))
        if self.n < 0:
            raise ValueError("edge count must be >= 0")

    @property
    def F(self) -> int:
        return len(self.faces)

    @property
    def V(self) -> int:
        return len(self.vertices)

    @property
    def labels(self) -> list[int]:
        return [s * e for e in range(1, self.n + 1) for s in (1, -1)]

    @property
    def euler_characteristic(self) -> int:
        return self.F - self.n + self.V


@dataclass
class ValidationReport:
    genus: Optional[int]
    ok: bool
    violations: list[str] = field(default_factory=list)


def _label_violations(what: str, cycles, labels) -> list[str]:
    seen: dict[int, int] = {}
    for cyc in cycles:
        for a in cyc:
            seen[a] = seen.get(a, 0) + 1
    out = []
    for a in labels:
        if seen.get(a, 0) != 1:
            out.append(f"{what}: label {a} appears {seen.get(a, 0)} times")
    extra = sorted(set(seen) - set(labels))
    if extra:
        out.append(f"{what}: labels out of range {extra}")
    if any(len(c) == 0 for c in cycles):
        out.append(f"{what}: empty cycle")
    return out


def validate_graph(G: RibbonGraph) -> ValidationReport:
    """Check label usage, the face/vertex compatibility rule, connectivity and Euler genus."""
    labels = G.labels
    violations = _label_violations("faces", G.faces, labels) + _label_violations("vertices", G.vertices, labels)
    chi = G.euler_characteristic
    genus = (2 - chi) // 2 if chi <= 2 and chi % 2 == 0 else None
    if genus is None:
        violations.append(f"Euler characteristic F - n + V = {chi} is not 2 - 2g for an integer g >= 0")
    if not violations:
        phi, tau = _successor(G.faces), _successor(G.vertices)
        bad = [a for a in labels if phi[a] != -tau[a]]
        if bad:
            violations.append(f"face successor differs from minus vertex successor at labels {bad}")
        seen = {labels[0]} if labels else set()
        stack = list(seen)
        while stack:
            a = stack.pop()
            for b in (phi[a], -a):
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        if len(seen) != len(labels):
            violations.append("graph is not connected")
    return ValidationReport(genus, not violations, violations)


def builtin_graph(name: str, p: Optional[int] = None) -> RibbonGraph:
    """``gamma1`` segment, ``gamma2`` loop, ``gamma3`` (with ``p`` edges) path,
    ``gamma4`` two-edge bigon, ``gamma5`` loop with a pendant edge, ``torus`` one-vertex torus.
    """
    if name == "gamma1":
        return RibbonGraph(1, [[1, -1]], [[1], [-1]])
    if name == "gamma2":
        return RibbonGraph(1, [[1], [-1]], [[1, -1]])
    if name == "gamma3":
        if p is None or p < 1:
            raise ValueError("gamma3 needs p >= 1")
        face = list(range(1, p + 1)) + list(range(-p, 0))
        verts = [[-1]] + [[i, -(i + 1)] for i in range(1, p)] + [[p]]
        return RibbonGraph(p, [face], verts)
    if name == "gamma4":
        return RibbonGraph(2, [[1, 2], [-2, -1]], [[1, -2], [2, -1]])
    if name == "gamma5":
        return RibbonGraph(2, [[1], [-1, 2, -2]], [[1, -1, -2], [2]])
    if name == "torus":
        return RibbonGraph(2, [[1, 2, -1, -2]], [[1, -2, -1, 2]])
    raise ValueError(f"unknown builtin graph {name!r}")


def parse_graph_name(text: str) -> RibbonGraph:
    """``gamma3(4)`` or ``gamma3:4`` style names as well as the plain ones."""
    t = text.strip().replace(":", "(").rstrip(")")
    name, _, arg = t.partition("(")
    return builtin_graph(name, int(arg) if arg else None)


CORNER_TYPES = ("identity", "J", "explicit", "ensemble")


@dataclass(frozen=True)
class CornerSpec:
    type: str
    l: Optional[int] = None
    matrix: Optional[tuple] = None
    ensemble: Optional[EnsembleSpec] = None

    def __post_init__(self):
        if self.type not in CORNER_TYPES:
            raise ValueError(f"unknown corner type {self.type!r}")
        if self.type == "J" and (self.l is None or self.l < 0):
            raise ValueError("projector corner needs l >= 0")
        if self.type == "explicit" and self.matrix is None:
            raise ValueError("explicit corner needs a matrix")
        if self.type == "ensemble" and self.ensemble is None:
            raise ValueError("ensemble corner needs an ensemble spec")

    @classmethod
    def identity(cls) -> "CornerSpec":
        return cls("identity")

    @classmethod
    def projector(cls, l: int) -> "CornerSpec":
        return cls("J", l=l)

    @classmethod
    def explicit(cls, matrix) -> "CornerSpec":
        return cls("explicit", matrix=tuple(tuple(_coerce_entry(x) for x in row) for row in matrix))

    @classmethod
    def placeholder(cls, e: EnsembleSpec | str) -> "CornerSpec":
        return cls("ensemble", ensemble=EnsembleSpec.parse(e) if isinstance(e, str) else e)

    @property
    def is_placeholder(self) -> bool:
        return self.type == "ensemble"

    def to_matrix(self, N: int) -> np.ndarray:
        if self.type == "identity":
            return _exact.identity(N)
        if self.type == "J":
            return _exact.projector(self.l, N)
        if self.type == "explicit":
            M = as_matrix(self.matrix)
            if M.shape != (N, N):
                raise ValueError(f"corner matrix has shape {M.shape}, expected {(N, N)}")
            return M
        raise ValueError("ensemble placeholders have no fixed matrix")


@dataclass(frozen=True)
class CornerAssignment:
    corners: Mapping[int, CornerSpec]
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("matrix order must be >= 1")
        for c in self.corners.values():
            if c.type == "J" and c.l > self.N:
                raise ValueError(f"projector rank {c.l} exceeds N={self.N}")

    @classmethod
    def uniform(cls, G: RibbonGraph, N: int, spec: Optional[CornerSpec] = None) -> "CornerAssignment":
        return cls({a: spec or CornerSpec.identity() for a in G.labels}, N)

    def replace(self, updates: Mapping[int, CornerSpec]) -> "CornerAssignment":
        merged = dict(self.corners)
        merged.update(updates)
        return CornerAssignment(merged, self.N)

    def check(self, G: RibbonGraph) -> None:
        missing = [a for a in G.labels if a not in self.corners]
        if missing:
            raise ValueError(f"corners not assigned: {missing}")

    def matrix(self, a: int) -> np.ndarray:
        return self.corners[a].to_matrix(self.N)


def _product(mats, N: int, exact: bool):
    out = _exact.identity(N) if exact else np.eye(N, dtype=complex)
    for m in mats:
        out = out @ m
    return out


def _unify(mats: list) -> tuple[list, bool]:
    exact = all(m.dtype == object for m in mats)
    if not exact:
        mats = [np.asarray(m.tolist() if m.dtype == object else m, dtype=complex) for m in mats]
    return mats, exact


@dataclass
class Monodromies:
    faces: list
    vertices: list
    dressed_faces: Optional[list] = None


def vertex_monodromy(G: RibbonGraph, A: CornerAssignment, v: int):
    mats, exact = _unify([A.matrix(a) for a in G.vertices[v]])
    return _product(mats, A.N, exact)


def monodromies(G: RibbonGraph, A: CornerAssignment, Z: Optional[Mapping[int, np.ndarray]] = None) -> Monodromies:
    """Face, vertex and (with ``Z``) dressed face monodromies.

    Vertices and faces containing ensemble placeholders come back as ``None``.
    ``Z`` maps edge ``i >= 1`` to ``Z_i``; ``Z_{-i} = Z_i^dagger``.
    """
    A.check(G)
    verts = []
    for v, cyc in enumerate(G.vertices):
        if any(A.corners[a].is_placeholder for a in cyc):
            verts.append(None)
        else:
            verts.append(vertex_monodromy(G, A, v))
    faces, dressed = [], [] if Z is not None else None
    for cyc in G.faces:
        cyc = canonical_rotation(cyc)
        if any(A.corners[a].is_placeholder for a in cyc):
            faces.append(None)
            if dressed is not None:
                dressed.append(None)
            continue
        mats, exact = _unify([A.matrix(a) for a in cyc])
        faces.append(_product(mats, A.N, exact))
        if Z is not None:
            pairs = []
            for a, m in zip(cyc, mats):
                z = np.asarray(Z[abs(a)], dtype=complex)
                pairs += [z if a > 0 else z.conj().T, np.asarray(m.tolist(), dtype=complex)]
            dressed.append(_product(pairs, A.N, False))
    return Monodromies(faces, verts, dressed)


def dressed_face_batch(G: RibbonGraph, corner_mats: Mapping[int, np.ndarray], Z: Mapping[int, np.ndarray]) -> list:
    """Stacked dressed face products ``prod_a Z_a M_a`` for MC.

    ``Z[i]`` has shape ``(S, N, N)``; ``corner_mats[a]`` is ``(N, N)`` or ``(S, N, N)``.
    """
    out = []
    for cyc in G.faces:
        acc = None
        for a in canonical_rotation(cyc):
            z = Z[abs(a)]
            if a < 0:
                z = np.conj(np.swapaxes(z, -1, -2))
            term = z @ corner_mats[a]
            acc = term if acc is None else acc @ term
        out.append(acc)
    return out


# --- file format -----------------------------------------------------------------


def _number_from_json(x):
    if isinstance(x, bool):
        raise ValueError("booleans are not matrix entries")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return x
    if isinstance(x, str):
        return Fraction(x)
    raise ValueError(f"bad matrix entry {x!r}")


def _number_to_json(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, int):
        return x
    return float(x)


def _entry_from_json(pair):
    if not isinstance(pair, list) or len(pair) != 2:
        raise ValueError("matrix entries are [re, im] pairs")
    re_, im_ = (_number_from_json(v) for v in pair)
    if isinstance(im_, Fraction) and im_ == 0:
        return re_
    return complex(float(re_), float(im_))


def _entry_to_json(x):
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, float):
        return [x, 0.0]
    return [_number_to_json(x), 0]


def corner_from_json(d: Mapping) -> CornerSpec:
    t = d.get("type")
    if t == "identity":
        return CornerSpec.identity()
    if t == "J":
        return CornerSpec.projector(int(d["l"]))
    if t == "explicit":
        return CornerSpec.explicit([[_entry_from_json(e) for e in row] for row in d["matrix"]])
    if t == "ensemble":
        return CornerSpec.placeholder(d["spec"])
    raise ValueError(f"unknown corner type {t!r}")


def corner_to_json(c: CornerSpec) -> dict:
    if c.type == "identity":
        return {"type": "identity"}
    if c.type == "J":
        return {"type": "J", "l": c.l}
    if c.type == "explicit":
        return {"type": "explicit", "matrix": [[_entry_to_json(e) for e in row] for row in c.matrix]}
    return {"type": "ensemble", "spec": str(c.ensemble)}


def graph_from_dict(d: Mapping) -> tuple[RibbonGraph, Optional[CornerAssignment]]:
    G = RibbonGraph(int(d["n"]), d["faces"], d["vertices"])
    A = None
    if "corners" in d:
        A = CornerAssignment({int(k): corner_from_json(v) for k, v in d["corners"].items()}, int(d["N"]))
    return G, A


def graph_to_dict(G: RibbonGraph, A: Optional[CornerAssignment] = None) -> dict:
    d = {"n": G.n, "faces": [list(c) for c in G.faces], "vertices": [list(c) for c in G.vertices]}
    if A is not None:
        keys = sorted(A.corners, key=lambda a: (abs(a), a < 0))
        d["corners"] = {str(a): corner_to_json(A.corners[a]) for a in keys}
        d["N"] = A.N
    return d


def dumps_graph(G: RibbonGraph, A: Optional[CornerAssignment] = None) -> str:
    """Canonical text: one top-level field per line, one corner per line."""
    d = graph_to_dict(G, A)
    lines = []
    for key, val in d.items():
        if key == "corners":
            body = ",\n".join(f"    {json.dumps(k)}: {json.dumps(v)}" for k, v in val.items())
            lines.append(f'  "corners": {{\n{body}\n  }}')
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(val)}")
    return "{\n" + ",\n".join(lines) + "\n}\n"


def loads_graph(text: str) -> tuple[RibbonGraph, Optional[CornerAssignment]]:
    return graph_from_dict(json.loads(text))


def load_graph(path) -> tuple[RibbonGraph, Optional[CornerAssignment]]:
    with open(path, encoding="utf-8") as fh:
        return loads_graph(fh.read())


def save_graph(path, G: RibbonGraph, A: Optional[CornerAssignment] = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_graph(G, A))
