"""Truncated partition series attached to ribbon graphs, hypergeometric tau series,
solvability classification, and Monte-Carlo evaluation of the matching matrix integrals.

Conventions: ``cfg.face_specs[i]`` is the unscaled specialization ``p^(i)`` of face ``i``;
series terms use ``s_lam(N p^(i))`` and MC integrands use the matching face factor
``exp(N sum_m p_m tr F^m / m)`` in closed form. ``cutoff`` bounds ``|lam|``, the weight of
the partition actually summed (the fat partition in fat series).
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

import numpy as np

from . import _exact, kernels
from .ensembles import EnsembleSpec, closed_form_schur_average, sample_complex_ginibre, sample_ensemble
from .montecarlo import MIN_SAMPLES, MCEstimate, run_blocks, summarize
from .partitions import (
    Partition,
    PartitionConstraints,
    conjugate,
    enumerate_partitions,
    is_even,
    schur_at_pinfty,
)
from .ribbon import (
    CornerAssignment,
    CornerSpec,
    RibbonGraph,
    corner_from_json,
    dressed_face_batch,
    graph_from_dict,
    load_graph,
    parse_graph_name,
    validate_graph,
    vertex_monodromy,
)
from .symfun import (
    SchurEvaluator,
    Specialization,
    format_number,
    matrix_power_sums,
    parse_number,
)
from ._exact import is_exact_scalar

SINGULAR_TOL = 1e-8
MAX_REJECTED_FRACTION = 0.01


@dataclass
class SeriesValue:
    value: object
    max_weight: int
    truncated_exactly: bool
    term_count: int


def _min_bound(*bounds):
    finite = [b for b in bounds if b is not None]
    return min(finite) if finite else None


def _is_int(x) -> bool:
    return is_exact_scalar(x) and Fraction(x).denominator == 1


def _spectral_length_bound(V) -> int:
    """Number of nonzero eigenvalues (with multiplicity); ``s_lam(V) = 0`` beyond it."""
    n = V.shape[0]
    if V.dtype == object:
        P = _exact.identity(n)
        for _ in range(n):
            P = P @ V
        return _exact.rank(P)
    return int(np.linalg.matrix_rank(np.linalg.matrix_power(V, n)))


# --- model configuration ----------------------------------------------------------


@dataclass
class ModelConfig:
    graph: RibbonGraph
    assignment: CornerAssignment
    face_specs: list
    cutoff: int = 8

    def __post_init__(self):
        self.face_specs = [Specialization.parse(s) if isinstance(s, str) else s for s in self.face_specs]

    @property
    def N(self) -> int:
        return self.assignment.N

    @property
    def averaged_vertices(self) -> dict[int, EnsembleSpec]:
        """Vertices whose monodromy is a single ensemble placeholder (other corners identity)."""
        out = {}
        for v, cyc in enumerate(self.graph.vertices):
            specs = [self.assignment.corners[a] for a in cyc]
            holders = [c for c in specs if c.is_placeholder]
            if not holders:
                continue
            if len(holders) > 1 or any(c.type != "identity" for c in specs if not c.is_placeholder):
                raise ValueError(f"vertex {v} must hold one placeholder and otherwise identity corners")
            out[v] = holders[0].ensemble
        return out

    def check(self) -> None:
        rep = validate_graph(self.graph)
        if not rep.ok:
            raise ValueError("invalid graph: " + "; ".join(rep.violations))
        if len(self.face_specs) != self.graph.F:
            raise ValueError(f"need {self.graph.F} face specs, got {len(self.face_specs)}")
        self.assignment.check(self.graph)
        for v, e in self.averaged_vertices.items():
            if e.matrix_order != self.N:
                raise ValueError(f"vertex {v}: ensemble {e} has matrix order {e.matrix_order}, model has N={self.N}")
        if self.cutoff < 0:
            raise ValueError("cutoff must be >= 0")


def _resolve_graph(ref, base_dir: str):
    if isinstance(ref, Mapping):
        return graph_from_dict(ref)
    path = os.path.join(base_dir, ref)
    if os.path.exists(path):
        return load_graph(path)
    return parse_graph_name(ref), None


def config_from_dict(d: Mapping, base_dir: str = ".") -> ModelConfig:
    """Build a config from ``{"graph", "corners"?, "N"?, "faces", "cutoff"?}``.

    ``graph`` is a builtin name (``gamma3(2)``), a graph-file path, or an inline graph
    object. Corners and ``N`` given here override those in the graph file; missing
    corners default to identity.
    """
    G, A = _resolve_graph(d["graph"], base_dir)
    N = int(d.get("N", A.N if A else 0))
    corners = dict(A.corners) if A else {}
    for k, v in d.get("corners", {}).items():
        corners[int(k)] = corner_from_json(v)
    for a in G.labels:
        corners.setdefault(a, CornerSpec.identity())
    cfg = ModelConfig(G, CornerAssignment(corners, N), list(d["faces"]), int(d.get("cutoff", 8)))
    cfg.check()
    return cfg


def load_config(path) -> ModelConfig:
    with open(path, encoding="utf-8") as fh:
        d = json.load(fh)
    return config_from_dict(d, os.path.dirname(os.path.abspath(path)))


# --- graph series -------------------------------------------------------------------


def _scaled(N: int, s: Specialization) -> Specialization:
    return Specialization.scaled(N, s)


def _sum(terms, exact: bool):
    total = Fraction(0) if exact else 0.0
    for t in terms:
        total = total + t
    if not exact and isinstance(total, complex) and total.imag == 0:
        total = total.real
    return total


class _GraphSeries:
    """Shared machinery of zu_mm_series and mixed_series."""

    def __init__(self, cfg: ModelConfig):
        cfg.check()
        self.cfg = cfg
        self.N = cfg.N
        self.K = max(cfg.cutoff, 1)
        self.averaged = cfg.averaged_vertices
        kinds = {e.kind for e in self.averaged.values()}
        if "gin" in kinds:
            raise ValueError("complex Ginibre vertices have no closed-form average")
        self.kinds = kinds
        self.fixed = {}
        for v in range(cfg.graph.V):
            if v not in self.averaged:
                self.fixed[v] = vertex_monodromy(cfg.graph, cfg.assignment, v)
        self.faces = [_scaled(self.N, s) for s in cfg.face_specs]
        self.exact = all(s.exact for s in self.faces) and all(V.dtype == object for V in self.fixed.values())

    def bounds(self):
        length = [self.N] + [s.length_bound() for s in self.faces]
        length += [_spectral_length_bound(V) for V in self.fixed.values()]
        for e in self.averaged.values():
            if e.kind == "sp":
                length.append(2 * e.size)
            elif e.kind == "orth":
                length.append(e.size)
            elif e.kind == "qgin":
                length.append(e.size + e.L)
        width = [s.width_bound() for s in self.faces]
        return _min_bound(*length), _min_bound(*width)

    def evaluators(self, negate: bool):
        fe = []
        for s in self.faces:
            p = s.to_power_sums(self.K)
            fe.append(SchurEvaluator(-p if negate else p))
        ve = {}
        for v, V in self.fixed.items():
            p = matrix_power_sums(V, self.K)
            ve[v] = SchurEvaluator(-p if negate else p)
        return fe, ve

    def pinf_factor(self, lam: Partition):
        return (Fraction(self.N) ** lam.weight * schur_at_pinfty(lam)) ** (-self.cfg.graph.n)

    def direct(self) -> SeriesValue:
        lb, wb = self.bounds()
        fat = bool(self.kinds & {"sp", "qgin"})
        even = "orth" in self.kinds
        cls = "fat" if fat else ("even-parts" if even else "all")
        lams = enumerate_partitions(PartitionConstraints((0, self.cfg.cutoff), lb, wb, cls))
        if fat and even:
            lams = [lam for lam in lams if is_even(lam)]
        fe, ve = self.evaluators(negate=False)
        terms = []
        for lam in lams:
            t = self.pinf_factor(lam)
            for ev in fe:
                t = t * ev(lam)
            for ev in ve.values():
                t = t * ev(lam)
            for e in self.averaged.values():
                t = t * closed_form_schur_average(e, lam)
            terms.append(t)
        done = lb is not None and wb is not None and self.cfg.cutoff >= lb * wb
        return SeriesValue(_sum(terms, self.exact), self.cfg.cutoff, done, len(lams))

    def orth_dual(self) -> SeriesValue:
        """Even-part sum rewritten over conjugate (fat) partitions with negated power sums."""
        if self.kinds != {"orth"}:
            raise ValueError("the dual form needs orthogonal averages only")
        lb, wb = self.bounds()
        mus = enumerate_partitions(PartitionConstraints((0, self.cfg.cutoff), wb, lb, "fat"))
        fe, ve = self.evaluators(negate=True)
        terms = []
        for mu in mus:
            t = self.pinf_factor(mu)
            for ev in fe:
                t = t * ev(mu)
            for ev in ve.values():
                t = t * ev(mu)
            for e in self.averaged.values():
                t = t * closed_form_schur_average(e, conjugate(mu))
            terms.append(t)
        done = lb is not None and wb is not None and self.cfg.cutoff >= lb * wb
        return SeriesValue(_sum(terms, self.exact), self.cfg.cutoff, done, len(mus))


def zu_mm_series(cfg: ModelConfig) -> SeriesValue:
    """``sum_lam (s_lam(N p_inf))^-n prod_faces s_lam(N p^(i)) prod_vertices s_lam(V_i)``."""
    gs = _GraphSeries(cfg)
    if gs.averaged:
        raise ValueError("config has averaged vertices; use mixed_series")
    return gs.direct()


def mixed_series(cfg: ModelConfig, orth_form: str = "direct") -> SeriesValue:
    """Graph series with averaged vertices replaced by their closed-form Schur means.

    ``orth_form="dual"`` evaluates orthogonal-only models over fat partitions instead.
    """
    gs = _GraphSeries(cfg)
    if orth_form == "dual":
        return gs.orth_dual()
    if orth_form != "direct":
        raise ValueError(f"unknown orth_form {orth_form!r}")
    return gs.direct()


# --- content functions and hypergeometric tau series --------------------------------


def _split_top(text: str) -> list[tuple[str, str]]:
    """Split ``a*b/c`` at top-level operators into ``[(op, factor), ...]``."""
    out, depth, cur, op = [], 0, "", "*"
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "*/":
            out.append((op, cur.strip()))
            op, cur = ch, ""
        else:
            cur += ch
    out.append((op, cur.strip()))
    return out


def _linear(body: str):
    """Return ``a`` for ``a+c``, ``c+a``, ``c`` or ``c-a``; ``None`` for a plain number."""
    s = body.replace(" ", "")
    if s == "c":
        return Fraction(0)
    if s.endswith("+c"):
        return parse_number(s[:-2])
    if s.startswith("c") and s[1:2] in "+-":
        return parse_number(s[1:])
    return None


@dataclass(frozen=True)
class ContentFunction:
    """``r(c) = scale * prod(a + c for a in zeros) / prod(b + c for b in poles)``."""

    scale: object = Fraction(1)
    zeros: tuple = ()
    poles: tuple = ()

    @classmethod
    def parse(cls, text: str) -> "ContentFunction":
        """Products and quotients of numbers and ``(a+c)`` factors, e.g. ``1/2*(2+c)/(c-1)``."""
        scale, zeros, poles = Fraction(1), [], []
        try:
            for op, fac in _split_top(text.strip()):
                power = 1
                m = re.fullmatch(r"(.*)\^\s*(-?\d+)", fac)
                if m:
                    fac, power = m.group(1).strip(), int(m.group(2))
                if op == "/":
                    power = -power
                inner = fac[1:-1] if fac.startswith("(") and fac.endswith(")") else fac
                a = _linear(inner)
                if a is None:
                    scale = scale * parse_number(inner) ** power
                else:
                    (zeros if power > 0 else poles).extend([a] * abs(power))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed content function {text!r}") from exc
        return cls(scale, tuple(zeros), tuple(poles))

    def __str__(self) -> str:
        def lin(a):
            return "(c)" if a == 0 else f"({format_number(a)}+c)"

        out = format_number(self.scale)
        out += "".join("*" + lin(a) for a in self.zeros)
        out += "".join("/" + lin(b) for b in self.poles)
        return out

    @property
    def exact(self) -> bool:
        return all(is_exact_scalar(x) for x in (self.scale, *self.zeros, *self.poles))

    def __call__(self, c):
        num = self.scale
        for a in self.zeros:
            num = num * (a + c)
        for b in self.poles:
            if b + c == 0:
                raise ZeroDivisionError(f"pole at content {c}")
            num = num / (b + c)
        return num

    def product(self, lam: Partition):
        out = Fraction(1) if self.exact else 1.0
        for i, j in lam.cells():
            try:
                out = out * self(j - i)
            except ZeroDivisionError:
                raise ValueError(f"r has a pole at content {j - i}: cell ({i},{j}) of {lam}") from None
        return out

    def length_bound(self) -> Optional[int]:
        return _min_bound(*(int(a) for a in self.zeros if _is_int(a) and a > 0))

    def width_bound(self) -> Optional[int]:
        return _min_bound(*(int(-a) for a in self.zeros if _is_int(a) and a <= 0))


def hyp_tau_series(kind: str, r: ContentFunction | str, p: Specialization | str, N: Optional[int],
                   cutoff: int, extra: Optional[Specialization] = None) -> SeriesValue:
    """``kp``: ``sum s_lam(p) prod r(c) [s_lam(extra)]`` over ``l(lam) <= N``.
    ``dkp``: ``sum s_Lam(p) prod_{cells of Lam} r(c)`` over fat ``Lam`` with ``l(Lam) <= N``.
    """
    if isinstance(r, str):
        r = ContentFunction.parse(r)
    if isinstance(p, str):
        p = Specialization.parse(p)
    if kind not in ("kp", "dkp"):
        raise ValueError(f"kind must be kp or dkp, got {kind!r}")
    if kind == "dkp" and extra is not None:
        raise ValueError("the extra Schur factor applies to kp only")
    specs = [p] + ([extra] if extra is not None else [])
    lb = _min_bound(N, r.length_bound(), *(s.length_bound() for s in specs))
    wb = _min_bound(r.width_bound(), *(s.width_bound() for s in specs))
    lams = enumerate_partitions(PartitionConstraints((0, cutoff), lb, wb, "fat" if kind == "dkp" else "all"))
    K = max(cutoff, 1)
    evs = [SchurEvaluator(s.to_power_sums(K)) for s in specs]
    exact = r.exact and all(s.exact for s in specs)
    terms = []
    for lam in lams:
        t = r.product(lam)
        for ev in evs:
            t = t * ev(lam)
        terms.append(t)
    done = lb is not None and wb is not None and cutoff >= lb * wb
    return SeriesValue(_sum(terms, exact), cutoff, done, len(lams))


# --- solvability ---------------------------------------------------------------------


@dataclass
class SolvabilityReport:
    solvable: bool
    exactly_solvable: bool
    reasons: list = field(default_factory=list)
    warnings: list = field(default_factory=list)


def _projector_rank(V) -> Optional[int]:
    """``l`` if the spectrum of ``V`` is ``l`` ones and ``N - l`` zeros, else ``None``."""
    n = V.shape[0]
    ps = matrix_power_sums(V, n)
    p1 = ps[1]
    for k in range(1, n + 1):
        if abs(ps[k] - p1) > (0 if ps.exact else 1e-9):
            return None
    l = round(complex(p1).real)
    if abs(p1 - l) > (0 if ps.exact else 1e-9) or not 0 <= l <= n:
        return None
    return l


def classify_solvability(cfg: ModelConfig, permissive: bool = False) -> SolvabilityReport:
    """Every model here is solvable (a Schur series). Exact solvability additionally needs
    a sphere, ``p_inf``/``p(a)`` on all faces but one, projector or identity fixed
    vertices, and at most one averaged vertex (only warned about when ``permissive``).
    """
    reasons, warnings = [], []
    rep = validate_graph(cfg.graph)
    if not rep.ok:
        reasons.extend(rep.violations)
    elif rep.genus != 0:
        reasons.append(f"genus {rep.genus}: F - n + V = {cfg.graph.euler_characteristic} != 2")
    general = [i for i, s in enumerate(cfg.face_specs) if s.kind not in ("pinf", "pa")]
    if len(general) > 1:
        reasons.append(f"faces {general} all carry general specializations; at most one may")
    averaged = cfg.averaged_vertices
    for v in range(cfg.graph.V):
        if v in averaged:
            continue
        if _projector_rank(vertex_monodromy(cfg.graph, cfg.assignment, v)) is None:
            reasons.append(f"vertex {v} monodromy is not a projector J_l or the identity")
    for v, e in averaged.items():
        if e.kind == "gin":
            reasons.append(f"vertex {v} is averaged over complex Ginibre, which has no closed form")
    if len(averaged) > 1:
        msg = f"{len(averaged)} averaged vertices; exact solvability is established for one"
        (warnings if permissive else reasons).append(msg)
    return SolvabilityReport(True, not reasons, reasons, warnings)


# --- Monte Carlo ----------------------------------------------------------------------


def _face_terms(s: Specialization, N: int, scale=1):
    """Face factor as ``(exp_coef, [(x, exponent), ...])``: ``exp(exp_coef tr F) prod det(1 - xF)^exponent``."""
    if s.kind == "pinf":
        return N * scale, []
    if s.kind == "pa":
        return 0, [(1, -N * scale * s.a)]
    if s.kind == "miwa":
        return 0, [(x, -N * scale * s.sign) for x in s.variables if x != 0]
    if s.kind == "scaled":
        return _face_terms(s.inner, N, scale * s.factor)
    raise ValueError("MC needs pinf, pa, miwa or scaled face specializations")


def _nonneg_int(e) -> bool:
    return _is_int(e) and e >= 0


def _face_factor(F: np.ndarray, s: Specialization, N: int):
    """Per-sample factor, singular flags and outside-unit-disk flags."""
    coef, dets = _face_terms(s, N)
    S = F.shape[0]
    val = np.ones(S, dtype=complex)
    singular = np.zeros(S, dtype=bool)
    outside = np.zeros(S, dtype=bool)
    if coef:
        val *= np.exp(complex(coef) * np.trace(F, axis1=1, axis2=2))
    if dets:
        w = np.linalg.eigvals(F)
    for x, e in dets:
        z = 1.0 - complex(x) * w
        if _nonneg_int(e):
            val *= np.prod(z, axis=1) ** int(e)
            continue
        outside |= np.abs(complex(x) * w).max(axis=1) >= 1.0
        singular |= np.abs(z).min(axis=1) < SINGULAR_TOL
        with np.errstate(divide="ignore", invalid="ignore"):
            val *= np.exp(complex(e) * np.log(z).sum(axis=1))
    return val, singular, outside


def _corner_stack(A: CornerAssignment, rng, n: int, weights: np.ndarray):
    mats = {}
    for a, c in sorted(A.corners.items(), key=lambda kv: (abs(kv[0]), kv[0] < 0)):
        if c.is_placeholder:
            M = sample_ensemble(c.ensemble, rng, n)
            if c.ensemble.kind == "qgin" and c.ensemble.L:
                weights *= np.linalg.det(M) ** c.ensemble.L
            mats[a] = M.astype(complex)
        else:
            mats[a] = np.asarray(c.to_matrix(A.N).tolist(), dtype=complex)
    return mats


def _ginibre_edges(G: RibbonGraph, N: int, rng, n: int):
    return {i: sample_complex_ginibre(N, rng, n) for i in range(1, G.n + 1)}


def mc_partition_function(cfg: ModelConfig, samples: int, seed: int, threads: Optional[int] = None) -> MCEstimate:
    """MC of ``E[prod_faces exp(N sum_m p_m tr F_i^m / m)]`` over Ginibre edges and sampled placeholders.

    Face factors are evaluated in closed form: ``exp(N tr F)`` for ``pinf``,
    ``det(1 - F)^(-N a)`` for ``pa`` and ``prod_x det(1 - x F)^(-N sign)`` for Miwa
    specs. Non-integer powers use principal logs per eigenvalue; samples with a
    near-singular factor or an overflow are rejected and counted.
    """
    cfg.check()
    if samples < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples")
    G, A, N = cfg.graph, cfg.assignment, cfg.N

    def block(rng, n):
        Z = _ginibre_edges(G, N, rng, n)
        weights = np.ones(n, dtype=complex)
        corners = _corner_stack(A, rng, n, weights)
        faces = dressed_face_batch(G, corners, Z)
        bad = np.zeros(n, dtype=bool)
        out_disk = np.zeros(n, dtype=bool)
        val = weights
        for F, s in zip(faces, cfg.face_specs):
            f, sing, outside = _face_factor(F, s, N)
            val = val * f
            bad |= sing
            out_disk |= outside
        bad |= ~np.isfinite(val)
        val[bad] = np.nan
        return np.stack([val, out_disk.astype(complex)], axis=1)

    res = run_blocks(block, samples, seed, threads)
    vals = res[:, 0]
    ok = ~np.isnan(vals)
    rejected = int((~ok).sum())
    diagnostics = {
        "rejected": rejected,
        "rejected_fraction": rejected / samples,
        "valid": rejected <= MAX_REJECTED_FRACTION * samples,
        "outside_unit_disk_fraction": float(res[:, 1].real.mean()),
    }
    est = summarize(vals[ok], seed, diagnostics)
    est.samples = samples
    return est


@dataclass
class RelationCheck:
    mc: MCEstimate
    exact: Fraction
    passed: bool


def schur_average_relation_check(G: RibbonGraph, A: CornerAssignment, lambdas: Sequence[Partition],
                                 samples: int, seed: int, threads: Optional[int] = None) -> RelationCheck:
    """MC of ``E[prod_a s_{lam^a}(F_a)]`` against
    ``delta (s_lam(N p_inf))^-n prod_v s_lam(V_v)`` (``delta = 1`` iff all ``lam^a`` agree)."""
    rep = validate_graph(G)
    if not rep.ok:
        raise ValueError("invalid graph: " + "; ".join(rep.violations))
    if len(lambdas) != G.F:
        raise ValueError(f"need one partition per face ({G.F})")
    A.check(G)
    if any(c.is_placeholder for c in A.corners.values()):
        raise ValueError("relation check needs fixed corner matrices")
    N = A.N
    lam = lambdas[0]
    if any(mu != lam for mu in lambdas):
        exact = Fraction(0)
    else:
        exact = (Fraction(N) ** lam.weight * schur_at_pinfty(lam)) ** (-G.n)
        for v in range(G.V):
            exact *= SchurEvaluator(matrix_power_sums(vertex_monodromy(G, A, v), max(lam.weight, 1)))(lam)
    K = max(max(mu.weight for mu in lambdas), 1)

    def block(rng, n):
        Z = _ginibre_edges(G, N, rng, n)
        corners = _corner_stack(A, rng, n, np.ones(n, dtype=complex))
        val = np.ones(n, dtype=complex)
        for F, mu in zip(dressed_face_batch(G, corners, Z), lambdas):
            val *= kernels.schur_batch(kernels.power_sums(F, K), [mu])[:, 0]
        return val

    est = summarize(run_blocks(block, samples, seed, threads), seed)
    return RelationCheck(est, exact, est.agrees_with(complex(exact)))


__all__ = [
    "ContentFunction",
    "ModelConfig",
    "RelationCheck",
    "SeriesValue",
    "SolvabilityReport",
    "classify_solvability",
    "config_from_dict",
    "hyp_tau_series",
    "load_config",
    "mc_partition_function",
    "mixed_series",
    "schur_average_relation_check",
    "zu_mm_series",
]
