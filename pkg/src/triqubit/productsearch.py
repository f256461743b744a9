"""Largest overlap of a fully product state with a subspace.

f(a, b, c) = <abc|P|abc> is maximized by see-saw: with two factors fixed, the
best third factor is the top eigenvector of a 2 x 2 Hermitian matrix, so
every single-party step is exact and f never decreases. A subspace contains a
product state iff the maximum is 1, which is what the verdicts test.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np
from tqdm import tqdm

from . import config
from .bases import BasisSet
from .config import HERM_TOL, NORM_TOL, VERDICT_EPS, VERDICT_WARN_BAND
from .errors import DegenerateSpan
from .qstate import HermitianMatrix, Party, ProductState3Q, PureState3Q, Qubit2Vec, expand
from .sampling import generator

log = logging.getLogger(__name__)

_DEGENERATE_GAP = 1e-14
_MONOTONE_SLACK = 1e-12
_MAX_CONDITION = 1e8

# contraction of P with the two fixed factors, leaving the free party's (row, col)
_REDUCE = {
    Party.A: "j,k,ijkIJK,J,K->iI",
    Party.B: "i,k,ijkIJK,I,K->jJ",
    Party.C: "i,j,ijkIJK,I,J->kK",
}


@dataclass(frozen=True, eq=False)
class Projector:
    matrix: HermitianMatrix
    rank: int

    def __post_init__(self):
        p = self.matrix.entries
        if p.shape != (8, 8):
            raise ValueError("projector must act on the 8-dimensional space")
        dev = float(np.max(np.abs(p @ p - p)))
        if dev > HERM_TOL:
            raise ValueError(f"P^2 != P (off by {dev:.3e})")
        if abs(self.matrix.trace() - self.rank) > NORM_TOL:
            raise ValueError(f"trace {self.matrix.trace():.12g} != rank {self.rank}")

    @property
    def tensor(self) -> np.ndarray:
        return self.matrix.entries.reshape((2,) * 6)

    def complement(self) -> "Projector":
        return Projector(HermitianMatrix(np.eye(8) - self.matrix.entries), 8 - self.rank)

    def overlap(self, p: ProductState3Q) -> float:
        v = expand(p).amps
        return float(np.real(np.vdot(v, self.matrix.entries @ v)))


@dataclass
class SearchConfig:
    restarts: int = field(default_factory=lambda: config.RESTARTS)
    max_iters: int = field(default_factory=lambda: config.MAX_ITERS)
    tol: float = field(default_factory=lambda: config.SEARCH_TOL)
    seed: int = field(default_factory=lambda: config.SEED)
    progress: bool = field(default_factory=lambda: config.SHOW_PROGRESS)

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.seed < 0:
            raise ValueError("seed must be >= 0")


@dataclass(frozen=True, eq=False)
class SearchResult:
    best_value: float
    best_product: ProductState3Q
    iterations: int
    restarts_used: int
    converged: bool
    history: tuple[float, ...] = ()   # objective after each sweep of the winning restart
    restart_index: int = 0


@dataclass(frozen=True, eq=False)
class Verdict:
    certified: bool
    margin: float
    method: Literal["seesaw", "grid", "both"]
    best_value: float
    witness: ProductState3Q | None = None
    converged: bool = True
    marginal: bool = False

    def __post_init__(self):
        if self.certified and not self.margin > 0:
            raise ValueError("a certified verdict needs a positive margin")


def span_projector(states: Sequence[PureState3Q] | BasisSet) -> Projector:
    m = np.array([s.amps for s in states]).T
    g = m.conj().T @ m
    cond = np.linalg.cond(g)
    if not np.isfinite(cond) or cond >= _MAX_CONDITION:
        raise DegenerateSpan(f"Gram matrix condition number {cond:.3e}")
    p = m @ np.linalg.solve(g, m.conj().T)
    return Projector(HermitianMatrix((p + p.conj().T) / 2), m.shape[1])


def _gauge(v: np.ndarray) -> np.ndarray:
    v = v / np.linalg.norm(v)
    nz = np.flatnonzero(np.abs(v) > _DEGENERATE_GAP)
    if nz.size:
        ph = v[nz[0]] / abs(v[nz[0]])
        v = v * ph.conjugate()
    return v


def _step(t: np.ndarray, vecs: list[np.ndarray], p: Party) -> float:
    """Replace the factor of party ``p`` by its optimum; return the new objective."""
    others = [v for q, v in zip(Party, vecs) if q is not p]
    m = np.einsum(_REDUCE[p], others[0].conj(), others[1].conj(), t, others[0], others[1])
    m = (m + m.conj().T) / 2
    w, u = np.linalg.eigh(m)
    if w[1] - w[0] < _DEGENERATE_GAP:
        prev = vecs[p.axis]
        return float(np.real(np.vdot(prev, m @ prev)))
    vecs[p.axis] = _gauge(u[:, 1])
    return float(w[1])


def _one_restart(t: np.ndarray, cfg: SearchConfig, index: int) -> tuple[float, list[np.ndarray], int, bool, list[float]]:
    gen = generator([cfg.seed, index])
    vecs = []
    for _ in Party:
        v = gen.standard_normal(2) + 1j * gen.standard_normal(2)
        vecs.append(_gauge(v))
    value = -np.inf
    history: list[float] = []
    for sweep in range(1, cfg.max_iters + 1):
        prev = value
        for p in Party:
            nv = _step(t, vecs, p)
            if nv < value - _MONOTONE_SLACK:
                log.warning("see-saw objective dropped %.3e -> %.3e (restart %d)", value, nv, index)
            value = nv
        history.append(value)
        if value - prev < cfg.tol:
            return value, vecs, sweep, True, history
    return value, vecs, cfg.max_iters, False, history


def seesaw_max_overlap(p: Projector, cfg: SearchConfig | None = None) -> SearchResult:
    cfg = cfg or SearchConfig()
    t = p.tensor
    best = None
    for k in tqdm(range(cfg.restarts), desc="see-saw", disable=not cfg.progress):
        run = _one_restart(t, cfg, k)
        if best is None or run[0] > best[1][0]:
            best = (k, run)
    k, (_, vecs, iters, conv, history) = best
    product = ProductState3Q(*(Qubit2Vec(v) for v in vecs))
    value = min(max(p.overlap(product), 0.0), 1.0)
    if not conv:
        log.warning("best see-saw restart %d hit max_iters=%d without converging", k, cfg.max_iters)
    log.info("see-saw best %.15f (restart %d, %d sweeps)", value, k, iters)
    return SearchResult(value, product, iters, cfg.restarts, conv, tuple(history), k)


def _qubit_grid(resolution: int) -> np.ndarray:
    theta = np.linspace(0, np.pi / 2, resolution)
    phi = np.linspace(0, 2 * np.pi, resolution, endpoint=False)
    th, ph = np.meshgrid(theta, phi, indexing="ij")
    return np.stack([np.cos(th).ravel(), (np.exp(1j * ph) * np.sin(th)).ravel()], axis=1)


def grid_oracle_max_overlap(p: Projector, resolution: int = config.GRID_RESOLUTION, block: int = 64) -> float:
    """Grid maximum of <abc|P|abc>, a lower bound on the true maximum.

    Parties A and B run over a (theta, phi) grid with ``resolution`` samples
    per angle. Party C is maximized exactly at every grid point, as the top
    eigenvalue of its 2 x 2 reduced operator, so the result never falls below
    a plain grid over all three parties at the same resolution. It is still a
    lower bound on the true maximum.
    """
    if resolution < 8:
        raise ValueError("resolution must be >= 8")
    q = _qubit_grid(resolution)
    outer = (q.conj()[:, :, None] * q[:, None, :]).reshape(-1, 4)     # (n, iI)
    t = p.tensor.transpose(0, 3, 1, 4, 2, 5).reshape(4, 16)            # (iI, jJ kK)
    ta = (outer @ t).reshape(-1, 4, 4)                                 # (n_a, jJ, kK)
    best = -np.inf
    for start in range(0, ta.shape[0], block):
        m = outer @ ta[start:start + block]                          # (a, b, kK)
        m00, m11, m01 = m[..., 0].real, m[..., 3].real, m[..., 1]
        top = (m00 + m11) / 2 + np.sqrt(((m00 - m11) / 2) ** 2 + np.abs(m01) ** 2)
        best = max(best, float(top.max()))
    return best


def _verdict(p: Projector, cfg: SearchConfig | None, grid: int | None) -> Verdict:
    res = seesaw_max_overlap(p, cfg)
    value, method = res.best_value, "seesaw"
    if grid is not None:
        value, method = max(value, grid_oracle_max_overlap(p, grid)), "both"
    certified = value < 1 - VERDICT_EPS
    marginal = 1 - VERDICT_WARN_BAND <= value < 1 - VERDICT_EPS
    if marginal:
        log.warning("max product overlap %.9f is within %.0e of 1", value, VERDICT_WARN_BAND)
    return Verdict(certified, 1 - value, method, value, res.best_product, res.converged, marginal)


def upb_extendibility(s: BasisSet, cfg: SearchConfig | None = None, grid: int | None = None) -> Verdict:
    """Certified iff no product state is orthogonal to every member of ``s``."""
    v = _verdict(span_projector(s).complement(), cfg, grid)
    log.info("UPB check: %s (best overlap %.12f)", "unextendible" if v.certified else "extendible", v.best_value)
    return v


def ees_product_free(t: BasisSet, cfg: SearchConfig | None = None, grid: int | None = None) -> Verdict:
    """Certified iff span(t) contains no fully product state."""
    v = _verdict(span_projector(t), cfg, grid)
    log.info("span check: %s (best overlap %.12f)", "product-free" if v.certified else "contains a product", v.best_value)
    return v
