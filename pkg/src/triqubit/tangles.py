"""Entanglement measures of a pure three-qubit state.

One-tangles come two ways (six 2x2 minors of the amplitude matrix, or the
linear entropy 2(1 - tr rho_p^2)). The three-tangle is 4|Hdet|. Pairwise
tangles are the linear combinations of those four numbers. The Wootters
concurrence is here only as an independent oracle for the pairwise ones.
"""
from __future__ import annotations

import logging
from dataclasses import astuple, dataclass

import numpy as np

from .config import EXACT_TOL, NORM_TOL, PRODUCT_TOL
from .errors import NotDensityMatrix
from .qstate import (HermitianMatrix, Party, PartyPair, PureState3Q, density_of,
                     reduce_single)

log = logging.getLogger(__name__)

# (p, q, r, s) -> |a_p a_q - a_r a_s|^2, one row per minor as the formulas list them
MINORS: dict[Party, tuple[tuple[int, int, int, int], ...]] = {
    Party.A: ((0, 5, 1, 4), (0, 6, 2, 4), (0, 7, 3, 4), (1, 6, 2, 5), (1, 7, 3, 5), (2, 7, 3, 6)),
    Party.B: ((0, 3, 1, 2), (0, 6, 2, 4), (0, 7, 2, 5), (1, 6, 3, 4), (1, 7, 3, 5), (4, 7, 5, 6)),
    Party.C: ((0, 5, 1, 4), (0, 3, 1, 2), (0, 7, 1, 6), (3, 4, 2, 5), (4, 7, 5, 6), (2, 7, 3, 6)),
}

_RANK_CUT = 1e-14  # eigenvalues below this are rounding noise of a zero
# spin flip Y (x) Y, with Y = [[0, -i], [i, 0]]
_YY = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))


@dataclass(frozen=True)
class TangleProfile:
    tau_a: float
    tau_b: float
    tau_c: float
    tau_abc: float
    tau_ab: float
    tau_bc: float
    tau_ac: float

    def as_tuple(self) -> tuple[float, ...]:
        return astuple(self)

    def one_tangles(self) -> tuple[float, float, float]:
        return self.tau_a, self.tau_b, self.tau_c


def one_tangle_minors(psi: PureState3Q, p: Party) -> float:
    a = psi.amps
    return 4.0 * float(sum(abs(a[w] * a[x] - a[y] * a[z]) ** 2 for w, x, y, z in MINORS[Party(p)]))


def one_tangle_entropy(psi: PureState3Q, p: Party) -> float:
    rho_p = reduce_single(density_of(psi), p).entries
    purity = float(np.real(np.trace(rho_p @ rho_p)))
    return 2.0 * (1.0 - purity)


def hyperdeterminant(psi: PureState3Q) -> complex:
    """Cayley hyperdeterminant, factored form."""
    a = psi.amps
    return complex((a[0] * a[7] + a[1] * a[6] - a[2] * a[5] - a[3] * a[4]) ** 2
                   + 4 * (a[0] * a[6] - a[2] * a[4]) * (a[3] * a[5] - a[1] * a[7]))


def hyperdeterminant_quartic(psi: PureState3Q) -> complex:
    """Cayley hyperdeterminant, expanded quartic form."""
    a = psi.amps
    d1 = a[0]**2 * a[7]**2 + a[3]**2 * a[4]**2 + a[1]**2 * a[6]**2 + a[2]**2 * a[5]**2
    d2 = (a[0]*a[7]*a[1]*a[6] + a[0]*a[7]*a[2]*a[5] + a[0]*a[7]*a[3]*a[4]
          + a[1]*a[6]*a[2]*a[5] + a[1]*a[6]*a[3]*a[4] + a[2]*a[5]*a[3]*a[4])
    d3 = a[1]*a[2]*a[4]*a[7] + a[0]*a[3]*a[5]*a[6]
    return complex(d1 - 2 * d2 + 4 * d3)


def three_tangle(psi: PureState3Q) -> float:
    return abs(4 * hyperdeterminant(psi))


def _pairwise(t: dict[Party, float], tau_abc: float, pp: PartyPair) -> float:
    x, y = pp.parties
    value = 0.5 * (t[x] + t[y] - t[pp.traced] - tau_abc)
    if -EXACT_TOL < value < 0:
        return 0.0
    if value < 0:
        log.warning("pairwise tangle %s = %.3e is materially negative", pp.value, value)
    return value


def pairwise_tangle(psi: PureState3Q, pp: PartyPair) -> float:
    t = {p: one_tangle_minors(psi, p) for p in Party}
    return _pairwise(t, three_tangle(psi), PartyPair(pp))


def tangle_profile(psi: PureState3Q) -> TangleProfile:
    t = {p: one_tangle_minors(psi, p) for p in Party}
    tabc = three_tangle(psi)
    return TangleProfile(t[Party.A], t[Party.B], t[Party.C], tabc,
                         *(_pairwise(t, tabc, pp) for pp in (PartyPair.AB, PartyPair.BC, PartyPair.AC)))


def is_fully_product(psi: PureState3Q, tol: float = PRODUCT_TOL) -> bool:
    if tol <= 0:
        raise ValueError("tol must be positive")
    return max(one_tangle_minors(psi, p) for p in Party) <= tol


def wootters_concurrence(rho: HermitianMatrix) -> float:
    """Two-qubit concurrence max(0, s1 - s2 - s3 - s4).

    The s_i are the square roots of the eigenvalues of rho (YY) rho* (YY).
    They are computed as the singular values of V^T (YY) V with rho = V V^dagger,
    so a rank-deficient marginal does not turn rounding noise into sqrt-sized error.
    """
    m = rho.entries
    if m.shape != (4, 4):
        raise NotDensityMatrix(f"expected a 4 x 4 matrix, got {m.shape}")
    d, u = np.linalg.eigh(m)
    if abs(d.sum() - 1.0) > NORM_TOL or d[0] < -NORM_TOL:
        raise NotDensityMatrix(f"trace {d.sum():.12g}, min eigenvalue {d[0]:.3e}")
    keep = d > _RANK_CUT
    v = u[:, keep] * np.sqrt(d[keep])
    s = np.sort(np.linalg.svd(v.T @ _YY @ v, compute_uv=False))[::-1]
    s = np.concatenate([s, np.zeros(4 - s.size)])
    return max(0.0, float(s[0] - s[1] - s[2] - s[3]))
