"""Three-qubit state types and the linear algebra they need.

Amplitudes are stored flat in r-order, r = 4i + 2j + k, so |ijk> is index r
and ``np.kron(a, np.kron(b, c))`` lands every product amplitude in place.
All values are immutable after construction.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .config import EXACT_TOL, HERM_TOL, NORM_TOL, ZERO_NORM
from .errors import BadWeights, NotHermitian, NotNormalized, ZeroVector


class Party(str, Enum):
    A = "A"
    B = "B"
    C = "C"

    @property
    def axis(self) -> int:
        return "ABC".index(self.value)


class PartyPair(str, Enum):
    AB = "AB"
    BC = "BC"
    AC = "AC"

    @property
    def parties(self) -> tuple[Party, Party]:
        return Party(self.value[0]), Party(self.value[1])

    @property
    def traced(self) -> Party:
        (rest,) = set(Party) - set(self.parties)
        return rest


def _frozen(values, shape: tuple[int, ...]) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128)
    if arr.shape != shape:
        raise ValueError(f"expected shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("amplitudes must be finite")
    arr.setflags(write=False)
    return arr


def _is_hermitian(m: np.ndarray, tol: float = HERM_TOL) -> bool:
    return bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= tol)


@dataclass(frozen=True, eq=False)
class Qubit2Vec:
    amps: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "amps", _frozen(self.amps, (2,)))
        dev = abs(float(np.vdot(self.amps, self.amps).real) - 1.0)
        if dev > NORM_TOL:
            raise NotNormalized(f"qubit vector norm^2 off by {dev:.3e}")

    @classmethod
    def of(cls, x: complex, y: complex) -> "Qubit2Vec":
        v = np.array([x, y], dtype=np.complex128)
        n = np.linalg.norm(v)
        if n <= ZERO_NORM:
            raise ZeroVector("qubit vector has zero norm")
        return cls(v / n)


@dataclass(frozen=True, eq=False)
class PureState3Q:
    amps: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "amps", _frozen(self.amps, (8,)))
        dev = abs(float(np.vdot(self.amps, self.amps).real) - 1.0)
        if dev > NORM_TOL:
            raise NotNormalized(f"sum |a_r|^2 deviates from 1 by {dev:.3e}")

    @property
    def tensor(self) -> np.ndarray:
        """a_ijk view, axes (A, B, C)."""
        return self.amps.reshape(2, 2, 2)

    def __getitem__(self, r: int) -> complex:
        return complex(self.amps[r])


@dataclass(frozen=True, eq=False)
class ProductState3Q:
    a: Qubit2Vec
    b: Qubit2Vec
    c: Qubit2Vec

    @property
    def factors(self) -> tuple[Qubit2Vec, Qubit2Vec, Qubit2Vec]:
        return self.a, self.b, self.c


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in (2, 4, 8):
            raise ValueError(f"Hermitian matrix must be n x n with n in (2, 4, 8), got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("matrix entries must be finite")
        if not _is_hermitian(m):
            raise NotHermitian(f"max |H - H^dagger| = {np.max(np.abs(m - m.conj().T)):.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    def trace(self) -> float:
        return float(np.trace(self.entries).real)


@dataclass(frozen=True, eq=False)
class DensityMatrix3Q:
    entries: np.ndarray

    def __post_init__(self):
        m = _frozen(self.entries, (8, 8))
        if not _is_hermitian(m):
            raise NotHermitian(f"max |rho - rho^dagger| = {np.max(np.abs(m - m.conj().T)):.3e}")
        tr = np.trace(m).real
        if abs(tr - 1.0) > HERM_TOL:
            raise ValueError(f"density matrix trace is {tr!r}, expected 1")
        lo = np.linalg.eigvalsh(m)[0]
        if lo < -HERM_TOL:
            raise ValueError(f"density matrix has eigenvalue {lo:.3e} < 0")
        object.__setattr__(self, "entries", m)

    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    def as_hermitian(self) -> HermitianMatrix:
        return HermitianMatrix(self.entries)


def amp_index(i: int, j: int, k: int) -> int:
    return 4 * i + 2 * j + k


def make_pure(amps: Sequence[complex]) -> PureState3Q:
    """Accept amplitudes that are already normalized to 1e-9, and renormalize exactly."""
    v = _frozen(amps, (8,))
    n2 = float(np.vdot(v, v).real)
    if abs(n2 - 1.0) > NORM_TOL:
        raise NotNormalized(f"sum |a_r|^2 = {n2!r}; use normalized() to rescale")
    return PureState3Q(v / np.sqrt(n2))


def normalized(amps: Sequence[complex]) -> PureState3Q:
    v = _frozen(amps, (8,))
    n = float(np.linalg.norm(v))
    if n <= ZERO_NORM:
        raise ZeroVector("cannot normalize a zero amplitude vector")
    return PureState3Q(v / n)


def inner(x: PureState3Q, y: PureState3Q) -> complex:
    return complex(np.vdot(x.amps, y.amps))


def expand(p: ProductState3Q) -> PureState3Q:
    return PureState3Q(np.kron(p.a.amps, np.kron(p.b.amps, p.c.amps)))


def density_of(psi: PureState3Q) -> DensityMatrix3Q:
    return DensityMatrix3Q(np.outer(psi.amps, psi.amps.conj()))


def mix(states: Sequence[PureState3Q], weights: Sequence[float]) -> DensityMatrix3Q:
    if not states or len(states) != len(weights):
        raise BadWeights(f"need equal, nonempty lists (got {len(states)} states, {len(weights)} weights)")
    w = np.asarray(weights, dtype=float)
    if not np.all(np.isfinite(w)):
        raise BadWeights("weights must be finite")
    if np.any(w < 0):
        raise BadWeights("weights must be nonnegative")
    if abs(w.sum() - 1.0) > EXACT_TOL:
        raise BadWeights(f"weights sum to {w.sum()!r}, expected 1")
    rho = sum(wj * np.outer(s.amps, s.amps.conj()) for wj, s in zip(w, states))
    return DensityMatrix3Q(rho)


def _six(rho) -> np.ndarray:
    m = rho.entries if hasattr(rho, "entries") else np.asarray(rho)
    return np.asarray(m).reshape(2, 2, 2, 2, 2, 2)


_SINGLE = {Party.A: "ijkIjk->iI", Party.B: "ijkiJk->jJ", Party.C: "ijkijK->kK"}
# retained pair in lexicographic bit order; AC keeps (i, k)
_PAIR = {PartyPair.AB: "ijkIJk->ijIJ", PartyPair.BC: "ijkiJK->jkJK", PartyPair.AC: "ijkIjK->ikIK"}


def reduce_single(rho: DensityMatrix3Q, p: Party) -> HermitianMatrix:
    return HermitianMatrix(np.einsum(_SINGLE[Party(p)], _six(rho)))


def reduce_pair(rho: DensityMatrix3Q, pp: PartyPair) -> HermitianMatrix:
    return HermitianMatrix(np.einsum(_PAIR[PartyPair(pp)], _six(rho)).reshape(4, 4))


def partial_transpose(rho: DensityMatrix3Q | HermitianMatrix, p: Party) -> HermitianMatrix:
    """Swap the row and column index of party ``p``. The result may be indefinite."""
    ax = Party(p).axis
    t = np.swapaxes(_six(rho), ax, ax + 3)
    return HermitianMatrix(t.reshape(8, 8))


def hermitian_eigenvalues(h: HermitianMatrix | DensityMatrix3Q | np.ndarray) -> list[float]:
    """Eigenvalues in descending order."""
    m = h.entries if hasattr(h, "entries") else np.asarray(h, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or not _is_hermitian(m):
        raise NotHermitian("matrix is not Hermitian within 1e-10")
    return [float(x) for x in np.linalg.eigvalsh(m)[::-1]]
