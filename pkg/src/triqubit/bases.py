"""The Shifts UPB, the exact-entanglement basis, their union and its LU orbit."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

import numpy as np

from .config import EXACT_TOL, HERM_TOL, PRODUCT_TOL
from .errors import (BadDimension, BasisError, NotComplete, NotOrthogonal, NotUnitary,
                     WrongKind, ZeroVector)
from .qstate import Party, ProductState3Q, PureState3Q, Qubit2Vec, make_pure, normalized
from .sampling import RNG
from .tangles import is_fully_product, one_tangle_minors

log = logging.getLogger(__name__)

Kind = Literal["product", "entangled", "mixed"]

_H = 0.5
_R = 1 / np.sqrt(2)

KET0 = Qubit2Vec([1, 0])
KET1 = Qubit2Vec([0, 1])
PLUS = Qubit2Vec([_R, _R])
MINUS = Qubit2Vec([_R, -_R])

# amplitude tables in r-order
SHIFTS = (
    (1, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, _H, _H, -_H, -_H),
    (0, 0, _H, -_H, 0, 0, _H, -_H),
    (0, _H, 0, _H, 0, -_H, 0, -_H),
)
EEB = (
    (0, _H, _H, 0, _H, 0, 0, _H),
    (0, _H, -_H, 0, 0, _H, _H, 0),
    (0, -_H, 0, _H, _H, 0, _H, 0),
    (0, 0, _H, _H, -_H, _H, 0, 0),
)
DUAL_SHIFTS = (
    (0, 0, 0, 0, 0, 0, 0, 1),
    (-_H, -_H, _H, _H, 0, 0, 0, 0),
    (-_H, _H, 0, 0, -_H, _H, 0, 0),
    (-_H, 0, -_H, 0, _H, 0, _H, 0),
)
DUAL_EEB = (
    (_H, 0, 0, _H, 0, _H, _H, 0),
    (0, _H, _H, 0, 0, -_H, _H, 0),
    (0, _H, 0, _H, _H, 0, -_H, 0),
    (0, 0, _H, -_H, _H, _H, 0, 0),
)

_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_I2 = np.eye(2, dtype=np.complex128)


def basis_ket(i: int, j: int, k: int) -> PureState3Q:
    v = np.zeros(8)
    v[4 * i + 2 * j + k] = 1
    return PureState3Q(v)


def ghz() -> PureState3Q:
    return normalized([1, 0, 0, 0, 0, 0, 0, 1])


def w_state() -> PureState3Q:
    return normalized([0, 1, 1, 0, 1, 0, 0, 0])


def _gram(states: Sequence[PureState3Q]) -> np.ndarray:
    m = np.array([s.amps for s in states])
    return m.conj() @ m.T


@dataclass(frozen=True, eq=False)
class BasisSet:
    states: tuple[PureState3Q, ...]
    kind: Kind = "mixed"

    def __post_init__(self):
        states = tuple(self.states)
        object.__setattr__(self, "states", states)
        if not 1 <= len(states) <= 8:
            raise BasisError(f"a basis set holds 1..8 states, got {len(states)}")
        dev = float(np.max(np.abs(_gram(states) - np.eye(len(states)))))
        if dev > HERM_TOL:
            raise NotOrthogonal(f"Gram matrix deviates from identity by {dev:.3e}")
        flags = [is_fully_product(s, PRODUCT_TOL) for s in states]
        if self.kind == "product" and not all(flags):
            raise WrongKind(f"members {[i for i, f in enumerate(flags) if not f]} are entangled")
        if self.kind == "entangled" and any(flags):
            raise WrongKind(f"members {[i for i, f in enumerate(flags) if f]} are fully product")

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __getitem__(self, i: int) -> PureState3Q:
        return self.states[i]

    @classmethod
    def classify(cls, states: Iterable[PureState3Q]) -> "BasisSet":
        """Build a set with the kind inferred from its members."""
        states = tuple(states)
        flags = {is_fully_product(s, PRODUCT_TOL) for s in states}
        kind: Kind = "mixed" if len(flags) > 1 else ("product" if True in flags else "entangled")
        return cls(states, kind)


def min_upb_cardinality(dims: Sequence[int]) -> int:
    if any(d < 2 for d in dims):
        raise BadDimension(f"every local dimension must be >= 2, got {list(dims)}")
    return sum(d - 1 for d in dims) + 1


@dataclass(frozen=True, eq=False)
class CBUPB:
    """Complete basis: four product states plus four entangled states."""
    s: BasisSet
    t: BasisSet

    def __post_init__(self):
        n = min_upb_cardinality((2, 2, 2))
        if len(self.s) != n or len(self.t) != 8 - n:
            raise NotComplete(f"need {n} + {8 - n} states, got {len(self.s)} + {len(self.t)}")
        m = np.array([x.amps for x in self.states])
        cross = float(np.max(np.abs(np.array([[np.vdot(p.amps, q.amps) for q in self.s] for p in self.t]))))
        # a repeated state loses a dimension; any other overlap is an orthogonality failure
        if cross >= 1 - HERM_TOL:
            rank = np.linalg.matrix_rank(m, tol=HERM_TOL)
            raise NotComplete(f"T repeats a state of S; S and T span only {rank} of 8 dimensions")
        dev = float(np.max(np.abs(m.conj() @ m.T - np.eye(8))))
        if dev > HERM_TOL:
            raise NotOrthogonal(f"Gram matrix of S u T off by {dev:.3e} (max |<phi_i|S_j>| = {cross:.3e})")
        resolution = sum(np.outer(x.amps, x.amps.conj()) for x in self.states)
        dev = float(np.max(np.abs(resolution - np.eye(8))))
        if dev > HERM_TOL:
            raise NotComplete(f"sum of projectors differs from I by {dev:.3e}")
        if not all(is_fully_product(x, PRODUCT_TOL) for x in self.s):
            raise WrongKind("S must contain only fully product states")
        if any(is_fully_product(x, PRODUCT_TOL) for x in self.t):
            raise WrongKind("T must contain only entangled states")

    @property
    def states(self) -> tuple[PureState3Q, ...]:
        return self.s.states + self.t.states


def shifts_upb() -> BasisSet:
    return BasisSet(tuple(make_pure(r) for r in SHIFTS), "product")


def shifts_product_forms() -> list[ProductState3Q]:
    return [ProductState3Q(KET0, KET0, KET0), ProductState3Q(KET1, MINUS, PLUS),
            ProductState3Q(PLUS, KET1, MINUS), ProductState3Q(MINUS, PLUS, KET1)]


def dual_product_forms() -> list[ProductState3Q]:
    neg0, negm = Qubit2Vec([-1, 0]), Qubit2Vec([-_R, _R])
    return [ProductState3Q(KET1, KET1, KET1), ProductState3Q(neg0, MINUS, PLUS),
            ProductState3Q(PLUS, KET0, negm), ProductState3Q(negm, PLUS, KET0)]


def eeb() -> BasisSet:
    return BasisSet(tuple(make_pure(r) for r in EEB), "entangled")


def dual_cbupb() -> CBUPB:
    return CBUPB(BasisSet(tuple(make_pure(r) for r in DUAL_SHIFTS), "product"),
                 BasisSet(tuple(make_pure(r) for r in DUAL_EEB), "entangled"))


def canonical_cbupb() -> CBUPB:
    return CBUPB(shifts_upb(), eeb())


def cbupb(s: BasisSet, t: BasisSet) -> CBUPB:
    cb = CBUPB(s, t)
    log.info("validated CBUPB (%d product + %d entangled)", len(s), len(t))
    return cb


def is_orthonormal(states: Sequence[PureState3Q], tol: float = HERM_TOL) -> bool:
    if tol <= 0:
        raise ValueError("tol must be positive")
    states = list(states)
    return bool(np.max(np.abs(_gram(states) - np.eye(len(states)))) <= tol)


def states_equal_up_to_phase(x: PureState3Q, y: PureState3Q, tol: float = EXACT_TOL) -> bool:
    return abs(np.vdot(x.amps, y.amps)) >= 1 - tol


def _check_unitary(u: np.ndarray, name: str) -> np.ndarray:
    u = np.array(u, dtype=np.complex128)
    if u.shape != (2, 2):
        raise NotUnitary(f"{name} must be 2 x 2, got {u.shape}")
    dev = float(np.max(np.abs(u.conj().T @ u - _I2)))
    if dev > HERM_TOL:
        raise NotUnitary(f"{name}: |u^dagger u - I| = {dev:.3e}")
    u.setflags(write=False)
    return u


@dataclass(frozen=True, eq=False)
class LocalUnitary:
    u1: np.ndarray
    u2: np.ndarray
    u3: np.ndarray
    _full: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        for name in ("u1", "u2", "u3"):
            object.__setattr__(self, name, _check_unitary(getattr(self, name), name))
        object.__setattr__(self, "_full", np.kron(self.u1, np.kron(self.u2, self.u3)))

    @property
    def matrix(self) -> np.ndarray:
        """u1 (x) u2 (x) u3 acting on r-ordered amplitudes."""
        return self._full

    @classmethod
    def identity(cls) -> "LocalUnitary":
        return cls(_I2, _I2, _I2)

    @classmethod
    def bit_flip(cls) -> "LocalUnitary":
        return cls(_X, _X, _X)


def lu_transform(states: Iterable[PureState3Q], u: LocalUnitary) -> list[PureState3Q]:
    for name in ("u1", "u2", "u3"):
        _check_unitary(getattr(u, name), name)
    return [make_pure(u.matrix @ s.amps) for s in states]


def lu_transform_cbupb(cb: CBUPB, u: LocalUnitary) -> CBUPB:
    return CBUPB(BasisSet(tuple(lu_transform(cb.s, u)), "product"),
                 BasisSet(tuple(lu_transform(cb.t, u)), "entangled"))


def random_local_unitary(seed: int) -> LocalUnitary:
    u = RNG(seed).unitaries(3)
    return LocalUnitary(u[0], u[1], u[2])


def combine(t: BasisSet | Sequence[PureState3Q], coeffs: Sequence[complex]) -> PureState3Q:
    lam = np.asarray(coeffs, dtype=np.complex128)
    if lam.shape != (len(t),):
        raise ValueError(f"need {len(t)} coefficients, got {lam.shape[0]}")
    if float(np.sum(np.abs(lam) ** 2)) <= EXACT_TOL:
        raise ZeroVector("all combination coefficients vanish")
    return normalized(sum(l * s.amps for l, s in zip(lam, t)))


def paper_combination(n: int) -> PureState3Q:
    """Equal-weight sum of the first ``n`` EEB members."""
    if not 1 <= n <= 4:
        raise ValueError("n must be 1..4")
    return combine(eeb(), [1] * n + [0] * (4 - n))


def combination_scan(t: BasisSet, count: int, seed: int) -> float:
    """Smallest max one-tangle seen over ``count`` random complex combinations of ``t``."""
    rng = RNG(seed)
    worst = np.inf
    for _ in range(count):
        psi = combine(t, rng.amplitudes(len(t)))
        worst = min(worst, max(one_tangle_minors(psi, p) for p in Party))
    return float(worst)
