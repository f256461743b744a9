"""The uniform mixture over the exact-entanglement basis, and its certificate.

rho = (1/4) sum_j |phi_j><phi_j| = (I - P_S) / 4. It is bound entangled when
it stays PSD under every single-party partial transpose and its range
(= span T) holds no product state.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .bases import BasisSet, cbupb
from .config import EXACT_TOL, HERM_TOL
from .errors import BasisError
from .productsearch import SearchConfig, Verdict, ees_product_free
from .qstate import DensityMatrix3Q, Party, hermitian_eigenvalues, mix, partial_transpose

log = logging.getLogger(__name__)

# printed matrix, numerators over 16
PAPER_SIXTEENTHS = (
    (0, 0, 0, 0, 0, 0, 0, 0),
    (0, 3, 0, -1, 0, 1, 0, 1),
    (0, 0, 3, 1, 0, 0, -1, 1),
    (0, -1, 1, 2, 0, 1, 1, 0),
    (0, 0, 0, 0, 3, -1, 1, 1),
    (0, 1, 0, 1, -1, 2, 1, 0),
    (0, 0, -1, 1, 1, 1, 2, 0),
    (0, 1, 1, 0, 1, 0, 0, 1),
)


@dataclass(frozen=True)
class PptReport:
    spectra: tuple[tuple[float, ...], tuple[float, ...], tuple[float, ...]]   # cuts A|BC, B|AC, C|AB
    min_eigenvalue: float
    ppt_all: bool

    def spectrum(self, p: Party) -> tuple[float, ...]:
        return self.spectra[Party(p).axis]


@dataclass(frozen=True)
class BoundEntanglementCertificate:
    ppt: PptReport
    range_product_free: Verdict
    matrix_matches_paper: bool

    @property
    def bound_entangled(self) -> bool:
        return self.ppt.ppt_all and self.range_product_free.certified


def _require_four(states: BasisSet, what: str):
    if len(states) != 4:
        raise BasisError(f"{what} must hold 4 orthonormal states, got {len(states)}")


def rho_from_eeb(t: BasisSet) -> DensityMatrix3Q:
    _require_four(t, "T")
    return mix(list(t), [0.25] * 4)


def rho_from_upb_complement(s: BasisSet) -> DensityMatrix3Q:
    _require_four(s, "S")
    p_s = sum(np.outer(x.amps, x.amps.conj()) for x in s)
    return DensityMatrix3Q((np.eye(8) - p_s) / 4)


def paper_matrix() -> DensityMatrix3Q:
    return DensityMatrix3Q(np.array(PAPER_SIXTEENTHS, dtype=float) / 16)


def sixteenths(rho: DensityMatrix3Q) -> tuple[np.ndarray, float]:
    """Integer numerators of 16*rho and the largest distance to them."""
    scaled = 16 * rho.entries
    ints = np.rint(scaled.real).astype(int)
    return ints, float(np.max(np.abs(scaled - ints)))


def matches_paper(rho: DensityMatrix3Q) -> bool:
    ints, residual = sixteenths(rho)
    return residual < EXACT_TOL and np.array_equal(ints, np.array(PAPER_SIXTEENTHS))


def ppt_report(rho: DensityMatrix3Q) -> PptReport:
    spectra = tuple(tuple(hermitian_eigenvalues(partial_transpose(rho, p))) for p in Party)
    lo = min(s[-1] for s in spectra)
    return PptReport(spectra, lo, lo >= -HERM_TOL)


def certify_bound_entanglement(s: BasisSet, t: BasisSet, cfg: SearchConfig | None = None,
                               grid: int | None = None) -> BoundEntanglementCertificate:
    cbupb(s, t)
    rho = rho_from_eeb(t)
    ppt = ppt_report(rho)
    verdict = ees_product_free(t, cfg, grid)
    cert = BoundEntanglementCertificate(ppt, verdict, matches_paper(rho))
    log.info("bound entanglement: ppt_all=%s product_free=%s matches_paper=%s",
             ppt.ppt_all, verdict.certified, cert.matrix_matches_paper)
    return cert
