"""Seeded randomness: Haar unitaries and random pure states.

Every stream is a PCG64 ``numpy.random.Generator`` seeded directly, so a seed
reproduces bit-for-bit within one numpy/scipy version.
"""
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import unitary_group


def generator(seed: int | tuple[int, ...] | list[int]) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


@dataclass
class RNG:
    seed: int
    gen: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        self.gen = generator(self.seed)

    def amplitudes(self, n: int = 8) -> np.ndarray:
        """Complex Gaussian vector, normalized (Haar on the unit sphere)."""
        v = self.gen.standard_normal(n) + 1j * self.gen.standard_normal(n)
        return v / np.linalg.norm(v)

    def unitaries(self, count: int, dim: int = 2) -> np.ndarray:
        """``count`` independent Haar unitaries, shape (count, dim, dim)."""
        u = unitary_group.rvs(dim, size=count, random_state=self.gen)
        return np.asarray(u, dtype=np.complex128).reshape(count, dim, dim)
