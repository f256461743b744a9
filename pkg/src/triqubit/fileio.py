"""JSON state / basis / matrix files.

Amplitudes are always [re, im] pairs in r-order (r = 4i + 2j + k).
"""
from __future__ import annotations

import json
import math
from importlib import resources
from pathlib import Path
from typing import Literal, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .bases import BasisSet
from .config import FILE_NORM_TOL
from .errors import BasisError, NotNormalized, StateFileError, ZeroVector
from .qstate import DensityMatrix3Q, PureState3Q, normalized

STATE_SCHEMA = "triqubit-state/1"
BASIS_SCHEMA = "triqubit-basis/1"
MATRIX_SCHEMA = "triqubit-matrix/1"

Pair = tuple[float, float]


def _check_amplitudes(v: list[Pair]) -> list[Pair]:
    if len(v) != 8:
        raise ValueError(f"expected 8 [re, im] pairs, got {len(v)}")
    if not all(math.isfinite(x) for pair in v for x in pair):
        raise ValueError("amplitudes must be finite")
    return v


class StateFile(BaseModel):
    model_config = ConfigDict(populate_by_name=True)
    schema_: Literal["triqubit-state/1"] = Field(STATE_SCHEMA, alias="schema")
    amplitudes: list[Pair]

    @field_validator("amplitudes")
    @classmethod
    def check_amplitudes(cls, v: list[Pair]) -> list[Pair]:
        return _check_amplitudes(v)

    def vector(self) -> np.ndarray:
        return np.array([complex(re, im) for re, im in self.amplitudes])

    @classmethod
    def of(cls, psi: PureState3Q) -> "StateFile":
        return cls(amplitudes=pairs(psi.amps))


class BasisFile(BaseModel):
    model_config = ConfigDict(populate_by_name=True)
    schema_: Literal["triqubit-basis/1"] = Field(BASIS_SCHEMA, alias="schema")
    states: list[list[Pair]]
    kind: Optional[Literal["product", "entangled", "mixed"]] = None

    @field_validator("states")
    @classmethod
    def check_states(cls, v: list[list[Pair]]) -> list[list[Pair]]:
        if not 1 <= len(v) <= 8:
            raise ValueError(f"a basis file holds 1..8 states, got {len(v)}")
        return [_check_amplitudes(s) for s in v]

    @classmethod
    def of(cls, states: Sequence[PureState3Q], kind: str | None = None) -> "BasisFile":
        return cls(states=[pairs(s.amps) for s in states], kind=kind)


class MatrixFile(BaseModel):
    model_config = ConfigDict(populate_by_name=True)
    schema_: Literal["triqubit-matrix/1"] = Field(MATRIX_SCHEMA, alias="schema")
    entries: list[list[Pair]]
    sixteenths: Optional[list[list[int]]] = None

    def matrix(self) -> np.ndarray:
        return np.array([[complex(re, im) for re, im in row] for row in self.entries])


def pairs(values: np.ndarray) -> list[Pair]:
    return [(float(z.real), float(z.imag)) for z in np.asarray(values, dtype=np.complex128)]


def _read(path: str | Path, model):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise StateFileError(f"cannot read {path}: {e.strerror}", field="path") from e
    try:
        return model.model_validate_json(text)
    except ValidationError as e:
        err = e.errors()[0]
        where = ".".join(str(x) for x in err["loc"]) or "<root>"
        raise StateFileError(f"{path}: field '{where}': {err['msg']}", field=where) from e


def _to_state(v: np.ndarray, normalize: bool, where: str) -> PureState3Q:
    norm = float(np.linalg.norm(v))
    if not normalize and abs(norm - 1) > FILE_NORM_TOL:
        raise StateFileError(f"field '{where}': norm {norm!r} is not 1 (pass --normalize)", field=where)
    try:
        return normalized(v)
    except (ZeroVector, NotNormalized) as e:
        raise StateFileError(f"field '{where}': {e}", field=where) from e


def load_state(path: str | Path, normalize: bool = False) -> PureState3Q:
    return _to_state(_read(path, StateFile).vector(), normalize, "amplitudes")


def load_basis(path: str | Path, normalize: bool = False) -> BasisSet:
    f = _read(path, BasisFile)
    states = [_to_state(np.array([complex(*p) for p in s]), normalize, f"states.{i}")
              for i, s in enumerate(f.states)]
    try:
        return BasisSet(tuple(states), f.kind) if f.kind else BasisSet.classify(states)
    except BasisError as e:
        raise StateFileError(f"{path}: field 'states': {e}", field="states") from e


def _write(path: str | Path, model: BaseModel) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(model.model_dump_json(by_alias=True, indent=2) + "\n")
    return p


def write_state(path: str | Path, psi: PureState3Q) -> Path:
    return _write(path, StateFile.of(psi))


def write_basis(path: str | Path, states: Sequence[PureState3Q], kind: str | None = None) -> Path:
    return _write(path, BasisFile.of(states, kind))


def matrix_file(rho: DensityMatrix3Q, sixteenths: np.ndarray | None = None) -> MatrixFile:
    return MatrixFile(entries=[pairs(row) for row in rho.entries],
                      sixteenths=None if sixteenths is None else sixteenths.tolist())


def write_matrix(path: str | Path, rho: DensityMatrix3Q, sixteenths: np.ndarray | None = None) -> Path:
    return _write(path, matrix_file(rho, sixteenths))


def load_matrix(path: str | Path) -> MatrixFile:
    return _read(path, MatrixFile)


def bundled(name: str) -> Path:
    """Path of a bundled data file (shifts, eeb, dual_shifts, dual_eeb, paper_matrix)."""
    return Path(str(resources.files("triqubit").joinpath("data", f"{name}.json")))


def _plain(x):
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(f"{type(x).__name__} is not JSON serializable")


def dumps(payload: dict) -> str:
    return json.dumps(payload, indent=2, default=_plain)
