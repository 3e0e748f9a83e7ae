"""Dense real m-linear forms on the sup-norm cube, and their norms.

A form is its coefficient tensor T[i1, ..., im] of shape (N,)*m, stored
dense and row-major (first index slowest).  The operator norm over the
sup-norm unit ball is attained at sign vectors, and linearity in the last
slot collapses its maximization to an l1 sum, so the exact norm is

    max over s in {-1,+1}^((m-1)N) of  sum_{im} | sum_{i1..i(m-1)} T[..] s.. |

which costs 2^((m-1)N) contractions.  That exponent is capped by a bit
budget (default 24, overridable through the BH_BUDGET_BITS environment
variable); past the cap, ``sup_norm_lower`` gives a certified-from-below
estimate by alternating sign ascent.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterator, Optional, Sequence, Union

import numpy as np

from .exponents import bh_exponent

__all__ = [
    "DEFAULT_BUDGET_BITS",
    "BUDGET_ENV_VAR",
    "MAX_TENSOR_ENTRIES",
    "BudgetExceededError",
    "enumeration_budget_bits",
    "MultilinearForm",
    "VectorFamily",
    "form_from_flat",
    "to_interchange",
    "from_interchange",
    "dump_form",
    "load_form",
    "evaluate",
    "sup_norm_exact",
    "sup_norm_lower",
    "bh_lhs",
    "bh_ratio",
    "weak_l1_norm",
    "multiple_summing_lhs",
]

DEFAULT_BUDGET_BITS = 24
BUDGET_ENV_VAR = "BH_BUDGET_BITS"
MAX_TENSOR_ENTRIES = 1 << 20


class BudgetExceededError(ValueError):
    """Sign enumeration would exceed the configured bit budget."""


def enumeration_budget_bits() -> int:
    """The exact-norm bit budget, from BH_BUDGET_BITS or the default."""
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw is None:
        return DEFAULT_BUDGET_BITS
    try:
        bits = int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}") from None
    if bits < 1:
        raise ValueError(f"{BUDGET_ENV_VAR} must be >= 1, got {bits}")
    return bits


@dataclass(frozen=True)
class MultilinearForm:
    """Immutable dense coefficient tensor of an m-linear form on R^N."""

    coeffs: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.coeffs, dtype=float)
        if arr.ndim < 1:
            raise ValueError("coefficient tensor must have at least one axis")
        n = arr.shape[0]
        if n < 1:
            raise ValueError("dimension N must be >= 1")
        if any(s != n for s in arr.shape):
            raise ValueError(f"tensor must be a hypercube, got shape {arr.shape}")
        if arr.size > MAX_TENSOR_ENTRIES:
            raise ValueError(
                f"tensor has {arr.size} entries, over the {MAX_TENSOR_ENTRIES} cap"
            )
        if not np.all(np.isfinite(arr)):
            raise ValueError("tensor entries must be finite")
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    @property
    def m(self) -> int:
        return self.coeffs.ndim

    @property
    def N(self) -> int:
        return self.coeffs.shape[0]


@dataclass(frozen=True)
class VectorFamily:
    """A finite family of vectors in R^N, one row per vector.

    ``slot`` optionally records which argument slot (1-based) the family
    is meant for; when set, ``multiple_summing_lhs`` checks it against the
    family's position.
    """

    vectors: np.ndarray
    slot: Optional[int] = None

    def __post_init__(self) -> None:
        arr = np.array(self.vectors, dtype=float)
        if arr.ndim != 2:
            raise ValueError(f"vectors must be a (J, N) array, got shape {arr.shape}")
        if arr.shape[0] < 1:
            raise ValueError("a family needs at least one vector")
        if not np.all(np.isfinite(arr)):
            raise ValueError("family entries must be finite")
        arr.flags.writeable = False
        object.__setattr__(self, "vectors", arr)


FamilyLike = Union[VectorFamily, np.ndarray, Sequence[Sequence[float]]]


def _family_matrix(family: FamilyLike) -> np.ndarray:
    if isinstance(family, VectorFamily):
        return family.vectors
    arr = np.asarray(family, dtype=float)
    if arr.ndim != 2 or arr.shape[0] < 1:
        raise ValueError(f"family must be a nonempty (J, N) array, got shape {arr.shape}")
    return arr


def form_from_flat(m: int, N: int, flat: Sequence[float]) -> MultilinearForm:
    """Build a form from a row-major flat coefficient list."""
    arr = np.asarray(flat, dtype=float)
    if arr.size != N**m:
        raise ValueError(f"expected {N**m} coefficients for m={m}, N={N}, got {arr.size}")
    return MultilinearForm(arr.reshape((N,) * m))


def to_interchange(form: MultilinearForm, seed: Optional[int] = None) -> dict:
    """The tensor interchange document {m, N, coeffs, seed?}."""
    doc = {"m": form.m, "N": form.N, "coeffs": form.coeffs.ravel().tolist()}
    if seed is not None:
        doc["seed"] = int(seed)
    return doc


def from_interchange(doc: dict) -> MultilinearForm:
    """Rebuild a form from an interchange document."""
    return form_from_flat(int(doc["m"]), int(doc["N"]), doc["coeffs"])


def dump_form(form: MultilinearForm, path: Union[str, Path], seed: Optional[int] = None) -> None:
    Path(path).write_text(json.dumps(to_interchange(form, seed)))


def load_form(path: Union[str, Path]) -> MultilinearForm:
    return from_interchange(json.loads(Path(path).read_text()))


def evaluate(form: MultilinearForm, args: Sequence[Sequence[float]]) -> float:
    """Full contraction T(x1, ..., xm); multilinear in every slot."""
    if len(args) != form.m:
        raise ValueError(f"expected {form.m} argument vectors, got {len(args)}")
    v = form.coeffs
    for x in args:
        xa = np.asarray(x, dtype=float)
        if xa.shape != (form.N,):
            raise ValueError(f"argument vectors must have shape ({form.N},), got {xa.shape}")
        v = np.tensordot(xa, v, axes=(0, 0))
    return float(v)


_SIGN_CACHE_BITS = 12
_BLOCK_BITS = 16


@lru_cache(maxsize=None)
def _sign_matrix(n: int) -> np.ndarray:
    codes = np.arange(1 << n, dtype=np.int64)
    mat = ((codes[:, None] >> np.arange(n)) & 1) * 2.0 - 1.0
    mat.flags.writeable = False
    return mat


def _sign_blocks(n: int) -> Iterator[np.ndarray]:
    """All 2^n sign vectors of length n, yielded as row blocks."""
    if n <= _SIGN_CACHE_BITS:
        yield _sign_matrix(n)
        return
    total = 1 << n
    step = 1 << _BLOCK_BITS
    cols = np.arange(n)
    for start in range(0, total, step):
        codes = np.arange(start, min(start + step, total), dtype=np.int64)
        yield ((codes[:, None] >> cols) & 1) * 2.0 - 1.0


def _sup_over_signs(tensor: np.ndarray, n: int) -> float:
    if tensor.ndim == 2:
        best = 0.0
        for block in _sign_blocks(n):
            best = max(best, float(np.abs(block @ tensor).sum(axis=1).max()))
        return best
    best = 0.0
    flat = tensor.reshape(n, -1)
    tail_shape = tensor.shape[1:]
    for block in _sign_blocks(n):
        contracted = block @ flat
        for row in contracted:
            best = max(best, _sup_over_signs(row.reshape(tail_shape), n))
    return best


def sup_norm_exact(form: MultilinearForm, budget_bits: Optional[int] = None) -> float:
    """Exact operator norm by sign enumeration over the first m-1 slots.

    Raises BudgetExceededError when (m-1)*N exceeds the bit budget; use
    ``sup_norm_lower`` there instead.
    """
    budget = enumeration_budget_bits() if budget_bits is None else budget_bits
    bits = (form.m - 1) * form.N
    if bits > budget:
        raise BudgetExceededError(
            f"(m-1)*N = {bits} sign bits exceed the budget of {budget}; "
            "use sup_norm_lower for a certified-from-below estimate"
        )
    if form.m == 1:
        return float(np.abs(form.coeffs).sum())
    return _sup_over_signs(form.coeffs, form.N)


def _slot_coefficients(tensor: np.ndarray, signs: list, k: int) -> np.ndarray:
    """Coefficient vector of slot k with every other slot fixed."""
    v = tensor
    for j in reversed(range(len(signs))):
        if j == k:
            continue
        v = np.tensordot(v, signs[j], axes=(j, 0))
    return v


def sup_norm_lower(form: MultilinearForm, restarts: int = 8, seed: int = 0) -> float:
    """Alternating sign ascent to a local maximum; best of ``restarts``.

    Each pass frees one slot, sets its signs to the signs of that slot's
    coefficient vector (zero coefficients keep their current sign, which
    keeps the ascent monotone), and repeats to a fixed point.  The result
    never exceeds sup_norm_exact and is deterministic given the seed.
    """
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}")
    rng = np.random.default_rng(seed)
    m, n = form.m, form.N
    best = 0.0
    for _ in range(restarts):
        signs = [np.where(rng.random(n) < 0.5, -1.0, 1.0) for _ in range(m)]
        changed = True
        while changed:
            changed = False
            for k in range(m):
                g = _slot_coefficients(form.coeffs, signs, k)
                updated = np.where(g > 0.0, 1.0, np.where(g < 0.0, -1.0, signs[k]))
                if not np.array_equal(updated, signs[k]):
                    signs[k] = updated
                    changed = True
        best = max(best, evaluate(form, signs))
    return best


def bh_lhs(form: MultilinearForm) -> float:
    """Coefficient norm (sum |T|^(2m/(m+1)))^((m+1)/(2m))."""
    p = float(bh_exponent(form.m))
    return float((np.abs(form.coeffs) ** p).sum() ** (1.0 / p))


def bh_ratio(
    form: MultilinearForm,
    norm_mode: str = "exact",
    restarts: int = 8,
    seed: int = 0,
    budget_bits: Optional[int] = None,
) -> float:
    """Coefficient norm over operator norm.

    With ``norm_mode="exact"`` the result is a certified lower bound on
    the arity-m constant.  With ``"heuristic"`` the norm in the
    denominator may be an underestimate, so the ratio is an uncertified
    upper estimate and must never be read as a counterexample.
    """
    if not np.any(form.coeffs):
        raise ValueError("the zero form has no ratio")
    if norm_mode == "exact":
        norm = sup_norm_exact(form, budget_bits=budget_bits)
    elif norm_mode == "heuristic":
        norm = sup_norm_lower(form, restarts=restarts, seed=seed)
    else:
        raise ValueError(f"norm_mode must be 'exact' or 'heuristic', got {norm_mode!r}")
    return bh_lhs(form) / norm


def weak_l1_norm(family: FamilyLike) -> float:
    """sup over unit dual functionals of sum_j |phi(x_j)|.

    On R^N with the sup norm the dual ball is the l1 ball, whose extreme
    points are +-e_i, so the sup is the largest per-coordinate l1 mass.
    """
    mat = _family_matrix(family)
    return float(np.abs(mat).sum(axis=0).max())


def multiple_summing_lhs(
    form: MultilinearForm, families: Sequence[FamilyLike], p: float
) -> float:
    """Mixed p-sum of |T(x_{j1}, ..., x_{jm})| over all family tuples.

    With canonical-basis families and p = 2m/(m+1) this reduces to
    ``bh_lhs``.
    """
    if p < 1.0:
        raise ValueError(f"p must be >= 1, got {p}")
    if len(families) != form.m:
        raise ValueError(f"expected {form.m} families, got {len(families)}")
    mats = []
    for position, family in enumerate(families, start=1):
        if isinstance(family, VectorFamily) and family.slot is not None:
            if family.slot != position:
                raise ValueError(
                    f"family for slot {family.slot} passed in position {position}"
                )
        mat = _family_matrix(family)
        if mat.shape[1] != form.N:
            raise ValueError(
                f"family vectors must have length {form.N}, got {mat.shape[1]}"
            )
        mats.append(mat)
    values = form.coeffs
    for mat in mats:
        values = np.tensordot(values, mat, axes=(0, 1))
    return float((np.abs(values) ** p).sum() ** (1.0 / p))
