"""Defining sets of graded thread modules and their structural operations.

A thread with basis f_1 ... f_{n+1} is determined by the constants

    (degree-1 generator) f_i = alpha_i f_{i+1}     i = 1 .. n
    (degree-2 generator) f_j = beta_j  f_{j+2}     j = 1 .. n-1

Two conventions coexist.  In the *standard* convention ``alpha``/``beta``
are the raw constants of e_1/e_2.  In the *tilde* convention the basis has
been rescaled so that every alpha is 0 or 1, and the second list stores the
rescaled constants b_j of the degree-2 element of the 6(i-2)! basis; where
all alphas are nonzero these are b_j = 6 beta_j / (alpha_j alpha_{j+1}).

Indices are always 1-based and internal: a module presented on an index
window k..k+m elsewhere is re-indexed to 1..m+1 here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import witt
from .exactnum import ONE, ZERO, Scalar, ScalarLike


class BadWindowError(ValueError):
    """Subquotient window indices out of range."""


@dataclass(frozen=True)
class DefiningSet:
    n_plus_1: int
    convention: str  # witt.STANDARD or witt.TILDE
    alpha: tuple[Scalar, ...]
    beta_or_b: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        n = self.n_plus_1 - 1
        if len(self.alpha) != max(n, 0) or len(self.beta_or_b) != max(n - 1, 0):
            raise ValueError("constant list lengths do not match the dimension")
        if self.convention not in (witt.STANDARD, witt.TILDE):
            raise ValueError(f"unknown convention {self.convention!r}")
        if self.convention == witt.TILDE:
            for a in self.alpha:
                if not (a.is_zero() or a == ONE):
                    raise ValueError("tilde convention requires alpha in {0, 1}")

    @property
    def field_d(self) -> int:
        for x in (*self.alpha, *self.beta_or_b):
            if x.d != 0:
                return x.d
        return 0

    def zero_positions(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, a in enumerate(self.alpha) if a.is_zero())


def make_set(
    alpha: Sequence[ScalarLike],
    beta_or_b: Sequence[ScalarLike],
    convention: str = witt.TILDE,
) -> DefiningSet:
    a = tuple(Scalar.of(x) for x in alpha)
    b = tuple(Scalar.of(x) for x in beta_or_b)
    return DefiningSet(len(a) + 1, convention, a, b)


def type_a_set(b: Sequence[ScalarLike]) -> DefiningSet:
    """Tilde-normalized set with no alpha zeros and the given b-coordinates."""
    return make_set([ONE] * (len(b) + 1), b)


@dataclass(frozen=True)
class ZeroPattern:
    """Zero pattern of the alpha list: none, one, two adjacent, or anything else."""

    kind: str  # "A", "B", "C", or "degenerate"
    k: Optional[int] = None  # position of the (first) zero for B and C
    zeros: tuple[int, ...] = ()

    @property
    def is_degenerate(self) -> bool:
        return self.kind == "degenerate"


def zero_pattern(ds: DefiningSet) -> ZeroPattern:
    zs = ds.zero_positions()
    if not zs:
        return ZeroPattern("A")
    if len(zs) == 1:
        return ZeroPattern("B", zs[0], zs)
    if len(zs) == 2 and zs[1] == zs[0] + 1:
        return ZeroPattern("C", zs[0], zs)
    return ZeroPattern("degenerate", zs[0], zs)


def generate(ds: DefiningSet) -> witt.ActionTable:
    """The full action table generated by the defining set."""
    return witt.generate_action(ds.alpha, ds.beta_or_b, ds.convention)


def normalize(ds: DefiningSet) -> tuple[DefiningSet, tuple[Scalar, ...]]:
    """Rescale the basis so every alpha is 0 or 1.

    Returns the tilde-normalized set and the rescaling witness gamma (one
    factor per basis vector, f_i -> gamma_i f_i).  Within each maximal block
    of consecutive nonzero alphas the gammas are determined once the block's
    leading gamma is fixed to 1; the relative scale between blocks is gauge
    and is fixed by that same choice.  Tilde input is returned unchanged
    with the identity witness.
    """
    n = ds.n_plus_1 - 1
    if ds.convention == witt.TILDE:
        return ds, tuple([ONE] * ds.n_plus_1)
    gamma = [ONE] * ds.n_plus_1
    for i in range(1, n + 1):
        a = ds.alpha[i - 1]
        gamma[i] = gamma[i - 1] * a if not a.is_zero() else ONE
    new_alpha = tuple(ZERO if a.is_zero() else ONE for a in ds.alpha)
    six = Scalar.of(6)
    new_b = tuple(
        six * ds.beta_or_b[j - 1] * gamma[j - 1] / gamma[j + 1] for j in range(1, n)
    )
    return DefiningSet(ds.n_plus_1, witt.TILDE, new_alpha, new_b), tuple(gamma)


def dualize(ds: DefiningSet) -> DefiningSet:
    """The graded dual: constants reversed and negated.

    In the tilde convention the reversed alpha pattern keeps its 0/1 values
    (sign changes are absorbed into the dual basis rescaling), and the
    b-coordinates transform as b*_j = -b_{n-j}.  Applying twice returns the
    input bitwise.
    """
    if ds.convention == witt.TILDE:
        alpha = tuple(reversed(ds.alpha))  # 0/1 pattern mirrors, signs absorbed
    else:
        alpha = tuple(-a for a in reversed(ds.alpha))
    beta = tuple(-x for x in reversed(ds.beta_or_b))
    return DefiningSet(ds.n_plus_1, ds.convention, alpha, beta)


def subquotient(ds: DefiningSet, lo: int, hi: int) -> DefiningSet:
    """Restriction to the basis window f_lo ... f_hi (1-based, inclusive)."""
    if not (1 <= lo <= hi <= ds.n_plus_1):
        raise BadWindowError(f"window {lo}..{hi} out of 1..{ds.n_plus_1}")
    alpha = ds.alpha[lo - 1 : hi - 1]
    beta = ds.beta_or_b[lo - 1 : max(hi - 2, 0)]
    return DefiningSet(hi - lo + 1, ds.convention, alpha, beta)


def decompose(ds: DefiningSet) -> Optional[tuple[DefiningSet, DefiningSet, int]]:
    """Split off an invariant window <f_1..f_m> + <f_{m+1}..f_{n+1}> if possible.

    The split at m needs alpha_m = 0 together with beta_{m-1} = beta_m = 0
    where those constants exist; then nothing maps across the boundary and
    the two windows are both invariant under the generated action.  Returns
    the smallest valid m, or None.  One-dimensional blocks are allowed.
    """
    n = ds.n_plus_1 - 1
    beta = ds.beta_or_b
    for m in range(1, n + 1):
        if not ds.alpha[m - 1].is_zero():
            continue
        left_ok = m - 1 < 1 or beta[m - 2].is_zero()
        right_ok = m > len(beta) or beta[m - 1].is_zero()
        if left_ok and right_ok:
            return subquotient(ds, 1, m), subquotient(ds, m + 1, ds.n_plus_1), m
    return None


def _blocks(pattern_alpha: tuple[Scalar, ...], n_plus_1: int) -> list[int]:
    """Block id of each basis vector; a new block starts after each alpha zero."""
    block = [0] * (n_plus_1 + 1)  # 1-based
    current = 0
    block[1] = 0
    for i in range(1, n_plus_1):
        if i <= len(pattern_alpha) and pattern_alpha[i - 1].is_zero():
            current += 1
        block[i + 1] = current
    return block


def graded_isomorphic(a: DefiningSet, b: DefiningSet) -> Optional[tuple[Scalar, ...]]:
    """Diagonal rescaling taking the constants of ``a`` to those of ``b``.

    Solves for one scale per alpha block (blocks are separated by the alpha
    zeros; within a block the normalized constants are rigid).  Returns the
    full per-basis-vector witness gamma with a's raw basis rescaled by
    gamma equal to b's constants, or None.  Unconstrained blocks get scale 1.
    """
    if a.n_plus_1 != b.n_plus_1:
        return None
    na, ga = normalize(a)
    nb, gb = normalize(b)
    if na.alpha != nb.alpha:
        return None
    n = a.n_plus_1 - 1
    block = _blocks(na.alpha, a.n_plus_1)
    nblocks = block[a.n_plus_1] + 1
    scale: list[Optional[Scalar]] = [None] * nblocks
    scale[0] = ONE
    # propagate b-entry constraints scale[B(j)] / scale[B(j+2)] = nb_j / na_j
    pending = True
    constraints = []
    for j in range(1, n):
        x, y = na.beta_or_b[j - 1], nb.beta_or_b[j - 1]
        if x.is_zero() != y.is_zero():
            return None
        if not x.is_zero():
            constraints.append((block[j], block[j + 2], y / x))
    while pending:
        pending = False
        for lo, hi, r in constraints:
            if scale[lo] is not None and scale[hi] is None:
                scale[hi] = scale[lo] / r
                pending = True
            elif scale[hi] is not None and scale[lo] is None:
                scale[lo] = scale[hi] * r
                pending = True
    for i, s in enumerate(scale):
        if s is None:
            scale[i] = ONE
    for lo, hi, r in constraints:
        if scale[lo] / scale[hi] != r:
            return None
    # total witness: a's raw basis -> normalized -> scaled -> back through b's normalizer
    gamma = tuple(
        ga[i] * scale[block[i + 1]] / gb[i] for i in range(a.n_plus_1)
    )
    return gamma
