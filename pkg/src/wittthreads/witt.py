"""Action tables for the positive Witt algebra on graded threads.

The algebra has basis e_1, e_2, ... with [e_i, e_j] = (j - i) e_{i+j}.
Computations run in the rescaled basis

    E_1 = e_1,   E_i = 6 (i-2)! e_i   (i >= 2),

in which [E_1, E_i] = E_{i+1} for i >= 2, so every row of an action table
is the operator commutator of row 1 with the previous row and no division
ever happens.  In this basis the algebra is generated by E_1, E_2 subject
to two relations, whose residuals on a table are computed by
``benoist_residuals``:

    [E_2, E_3] - E_5        (lands five degrees up)
    [E_2, E_5] - 9/10 E_7   (lands seven degrees up)

``full_jacobi_check`` is the independent oracle: it converts the table back
to the standard basis and checks every bracket identity directly.

A table for an (n+1)-dimensional thread with basis f_1 ... f_{n+1} stores
coeffs[i][m] with  (row i) f_m = coeffs[i][m] * f_{i+m}, for i + m <= n+1.
Actions landing above degree n+1 are zero and are not stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .exactnum import ONE, ZERO, Scalar, ScalarLike

STANDARD = "standard"
TILDE = "tilde"


def bracket_coeff(i: int, j: int) -> Scalar:
    """Structure constant of [e_i, e_j] = (j - i) e_{i+j}."""
    if i < 1 or j < 1:
        raise ValueError("basis indices are positive")
    return Scalar.of(j - i)


def tilde_coeff(i: int) -> Scalar:
    """Rescaling factor: E_1 = e_1 and E_i = 6 (i-2)! e_i for i >= 2."""
    if i < 1:
        raise ValueError("basis indices are positive")
    return ONE if i == 1 else Scalar.of(6 * factorial(i - 2))


@dataclass(frozen=True)
class ActionTable:
    """Full structure constants of a thread action, rows indexed from 1."""

    n_plus_1: int
    convention: str
    rows: tuple[tuple[Scalar, ...], ...]  # rows[i-1][m-1] = coeff of (row i) f_m

    def coeff(self, i: int, m: int) -> Scalar:
        """Coefficient of (generator i) applied to f_m; zero above the top degree."""
        if i < 1 or m < 1 or m > self.n_plus_1:
            raise IndexError(f"coefficient ({i},{m}) out of range")
        if i + m > self.n_plus_1 or i > len(self.rows):
            return ZERO
        return self.rows[i - 1][m - 1]

    def row(self, i: int) -> tuple[Scalar, ...]:
        if i - 1 < len(self.rows):
            return self.rows[i - 1]
        return ()

    def to_standard(self) -> ActionTable:
        if self.convention == STANDARD:
            return self
        rows = tuple(
            tuple(c / tilde_coeff(i + 1) for c in row) for i, row in enumerate(self.rows)
        )
        return ActionTable(self.n_plus_1, STANDARD, rows)

    def to_tilde(self) -> ActionTable:
        if self.convention == TILDE:
            return self
        rows = tuple(
            tuple(c * tilde_coeff(i + 1) for c in row) for i, row in enumerate(self.rows)
        )
        return ActionTable(self.n_plus_1, TILDE, rows)


def _as_scalars(xs: Sequence[ScalarLike]) -> tuple[Scalar, ...]:
    return tuple(Scalar.of(x) for x in xs)


def generate_action(
    alpha: Sequence[ScalarLike],
    b: Sequence[ScalarLike],
    convention: str = TILDE,
) -> ActionTable:
    """Build the whole table from rows 1 and 2 by bracket recursion.

    ``alpha`` has length n (action of the degree-1 generator) and ``b``
    length n-1 (degree-2 generator).  In the rescaled basis row i+1 is
    row1*rowi - rowi*row1; in the standard basis the commutator is divided
    by (i - 1).  Any input generates *some* table; relation checking is a
    separate concern.
    """
    row1 = _as_scalars(alpha)
    row2 = _as_scalars(b)
    n_plus_1 = len(row1) + 1
    if len(row2) != max(n_plus_1 - 2, 0):
        raise ValueError("row lengths are inconsistent")
    rows = [row1, row2]
    for i in range(2, n_plus_1):
        prev = rows[-1]
        width = n_plus_1 - (i + 1)
        if width <= 0:
            break
        nxt = []
        for m in range(1, width + 1):
            c = row1[m + i - 1] * prev[m - 1] - prev[m] * row1[m - 1]
            if convention == STANDARD:
                c = c / Scalar.of(i - 1)
            nxt.append(c)
        rows.append(tuple(nxt))
    return ActionTable(n_plus_1, convention, tuple(rows))


def benoist_residuals(table: ActionTable) -> list[tuple[str, int, Scalar]]:
    """Nonzero residuals of the two defining relations applied to each basis vector.

    Returns triples (relation id, basis index, residual).  The index ranges
    are forced by the degree bound: the first relation lands in degree m+5,
    the second in m+7, and both must stay within the thread.
    An empty list means the table is a genuine action of the algebra.
    """
    t = table.to_tilde()
    n_plus_1 = t.n_plus_1
    bad = []
    for m in range(1, n_plus_1 - 4):
        r = t.coeff(2, m + 3) * t.coeff(3, m) - t.coeff(3, m + 2) * t.coeff(2, m) - t.coeff(5, m)
        if not r.is_zero():
            bad.append(("R5", m, r))
    frac = Scalar.of(Fraction(9, 10))
    for m in range(1, n_plus_1 - 6):
        r = (
            t.coeff(2, m + 5) * t.coeff(5, m)
            - t.coeff(5, m + 2) * t.coeff(2, m)
            - frac * t.coeff(7, m)
        )
        if not r.is_zero():
            bad.append(("R7", m, r))
    return bad


def full_jacobi_check(table: ActionTable) -> list[tuple[int, int, int, Scalar]]:
    """Direct check of (e_i e_j - e_j e_i - (j-i) e_{i+j}) f_m = 0 for all triples.

    Redundant with ``benoist_residuals`` for genuine actions; kept as an
    independent oracle.  Returns the nonzero defects.
    """
    t = table.to_standard()
    n_plus_1 = t.n_plus_1
    bad = []
    for i in range(1, n_plus_1):
        for j in range(i + 1, n_plus_1):
            for m in range(1, n_plus_1 - i - j + 1):
                d = (
                    t.coeff(i, m + j) * t.coeff(j, m)
                    - t.coeff(j, m + i) * t.coeff(i, m)
                    - bracket_coeff(i, j) * t.coeff(i + j, m)
                )
                if not d.is_zero():
                    bad.append((i, j, m, d))
    return bad
