"""Exact dense linear algebra over the rationals.

Everything at desk scale, so plain Gaussian elimination on lists of
Fractions.  Pivot choice is leftmost-nonzero with rows taken in the order
given (no reordering, no magnitude heuristics), which makes every rank,
kernel and basis in the package deterministic for identical input.

A matrix acts on column vectors.  ``Mat`` carries the column count
explicitly so maps with zero rows or zero columns keep their shape.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

Q0 = Fraction(0)
Q1 = Fraction(1)


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Mat:
    """Rational matrix with explicit shape, acting on column vectors."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows, ncols: int | None = None):
        rows = [list(map(frac, r)) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        self.rows = rows
        self.ncols = ncols

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @staticmethod
    def zero(nrows: int, ncols: int) -> "Mat":
        return Mat([[Q0] * ncols for _ in range(nrows)], ncols)

    @staticmethod
    def identity(n: int) -> "Mat":
        return Mat([[Q1 if i == j else Q0 for j in range(n)] for i in range(n)], n)

    @staticmethod
    def from_columns(cols, nrows: int) -> "Mat":
        m = Mat.zero(nrows, len(cols))
        for j, c in enumerate(cols):
            if len(c) != nrows:
                raise ValueError("column of wrong height")
            for i, x in enumerate(c):
                m.rows[i][j] = frac(x)
        return m

    def column(self, j: int) -> list[Fraction]:
        return [r[j] for r in self.rows]

    def columns(self) -> list[list[Fraction]]:
        return [self.column(j) for j in range(self.ncols)]

    def apply(self, v) -> list[Fraction]:
        if len(v) != self.ncols:
            raise ValueError("vector length %d, expected %d" % (len(v), self.ncols))
        return [sum((r[j] * v[j] for j in range(self.ncols)), Q0) for r in self.rows]

    def mul(self, other: "Mat") -> "Mat":
        """self  o  other, as composition of column-vector maps."""
        if other.nrows != self.ncols:
            raise ValueError("shape mismatch in composition")
        out = Mat.zero(self.nrows, other.ncols)
        for i in range(self.nrows):
            ri = self.rows[i]
            for j in range(other.ncols):
                s = Q0
                for k in range(self.ncols):
                    a = ri[k]
                    if a:
                        s += a * other.rows[k][j]
                out.rows[i][j] = s
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __repr__(self):
        return "Mat(%r, ncols=%d)" % (self.rows, self.ncols)


def rref(rows, ncols: int):
    """Reduced row echelon form.

    Returns (reduced_nonzero_rows, pivot_columns).  Scans columns left to
    right; the pivot row for a column is the first remaining row with a
    nonzero entry there.
    """
    work = [list(map(frac, r)) for r in rows]
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        sel = None
        for i in range(top, len(work)):
            if work[i][col]:
                sel = i
                break
        if sel is None:
            continue
        work[top], work[sel] = work[sel], work[top]
        inv = Q1 / work[top][col]
        work[top] = [x * inv for x in work[top]]
        for i in range(len(work)):
            if i != top and work[i][col]:
                c = work[i][col]
                work[i] = [a - c * b for a, b in zip(work[i], work[top])]
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    return work[: len(pivots)], pivots


def rank(mat: Mat) -> int:
    return len(rref(mat.rows, mat.ncols)[1])


def reduce_against(red_rows, pivots, v):
    """Eliminate the pivot coordinates of v against reduced rows."""
    v = list(map(frac, v))
    for row, p in zip(red_rows, pivots):
        c = v[p]
        if c:
            v = [a - c * b for a, b in zip(v, row)]
    return v


def in_row_span(red_rows, pivots, v) -> bool:
    return not any(reduce_against(red_rows, pivots, v))


def spans_equal(vecs_a, vecs_b, n: int) -> bool:
    """Do two lists of length-n vectors span the same subspace?"""
    ra = len(rref(vecs_a, n)[1])
    rb = len(rref(vecs_b, n)[1])
    rab = len(rref(list(vecs_a) + list(vecs_b), n)[1])
    return ra == rb == rab


def nullspace(mat: Mat) -> list[list[Fraction]]:
    """Basis of the kernel, one vector per free column, in column order."""
    red, pivots = rref(mat.rows, mat.ncols)
    pivot_set = set(pivots)
    free = [j for j in range(mat.ncols) if j not in pivot_set]
    basis = []
    for f in free:
        v = [Q0] * mat.ncols
        v[f] = Q1
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def column_space_basis(mat: Mat) -> tuple[list[list[Fraction]], list[int]]:
    """Independent columns of mat (the pivot columns), with their indices."""
    _, pivots = rref(mat.rows, mat.ncols)
    return [mat.column(j) for j in pivots], list(pivots)


def express_in_basis(basis_vectors, v, n: int):
    """Coefficients c with sum c_i basis_i = v, or None if v is outside.

    The basis vectors need not be independent; the first consistent
    solution in rref order is returned.
    """
    if not basis_vectors:
        return [] if not any(frac(x) for x in v) else None
    aug_rows = []
    for i in range(n):
        aug_rows.append([frac(b[i]) for b in basis_vectors] + [frac(v[i])])
    red, pivots = rref(aug_rows, len(basis_vectors) + 1)
    k = len(basis_vectors)
    if k in pivots:
        return None
    coeffs = [Q0] * k
    for row, p in zip(red, pivots):
        coeffs[p] = row[k]
    return coeffs


class RowSpan:
    """Incrementally built row span with membership tests."""

    def __init__(self, n: int):
        self.n = n
        self.red: list[list[Fraction]] = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def residue(self, v):
        return reduce_against(self.red, self.pivots, v)

    def contains(self, v) -> bool:
        return not any(self.residue(v))

    def add(self, v) -> bool:
        """Add v to the span; True when the dimension grew."""
        res = self.residue(v)
        lead = next((j for j, x in enumerate(res) if x), None)
        if lead is None:
            return False
        inv = Q1 / res[lead]
        res = [x * inv for x in res]
        for row in self.red:
            c = row[lead]
            if c:
                for j in range(self.n):
                    row[j] -= c * res[j]
        at = next((k for k, p in enumerate(self.pivots) if p > lead), len(self.pivots))
        self.red.insert(at, res)
        self.pivots.insert(at, lead)
        return True


class Subquotient:
    """A subquotient  span(cocycles) / span(boundaries)  of Q^n.

    Boundaries must lie in the cocycle span.  Basis classes are represented
    by the first cocycle vectors that are independent modulo boundaries;
    express() writes any ambient vector of the cocycle span in this basis.
    """

    def __init__(self, n: int, cocycles, boundaries):
        self.n = n
        self.bnd_red, self.bnd_piv = rref(boundaries, n)
        self.reps: list[list[Fraction]] = []
        self._reduced_reps: list[list[Fraction]] = []
        span = RowSpan(n)
        for v in cocycles:
            res = reduce_against(self.bnd_red, self.bnd_piv, v)
            if span.add(res):
                self.reps.append(list(map(frac, v)))
                self._reduced_reps.append(res)

    @property
    def dim(self) -> int:
        return len(self.reps)

    def express(self, v) -> list[Fraction]:
        """Coordinates of the class of v in the chosen basis."""
        res = reduce_against(self.bnd_red, self.bnd_piv, v)
        coeffs = express_in_basis(self._reduced_reps, res, self.n)
        if coeffs is None:
            raise ValueError("vector lies outside the subquotient")
        return coeffs

    def lift(self, coords) -> list[Fraction]:
        v = [Q0] * self.n
        for c, rep in zip(coords, self.reps):
            c = frac(c)
            if c:
                v = [a + c * b for a, b in zip(v, rep)]
        return v


@dataclass
class DirectedLimit:
    """Colimit of a finite chain  V_1 -> V_2 -> ... -> V_m  of Q-spaces.

    The chain is a finite window onto an infinite system, so stabilization
    is certified from ranks of long composites rather than single steps.
    Write r[n][k] for the rank of the composite V_n -> V_k.  Stage n
    (with n <= m-3) is called stable when

        r[n][m] == r[n+1][m] == r[n][m-1],

    that is, the rank of the composite to the end of the window changes
    neither when the starting stage advances nor when the anchor is pulled
    back a step.  `stabilized_at` is the smallest stage from which every
    later checkable stage is stable (the scan is anchored at the deepest
    checkable stage, so growth near the cap disqualifies the whole chain).
    The certified rank v then gets a tail guard: let J be the smallest
    composite length whose ranks already agree with the ranks to the end;
    every late stage that still has J steps of room must reach rank v as
    well, otherwise the window ends on unexplained elements and the chain
    is refused.  Chains whose maps eventually become isomorphisms, chains
    killed by nilpotents (single-step ranks stay positive but composites
    die), and mixtures of the two all certify; strictly growing chains and
    chains whose last stages pick up new elements do not.

    The limit is modelled by the image of the composite V_n* -> V_m inside
    V_m; stability makes that image independent of the stage chosen from
    n* up to m-2, which is what lets callers push vectors forward from any
    certified stage and express them in the `basis`.
    """

    dims: list[int]
    transitions: list[Mat]
    stabilized_at: int | None = None
    limit_dim: int = 0
    basis: list[list[Fraction]] = field(default_factory=list)

    @staticmethod
    def of(dims, transitions) -> "DirectedLimit":
        dims = list(dims)
        transitions = list(transitions)
        m = len(dims)
        if len(transitions) != m - 1:
            raise ValueError("need one transition per consecutive pair")
        for k, t in enumerate(transitions):
            if t.ncols != dims[k] or t.nrows != dims[k + 1]:
                raise ValueError("transition %d has the wrong shape" % (k + 1))
        lim = DirectedLimit(dims, transitions)
        if all(d == 0 for d in dims):
            lim.stabilized_at = 1
            return lim
        if m < 4:
            return lim
        # comp[n][k]: composite V_{n+1} -> V_{k+1} in 0-based indexing
        comp: list[dict[int, Mat]] = []
        ranks: list[dict[int, int]] = []
        for n in range(m):
            row = {n: Mat.identity(dims[n])}
            for k in range(n + 1, m):
                row[k] = transitions[k - 1].mul(row[k - 1])
            comp.append(row)
            ranks.append({k: rank(mat) for k, mat in row.items()})
        stable = [
            ranks[n][m - 1] == ranks[n + 1][m - 1] == ranks[n][m - 2]
            for n in range(m - 3)
        ]
        n_star = None
        for n in range(m - 4, -1, -1):
            if stable[n]:
                n_star = n
            else:
                break
        if n_star is None:
            return lim
        v = ranks[n_star][m - 1]
        death = next(
            j
            for j in range(1, m)
            if all(ranks[n][n + j] == ranks[n][m - 1] for n in range(m - j))
        )
        for n in (m - 3, m - 2):
            if n + death <= m - 1 and ranks[n][n + death] != v:
                return lim
        lim.stabilized_at = n_star + 1  # stages are numbered from 1
        basis, _ = column_space_basis(comp[n_star][m - 1])
        lim.basis = basis
        lim.limit_dim = len(basis)
        return lim

    @property
    def stabilized(self) -> bool:
        return self.stabilized_at is not None

    def push_to_end(self, stage: int, v) -> list[Fraction]:
        """Image of v in V_m, for v given at 1-based `stage`."""
        for t in self.transitions[stage - 1 :]:
            v = t.apply(v)
        return list(map(frac, v))

    def express(self, v_end) -> list[Fraction]:
        """Coordinates in the limit basis of a vector of V_m lying in it."""
        if not self.stabilized:
            raise ValueError("limit not stabilized")
        coeffs = express_in_basis(self.basis, v_end, len(v_end))
        if coeffs is None:
            raise ValueError("vector lies outside the limit model")
        return coeffs
