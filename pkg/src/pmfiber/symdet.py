"""Square matrices, principal minor vectors, and symbolic adjugate tables.

The central objects: for an n x n matrix A over Q or Q(i),

* the principal minor vector assigns to every subset S of {1..n} the minor
  det(A[S,S]), with the empty set mapping to 1;
* the determinantal pencil f(x1..xn) = det(diag(x) + A), a multiaffine
  polynomial whose coefficient on prod_{k in S} x_k is the minor of the
  complement of S;
* the adjugate table G with G * (diag(x) + A) = f * I, every entry an exact
  polynomial, computed entry-by-entry as signed almost-principal minors.

All determinants use fraction-free (Bareiss) elimination, which stays in
integers on integer input and is exact over every supported field.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import PreconditionError, SizeLimitError, VerificationError
from .mpoly import MPoly, affine_resultant, coefficient_of, rayleigh_difference
from .scalars import (
    FIELD_Q,
    FIELD_QI,
    FIELDS,
    Scalar,
    conj,
    div_exact,
    is_rational,
    normalize_scalar,
    scalar_format,
)

MAX_N_MINORS = 16
MAX_N_ADJUGATE = 12
MAX_N_VERIFY = 10


@dataclass(frozen=True)
class SquareMatrix:
    """Immutable n x n matrix with a declared coefficient field."""

    entries: Tuple[Tuple[Scalar, ...], ...]
    field: str

    @property
    def n(self) -> int:
        return len(self.entries)

    def row(self, i: int) -> Tuple[Scalar, ...]:
        return self.entries[i]

    def rows_list(self) -> List[List[Scalar]]:
        return [list(r) for r in self.entries]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> List[List[Scalar]]:
        return [[self.entries[i][j] for j in cols] for i in rows]

    def block(self, indices: Sequence[int]) -> "SquareMatrix":
        idx = list(indices)
        return SquareMatrix(
            tuple(tuple(self.entries[i][j] for j in idx) for i in idx), self.field
        )

    def transpose(self) -> "SquareMatrix":
        n = self.n
        return SquareMatrix(
            tuple(tuple(self.entries[j][i] for j in range(n)) for i in range(n)),
            self.field,
        )

    def permuted(self, order: Sequence[int]) -> "SquareMatrix":
        """Conjugate by the permutation: entry (u,v) comes from (order[u], order[v])."""
        return SquareMatrix(
            tuple(tuple(self.entries[u][v] for v in order) for u in order), self.field
        )

    def is_symmetric(self) -> bool:
        n = self.n
        return all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(n)
            for j in range(i + 1, n)
        )

    def is_hermitian(self) -> bool:
        n = self.n
        return all(
            self.entries[i][j] == conj(self.entries[j][i])
            for i in range(n)
            for j in range(i, n)
        )

    def to_strings(self) -> List[List[str]]:
        return [[scalar_format(x) for x in row] for row in self.entries]

    def __str__(self) -> str:
        return "\n".join("  ".join(scalar_format(x) for x in row) for row in self.entries)


def matrix(rows: Sequence[Sequence[Scalar]], field: Optional[str] = None) -> SquareMatrix:
    """Build a SquareMatrix from nested sequences, inferring the field if omitted."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    entries = tuple(tuple(normalize_scalar(x) for x in row) for row in rows)
    has_imag = any(not is_rational(x) for row in entries for x in row)
    if field is None:
        field = FIELD_QI if has_imag else FIELD_Q
    if field not in FIELDS:
        raise ValueError(f"unknown field {field!r}")
    if field == FIELD_Q and has_imag:
        raise ValueError("imaginary entries in a matrix declared over Q")
    return SquareMatrix(entries, field)


def identity_matrix(n: int, field: str = FIELD_Q) -> SquareMatrix:
    return matrix([[1 if i == j else 0 for j in range(n)] for i in range(n)], field)


# -- exact elimination ----------------------------------------------------------


def det_fraction_free(rows: Sequence[Sequence[Scalar]]) -> Scalar:
    """Bareiss determinant; every division is exact (stays in Z on Z input)."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev: Scalar = 1
    for k in range(n - 1):
        if not m[k][k]:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            row_k = m[k]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = div_exact(row_i[j] * pivot - lead * row_k[j], prev)
            row_i[k] = 0
        prev = pivot
    return normalize_scalar(sign * m[n - 1][n - 1])


def rank_exact(rows: Sequence[Sequence[Scalar]]) -> int:
    """Row-reduction rank over the exact field."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    col = 0
    while rank < nrows and col < ncols:
        pivot_row = next((r for r in range(rank, nrows) if m[r][col]), None)
        if pivot_row is None:
            col += 1
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        pivot = m[rank][col]
        for r in range(rank + 1, nrows):
            if m[r][col]:
                factor = div_exact(m[r][col], pivot)
                m[r] = [a - factor * b for a, b in zip(m[r], m[rank])]
        rank += 1
        col += 1
    return rank


# -- principal minors and the determinantal pencil -------------------------------


@dataclass(frozen=True, eq=False)
class PMVector:
    """All 2^n principal minors of an n x n matrix, keyed by 0-based subsets."""

    n: int
    values: Mapping[FrozenSet[int], Scalar]

    def value(self, subset: Iterable[int]) -> Scalar:
        return self.values[frozenset(subset)]

    def items_canonical(self) -> List[Tuple[Tuple[int, ...], Scalar]]:
        keys = sorted(self.values, key=lambda s: (len(s), tuple(sorted(s))))
        return [(tuple(sorted(s)), self.values[s]) for s in keys]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PMVector):
            return NotImplemented
        return self.n == other.n and dict(self.values) == dict(other.values)


@dataclass(frozen=True)
class DeterminantalPencil:
    """The pair (A, f) with f = det(diag(x1..xn) + A)."""

    base: SquareMatrix
    fpoly: MPoly


@dataclass(frozen=True)
class AdjugateTable:
    """Adjugate of diag(x) + A: polynomial entries with G*(diag(x)+A) = f*I."""

    n: int
    entries: Tuple[Tuple[MPoly, ...], ...]

    def entry(self, i: int, j: int) -> MPoly:
        return self.entries[i][j]

    def transpose(self) -> "AdjugateTable":
        n = self.n
        return AdjugateTable(
            n, tuple(tuple(self.entries[j][i] for j in range(n)) for i in range(n))
        )


def _check_size(n: int, max_n: int, what: str) -> None:
    if n > max_n:
        raise SizeLimitError(f"{what} limited to n <= {max_n}, got n = {n}")


def principal_minors(A: SquareMatrix, max_n: int = MAX_N_MINORS) -> PMVector:
    """Every principal minor, one fraction-free elimination per subset."""
    n = A.n
    _check_size(n, max_n, "principal_minors")
    values: Dict[FrozenSet[int], Scalar] = {}
    for mask in range(1 << n):
        idx = [k for k in range(n) if mask >> k & 1]
        values[frozenset(idx)] = det_fraction_free(A.submatrix(idx, idx))
    return PMVector(n, values)


def det_poly(A: SquareMatrix, max_n: int = MAX_N_MINORS) -> DeterminantalPencil:
    """f(x) = det(diag(x) + A); coefficient on prod_{k in S} x_k is the minor
    of the complement of S."""
    n = A.n
    _check_size(n, max_n, "det_poly")
    pm = principal_minors(A, max_n=max_n)
    terms: Dict[Tuple[int, ...], Scalar] = {}
    for subset, minor in pm.values.items():
        comp = frozenset(range(n)) - subset
        if minor:
            exp = tuple(1 if k in comp else 0 for k in range(n))
            terms[exp] = minor
    return DeterminantalPencil(A, MPoly(n, terms))


def adjugate_table(A: SquareMatrix, max_n: int = MAX_N_ADJUGATE) -> AdjugateTable:
    """Adjugate of M = diag(x) + A by direct minor expansion.

    Entry (i,j) is the cofactor det(M with row j and column i deleted) times
    (-1)^(i+j).  Extracting the coefficient of prod_{k in S} x_k leaves the
    minor of A on rows not in {j} u S and columns not in {i} u S, with an
    extra sign for the elements of S lying strictly between i and j.
    """
    n = A.n
    _check_size(n, max_n, "adjugate_table")
    grid: List[List[MPoly]] = []
    for i in range(n):
        row: List[MPoly] = []
        for j in range(n):
            others = [k for k in range(n) if k != i and k != j]
            lo, hi = (i, j) if i < j else (j, i)
            base_sign = -1 if (i + j) % 2 else 1
            terms: Dict[Tuple[int, ...], Scalar] = {}
            for mask in range(1 << len(others)):
                S = [others[t] for t in range(len(others)) if mask >> t & 1]
                in_s = set(S)
                rows = [r for r in range(n) if r != j and r not in in_s]
                cols = [c for c in range(n) if c != i and c not in in_s]
                minor = det_fraction_free(A.submatrix(rows, cols))
                if not minor:
                    continue
                between = sum(1 for k in S if lo < k < hi)
                sign = -base_sign if between % 2 else base_sign
                exp = tuple(1 if k in in_s else 0 for k in range(n))
                terms[exp] = sign * minor
            row.append(MPoly(n, terms))
        grid.append(row)
    return AdjugateTable(n, tuple(tuple(r) for r in grid))


def pencil_entry(A: SquareMatrix, k: int, j: int) -> MPoly:
    """Entry (k,j) of diag(x)+A as a polynomial."""
    n = A.n
    p = MPoly.const(n, A.entries[k][j])
    if k == j:
        p = p + MPoly.var(n, k)
    return p


def adjugate_pencil_product_ok(G: AdjugateTable, pencil: DeterminantalPencil) -> bool:
    """Exact check of G * (diag(x) + A) == f * I."""
    A, f = pencil.base, pencil.fpoly
    n = A.n
    for i in range(n):
        for j in range(n):
            total = MPoly.zero(n)
            for k in range(n):
                g = G.entries[i][k]
                if g.is_zero():
                    continue
                a = A.entries[k][j]
                if a:
                    total = total + g * a
                if k == j:
                    total = total + g * MPoly.var(n, j)
            expected = f if i == j else MPoly.zero(n)
            if total != expected:
                return False
    return True


def matrix_from_adjugate(
    H: AdjugateTable,
    f: MPoly,
    field: Optional[str] = None,
    max_n: int = MAX_N_ADJUGATE,
) -> SquareMatrix:
    """Recover B with adj(diag(x) + B) = H and det(diag(x) + B) = f.

    B_ii is the coefficient of prod_{k != i} x_k in f; off-diagonal B_ij is
    minus the coefficient of prod_{k not in {i,j}} x_k in H_ij.  The result is
    verified by recomputing its adjugate table and determinantal pencil.
    """
    n = H.n
    _check_size(n, max_n, "matrix_from_adjugate")
    if f.n != n:
        raise ValueError("pencil polynomial has wrong variable count")
    full = frozenset(range(n))
    rows: List[List[Scalar]] = []
    for i in range(n):
        row: List[Scalar] = []
        for j in range(n):
            if i == j:
                row.append(coefficient_of(f, full - {i}))
            else:
                row.append(-coefficient_of(H.entries[i][j], full - {i, j}))
        rows.append(row)
    B = matrix(rows, field)
    if adjugate_table(B, max_n=max_n).entries != H.entries:
        raise VerificationError("recovered matrix does not reproduce the adjugate table")
    if det_poly(B).fpoly != f:
        raise VerificationError("recovered matrix does not reproduce the pencil determinant")
    return B


# -- generalized Laplace expansion ---------------------------------------------


def laplace_expand(A: SquareMatrix, S: Iterable[int]) -> Scalar:
    """det(A) as sum over |T| = |S| of sgn(S,T) * A[S,T] * A[S^c,T^c]."""
    n = A.n
    srows = sorted(set(S))
    if not 0 < len(srows) < n:
        raise PreconditionError("row subset must be proper and nonempty")
    if srows[0] < 0 or srows[-1] >= n:
        raise ValueError("row subset outside matrix range")
    comp = [r for r in range(n) if r not in set(srows)]
    k = len(srows)
    sum_s = sum(srows)
    total: Scalar = 0
    for T in combinations(range(n), k):
        upper = det_fraction_free(A.submatrix(srows, T))
        if not upper:
            continue
        tcomp = [c for c in range(n) if c not in set(T)]
        lower = det_fraction_free(A.submatrix(comp, tcomp))
        if not lower:
            continue
        sign = -1 if (sum_s + sum(T)) % 2 else 1
        total = total + sign * upper * lower
    return normalize_scalar(total)


def two_line_sign(n: int, S: Iterable[int], T: Iterable[int]) -> int:
    """Sign of the permutation sending sorted(S)->sorted(T), sorted(S^c)->sorted(T^c).

    Computed both by inversion counting and by the closed form
    (-1)^(sum S + sum T); the two must agree.
    """
    srows = sorted(set(S))
    tcols = sorted(set(T))
    if len(srows) != len(tcols):
        raise ValueError("S and T must have equal size")
    if srows and (srows[0] < 0 or srows[-1] >= n):
        raise ValueError("S outside range")
    if tcols and (tcols[0] < 0 or tcols[-1] >= n):
        raise ValueError("T outside range")
    scomp = [x for x in range(n) if x not in set(srows)]
    tcomp = [x for x in range(n) if x not in set(tcols)]
    image = [0] * n
    for s, t in zip(srows, tcols):
        image[s] = t
    for s, t in zip(scomp, tcomp):
        image[s] = t
    inversions = sum(
        1 for a in range(n) for b in range(a + 1, n) if image[a] > image[b]
    )
    by_inversions = -1 if inversions % 2 else 1
    closed_form = -1 if (sum(srows) + sum(tcols)) % 2 else 1
    if by_inversions != closed_form:
        raise VerificationError("two-line sign formulas disagree")
    return by_inversions


# -- identity verification -------------------------------------------------------


@dataclass(frozen=True)
class IdentityCheck:
    identity: str
    indices: Tuple[int, ...]
    ok: bool


@dataclass(frozen=True)
class IdentityReport:
    n: int
    checks: Tuple[IdentityCheck, ...]

    @property
    def passed(self) -> int:
        return sum(1 for c in self.checks if c.ok)

    @property
    def failed(self) -> int:
        return sum(1 for c in self.checks if not c.ok)

    @property
    def all_ok(self) -> bool:
        return self.failed == 0


IDENTITIES = ("dodgson", "resultant", "laplace", "adjugate")


def verify_identities(
    A: SquareMatrix,
    identities: Sequence[str] = IDENTITIES,
    max_n: int = MAX_N_VERIFY,
) -> IdentityReport:
    """Exact checks tying the adjugate table to the pencil determinant.

    dodgson:   Delta_ij(f) == G_ij * G_ji for every pair i != j
    resultant: res_{x_k}(G_ij, f) == G_ik * G_kj for every k not in {i,j}
    laplace:   the two-sided expansion equals det(A) (all S for n <= 8,
               size <= 2 representatives above that)
    adjugate:  G * (diag(x) + A) == f * I
    """
    n = A.n
    _check_size(n, max_n, "verify_identities")
    unknown = [name for name in identities if name not in IDENTITIES]
    if unknown:
        raise ValueError(f"unknown identities: {unknown}")
    pencil = det_poly(A)
    f = pencil.fpoly
    G = adjugate_table(A)
    checks: List[IdentityCheck] = []
    if "dodgson" in identities:
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                ok = rayleigh_difference(f, i, j) == G.entries[i][j] * G.entries[j][i]
                checks.append(IdentityCheck("dodgson", (i, j), ok))
    if "resultant" in identities:
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                for k in range(n):
                    if k == i or k == j:
                        continue
                    lhs = affine_resultant(G.entries[i][j], f, k)
                    ok = lhs == G.entries[i][k] * G.entries[k][j]
                    checks.append(IdentityCheck("resultant", (i, j, k), ok))
    if "laplace" in identities and n >= 2:
        d = det_fraction_free(A.rows_list())
        if n <= 8:
            subsets = [
                list(S)
                for k in range(1, n)
                for S in combinations(range(n), k)
            ]
        else:
            small = [list(S) for k in (1, 2) for S in combinations(range(n), k)]
            subsets = small + [[x for x in range(n) if x not in set(S)] for S in small]
        for S in subsets:
            ok = laplace_expand(A, S) == d
            checks.append(IdentityCheck("laplace", tuple(S), ok))
    if "adjugate" in identities:
        ok = adjugate_pencil_product_ok(G, pencil)
        checks.append(IdentityCheck("adjugate", (), ok))
    return IdentityReport(n, tuple(checks))
