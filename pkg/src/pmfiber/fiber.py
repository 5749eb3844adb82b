"""Fiber analysis for the principal minor map.

The fiber of A is the set of matrices sharing all 2^n principal minors.
Diagonal conjugation (with or without transposition) never changes the
minors, so the interesting question is when the fiber is a single such
equivalence class.  The classifier decides this exactly; where the answer
is "no" it hands back a verified second fiber point, built either by
swapping rank-one factors across a cut or by rewriting the strictly-upper
pattern of a reducible matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .equiv import (
    VERDICT_NOT_SYMMETRIZABLE,
    SymmetrizabilityResult,
    diagonal_equivalence,
    hermitian_equivalence,
    symmetrizability,
)
from .errors import ExactDivisionError, PreconditionError, SizeLimitError, VerificationError
from .mpoly import MPoly, exact_divide
from .scalars import div_exact
from .structure import (
    FiberShape,
    block_det_poly,
    fiber_shape,
    frobenius_form,
    is_irreducible,
)
from .symdet import (
    AdjugateTable,
    DeterminantalPencil,
    SquareMatrix,
    adjugate_pencil_product_ok,
    adjugate_table,
    det_poly,
    matrix,
    matrix_from_adjugate,
    principal_minors,
    rank_exact,
)

MAX_N_CUTS = 16
MAX_N_CLASSIFY = 12

SINGLE_POINT = "SinglePoint"
MULTI_POINT = "MultiPoint"

REASON_REDUCIBLE = "Reducible"
REASON_HAS_CUT = "HasCutNotSymmetrizable"
REASON_NO_CUT = "NoCut"
REASON_SYMMETRIZABLE = "Symmetrizable"
REASON_SMALL_N = "SmallN"


@dataclass(frozen=True)
class CutCertificate:
    """A subset X with 2 <= |X| <= n-2 whose two off-diagonal blocks
    A[X,X^c] and A[X^c,X] both have rank at most one."""

    X: Tuple[int, ...]
    rank_xxc: int
    rank_xcx: int

    def complement(self, n: int) -> Tuple[int, ...]:
        inside = set(self.X)
        return tuple(j for j in range(n) if j not in inside)


def _split_indices(n: int, X: Sequence[int]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    Xs = tuple(sorted(set(X)))
    if any(not 0 <= i < n for i in Xs):
        raise PreconditionError("cut indices out of range")
    if not 2 <= len(Xs) <= n - 2:
        raise PreconditionError(f"a cut needs 2 <= |X| <= n-2, got |X| = {len(Xs)}")
    inside = set(Xs)
    return Xs, tuple(j for j in range(n) if j not in inside)


def cut_ranks(A: SquareMatrix, X: Sequence[int]) -> Tuple[int, int]:
    """Exact ranks of the two off-diagonal blocks selected by X."""
    Xs, Xc = _split_indices(A.n, X)
    return rank_exact(A.submatrix(Xs, Xc)), rank_exact(A.submatrix(Xc, Xs))


def is_cut(A: SquareMatrix, X: Sequence[int]) -> bool:
    r1, r2 = cut_ranks(A, X)
    return r1 <= 1 and r2 <= 1


def find_cuts(A: SquareMatrix, max_n: int = MAX_N_CUTS) -> List[CutCertificate]:
    """All cuts of A, each partition reported once by the side containing
    index 0 (the lexicographically smaller representative), sorted."""
    n = A.n
    if n > max_n:
        raise SizeLimitError(f"find_cuts limited to n <= {max_n}, got n = {n}")
    cuts: List[CutCertificate] = []
    for mask in range(1, 1 << n, 2):  # representatives contain index 0
        size = mask.bit_count()
        if not 2 <= size <= n - 2:
            continue
        X = tuple(k for k in range(n) if mask >> k & 1)
        Xc = tuple(k for k in range(n) if not mask >> k & 1)
        r1 = rank_exact(A.submatrix(X, Xc))
        if r1 > 1:
            continue
        r2 = rank_exact(A.submatrix(Xc, X))
        if r2 > 1:
            continue
        cuts.append(CutCertificate(X, r1, r2))
    cuts.sort(key=lambda c: c.X)
    return cuts


# -- rank-one factorization of the adjugate across a cut -------------------------


@dataclass(frozen=True)
class FactorSplit:
    """Factorizations G_ij = (-1)^i a_i b_j (rows X, columns X^c) and
    G_ij = (-1)^j c_i d_j (rows X^c, columns X), signs in 1-based parity.

    a and d are indexed by X and involve only X-variables; b and c are
    indexed by X^c and involve only X^c-variables.  All verified exactly.
    """

    X: Tuple[int, ...]
    Xc: Tuple[int, ...]
    a: Dict[int, MPoly]
    b: Dict[int, MPoly]
    c: Dict[int, MPoly]
    d: Dict[int, MPoly]


def _alt(i: int) -> int:
    """(-1)^i for the 1-based index of a 0-based position."""
    return -1 if i % 2 == 0 else 1


def _primes(count: int) -> List[int]:
    out: List[int] = []
    cand = 2
    while len(out) < count:
        if all(cand % p for p in out if p * p <= cand):
            out.append(cand)
        cand += 1
    return out


def _generic_values(attempt: int, count: int) -> List[int]:
    if attempt == 0:
        return list(range(1, count + 1))
    return _primes(attempt - 1 + count)[attempt - 1 :]


def rank_one_split(G: AdjugateTable, X: Sequence[int], attempts: int = 8) -> FactorSplit:
    """Split the two off-diagonal blocks of G into products of one-index factors.

    The X^c-side factors are read off a single row (resp. column) of G at a
    generic evaluation point for the X-variables; the X-side factors then come
    out of exact polynomial division.  Every product identity is re-checked,
    so a successful return is a proof that the factorization holds.
    """
    n = G.n
    Xs, Xc = _split_indices(n, X)
    i0, j0 = Xs[0], Xc[0]
    failure = "every generic evaluation point vanished"
    for attempt in range(attempts):
        values = _generic_values(attempt, len(Xs))
        sub = dict(zip(Xs, values))
        b = {j: G.entry(i0, j).substitute_many(sub) for j in Xc}
        c = {i: G.entry(i, i0).substitute_many(sub) for i in Xc}
        if b[j0].is_zero() or c[j0].is_zero():
            continue
        try:
            a = {i: _alt(i) * exact_divide(G.entry(i, j0), b[j0]) for i in Xs}
            d = {j: _alt(j) * exact_divide(G.entry(j0, j), c[j0]) for j in Xs}
        except ExactDivisionError as exc:
            failure = f"exact division failed: {exc}"
            continue
        if any(p.is_zero() for p in (*a.values(), *b.values(), *c.values(), *d.values())):
            failure = "a factor vanished"
            continue
        upper_ok = all(
            G.entry(i, j) == _alt(i) * (a[i] * b[j]) for i in Xs for j in Xc
        )
        lower_ok = all(
            G.entry(j, i) == _alt(i) * (c[j] * d[i]) for j in Xc for i in Xs
        )
        if upper_ok and lower_ok:
            return FactorSplit(Xs, Xc, a, b, c, d)
        failure = "product identities failed"
    raise VerificationError(
        f"rank-one splitting failed for X={Xs} ({failure}); "
        "X is not a cut of an irreducible matrix"
    )


# -- second fiber points ----------------------------------------------------------


def _assemble_swap(G: AdjugateTable, split: FactorSplit, k: int, primary: bool) -> AdjugateTable:
    """Swap factors across the cut {0..k-1} of a relabeled adjugate table.

    primary keeps the X-block, transposes the X^c-block, and exchanges the
    X^c-side factors (b <-> c); the fallback transposes the X-block, keeps
    the X^c-block, and exchanges the X-side factors (a <-> d).
    """
    n = G.n
    a, b, c, d = split.a, split.b, split.c, split.d
    rows: List[Tuple[MPoly, ...]] = []
    for u in range(n):
        row: List[MPoly] = []
        for v in range(n):
            if u < k and v < k:
                row.append(G.entry(u, v) if primary else G.entry(v, u))
            elif u >= k and v >= k:
                row.append(G.entry(v, u) if primary else G.entry(u, v))
            elif u < k:
                row.append(_alt(u) * (a[u] * c[v]) if primary else _alt(u) * (d[u] * b[v]))
            else:
                row.append(_alt(v) * (b[u] * d[v]) if primary else _alt(v) * (c[u] * a[v]))
        rows.append(tuple(row))
    return AdjugateTable(n, tuple(rows))


def _inverse_order(order: Sequence[int]) -> List[int]:
    inv = [0] * len(order)
    for pos, orig in enumerate(order):
        inv[orig] = pos
    return inv


def _proportional(p: MPoly, q: MPoly) -> bool:
    """True if p equals a nonzero field scalar times q."""
    pt, qt = p.terms, q.terms
    if not pt or not qt or set(pt) != set(qt):
        return False
    mono = min(pt)
    ratio = div_exact(pt[mono], qt[mono])
    return all(coeff == ratio * qt[exp] for exp, coeff in pt.items())


def _relabeled_split(
    A: SquareMatrix, Xs: Sequence[int], Xc: Sequence[int]
) -> Tuple[List[int], SquareMatrix, int, AdjugateTable, MPoly, FactorSplit]:
    """Relabel the cut to the leading block and factor the adjugate there."""
    order = list(Xs) + list(Xc)
    A_rel = A.permuted(order)
    k = len(Xs)
    G = adjugate_table(A_rel)
    f = det_poly(A_rel).fpoly
    split = rank_one_split(G, tuple(range(k)))
    return order, A_rel, k, G, f, split


def swap_factors_degenerate(A: SquareMatrix, X: Sequence[int]) -> bool:
    """True when factor swapping across the cut X cannot leave the
    diagonal-equivalence class of A.

    Across a cut the adjugate factors entrywise into one-index pieces
    (a_i, b_j above the diagonal blocks; c_j, d_i below).  If every b_j is
    a constant multiple of c_j, any swapped table is a diagonal conjugate
    of the original; if every a_i is a constant multiple of d_i, it is a
    diagonal conjugate of the transposed table.  Either way the matrices
    recovered from swapped tables all stay diagonally equivalent to A, so
    cut_swap_witness has nothing to return.  Instance generators use this
    to reject draws that the swap construction provably cannot separate.
    """
    Xs, Xc = _split_indices(A.n, X)
    if rank_exact(A.submatrix(Xs, Xc)) > 1 or rank_exact(A.submatrix(Xc, Xs)) > 1:
        raise PreconditionError(f"X = {Xs} is not a cut")
    if not is_irreducible(A):
        raise PreconditionError("matrix must be irreducible")
    _, _, _, _, _, split = _relabeled_split(A, Xs, Xc)
    if all(_proportional(split.b[j], split.c[j]) for j in split.Xc):
        return True
    return all(_proportional(split.a[i], split.d[i]) for i in split.X)


def cut_swap_witness(A: SquareMatrix, X: Sequence[int]) -> SquareMatrix:
    """A second fiber point for an irreducible, non-symmetrizable A with cut X.

    Relabels X to the leading positions, splits the adjugate across the cut,
    reassembles it with factors exchanged, and recovers the matrix whose
    adjugate table that is.  The result provably shares all principal minors
    with A (the pencil determinant is re-verified) and carries no diagonal
    equivalence to A; both facts are checked before returning.
    """
    n = A.n
    if n < 4:
        raise PreconditionError("factor swapping needs n >= 4")
    Xs, Xc = _split_indices(n, X)
    if rank_exact(A.submatrix(Xs, Xc)) > 1 or rank_exact(A.submatrix(Xc, Xs)) > 1:
        raise PreconditionError(f"X = {Xs} is not a cut")
    if not is_irreducible(A):
        raise PreconditionError("matrix must be irreducible")
    if symmetrizability(A).solvable:
        raise PreconditionError(
            "matrix is diagonally equivalent to a symmetric matrix; "
            "its fiber is a single class and no witness exists"
        )
    order, A_rel, k, G, f, split = _relabeled_split(A, Xs, Xc)
    inv = _inverse_order(order)
    failure = ""
    for primary in (True, False):
        H = _assemble_swap(G, split, k, primary)
        try:
            B_rel = matrix_from_adjugate(H, f, field=A.field)
        except VerificationError as exc:
            failure = str(exc)
            continue
        if not adjugate_pencil_product_ok(H, DeterminantalPencil(B_rel, f)):
            failure = "swapped table does not satisfy the adjugate product identity"
            continue
        if diagonal_equivalence(A_rel, B_rel) is None:
            return B_rel.permuted(inv)
        failure = "swap produced a diagonally equivalent matrix"
    raise VerificationError(
        f"factor swap failed on both orientations ({failure}); "
        "factor swapping across this cut cannot leave the "
        "diagonal-equivalence class of the input"
    )


def reducible_witness(A: SquareMatrix) -> SquareMatrix:
    """A second fiber point for a reducible matrix.

    In the triangularizing order, every principal minor factors over the
    diagonal blocks, so the strictly-upper content is arbitrary: replacing
    the first block row's upper pattern by its 0/1 complement keeps all
    minors while forcing a different support.  Both postconditions are
    verified exactly.
    """
    form = frobenius_form(A)
    if len(form.blocks) == 1:
        raise PreconditionError("matrix is irreducible")
    n = A.n
    k = len(form.blocks[0])
    P = form.permuted
    rows = [list(r) for r in P.entries]
    for i in range(k):
        for j in range(k, n):
            rows[i][j] = 0 if P.entries[i][j] else 1
    B = matrix(rows, A.field).permuted(_inverse_order(form.order))
    if principal_minors(B) != principal_minors(A):
        raise VerificationError("complement pattern changed a principal minor")
    if diagonal_equivalence(A, B) is not None:
        raise VerificationError("complement pattern is still diagonally equivalent")
    return B


# -- the classifier ----------------------------------------------------------------


@dataclass(frozen=True)
class FiberClassification:
    """verdict SinglePoint means the fiber is one diagonal-equivalence class;
    MultiPoint comes with a verified witness from a different class."""

    verdict: str
    reason: str
    cut: Optional[CutCertificate]
    witness: Optional[SquareMatrix]
    symmetrizability: Optional[SymmetrizabilityResult]
    note: str


def classify_fiber(A: SquareMatrix, max_n: int = MAX_N_CLASSIFY) -> FiberClassification:
    """Decide whether the fiber of A is a single class, with proof either way.

    Reducible matrices always get a witness.  Irreducible matrices of size
    n >= 4 are a single class exactly when they have no cut or are
    diagonally equivalent to a symmetric matrix; otherwise the factor-swap
    witness exhibits a second class.  Sizes n <= 3 admit no cut at all and
    are reported under their own reason code.
    """
    n = A.n
    if n > max_n:
        raise SizeLimitError(f"classify_fiber limited to n <= {max_n}, got n = {n}")
    if not is_irreducible(A):
        return FiberClassification(
            MULTI_POINT,
            REASON_REDUCIBLE,
            None,
            reducible_witness(A),
            None,
            "reducible: the strictly-upper blocks of the triangularized form "
            "can hold arbitrary values without changing any principal minor",
        )
    if n <= 3:
        return FiberClassification(
            SINGLE_POINT,
            REASON_SMALL_N,
            None,
            None,
            None,
            "no subset satisfies 2 <= |X| <= n-2 at this size, and irreducible "
            "matrices without cuts form single-class fibers",
        )
    cuts = find_cuts(A)
    if not cuts:
        return FiberClassification(
            SINGLE_POINT,
            REASON_NO_CUT,
            None,
            None,
            None,
            "irreducible and every off-diagonal block pair has rank >= 2",
        )
    sym = symmetrizability(A)
    if sym.solvable:
        note = "irreducible with a cut, but diagonally equivalent to a symmetric matrix"
        if sym.witness_d is None:
            note += " (the scaling needs square roots outside the base field)"
        return FiberClassification(
            SINGLE_POINT, REASON_SYMMETRIZABLE, cuts[0], None, sym, note
        )
    witness = cut_swap_witness(A, cuts[0].X)
    return FiberClassification(
        MULTI_POINT,
        REASON_HAS_CUT,
        cuts[0],
        witness,
        sym,
        "irreducible with a cut and not symmetrizable: swapping rank-one "
        "factors across the first cut yields an inequivalent fiber point",
    )


# -- symmetric and stable special cases ---------------------------------------------


@dataclass(frozen=True)
class SymmetricFiberDescription:
    irreducible: bool
    shape: Optional[FiberShape]
    note: str


def symmetric_fiber_describe(A: SquareMatrix) -> SymmetricFiberDescription:
    """Describe the whole fiber of a symmetric matrix.

    Irreducible: the fiber is exactly the diagonal conjugates of A.
    Reducible: symmetry forces a block-diagonal triangularized form, and the
    fiber is the set of block upper triangular matrices whose diagonal
    blocks are diagonally equivalent to A's, upper blocks free.
    """
    if not A.is_symmetric():
        raise PreconditionError("matrix must be symmetric")
    if is_irreducible(A):
        return SymmetricFiberDescription(
            True,
            None,
            "irreducible symmetric: the fiber is { D A D^-1 : D invertible "
            "diagonal }, a single equivalence class",
        )
    return SymmetricFiberDescription(
        False,
        fiber_shape(A),
        "reducible symmetric: block diagonal up to relabeling; fiber members "
        "are block upper triangular with diagonal blocks diagonally "
        "equivalent to these blocks and arbitrary strictly-upper content",
    )


@dataclass(frozen=True)
class StableCertificate:
    """Blockwise structural certificate that det(diag(x)+A) is real stable."""

    verdict: str
    blocks: Tuple[Tuple[int, ...], ...]
    reports: Tuple[SymmetrizabilityResult, ...]
    factors: Tuple[MPoly, ...]
    failing_block: Optional[Tuple[int, ...]]

    @property
    def certified(self) -> bool:
        return self.verdict == "Certified"


def stable_certify(A: SquareMatrix, max_n: int = MAX_N_CLASSIFY) -> StableCertificate:
    """Certify stability of the pencil determinant by block Hermitian scaling.

    Each irreducible diagonal block that is diagonally equivalent to a
    Hermitian matrix contributes a real stable factor, and the full pencil
    determinant is the product of the block factors (verified exactly).
    Certified therefore implies stability; NotCertified names the first
    block with no Hermitian scaling.
    """
    n = A.n
    if n > max_n:
        raise SizeLimitError(f"stable_certify limited to n <= {max_n}, got n = {n}")
    form = frobenius_form(A)
    reports = tuple(hermitian_equivalence(A.block(block)) for block in form.blocks)
    factors = tuple(block_det_poly(A, block) for block in form.blocks)
    product = factors[0]
    for factor in factors[1:]:
        product = product * factor
    if product != det_poly(A).fpoly:
        raise VerificationError(
            "block factors do not multiply back to the pencil determinant"
        )
    failing: Optional[Tuple[int, ...]] = None
    for block, report in zip(form.blocks, reports):
        if report.verdict == VERDICT_NOT_SYMMETRIZABLE:
            failing = block
            break
    verdict = "Certified" if failing is None else "NotCertified"
    return StableCertificate(verdict, form.blocks, reports, factors, failing)
