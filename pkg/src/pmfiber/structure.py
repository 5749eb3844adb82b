"""Irreducibility and block structure of a square matrix.

A matrix is irreducible when its support digraph (edge i -> j iff i != j and
A_ij != 0) is strongly connected.  Every matrix is permutation-conjugate to a
block upper triangular form with irreducible diagonal blocks; the blocks are
the strongly connected components of the support digraph, ordered so that all
edges point forward (topological order of the condensation, ties broken by
smallest original index).  The determinantal pencil factors accordingly, and
the factorization describes the whole fiber of the principal minor map.
"""

from __future__ import annotations

from dataclasses import dataclass
from heapq import heappop, heappush
from typing import Dict, List, Sequence, Tuple

from .errors import SizeLimitError
from .mpoly import MPoly
from .scalars import Scalar
from .symdet import (
    AdjugateTable,
    SquareMatrix,
    adjugate_table,
    det_fraction_free,
    det_poly,
)

MAX_N_STRUCTURE = 12


@dataclass(frozen=True)
class SupportDigraph:
    n: int
    adjacency: Tuple[Tuple[int, ...], ...]

    def edges(self) -> List[Tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in self.adjacency[i]]


@dataclass(frozen=True)
class FrobeniusForm:
    """order maps new position -> original index; blocks hold original indices."""

    order: Tuple[int, ...]
    blocks: Tuple[Tuple[int, ...], ...]
    permuted: SquareMatrix


def support_digraph(A: SquareMatrix) -> SupportDigraph:
    n = A.n
    adjacency = tuple(
        tuple(j for j in range(n) if j != i and A.entries[i][j]) for i in range(n)
    )
    return SupportDigraph(n, adjacency)


def _strongly_connected_components(
    n: int, adjacency: Sequence[Sequence[int]]
) -> List[List[int]]:
    """Tarjan's algorithm; n <= 16 so recursion depth is harmless."""
    index: Dict[int, int] = {}
    lowlink: Dict[int, int] = {}
    on_stack = [False] * n
    stack: List[int] = []
    counter = [0]
    components: List[List[int]] = []

    def visit(v: int) -> None:
        index[v] = lowlink[v] = counter[0]
        counter[0] += 1
        stack.append(v)
        on_stack[v] = True
        for w in adjacency[v]:
            if w not in index:
                visit(w)
                lowlink[v] = min(lowlink[v], lowlink[w])
            elif on_stack[w]:
                lowlink[v] = min(lowlink[v], index[w])
        if lowlink[v] == index[v]:
            comp = []
            while True:
                w = stack.pop()
                on_stack[w] = False
                comp.append(w)
                if w == v:
                    break
            components.append(sorted(comp))

    for v in range(n):
        if v not in index:
            visit(v)
    return components


def frobenius_form(A: SquareMatrix) -> FrobeniusForm:
    """Permutation-conjugate block upper triangular form.

    Components are ordered by Kahn's algorithm on the condensation with a
    min-heap keyed by smallest original index, so the result is deterministic
    and all support edges point from earlier blocks to later ones.
    """
    n = A.n
    graph = support_digraph(A)
    comps = _strongly_connected_components(n, graph.adjacency)
    comp_of = {}
    for c, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = c
    succ: List[set] = [set() for _ in comps]
    indegree = [0] * len(comps)
    for i in range(n):
        for j in graph.adjacency[i]:
            a, b = comp_of[i], comp_of[j]
            if a != b and b not in succ[a]:
                succ[a].add(b)
                indegree[b] += 1
    heap: List[Tuple[int, int]] = []
    for c, comp in enumerate(comps):
        if indegree[c] == 0:
            heappush(heap, (comp[0], c))
    ordered: List[int] = []
    while heap:
        _, c = heappop(heap)
        ordered.append(c)
        for b in succ[c]:
            indegree[b] -= 1
            if indegree[b] == 0:
                heappush(heap, (comps[b][0], b))
    blocks = tuple(tuple(comps[c]) for c in ordered)
    order = tuple(v for block in blocks for v in block)
    return FrobeniusForm(order, blocks, A.permuted(order))


def is_irreducible(A: SquareMatrix) -> bool:
    graph = support_digraph(A)
    return len(_strongly_connected_components(A.n, graph.adjacency)) == 1


def block_det_poly(A: SquareMatrix, block: Sequence[int]) -> MPoly:
    """det(diag(x_k : k in block) + A[block, block]) embedded in all n variables."""
    n = A.n
    idx = list(block)
    terms: Dict[Tuple[int, ...], Scalar] = {}
    k = len(idx)
    for mask in range(1 << k):
        inside = {idx[t] for t in range(k) if mask >> t & 1}
        outside = [v for v in idx if v not in inside]
        minor = det_fraction_free(A.submatrix(outside, outside))
        if minor:
            exp = tuple(1 if v in inside else 0 for v in range(n))
            terms[exp] = minor
    return MPoly(n, terms)


@dataclass(frozen=True)
class StructureReport:
    form: FrobeniusForm
    factors: Tuple[MPoly, ...]
    fpoly: MPoly
    product_matches: bool
    blocks_irreducible: Tuple[bool, ...]

    @property
    def all_ok(self) -> bool:
        return self.product_matches and all(self.blocks_irreducible)


def _block_adjugate_nonzero(block_matrix: SquareMatrix) -> bool:
    G: AdjugateTable = adjugate_table(block_matrix)
    return all(
        not G.entries[i][j].is_zero()
        for i in range(block_matrix.n)
        for j in range(block_matrix.n)
    )


def structure_check(A: SquareMatrix, max_n: int = MAX_N_STRUCTURE) -> StructureReport:
    """Frobenius form plus exact verification of the induced factorization.

    Verifies det(diag(x)+A) equals the product of the block pencils, and
    witnesses each diagonal block's irreducibility by its all-nonzero
    adjugate table (the polynomial factors are then irreducible as well with
    no need to factor anything).
    """
    n = A.n
    if n > max_n:
        raise SizeLimitError(f"structure_check limited to n <= {max_n}, got n = {n}")
    form = frobenius_form(A)
    factors = tuple(block_det_poly(A, block) for block in form.blocks)
    f = det_poly(A).fpoly
    product = MPoly.const(n, 1)
    for factor in factors:
        product = product * factor
    blocks_irreducible = tuple(
        _block_adjugate_nonzero(A.block(block)) for block in form.blocks
    )
    return StructureReport(form, factors, f, product == f, blocks_irreducible)


@dataclass(frozen=True)
class FiberShape:
    """Template for every matrix with the same principal minor vector.

    Any member is permutation-conjugate to a block upper triangular matrix
    whose diagonal block at T_p has pencil determinant factors[p]; the
    strictly-upper block positions (p, q) carry arbitrary entries.
    """

    blocks: Tuple[Tuple[int, ...], ...]
    block_matrices: Tuple[SquareMatrix, ...]
    factors: Tuple[MPoly, ...]
    free_positions: Tuple[Tuple[int, int], ...]


def fiber_shape(A: SquareMatrix, max_n: int = MAX_N_STRUCTURE) -> FiberShape:
    n = A.n
    if n > max_n:
        raise SizeLimitError(f"fiber_shape limited to n <= {max_n}, got n = {n}")
    form = frobenius_form(A)
    s = len(form.blocks)
    block_matrices = tuple(A.block(block) for block in form.blocks)
    factors = tuple(block_det_poly(A, block) for block in form.blocks)
    free_positions = tuple((p, q) for p in range(s) for q in range(p + 1, s))
    return FiberShape(form.blocks, block_matrices, factors, free_positions)
