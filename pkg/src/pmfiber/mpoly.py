"""Sparse exact multivariate polynomials.

A polynomial in n variables is a dict mapping dense exponent tuples of
length n to nonzero scalar coefficients, wrapped in :class:`MPoly`.  All
coefficients are exact (int / Fraction / GaussianRational); there is no
floating point.  The canonical text form sorts terms in descending graded
lexicographic order and writes explicit ``*`` and ``^``.

Variables are indexed 0..n-1 internally and printed 1-based as x1..xn.
"""

from __future__ import annotations

from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .errors import ExactDivisionError
from .scalars import (
    GaussianRational,
    Scalar,
    div_exact,
    is_rational,
    scalar_format,
)

MAX_VARS = 16

Exponent = Tuple[int, ...]


class MPoly:
    """Immutable sparse polynomial over Q or Q(i)."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Mapping[Exponent, Scalar]] = None):
        if not 0 <= n <= MAX_VARS:
            raise ValueError(f"variable count {n} outside 0..{MAX_VARS}")
        clean: Dict[Exponent, Scalar] = {}
        if terms:
            for exp, coeff in terms.items():
                if len(exp) != n:
                    raise ValueError(f"exponent {exp} has wrong length for n={n}")
                if coeff:
                    clean[tuple(exp)] = coeff
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *_):
        raise AttributeError("MPoly is immutable")

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "MPoly":
        return cls(n)

    @classmethod
    def const(cls, n: int, value: Scalar) -> "MPoly":
        return cls(n, {(0,) * n: value} if value else {})

    @classmethod
    def var(cls, n: int, k: int) -> "MPoly":
        """The variable x_{k+1} (k is the 0-based index)."""
        if not 0 <= k < n:
            raise ValueError(f"variable index {k} outside 0..{n - 1}")
        exp = tuple(1 if i == k else 0 for i in range(n))
        return cls(n, {exp: 1})

    # -- basic queries -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self, k: int) -> int:
        """Degree in variable k (0 for the zero polynomial)."""
        return max((exp[k] for exp in self.terms), default=0)

    def total_degree(self) -> int:
        return max((sum(exp) for exp in self.terms), default=0)

    def is_multiaffine(self) -> bool:
        return all(all(e <= 1 for e in exp) for exp in self.terms)

    def variables(self) -> frozenset:
        return frozenset(
            k for k in range(self.n) if any(exp[k] for exp in self.terms)
        )

    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * self.n, 0)

    def coefficient(self, exp: Exponent) -> Scalar:
        return self.terms.get(tuple(exp), 0)

    # -- arithmetic ----------------------------------------------------------
    def _check_compatible(self, other: "MPoly") -> None:
        if self.n != other.n:
            raise ValueError(f"mixed variable counts: {self.n} vs {other.n}")

    def __add__(self, other):
        if isinstance(other, MPoly):
            self._check_compatible(other)
            out = dict(self.terms)
            for exp, c in other.terms.items():
                acc = out.get(exp)
                s = c if acc is None else acc + c
                if s:
                    out[exp] = s
                elif acc is not None:
                    del out[exp]
            return MPoly._raw(self.n, out)
        if _is_scalar(other):
            return self + MPoly.const(self.n, other)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, MPoly):
            return self + (-other)
        if _is_scalar(other):
            return self + MPoly.const(self.n, -other)
        return NotImplemented

    def __rsub__(self, other):
        if _is_scalar(other):
            return MPoly.const(self.n, other) - self
        return NotImplemented

    def __neg__(self):
        return MPoly._raw(self.n, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, MPoly):
            self._check_compatible(other)
            out: Dict[Exponent, Scalar] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    exp = tuple(a + b for a, b in zip(e1, e2))
                    c = c1 * c2
                    acc = out.get(exp)
                    s = c if acc is None else acc + c
                    if s:
                        out[exp] = s
                    elif acc is not None:
                        del out[exp]
            return MPoly._raw(self.n, out)
        if _is_scalar(other):
            if not other:
                return MPoly.zero(self.n)
            return MPoly._raw(
                self.n, {e: c * other for e, c in self.terms.items()}
            )
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.n == other.n and self.terms == other.terms
        if _is_scalar(other):
            return self.terms == MPoly.const(self.n, other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    @classmethod
    def _raw(cls, n: int, terms: Dict[Exponent, Scalar]) -> "MPoly":
        """Internal: terms already clean (no zeros, right lengths)."""
        p = cls.__new__(cls)
        object.__setattr__(p, "n", n)
        object.__setattr__(p, "terms", terms)
        return p

    # -- calculus / evaluation ------------------------------------------------
    def derivative(self, k: int) -> "MPoly":
        out: Dict[Exponent, Scalar] = {}
        for exp, c in self.terms.items():
            e = exp[k]
            if e:
                nexp = exp[:k] + (e - 1,) + exp[k + 1 :]
                nc = c * e
                acc = out.get(nexp)
                s = nc if acc is None else acc + nc
                if s:
                    out[nexp] = s
                elif acc is not None:
                    del out[nexp]
        return MPoly._raw(self.n, out)

    def substitute(self, k: int, value: Scalar) -> "MPoly":
        """Set x_{k+1} := value; result still lives in n variables."""
        out: Dict[Exponent, Scalar] = {}
        for exp, c in self.terms.items():
            e = exp[k]
            nc = c * value**e if e else c
            if not nc:
                continue
            nexp = exp[:k] + (0,) + exp[k + 1 :]
            acc = out.get(nexp)
            s = nc if acc is None else acc + nc
            if s:
                out[nexp] = s
            elif acc is not None:
                del out[nexp]
        return MPoly._raw(self.n, out)

    def substitute_many(self, values: Mapping[int, Scalar]) -> "MPoly":
        p = self
        for k, v in values.items():
            p = p.substitute(k, v)
        return p

    def evaluate(self, point: Sequence[Scalar]) -> Scalar:
        if len(point) != self.n:
            raise ValueError("point has wrong length")
        total: Scalar = 0
        for exp, c in self.terms.items():
            term = c
            for k, e in enumerate(exp):
                if e:
                    term = term * point[k] ** e
            total = total + term
        return total

    # -- display -----------------------------------------------------------
    def __str__(self) -> str:
        return poly_text(self)

    def __repr__(self) -> str:
        return f"MPoly({self.n}, {poly_text(self)!r})"


def _is_scalar(x) -> bool:
    from fractions import Fraction

    return isinstance(x, (int, Fraction, GaussianRational))


# -- module operations ------------------------------------------------------


def coefficient_of(p: MPoly, subset: Iterable[int]) -> Scalar:
    """Coefficient of the squarefree monomial prod_{k in subset} x_{k+1}.

    p must be multiaffine.
    """
    if not p.is_multiaffine():
        raise ValueError("coefficient_of requires a multiaffine polynomial")
    S = frozenset(subset)
    if any(not 0 <= k < p.n for k in S):
        raise ValueError("subset indices outside variable range")
    exp = tuple(1 if k in S else 0 for k in range(p.n))
    return p.terms.get(exp, 0)


def rayleigh_difference(f: MPoly, i: int, j: int) -> MPoly:
    """df/dxi * df/dxj - f * d2f/dxi dxj; requires degree <= 1 in xi and xj."""
    if i == j:
        raise ValueError("rayleigh_difference needs two distinct variables")
    if f.degree(i) > 1 or f.degree(j) > 1:
        raise ValueError("rayleigh_difference requires degree <= 1 in both variables")
    di = f.derivative(i)
    dj = f.derivative(j)
    dij = di.derivative(j)
    return di * dj - f * dij


def affine_resultant(g: MPoly, h: MPoly, k: int) -> MPoly:
    """res_{x_k}(g, h) = g|_{x_k=0} * dh/dx_k - h|_{x_k=0} * dg/dx_k.

    Both inputs must have degree <= 1 in x_{k+1}.
    """
    g._check_compatible(h)
    if g.degree(k) > 1 or h.degree(k) > 1:
        raise ValueError("affine_resultant requires degree <= 1 in the variable")
    return g.substitute(k, 0) * h.derivative(k) - h.substitute(k, 0) * g.derivative(k)


def exact_divide(p: MPoly, q: MPoly) -> MPoly:
    """The polynomial p/q; raises ExactDivisionError unless q divides p exactly.

    Standard single-divisor division: repeatedly eliminate the lex-leading
    term.  Lex order on exponent tuples is a well-order, so this terminates.
    """
    p._check_compatible(q)
    if q.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    lead_q = max(q.terms)
    cq = q.terms[lead_q]
    quotient: Dict[Exponent, Scalar] = {}
    rem = p
    while not rem.is_zero():
        lead_r = max(rem.terms)
        diff = tuple(a - b for a, b in zip(lead_r, lead_q))
        if any(e < 0 for e in diff):
            raise ExactDivisionError("division left a nonzero remainder")
        c = div_exact(rem.terms[lead_r], cq)
        quotient[diff] = c
        rem = rem - MPoly(p.n, {diff: c}) * q
    return MPoly(p.n, quotient)


# -- canonical text form -------------------------------------------------------


def _grlex_key(exp: Exponent):
    return (-sum(exp), tuple(-e for e in exp))


def _monomial_text(exp: Exponent, names: Sequence[str]) -> str:
    parts = []
    for k, e in enumerate(exp):
        if e == 1:
            parts.append(names[k])
        elif e > 1:
            parts.append(f"{names[k]}^{e}")
    return "*".join(parts)


def poly_text(p: MPoly, names: Optional[Sequence[str]] = None) -> str:
    """Canonical form: terms in descending graded-lex order, explicit * and ^."""
    if p.is_zero():
        return "0"
    if names is None:
        names = [f"x{k + 1}" for k in range(p.n)]
    pieces = []
    for exp in sorted(p.terms, key=_grlex_key):
        coeff = p.terms[exp]
        mono = _monomial_text(exp, names)
        if not is_rational(coeff):
            body = f"({scalar_format(coeff)})"
            sign = "+"
        else:
            sign = "-" if coeff < 0 else "+"
            mag = -coeff if coeff < 0 else coeff
            body = scalar_format(mag)
        if mono:
            text = mono if body == "1" else f"{body}*{mono}"
        else:
            text = body
        if not pieces:
            pieces.append(text if sign == "+" else f"-{text}")
        else:
            pieces.append(f"{sign} {text}")
    return " ".join(pieces)


def poly_subset_map(p: MPoly) -> Dict[str, str]:
    """Multiaffine polynomial as a {"1,3": coeff} map (1-based, "" = constant)."""
    if not p.is_multiaffine():
        raise ValueError("subset map form requires a multiaffine polynomial")
    out: Dict[str, str] = {}
    for exp in sorted(p.terms, key=lambda e: (sum(e), tuple(k for k, v in enumerate(e) if v))):
        key = ",".join(str(k + 1) for k, v in enumerate(exp) if v)
        out[key] = scalar_format(p.terms[exp])
    return out
