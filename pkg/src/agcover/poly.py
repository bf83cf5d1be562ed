"""Exact sparse polynomials in two variables with integer coefficients.

Also provides fraction-free (Bareiss) determinants over ``Z[x, y]`` and the
Sylvester resultant / discriminant of polynomials in a third variable whose
coefficients live in ``Z[x, y]``.
"""
from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from math import gcd
from types import MappingProxyType
from typing import Union

Monomial = tuple[int, int]


class InexactDivision(ArithmeticError):
    """Polynomial division left a nonzero remainder (or a non-integral quotient)."""


class BivariatePolynomial:
    """Sparse polynomial ``sum c_ij x^i y^j`` over the integers.

    Terms with zero coefficient are never stored.  ``vars`` names the two
    variables and is carried through arithmetic; mixing different variable
    pairs raises ``ValueError``.

    >>> u, v = BivariatePolynomial.gens("u", "v")
    >>> str((v - 2 * u) * (v + 2 * u))
    'v^2 - 4*u^2'
    """

    __slots__ = ("_terms", "vars", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None, vars: Sequence[str] = ("x", "y")):
        clean = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in monomial {(i, j)}")
            if c:
                clean[(int(i), int(j))] = int(c)
        self._terms = MappingProxyType(dict(sorted(clean.items())))
        self.vars = tuple(vars)
        self._hash = None

    # -- construction -------------------------------------------------
    @classmethod
    def gens(cls, x: str = "x", y: str = "y") -> tuple[BivariatePolynomial, BivariatePolynomial]:
        return cls({(1, 0): 1}, (x, y)), cls({(0, 1): 1}, (x, y))

    @classmethod
    def constant(cls, c: int, vars: Sequence[str] = ("x", "y")) -> BivariatePolynomial:
        return cls({(0, 0): c}, vars)

    @classmethod
    def monomial(cls, i: int, j: int, c: int = 1, vars: Sequence[str] = ("x", "y")) -> BivariatePolynomial:
        return cls({(i, j): c}, vars)

    def _coerce(self, other) -> BivariatePolynomial:
        if isinstance(other, BivariatePolynomial):
            if other.vars != self.vars and other._terms and not other.is_constant():
                raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")
            if other.vars != self.vars:
                return BivariatePolynomial(other._terms, self.vars)
            return other
        if isinstance(other, int):
            return BivariatePolynomial({(0, 0): other}, self.vars)
        return NotImplemented

    # -- accessors ----------------------------------------------------
    @property
    def terms(self) -> Mapping[Monomial, int]:
        return self._terms

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self._terms)

    def coeff(self, i: int, j: int) -> int:
        return self._terms.get((i, j), 0)

    def degree(self, var: int | None = None) -> int:
        """Degree in variable ``var`` (0 or 1), or total degree; ``-1`` for zero."""
        if not self._terms:
            return -1
        if var is None:
            return max(i + j for i, j in self._terms)
        return max(m[var] for m in self._terms)

    def order(self) -> int:
        """Lowest total degree of a term (the multiplicity at the origin)."""
        if not self._terms:
            raise ValueError("the zero polynomial has no order")
        return min(i + j for i, j in self._terms)

    def leading_term(self) -> tuple[Monomial, int]:
        """Lex-greatest term, comparing the first exponent first."""
        m = max(self._terms)
        return m, self._terms[m]

    def content(self) -> int:
        g = 0
        for c in self._terms.values():
            g = gcd(g, c)
        return g

    def primitive(self) -> BivariatePolynomial:
        g = self.content()
        if g in (0, 1):
            return self
        return BivariatePolynomial({m: c // g for m, c in self}, self.vars)

    def coeffs_in(self, var: int) -> dict[int, BivariatePolynomial]:
        """Split as a polynomial in variable ``var`` with coefficients in the other one."""
        out: dict[int, dict[Monomial, int]] = {}
        for (i, j), c in self:
            if var == 0:
                out.setdefault(i, {})[(0, j)] = c
            else:
                out.setdefault(j, {})[(i, 0)] = c
        return {e: BivariatePolynomial(t, self.vars) for e, t in sorted(out.items())}

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other) -> BivariatePolynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for m, c in other:
            acc[m] = acc.get(m, 0) + c
        return BivariatePolynomial(acc, self.vars)

    __radd__ = __add__

    def __neg__(self) -> BivariatePolynomial:
        return BivariatePolynomial({m: -c for m, c in self}, self.vars)

    def __sub__(self, other) -> BivariatePolynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> BivariatePolynomial:
        return (-self) + other

    def __mul__(self, other) -> BivariatePolynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[Monomial, int] = {}
        for (i1, j1), c1 in self:
            for (i2, j2), c2 in other:
                key = (i1 + i2, j1 + j2)
                acc[key] = acc.get(key, 0) + c1 * c2
        return BivariatePolynomial(acc, self.vars)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> BivariatePolynomial:
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = BivariatePolynomial.constant(1, self.vars)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other: BivariatePolynomial) -> tuple[BivariatePolynomial, BivariatePolynomial]:
        """Lex-order division; the remainder keeps the terms the divisor cannot cancel."""
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        (bi, bj), bc = other.leading_term()
        rem = dict(self._terms)
        quo: dict[Monomial, int] = {}
        out_rem: dict[Monomial, int] = {}
        while rem:
            m = max(rem)
            c = rem[m]
            if m[0] < bi or m[1] < bj or c % bc:
                out_rem[m] = c
                del rem[m]
                continue
            qm = (m[0] - bi, m[1] - bj)
            qc = c // bc
            quo[qm] = quo.get(qm, 0) + qc
            for (i, j), oc in other:
                key = (i + qm[0], j + qm[1])
                val = rem.get(key, 0) - qc * oc
                if val:
                    rem[key] = val
                else:
                    rem.pop(key, None)
        return BivariatePolynomial(quo, self.vars), BivariatePolynomial(out_rem, self.vars)

    def exact_div(self, other: BivariatePolynomial | int) -> BivariatePolynomial:
        q, r = divmod(self, self._coerce(other))
        if r:
            raise InexactDivision(f"({self}) is not divisible by ({other}); remainder {r}")
        return q

    def __floordiv__(self, other) -> BivariatePolynomial:
        return self.exact_div(other)

    # -- calculus and substitution --------------------------------------
    def derivative(self, var: int) -> BivariatePolynomial:
        acc = {}
        for (i, j), c in self:
            e = (i, j)[var]
            if e:
                acc[(i - 1, j) if var == 0 else (i, j - 1)] = c * e
        return BivariatePolynomial(acc, self.vars)

    def __call__(self, x, y):
        """Evaluate at numbers (or anything supporting ``+``, ``*`` and ``**``)."""
        total = 0
        for (i, j), c in self:
            total = total + c * x**i * y**j
        return total

    def compose(self, x_sub: BivariatePolynomial, y_sub: BivariatePolynomial) -> BivariatePolynomial:
        """Substitute polynomials for both variables; the result uses ``x_sub.vars``."""
        xp: dict[int, BivariatePolynomial] = {}
        yp: dict[int, BivariatePolynomial] = {}

        def power(cache, base, e):
            if e not in cache:
                cache[e] = base**e
            return cache[e]

        result = BivariatePolynomial({}, x_sub.vars)
        for (i, j), c in self:
            result = result + c * power(xp, x_sub, i) * power(yp, y_sub, j)
        return result

    def swap(self) -> BivariatePolynomial:
        return BivariatePolynomial({(j, i): c for (i, j), c in self}, self.vars[::-1])

    # -- comparison and display ------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = BivariatePolynomial.constant(other, self.vars)
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        if dict(self._terms) != dict(other._terms):
            return False
        return self.vars == other.vars or self.is_constant()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((tuple(self._terms.items()), self.vars))
        return self._hash

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        x, y = self.vars
        pieces = []
        for (i, j), c in sorted(self._terms.items(), key=lambda t: (-(t[0][0] + t[0][1]), -t[0][1])):
            mono = []
            for name, e in ((x, i), (y, j)):
                if e == 1:
                    mono.append(name)
                elif e > 1:
                    mono.append(f"{name}^{e}")
            body = "*".join(mono)
            mag = abs(c)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            pieces.append(("-" if c < 0 else "+", text))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in pieces[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self) -> str:
        return f"BivariatePolynomial({str(self)!r}, vars={self.vars})"

    def to_json(self) -> dict:
        return {"vars": list(self.vars), "terms": [[i, j, str(c)] for (i, j), c in self]}

    @classmethod
    def from_json(cls, doc: Mapping) -> BivariatePolynomial:
        return cls({(int(i), int(j)): int(c) for i, j, c in doc["terms"]}, doc["vars"])


Scalar = Union[BivariatePolynomial, int]


def bareiss_determinant(matrix: Sequence[Sequence[BivariatePolynomial]]) -> BivariatePolynomial:
    """Determinant over ``Z[x, y]`` by fraction-free Gaussian elimination.

    Each division in the elimination is exact; a nonzero remainder would mean
    an arithmetic bug and surfaces as :class:`InexactDivision`.
    """
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    vars_ = next((e.vars for row in matrix for e in row if isinstance(e, BivariatePolynomial)), ("x", "y"))
    a = [
        [e if isinstance(e, BivariatePolynomial) else BivariatePolynomial.constant(e, vars_) for e in row]
        for row in matrix
    ]
    sign = 1
    prev = BivariatePolynomial.constant(1, vars_)
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return BivariatePolynomial({}, vars_)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]).exact_div(prev)
            a[i][k] = BivariatePolynomial({}, vars_)
        prev = pivot
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def sylvester_matrix(f: Sequence[Scalar], g: Sequence[Scalar]) -> list[list[Scalar]]:
    """Sylvester matrix of ``f`` and ``g`` given as coefficient lists, highest power first."""
    m, n = len(f) - 1, len(g) - 1
    if m < 0 or n < 0:
        raise ValueError("empty coefficient list")
    size = m + n
    rows: list[list[Scalar]] = []
    for r in range(n):
        rows.append([0] * r + list(f) + [0] * (size - m - 1 - r))
    for r in range(m):
        rows.append([0] * r + list(g) + [0] * (size - n - 1 - r))
    return rows


def _dense(coeffs: Mapping[int, BivariatePolynomial], vars_) -> list[BivariatePolynomial]:
    deg = max(coeffs)
    zero = BivariatePolynomial({}, vars_)
    return [coeffs.get(e, zero) for e in range(deg, -1, -1)]


def resultant(f: Mapping[int, BivariatePolynomial], g: Mapping[int, BivariatePolynomial]) -> BivariatePolynomial:
    """``Res_w(f, g)`` for ``f, g`` given as ``{power of w: coefficient in Z[x, y]}``."""
    vars_ = next(iter(f.values())).vars
    return bareiss_determinant(sylvester_matrix(_dense(f, vars_), _dense(g, vars_)))


def discriminant(f: Mapping[int, BivariatePolynomial]) -> BivariatePolynomial:
    """Discriminant in ``w``: ``(-1)^(n(n-1)/2) Res_w(f, f') / lc(f)``."""
    deg = max(e for e, c in f.items() if c)
    fp = {e - 1: e * c for e, c in f.items() if e >= 1}
    res = resultant(f, fp)
    lead = f[deg]
    sign = -1 if (deg * (deg - 1) // 2) % 2 else 1
    return (sign * res).exact_div(lead)


def univariate(coeffs: Iterable[int], var: str = "t") -> BivariatePolynomial:
    """``sum coeffs[i] * t^i`` stored with an unused second variable."""
    return BivariatePolynomial({(i, 0): c for i, c in enumerate(coeffs)}, (var, "_"))
