"""Exact rational linear algebra and real-root machinery.

Everything here works over :class:`fractions.Fraction` and Python's
arbitrary-precision ``int``; nothing is ever rounded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import InconsistencyError, InputError

DEFAULT_PRECISION = Fraction(1, 10**12)

RationalMatrix = tuple[tuple[Fraction, ...], ...]


def as_rational_matrix(rows: Iterable[Iterable]) -> RationalMatrix:
    m = tuple(tuple(Fraction(v) for v in row) for row in rows)
    if any(len(row) != len(m) for row in m):
        raise InputError(f"matrix is not square: {len(m)} rows of lengths {[len(r) for r in m]}")
    return m


def _strip(coeffs: Iterable) -> tuple[Fraction, ...]:
    c = [Fraction(v) for v in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class RationalPolynomial:
    """Polynomial with rational coefficients, lowest degree first."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _strip(coeffs))

    @classmethod
    def x(cls) -> RationalPolynomial:
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> RationalPolynomial:
        return cls((c,))

    @classmethod
    def from_roots(cls, roots: Iterable) -> RationalPolynomial:
        p = cls((1,))
        for r in roots:
            p = p * cls((-Fraction(r), 1))
        return p

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __neg__(self) -> RationalPolynomial:
        return RationalPolynomial(-c for c in self.coeffs)

    def __add__(self, other: RationalPolynomial) -> RationalPolynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RationalPolynomial(x + y for x, y in zip(a, b))

    def __sub__(self, other: RationalPolynomial) -> RationalPolynomial:
        return self + (-other)

    def __mul__(self, other) -> RationalPolynomial:
        if not isinstance(other, RationalPolynomial):
            return RationalPolynomial(c * other for c in self.coeffs)
        if not self or not other:
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> RationalPolynomial:
        out = RationalPolynomial((1,))
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: RationalPolynomial) -> tuple[RationalPolynomial, RationalPolynomial]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return RationalPolynomial(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.leading
        for k in range(dq, -1, -1):
            q = rem[k + other.degree] / lead
            quot[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        return RationalPolynomial(quot), RationalPolynomial(rem[: other.degree])

    def __floordiv__(self, other: RationalPolynomial) -> RationalPolynomial:
        return divmod(self, other)[0]

    def __mod__(self, other: RationalPolynomial) -> RationalPolynomial:
        return divmod(self, other)[1]

    def derivative(self) -> RationalPolynomial:
        return RationalPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> RationalPolynomial:
        if not self:
            return self
        return RationalPolynomial(c / self.leading for c in self.coeffs)

    def primitive_integer(self) -> tuple[int, ...]:
        """Coefficients scaled to coprime integers with positive leading term."""
        if not self:
            return ()
        den = math.lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = math.gcd(*ints)
        if ints[-1] < 0:
            g = -g
        return tuple(v // g for v in ints)

    def to_str(self, var: str = "x") -> str:
        """Expanded form, highest degree first, e.g. ``x^2 - 3/2*x + 1``."""
        if not self:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.to_str()


def poly_gcd(a: RationalPolynomial, b: RationalPolynomial) -> RationalPolynomial:
    """Monic gcd (zero if both inputs are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    m = [list(map(int, r)) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            a = row_i[k]
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                row_i[j] = (row_i[j] * pivot - a * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def rational_det(m: RationalMatrix) -> Fraction:
    """Determinant of a rational matrix: clear row denominators, then Bareiss."""
    scale = 1
    rows = []
    for row in m:
        d = math.lcm(*(v.denominator for v in row)) if row else 1
        scale *= d
        rows.append([int(v * d) for v in row])
    return Fraction(bareiss_det(rows), scale)


def _newton_interpolate(xs: Sequence[int], ys: Sequence[int]) -> RationalPolynomial:
    coef = [Fraction(y) for y in ys]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    p = RationalPolynomial((coef[-1],))
    for i in range(n - 2, -1, -1):
        p = p * RationalPolynomial((-xs[i], 1)) + RationalPolynomial((coef[i],))
    return p


def char_poly(m: RationalMatrix, points: Optional[Sequence[int]] = None) -> RationalPolynomial:
    """Monic characteristic polynomial det(xI - m).

    Each row is scaled by the lcm of its denominators to give an integer
    pencil ``k*D - B``; its determinant is sampled at ``n + 1`` integer points
    and interpolated, then divided by ``det D``.
    """
    m = as_rational_matrix(m)
    n = len(m)
    if points is None:
        points = range(n + 1)
    points = [int(k) for k in points]
    if len(set(points)) != n + 1:
        raise InputError(f"need {n + 1} distinct sample points, got {points}")
    dens = [math.lcm(*(v.denominator for v in row)) for row in m]
    ints = [[int(v * d) for v in row] for row, d in zip(m, dens)]
    values = []
    for k in points:
        pencil = [
            [(k * d if i == j else 0) - ints[i][j] for j in range(n)]
            for i, d in enumerate(dens)
        ]
        values.append(bareiss_det(pencil))
    p = _newton_interpolate(points, values)
    scale = math.prod(dens)
    if p.leading != scale:
        raise InconsistencyError(f"interpolated leading coefficient {p.leading} != {scale}")
    return p.monic()


def eval_sign(p: RationalPolynomial, x) -> int:
    """Exact sign of p(x) as -1, 0 or 1."""
    v = p(Fraction(x))
    return (v > 0) - (v < 0)


def square_free_decompose(p: RationalPolynomial) -> list[tuple[RationalPolynomial, int]]:
    """Yun's algorithm; returns monic square-free factors with multiplicities."""
    if not p:
        raise InputError("square-free decomposition of the zero polynomial")
    p = p.monic()
    out = []
    a = poly_gcd(p, p.derivative())
    b = p // a
    c = p.derivative() // a
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g, i))
        b = b // g
        c = d // g
        d = c - b.derivative()
        i += 1
    return out


def square_free_part(p: RationalPolynomial) -> RationalPolynomial:
    return (p // poly_gcd(p, p.derivative())).monic()


def sturm_sequence(p: RationalPolynomial) -> list[RationalPolynomial]:
    seq = [p, p.derivative()]
    while seq[-1].degree > 0:
        r = seq[-2] % seq[-1]
        if not r:
            break
        seq.append(-r)
    return seq


def _variations(seq: Sequence[RationalPolynomial], x: Fraction) -> int:
    count = 0
    last = 0
    for q in seq:
        s = eval_sign(q, x)
        if s:
            if last and s != last:
                count += 1
            last = s
    return count


def sturm_count(p: RationalPolynomial, lo, hi, seq: Optional[Sequence[RationalPolynomial]] = None) -> int:
    """Number of distinct real roots of the square-free ``p`` in ``(lo, hi]``."""
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise InputError(f"empty interval ({lo}, {hi}]")
    if not p:
        raise InputError("Sturm count of the zero polynomial")
    if seq is None:
        if poly_gcd(p, p.derivative()).degree > 0:
            raise InputError("Sturm count needs a square-free polynomial; decompose first")
        seq = sturm_sequence(p)
    return _variations(seq, lo) - _variations(seq, hi)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: RationalPolynomial) -> list[Fraction]:
    """All distinct rational roots, ascending (rational-root theorem)."""
    q = square_free_part(p)
    roots = []
    if q.coeffs[0] == 0:
        roots.append(Fraction(0))
        q = q // RationalPolynomial.x()
    ints = q.primitive_integer()
    if len(ints) > 1:
        for num in _divisors(ints[0]):
            for den in _divisors(ints[-1]):
                if math.gcd(num, den) != 1:
                    continue
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if q(cand) == 0:
                        roots.append(cand)
    return sorted(roots)


def root_bound(p: RationalPolynomial) -> Fraction:
    """Power of two strictly above every |root| (Cauchy bound)."""
    lead = abs(p.leading)
    bound = 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))
    k = 1
    while k <= bound:
        k *= 2
    return Fraction(k)


@dataclass(frozen=True)
class Root:
    """A real root: exact when ``value`` is set, else inside the open ``(lo, hi)``."""

    multiplicity: int
    value: Optional[Fraction] = None
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None

    @property
    def is_exact(self) -> bool:
        return self.value is not None

    @property
    def midpoint(self) -> Fraction:
        if self.value is not None:
            return self.value
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> Fraction:
        return Fraction(0) if self.value is not None else self.hi - self.lo

    def __str__(self) -> str:
        if self.value is not None:
            return str(self.value)
        return f"({float(self.lo):.12f}, {float(self.hi):.12f})"


@dataclass(frozen=True)
class RootIsolation:
    poly: RationalPolynomial
    roots: tuple[Root, ...]
    factors: tuple[tuple[RationalPolynomial, int], ...]

    def __iter__(self):
        return iter(self.roots)

    def __len__(self) -> int:
        return len(self.roots)

    def expanded(self) -> list[Root]:
        """Roots repeated by multiplicity, ascending."""
        return [r for r in self.roots for _ in range(r.multiplicity)]


def isolate_roots(p: RationalPolynomial, precision=DEFAULT_PRECISION) -> RootIsolation:
    """Isolate every real root of ``p``; rational roots come back exact.

    Irrational roots get open intervals with dyadic endpoints, width at most
    ``precision``. Raises :class:`InconsistencyError` when the multiplicities
    found do not add up to the degree (``p`` has non-real roots).
    """
    precision = Fraction(precision)
    if precision <= 0:
        raise InputError(f"precision must be positive, got {precision}")
    if not p or p.degree < 1:
        raise InputError("root isolation needs a polynomial of degree >= 1")
    factors = square_free_decompose(p)
    sqf = RationalPolynomial((1,))
    for f, _ in factors:
        sqf = sqf * f
    seq = sturm_sequence(sqf)
    exact = rational_roots(sqf)

    def multiplicity_at(lo: Fraction, hi: Fraction, value: Optional[Fraction]) -> int:
        for f, mult in factors:
            if value is not None:
                if f(value) == 0:
                    return mult
            elif sturm_count(f, lo, hi) == 1:
                return mult
        raise InconsistencyError(f"no square-free factor owns the root in ({lo}, {hi}]")

    bound = root_bound(sqf)
    roots: list[Root] = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        c = sturm_count(sqf, lo, hi, seq)
        if c == 0:
            continue
        if c == 1:
            hit = [r for r in exact if lo < r <= hi]
            if hit:
                roots.append(Root(multiplicity_at(lo, hi, hit[0]), value=hit[0]))
                continue
            while hi - lo > precision:
                mid = (lo + hi) / 2
                if sturm_count(sqf, lo, mid, seq):
                    hi = mid
                else:
                    lo = mid
            roots.append(Root(multiplicity_at(lo, hi, None), lo=lo, hi=hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    roots.sort(key=lambda r: r.midpoint)
    total = sum(r.multiplicity for r in roots)
    if total != p.degree:
        raise InconsistencyError(
            f"non-real roots detected: real multiplicities sum to {total}, degree is {p.degree}"
        )
    return RootIsolation(p.monic(), tuple(roots), tuple(factors))


def factored_str(iso: RootIsolation, var: str = "x") -> str:
    """Human-readable factorisation: rational linear factors, then the rest."""
    parts = []
    rest = iso.poly
    for r in iso.roots:
        if not r.is_exact:
            continue
        if r.value == 0:
            lin = var
        elif r.value > 0:
            lin = f"({var} - {r.value})"
        else:
            lin = f"({var} + {-r.value})"
        parts.append(lin if r.multiplicity == 1 else f"{lin}^{r.multiplicity}")
        rest = rest // RationalPolynomial((-r.value, 1)) ** r.multiplicity
    if rest.degree > 0:
        for f, mult in square_free_decompose(rest):
            body = f"({f.to_str(var)})"
            parts.append(body if mult == 1 else f"{body}^{mult}")
    return "*".join(parts) if parts else "1"
