"""
Module containing exact arithmetic in the real field Q(2cos(pi/N)).

Every entry of the bilinear form of a Coxeter system, and hence every root
coordinate, lies in Q(c) with c = 2cos(pi/N), where N is the lcm of the
finite orders of the system. A `Scalar` is a vector of rationals giving a
polynomial in c of degree below d = deg(minpoly); equality is coefficient
equality and the sign of a nonzero value is certified by interval evaluation.

The minimal polynomial is derived from the cyclotomic polynomial Phi_2N:
Phi_2N is built by dividing x^2N - 1 by every Phi_k with k a proper divisor of
2N, and its palindromic coefficients are folded through z -> z + 1/z.

When every finite order is 2 or 3 (simply-laced systems), d = 1 and scalars
are plain rationals.
"""
import logging
import threading

from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Dict, Iterable, Sequence, Tuple, Union

from sympy import Poly, Rational, Symbol, divisors

from .coxcomm_types import InvalidInputError, InvariantViolationError

logger = logging.getLogger(__name__)

INITIAL_PRECISION_BITS = 128
MAX_PRECISION_BITS = 16384

_x = Symbol("x")

Number = Union[int, Fraction]

@lru_cache(maxsize=None)
def cyclotomic(n: int) -> Poly:
    """Phi_n from x^n - 1 divided by Phi_k for every proper divisor k of n."""
    poly = Poly(_x ** n - 1, _x)
    for k in divisors(n)[:-1]:
        poly = poly.exquo(cyclotomic(k))
    return poly

def fold_palindromic(poly: Poly) -> Poly:
    """
    Given a palindromic polynomial p of degree 2d, returns g with
    p(z) = z^d g(z + 1/z).
    """
    degree = poly.degree()
    if degree % 2:
        raise ValueError(f"Cannot fold a polynomial of odd degree {degree}")
    half = degree // 2

    remaining = poly
    folded = Poly(0, _x)
    for k in range(half, -1, -1):
        coeff = remaining.coeff_monomial(_x ** (half + k))
        if coeff:
            folded += Poly(coeff * _x ** k, _x)
            remaining -= Poly(coeff * _x ** (half - k) * (_x ** 2 + 1) ** k, _x)
    if not remaining.is_zero:
        raise ValueError("Polynomial is not palindromic")
    return folded

class ScalarContext:
    """
    The field Q(c), c = 2cos(pi/N), shared by all scalars of a Coxeter system.

    Attributes:
        N (int): lcm of the finite orders, or 1.
        minpoly (Tuple[int, ...]): Monic minimal polynomial of c, lowest
            coefficient first.
        degree (int): d = deg(minpoly).
    """
    def __init__(self, N: int):
        if N < 1:
            raise ValueError(f"N must be a positive integer, got {N}")
        self.N = N
        if N == 1:
            # c = 2cos(pi) = -2
            poly = Poly(_x + 2, _x)
        else:
            poly = fold_palindromic(cyclotomic(2 * N))
        self._poly = poly
        self.minpoly = tuple(int(a) for a in reversed(poly.all_coeffs()))
        self.degree = len(self.minpoly) - 1
        self._enclosures: Dict[int, Tuple[Fraction, Fraction]] = {}
        self._lock = threading.Lock()

        self._zero = Scalar(self, (Fraction(0),) * self.degree)
        self._one = self.rational(1)

    def __repr__(self) -> str:
        return f"ScalarContext(N={self.N}, minpoly={self.minpoly})"

    def __eq__(self, other) -> bool:
        return isinstance(other, ScalarContext) and self.N == other.N

    def __hash__(self) -> int:
        return hash(("ScalarContext", self.N))

    def zero(self) -> "Scalar":
        return self._zero

    def one(self) -> "Scalar":
        return self._one

    def rational(self, value: Number) -> "Scalar":
        return Scalar(self, (Fraction(value),) + (Fraction(0),) * (self.degree - 1))

    def generator(self) -> "Scalar":
        """c itself (reduced when d = 1)."""
        if self.degree == 1:
            return self.rational(-self.minpoly[0])
        return Scalar(self, (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.degree - 2))

    def two_cos_pi_over(self, m: int) -> "Scalar":
        """
        2cos(pi/m) for m dividing N, as L_{N/m}(c) where L_0 = 2, L_1 = x and
        L_{k+1} = x L_k - L_{k-1}.
        """
        if m < 1 or self.N % m:
            raise InvalidInputError(f"2cos(pi/{m}) is not in the field of N={self.N}")
        steps = self.N // m
        c = self.generator()
        previous, current = self.rational(2), c
        if steps == 0:
            return previous
        for _ in range(steps - 1):
            previous, current = current, c * current - previous
        return current

    def enclosure(self, bits: int) -> Tuple[Fraction, Fraction]:
        """Rational bounds lo <= c <= hi with hi - lo < 2^-bits."""
        with self._lock:
            cached = self._enclosures.get(bits)
        if cached is not None:
            return cached

        # 2cos(pi/N) is the largest real root of its minimal polynomial
        (lo, hi), _ = self._poly.intervals()[-1]
        lo, hi = self._poly.refine_root(lo, hi, eps=Rational(1, 2 ** bits))
        bounds = (Fraction(int(lo.p), int(lo.q)), Fraction(int(hi.p), int(hi.q)))
        with self._lock:
            self._enclosures.setdefault(bits, bounds)
        return bounds

@lru_cache(maxsize=None)
def _context_for(N: int) -> ScalarContext:
    return ScalarContext(N)

def make_context(finite_orders: Iterable[int]) -> ScalarContext:
    """The shared context for a set of finite orders (each at least 2)."""
    orders = set(finite_orders)
    for m in orders:
        if isinstance(m, bool) or not isinstance(m, int) or m < 2:
            raise InvalidInputError(f"Finite orders must be integers >= 2, got {m!r}")
    N = lcm(*orders) if orders else 1
    logger.debug(f"Scalar context for orders {sorted(orders)}: N={N}")
    return _context_for(N)

def _interval_mul(a: Tuple[Fraction, Fraction], b: Tuple[Fraction, Fraction]) -> Tuple[Fraction, Fraction]:
    products = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(products), max(products)

class Scalar:
    """
    An exact element of Q(c): sum of coeffs[k] * c^k with k < d.

    Scalars are immutable; arithmetic requires both operands to share a
    context and accepts ints and Fractions as rationals.
    """
    __slots__ = ("ctx", "coeffs", "_hash")

    def __init__(self, ctx: ScalarContext, coeffs: Sequence[Number]):
        coeffs = tuple(Fraction(a) for a in coeffs)
        if len(coeffs) != ctx.degree:
            raise InvalidInputError(f"Expected {ctx.degree} coefficients, got {len(coeffs)}")
        self.ctx = ctx
        self.coeffs = coeffs
        self._hash = hash((ctx.N, coeffs))

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.ctx.N != self.ctx.N:
                raise InvalidInputError(f"Scalar context mismatch: N={self.ctx.N} vs N={other.ctx.N}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ctx.rational(other)
        return NotImplemented

    def __add__(self, other) -> "Scalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(self.ctx, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(self.ctx, [-a for a in self.coeffs])

    def __sub__(self, other) -> "Scalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(self.ctx, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other) -> "Scalar":
        return -self + other

    def __mul__(self, other) -> "Scalar":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Scalar(self.ctx, [a * other for a in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other

        d = self.ctx.degree
        if d == 1:
            return Scalar(self.ctx, (self.coeffs[0] * other.coeffs[0],))

        product = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    product[i + j] += a * b
        minpoly = self.ctx.minpoly
        # c^d = -(minpoly[0] + ... + minpoly[d-1] c^(d-1))
        for k in range(2 * d - 2, d - 1, -1):
            top = product[k]
            if top:
                for i in range(d):
                    product[k - d + i] -= top * minpoly[i]
        return Scalar(self.ctx, product[:d])

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.ctx.N == other.ctx.N and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.coeffs == self.ctx.rational(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def sign(self) -> int:
        """
        Exact sign. Zero iff every coefficient is zero; otherwise the value is
        evaluated on a rational enclosure of c whose width halves each round
        until the result interval excludes 0.
        """
        if self.is_zero():
            return 0
        if self.is_rational():
            return 1 if self.coeffs[0] > 0 else -1

        bits = INITIAL_PRECISION_BITS
        while bits <= MAX_PRECISION_BITS:
            c = self.ctx.enclosure(bits)
            value = (self.coeffs[-1], self.coeffs[-1])
            for a in reversed(self.coeffs[:-1]):
                lo, hi = _interval_mul(value, c)
                value = (lo + a, hi + a)
            if value[0] > 0:
                return 1
            if value[1] < 0:
                return -1
            logger.debug(f"Sign undecided at {bits} bits, doubling precision")
            bits *= 2

        raise InvariantViolationError(f"Sign of nonzero scalar {self} undecided at {MAX_PRECISION_BITS} bits")

    def to_float(self) -> float:
        c = float(self.ctx.enclosure(64)[0])
        value = 0.0
        for a in reversed(self.coeffs):
            value = value * c + float(a)
        return value

    def to_json(self) -> Dict[str, list]:
        return {"coeffs": [str(a) for a in self.coeffs]}

    @classmethod
    def from_json(cls, ctx: ScalarContext, data: Dict[str, list]) -> "Scalar":
        try:
            return cls(ctx, [Fraction(a) for a in data["coeffs"]])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            raise InvalidInputError(f"Invalid scalar JSON {data!r}: {e}") from e

    def __repr__(self) -> str:
        return f"Scalar({self})"

    def __str__(self) -> str:
        terms = []
        for k, a in enumerate(self.coeffs):
            if not a:
                continue
            if k == 0:
                terms.append(str(a))
            else:
                power = "c" if k == 1 else f"c^{k}"
                terms.append(power if a == 1 else f"{a}*{power}")
        return " + ".join(terms) if terms else "0"
