"""Exact polynomial arithmetic over Q and the quotient ring Q[x]/<phi>.

Polynomials store their coefficients lowest degree first as
:class:`fractions.Fraction`.  Everything here is exact except root finding,
which returns complex floating approximations.
"""

from __future__ import annotations

import cmath
import math
import numbers
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    ContextMismatch,
    IrrationalInput,
    NotCoprime,
    NotSquarefree,
    RootFindingFailure,
    ZeroConstantTerm,
)

ROOT_TOLERANCE = 1e-12
MAX_ITERATIONS = 200
# roots closer than this to the real axis / to each other's conjugate are paired
PAIRING_TOLERANCE = 1e-9


def as_rational(value) -> Fraction:
    """Convert ``value`` to an exact :class:`Fraction`.

    Accepts ints, rationals, integral floats and strings such as ``"3"``,
    ``"-2/7"`` or ``"0.25"``.  Non-integral floats are refused because they
    usually stand for an irrational quantity (``math.sqrt(2)``).
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, numbers.Rational):
        return Fraction(int(value.numerator), int(value.denominator))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {value!r}") from exc
    if isinstance(value, numbers.Real):
        f = float(value)
        if math.isfinite(f) and f.is_integer():
            return Fraction(int(f))
        raise IrrationalInput(
            f"refusing floating value {value!r}; pass an exact rational "
            "(Fraction or 'p/q' string)"
        )
    raise IrrationalInput(f"cannot interpret {value!r} as an exact rational")


def rational_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Poly:
    """Immutable polynomial with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [as_rational(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def _raw(cls, coeffs: list) -> "Poly":
        # coeffs already Fractions; only strips
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        p = object.__new__(cls)
        p.coeffs = tuple(coeffs)
        return p

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def x(cls) -> "Poly":
        return cls.monomial(1)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly([{', '.join(rational_str(c) for c in self.coeffs)}])"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = rational_str(a)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if a == 1 else f"{rational_str(a)}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs])

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly._raw([c * other for c in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly._raw(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "Poly"):
        if not isinstance(other, Poly):
            other = Poly([other])
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = other.degree
        lead = other.lead
        if len(rem) - 1 < dd:
            return Poly(), self
        quot = [Fraction(0)] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            q = c / lead
            quot[k - dd] = q
            for j, b in enumerate(other.coeffs):
                rem[k - dd + j] -= q * b
        return Poly._raw(quot), Poly._raw(rem[:dd])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        return self * (1 / self.lead)

    def derivative(self) -> "Poly":
        return Poly._raw([k * c for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, z):
        """Horner evaluation; works for Fraction, int, float or complex ``z``."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def evalc(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + float(c)
        return acc

    def to_strings(self) -> list[str]:
        return [rational_str(c) for c in self.coeffs]


def _coerce(value):
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly([value])
    return None


def xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Extended Euclid: returns ``(d, u, v)`` with ``d`` monic and ``u*a + v*b == d``."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    r0, r1 = a, b
    s0, s1 = Poly([1]), Poly()
    t0, t1 = Poly(), Poly([1])
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = 1 / r0.lead
    return r0 * inv, s0 * inv, t0 * inv


def is_squarefree(phi: Poly) -> bool:
    if phi.is_zero():
        raise ValueError("zero polynomial")
    if phi.degree < 1:
        return True
    d, _, _ = xgcd(phi, phi.derivative())
    return d.is_constant()


class QuotientContext:
    """The ring Q[x]/<phi> for a monic integer ``phi`` with nonzero constant term.

    ``phi_rot`` holds the coefficients in the rotation-matrix convention
    ``phi(x) = x^n - phi_{n-1} x^{n-1} - ... - phi_0``.
    """

    def __init__(self, phi: Poly | Sequence, *, strict: bool = True):
        if not isinstance(phi, Poly):
            phi = Poly(phi)
        if phi.degree < 1:
            raise ValueError("phi must have degree >= 1")
        if phi.lead != 1:
            raise ValueError(f"phi must be monic, got leading coefficient {phi.lead}")
        if not phi.is_integral():
            raise ValueError("phi must have integer coefficients")
        if phi.coeffs[0] == 0:
            raise ZeroConstantTerm(f"phi(0) = 0 for phi = {phi}; the constant term must be nonzero")
        self.phi = phi
        self.n = phi.degree
        self.phi_rot: tuple[int, ...] = tuple(int(-c) for c in phi.coeffs[: self.n])
        self.squarefree = is_squarefree(phi)
        if strict and not self.squarefree:
            raise NotSquarefree(f"phi = {phi} has a repeated root")

    @classmethod
    def x_n_minus(cls, n: int, r: int = 1) -> "QuotientContext":
        return cls(Poly([-r] + [0] * (n - 1) + [1]))

    def __eq__(self, other):
        return isinstance(other, QuotientContext) and self.phi == other.phi

    def __hash__(self):
        return hash(self.phi)

    def __repr__(self):
        return f"QuotientContext(phi={self.phi})"

    @property
    def binomial_r(self):
        """``r`` when phi = x^n - r, otherwise ``None``."""
        if all(c == 0 for c in self.phi.coeffs[1 : self.n]):
            return -self.phi.coeffs[0]
        return None

    @property
    def is_x_n_minus_one(self) -> bool:
        return self.binomial_r == 1

    @cached_property
    def rotation(self) -> tuple[tuple[int, ...], ...]:
        n, p = self.n, self.phi_rot
        rows = [[0] * n for _ in range(n)]
        rows[0][n - 1] = p[0]
        for i in range(1, n):
            rows[i][i - 1] += 1
            rows[i][n - 1] += p[i]
        return tuple(tuple(r) for r in rows)

    def shift(self, v: Sequence[Fraction]) -> list[Fraction]:
        """``H @ v``: multiplication by x in coefficient form."""
        last = v[-1]
        out = [last * self.phi_rot[0]]
        for i in range(1, self.n):
            out.append(v[i - 1] + last * self.phi_rot[i])
        return out

    @cached_property
    def rotation_powers(self) -> tuple:
        """``H^0 .. H^{n-1}`` as exact rational row-major matrices."""
        n = self.n
        cols = [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
        powers = []
        for _ in range(n):
            powers.append(tuple(tuple(cols[j][i] for j in range(n)) for i in range(n)))
            cols = [self.shift(c) for c in cols]
        return tuple(powers)

    @cached_property
    def roots(self) -> tuple[complex, ...]:
        if not self.squarefree:
            raise NotSquarefree("roots requested for a phi with repeated roots")
        return complex_roots(self)

    def element(self, values) -> "RingElement":
        """Build a ring element from a coefficient vector (or a :class:`Poly`)."""
        if isinstance(values, Poly):
            return RingElement(values, self)
        values = list(values)
        if len(values) != self.n:
            raise ValueError(f"expected {self.n} coefficients, got {len(values)}")
        return RingElement(Poly(values), self)

    def one(self) -> "RingElement":
        return RingElement(Poly([1]), self)

    def zero(self) -> "RingElement":
        return RingElement(Poly(), self)

    def e(self, k: int) -> "RingElement":
        """Unit vector e_k (1-based, as in e_1 .. e_n)."""
        if not 1 <= k <= self.n:
            raise IndexError(k)
        return RingElement(Poly.monomial(k - 1), self)


class RingElement:
    """Element of Q[x]/<phi>; ``rep`` always has degree < n."""

    __slots__ = ("rep", "ctx")

    def __init__(self, rep: Poly, ctx: QuotientContext):
        if rep.degree >= ctx.n:
            rep = rep % ctx.phi
        self.rep = rep
        self.ctx = ctx

    @property
    def vector(self) -> tuple[Fraction, ...]:
        c = self.rep.coeffs
        return c + (Fraction(0),) * (self.ctx.n - len(c))

    def is_integral(self) -> bool:
        return self.rep.is_integral()

    def _check(self, other: "RingElement"):
        if other.ctx != self.ctx:
            raise ContextMismatch(f"{self.ctx} vs {other.ctx}")

    def __add__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        self._check(other)
        return RingElement(self.rep + other.rep, self.ctx)

    def __sub__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        self._check(other)
        return RingElement(self.rep - other.rep, self.ctx)

    def __neg__(self):
        return RingElement(-self.rep, self.ctx)

    def __mul__(self, other):
        if isinstance(other, RingElement):
            return ring_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return RingElement(self.rep * other, self.ctx)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ctx == other.ctx and self.rep == other.rep
        return NotImplemented

    def __hash__(self):
        return hash((self.rep, self.ctx))

    def __repr__(self):
        return f"RingElement({self.rep} mod {self.ctx.phi})"


def reduce_mod_phi(p: Poly, ctx: QuotientContext) -> RingElement:
    return RingElement(p % ctx.phi, ctx)


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    a._check(b)
    return RingElement((a.rep * b.rep) % a.ctx.phi, a.ctx)


def inverse_mod_phi(f: RingElement) -> RingElement:
    """The unique ``u`` with ``u*f == 1`` in the quotient ring."""
    if f.rep.is_zero():
        raise NotCoprime("zero has no inverse", gcd=f.ctx.phi)
    d, u, _ = xgcd(f.rep, f.ctx.phi)
    if not d.is_constant():
        raise NotCoprime(f"gcd({f.rep}, {f.ctx.phi}) = {d} is not 1", gcd=d)
    return RingElement(u, f.ctx)


def _root_scale(phi: Poly, z: complex) -> float:
    a = abs(z)
    return max(1.0, sum(abs(float(c)) * a**k for k, c in enumerate(phi.coeffs)))


def _aberth(phi: Poly) -> list[complex]:
    n = phi.degree
    dphi = phi.derivative()
    coeffs = [float(c) for c in phi.coeffs]
    # Fujiwara bound on root moduli; phi_0 != 0 keeps the max nonempty
    bound = 2 * max(abs(c) ** (1.0 / (n - k)) for k, c in enumerate(coeffs[:-1]) if c)
    z = [0.5 * bound * cmath.exp(1j * (2 * math.pi * k / n + 0.4)) for k in range(n)]
    for _ in range(MAX_ITERATIONS):
        done = True
        new = list(z)
        for k in range(n):
            p = phi.evalc(z[k])
            if abs(p) <= ROOT_TOLERANCE * 1e-3 * _root_scale(phi, z[k]):
                continue
            dp = dphi.evalc(z[k])
            ratio = p / dp if dp != 0 else p
            s = sum(1 / (z[k] - z[j]) for j in range(n) if j != k and z[k] != z[j])
            step = ratio / (1 - ratio * s)
            new[k] = z[k] - step
            if abs(step) > 1e-15 * max(1.0, abs(z[k])):
                done = False
        z = new
        if done:
            break
    else:
        if any(abs(phi.evalc(w)) >= ROOT_TOLERANCE * _root_scale(phi, w) for w in z):
            raise RootFindingFailure(f"Aberth iteration did not converge for {phi}")
    return z


def complex_roots(ctx: QuotientContext) -> tuple[complex, ...]:
    """All n complex roots of phi.

    Closed form for ``x^n - r`` (roots of unity when r = 1, first root
    ``theta_1 = 1``); Aberth simultaneous iteration otherwise.
    """
    n, phi = ctx.n, ctx.phi
    r = ctx.binomial_r
    if r is not None:
        mod = abs(float(r)) ** (1.0 / n)
        offset = 0.0 if r > 0 else math.pi / n
        roots = []
        for k in range(n):
            ang = offset + 2 * math.pi * k / n
            roots.append(complex(mod * math.cos(ang), mod * math.sin(ang)))
    else:
        roots = _aberth(phi)
    for w in roots:
        if abs(phi.evalc(w)) >= ROOT_TOLERANCE * _root_scale(phi, w):
            raise RootFindingFailure(f"|phi({w})| exceeds tolerance")
    return tuple(roots)


def count_cyclic_subspaces(ctx: QuotientContext) -> int:
    """Number of monic real divisors of phi, i.e. 2**(real roots + conjugate pairs)."""
    roots = list(ctx.roots)
    real = [w for w in roots if abs(w.imag) < PAIRING_TOLERANCE]
    cplx = [w for w in roots if abs(w.imag) >= PAIRING_TOLERANCE]
    pairs = 0
    unused = list(cplx)
    while unused:
        w = unused.pop()
        match = min(range(len(unused)), key=lambda j: abs(unused[j] - w.conjugate()), default=None)
        if match is None or abs(unused[match] - w.conjugate()) >= PAIRING_TOLERANCE * max(1.0, abs(w)):
            raise RootFindingFailure(f"no conjugate partner for root {w}")
        unused.pop(match)
        pairs += 1
    return 2 ** (len(real) + pairs)
