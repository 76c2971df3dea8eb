"""Exact arithmetic in Q(zeta_m)[Y, X, X^-1] with the relation Y^2 = q.

``Y`` stands for q^(1/2) and ``X`` for q^(-s), so every value produced by a
zeta integral or a gamma factor is a finite sum of terms

    c * zeta_m^k * Y^y * X^x,      c rational, y in {0, 1}.

Canonical form uses the basis of Q(zeta_m) made of roots of unity: for each
prime p with p^e || m, the exponent k is admissible when its p-digit
``(k mod p^e) // p^(e-1)`` is nonzero.  An inadmissible root is rewritten as
minus the sum of the other p - 1 members of its coset ``k + (m/p) Z``.  The
rewrite at one prime never disturbs the digits at another, so a single pass
per prime terminates and equality of canonical forms is ring equality.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .ff import prime_factors


class CycloError(ValueError):
    pass


class NotAMonomial(CycloError):
    """The value is not c * root_of_unity * Y^y * X^x."""


class MixedSessions(CycloError):
    pass


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class CycloRing:
    """Session object: fixes the root-of-unity order m and the integer q = Y^2."""

    def __init__(self, m: int, q: int) -> None:
        if m < 1 or q < 2:
            raise CycloError("need m >= 1 and q >= 2")
        self.m = m
        self.q = q
        self.primes = prime_factors(m)
        self._pe = {p: _ppart(m, p) for p in self.primes}
        self._expansion = [self._expand(k) for k in range(m)]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CycloRing) and (self.m, self.q) == (other.m, other.q)

    def __hash__(self) -> int:
        return hash((self.m, self.q))

    def __repr__(self) -> str:
        return f"CycloRing(m={self.m}, q={self.q})"

    def _digit(self, k: int, p: int) -> int:
        pe = self._pe[p]
        return (k % pe) // (pe // p)

    def _expand(self, k: int) -> tuple[tuple[int, int], ...]:
        terms = {k % self.m: 1}
        for p in self.primes:
            step = self.m // p
            out: dict[int, int] = {}
            for e, c in terms.items():
                if self._digit(e, p) == 0:
                    for j in range(1, p):
                        e2 = (e + j * step) % self.m
                        out[e2] = out.get(e2, 0) - c
                else:
                    out[e] = out.get(e, 0) + c
            terms = {e: c for e, c in out.items() if c}
        return tuple(sorted(terms.items()))

    def is_basis_exponent(self, k: int) -> bool:
        return all(self._digit(k % self.m, p) for p in self.primes)

    # constructors
    def from_raw(self, raw: dict[tuple[int, int, int], object]) -> CycloVal:
        """Canonicalize a group-ring style dict {(k, y, x): coefficient}."""
        acc: dict[tuple[int, int, int], object] = {}
        q = self.q
        for (k, y, x), c in raw.items():
            if not c:
                continue
            yy, shift = y % 2, y // 2
            if shift > 0:
                c = c * q**shift
            elif shift < 0:
                c = Fraction(c, q ** (-shift))
            for b, s in self._expansion[k % self.m]:
                key = (b, yy, x)
                acc[key] = acc.get(key, 0) + s * c
        return CycloVal(self, {key: _norm(c) for key, c in acc.items() if c})

    def root(self, k: int) -> CycloVal:
        """zeta_m^k."""
        return self.from_raw({(k, 0, 0): 1})

    def integer(self, n) -> CycloVal:
        return self.from_raw({(0, 0, 0): n})

    @property
    def zero(self) -> CycloVal:
        return CycloVal(self, {})

    @property
    def one(self) -> CycloVal:
        return self.integer(1)

    @property
    def Y(self) -> CycloVal:
        return self.from_raw({(0, 1, 0): 1})

    @property
    def X(self) -> CycloVal:
        return self.from_raw({(0, 0, 1): 1})

    def monomial(self, k: int = 0, y: int = 0, x: int = 0, c=1) -> CycloVal:
        return self.from_raw({(k, y, x): c})

    def from_counts(self, counts: dict[tuple[int, int, int], int], scale=1) -> CycloVal:
        """Canonical form of scale * sum(count * zeta^k Y^y X^x)."""
        val = self.from_raw(counts)
        if scale == 1:
            return val
        return CycloVal(self, {key: _norm(c * scale) for key, c in val.terms.items()})


def _ppart(m: int, p: int) -> int:
    pe = 1
    while m % (pe * p) == 0:
        pe *= p
    return pe


def root_of_unity(ring: CycloRing, k: int) -> CycloVal:
    return ring.root(k)


class CycloVal:
    """Immutable canonical element of the coefficient ring."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: CycloRing, terms: dict[tuple[int, int, int], object]) -> None:
        self.ring = ring
        self.terms = terms
        self._hash = None

    def _same(self, other: CycloVal) -> None:
        if not isinstance(other, CycloVal):
            raise TypeError(f"cannot combine CycloVal with {type(other).__name__}")
        if other.ring != self.ring:
            raise MixedSessions(f"{self.ring} vs {other.ring}")

    def _coerce(self, other) -> CycloVal:
        if isinstance(other, (int, Fraction)):
            return self.ring.integer(other)
        self._same(other)
        return other

    def __add__(self, other) -> CycloVal:
        other = self._coerce(other)
        acc = dict(self.terms)
        for key, c in other.terms.items():
            acc[key] = acc.get(key, 0) + c
        return CycloVal(self.ring, {k: _norm(c) for k, c in acc.items() if c})

    __radd__ = __add__

    def __neg__(self) -> CycloVal:
        return CycloVal(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> CycloVal:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> CycloVal:
        return self._coerce(other) - self

    def __mul__(self, other) -> CycloVal:
        other = self._coerce(other)
        raw: dict[tuple[int, int, int], object] = {}
        for (k1, y1, x1), c1 in self.terms.items():
            for (k2, y2, x2), c2 in other.terms.items():
                key = (k1 + k2, y1 + y2, x1 + x2)
                raw[key] = raw.get(key, 0) + c1 * c2
        return self.ring.from_raw(raw)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> CycloVal:
        if e < 0:
            return self.inverse() ** (-e)
        out = self.ring.one
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __truediv__(self, other) -> CycloVal:
        return self * self._coerce(other).inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.integer(other)
        if not isinstance(other, CycloVal) or other.ring != self.ring:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def inverse(self) -> CycloVal:
        c, k, y, x = monomial_parts(self)
        return self.ring.from_raw({(-k, -y, -x): Fraction(1) / c})

    def substitute_x(self, value: CycloVal) -> CycloVal:
        """Replace X by ``value`` (which must be invertible when negative powers occur)."""
        out = self.ring.zero
        for (k, y, x), c in self.terms.items():
            out = out + self.ring.monomial(k, y, 0, c) * (value**x)
        return out

    def to_json(self) -> list[list]:
        """Sorted term list [[root_exponent, y, x, "num/den"], ...]."""
        rows = []
        for (k, y, x), c in sorted(self.terms.items()):
            rows.append([k, y, x, str(c)])
        return rows

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (k, y, x), c in sorted(self.terms.items()):
            factors = [] if k == 0 else [f"z^{k}"]
            if y:
                factors.append("Y")
            if x:
                factors.append("X" if x == 1 else f"X^{x}")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"CycloVal({self}; m={self.ring.m})"


def monomial_parts(x: CycloVal) -> tuple[Fraction, int, int, int]:
    """Write x = c * zeta^k * Y^y * X^e with c rational; raise NotAMonomial otherwise."""
    if x.is_zero:
        raise NotAMonomial("zero")
    ring = x.ring
    if len(x.terms) == 1:
        (k, y, e), c = next(iter(x.terms.items()))
        return Fraction(c), k, y, e
    keys = {(y, e) for (_, y, e) in x.terms}
    if len(keys) != 1:
        raise NotAMonomial(f"several (Y, X) monomials in {x}")
    (y, e), = keys
    coeff = {k: c for (k, _, _), c in x.terms.items()}
    k0 = min(coeff)
    # a root of unity expands inside a product of prime cosets of its exponent
    steps = [range(0, ring.m, ring.m // p) for p in ring.primes]
    for shifts in product(*steps) if steps else [()]:
        k = (k0 - sum(shifts)) % ring.m
        basis = {kk: cc for (kk, _, _), cc in ring.root(k).terms.items()}
        if basis.keys() != coeff.keys():
            continue
        ratio = Fraction(coeff[k0]) / basis[k0]
        if all(Fraction(coeff[b]) == ratio * basis[b] for b in basis):
            return ratio, k, y, e
    raise NotAMonomial(f"{x} is not a scaled root of unity")


@dataclass(frozen=True)
class GammaMonomial:
    """u * q^(alpha - beta*s), u a root of unity stored as an exponent of zeta_m."""

    ring: CycloRing
    u_exp: int
    alpha: Fraction
    beta: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "u_exp", self.u_exp % self.ring.m)
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if (2 * self.alpha).denominator != 1:
            raise CycloError("alpha must be a half-integer")

    @property
    def u(self) -> CycloVal:
        return self.ring.root(self.u_exp)

    def to_cyclo(self) -> CycloVal:
        return self.ring.monomial(self.u_exp, int(2 * self.alpha), self.beta)

    def exponent_at(self, s) -> Fraction:
        return self.alpha - self.beta * Fraction(s)

    def eval_at(self, s) -> CycloVal:
        e = self.exponent_at(s)
        if (2 * e).denominator != 1:
            raise CycloError(f"q^{e} is not expressible with Y = q^(1/2)")
        return self.ring.monomial(self.u_exp, int(2 * e), 0)

    def is_one_at(self, s) -> bool:
        return self.u_exp == 0 and self.exponent_at(s) == 0

    def __mul__(self, other: GammaMonomial) -> GammaMonomial:
        return GammaMonomial(self.ring, self.u_exp + other.u_exp,
                             self.alpha + other.alpha, self.beta + other.beta)

    def value_str(self, s) -> str:
        """Readable value at s: the root as z^k (z = zeta_m) times a power of q."""
        m = self.ring.m
        k = self.u_exp
        root = "1" if k == 0 else "-1" if 2 * k == m else f"z^{k}"
        e = self.exponent_at(s)
        if e == 0:
            return root
        return f"{root}*q^{e}" if root != "1" else f"q^{e}"

    def describe(self) -> str:
        return f"z^{self.u_exp} * q^({self.alpha} - {self.beta}s)"


def as_gamma_monomial(x: CycloVal) -> GammaMonomial:
    c, k, y, e = monomial_parts(x)
    ring = x.ring
    if c < 0:
        if ring.m % 2:
            raise NotAMonomial("-1 is not a root of unity of odd order")
        c = -c
        k += ring.m // 2
    a = _log_exact(c, ring.q)
    if a is None:
        raise NotAMonomial(f"coefficient {c} is not a power of q={ring.q}")
    return GammaMonomial(ring, k, Fraction(a) + Fraction(y, 2), e)


def _log_exact(c: Fraction, q: int) -> int | None:
    num, den = c.numerator, c.denominator
    if den == 1:
        a = 0
        while num % q == 0 and num > 1:
            num //= q
            a += 1
        return a if num == 1 else None
    if num != 1:
        return None
    a = 0
    while den % q == 0 and den > 1:
        den //= q
        a -= 1
    return a if den == 1 else None


def eval_gamma_at(g: GammaMonomial, s) -> CycloVal:
    return g.eval_at(s)
