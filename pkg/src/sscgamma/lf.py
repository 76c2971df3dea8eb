"""Truncated equal-characteristic local fields E/F and their characters.

F = k_F((t)).  E is either k_E((t)) with k_E/k_F quadratic (unramified), or
k_F((u)) with u^2 = eps * t (ramified).  Series are written in the uniformizer
of E, so ``Series`` coefficients are raw logs in the residue field of E.

A series carries an absolute precision: it is known modulo P_E^prec.  Exact
Laurent polynomials (prec is None) stay exact under ring operations; only
inversion of a non-monomial truncates, keeping ``precision`` relative terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product

from .cyclo import CycloRing, CycloVal
from .ff import ZERO, FieldTable, FqElem, make_field, make_quadratic_extension, solve_trace_zero


class PrecisionError(ArithmeticError):
    """A result depends on coefficients beyond the tracked window."""


class RamifiedPsiError(ValueError):
    """The ramified model has no additive character of conductor P_E trivial on F."""


UNRAMIFIED = "unramified"
RAMIFIED = "ramified"


class LocalField:
    """Configuration of E/F: residue fields, uniformizers, psi_E, coefficient ring."""

    def __init__(self, p: int, f: int = 1, kind: str = UNRAMIFIED, epsilon: int = 0,
                 precision: int = 6, zeta_order: int = 24) -> None:
        if kind not in (UNRAMIFIED, RAMIFIED):
            raise ValueError(f"unknown extension kind {kind!r}")
        if zeta_order < 2 or zeta_order % 2:
            raise ValueError("zeta_order must be a positive even integer")
        self.kF = make_field(p, f)
        self.kind = kind
        if kind == UNRAMIFIED:
            if precision < 1:
                raise ValueError("precision must be positive")
            self.kE = make_quadratic_extension(self.kF)
            self.epsilon = None
        else:
            if precision < 4:
                raise ValueError("the ramified model needs precision >= 4")
            self.kE = self.kF
            if not 0 <= epsilon < self.kF.q - 1:
                raise ValueError("epsilon is the discrete log of a unit of k_F")
            self.epsilon = epsilon
        self.p = p
        self.f = f
        self.precision = precision
        self.zeta_order = zeta_order
        self.qF = self.kF.q
        self.qE = self.kE.q
        self.m = math.lcm(p, self.qE - 1, zeta_order)
        self.ring = CycloRing(self.m, self.qE)
        self.psi = AddCharPsi.standard(self)

    @property
    def unramified(self) -> bool:
        return self.kind == UNRAMIFIED

    def with_precision(self, precision: int) -> LocalField:
        return _cached_field(self.p, self.f, self.kind, self.epsilon or 0, precision, self.zeta_order)

    def key(self) -> tuple:
        return (self.p, self.f, self.kind, self.epsilon, self.precision, self.zeta_order)

    def __repr__(self) -> str:
        eps = "" if self.unramified else f", eps=g^{self.epsilon}"
        return f"LocalField(q_F={self.qF}, {self.kind}{eps}, N={self.precision}, Z={self.zeta_order})"

    # residue-level helpers
    def in_kF(self, a: int) -> bool:
        """Is the residue a (raw log in k_E) in k_F?"""
        return True if not self.unramified else self.kE.in_subfield(a)

    def from_kF(self, b: int) -> int:
        return self.kE.embed(b) if self.unramified else b

    def sigma_residue(self, a: int) -> int:
        return self.kE.frob_raw(a) if self.unramified else a

    def residue_norm(self, a: int) -> int:
        """Reduction of N_{E/F} on units: a^(1+q_F) unramified, a^2 ramified."""
        return self.kE.mul(a, self.sigma_residue(a))

    def kF_generator(self) -> int:
        return self.from_kF(1)

    def require_psi_trivial_on_F(self) -> None:
        if not self.psi.trivial_on_F:
            raise RamifiedPsiError(
                "the ramified model carries psi_E of conductor P_E that is not trivial on F")

    # series constructors
    def series(self, coeffs, start: int = 0, prec: int | None = None) -> Series:
        return Series.make(self, list(coeffs), start, prec)

    @cached_property
    def zero(self) -> Series:
        return Series(self, None, (), None)

    @cached_property
    def one(self) -> Series:
        return Series(self, 0, (0,), None)

    def monomial(self, a: int, k: int = 0) -> Series:
        """The exact element teich(a) * varpi_E^k (a a raw residue log)."""
        if a < 0:
            return self.zero
        return Series(self, k, (a,), None)

    def teich(self, a: int | FqElem) -> Series:
        if isinstance(a, FqElem):
            a = a.log
        return self.monomial(a, 0)

    def integer(self, n: int) -> Series:
        return self.monomial(self.kE.from_int(n), 0)

    def varpi(self, k: int = 1) -> Series:
        return self.monomial(0, k)

    @cached_property
    def varpi_F(self) -> Series:
        if self.unramified:
            return self.varpi(1)
        # t = eps^-1 u^2
        return self.monomial(self.kE.inv(self.epsilon), 2)


@lru_cache(maxsize=None)
def _cached_field(p, f, kind, epsilon, precision, zeta_order) -> LocalField:
    return LocalField(p, f, kind, epsilon, precision, zeta_order)


def make_local_field(p: int, f: int = 1, kind: str = UNRAMIFIED, epsilon: int = 0,
                     precision: int = 6, zeta_order: int = 24) -> LocalField:
    """Shared (cached) LocalField; instances are immutable after construction."""
    return _cached_field(p, f, kind, epsilon, precision, zeta_order)


class Series:
    """Element of E known modulo P_E^prec (prec None: exact Laurent polynomial)."""

    __slots__ = ("lf", "val", "coeffs", "prec")

    def __init__(self, lf: LocalField, val: int | None, coeffs: tuple[int, ...], prec: int | None):
        self.lf = lf
        self.val = val
        self.coeffs = coeffs
        self.prec = prec

    @staticmethod
    def make(lf: LocalField, coeffs: list[int], start: int, prec: int | None) -> Series:
        if prec is not None:
            coeffs = coeffs[: max(0, prec - start)]
        i = 0
        while i < len(coeffs) and coeffs[i] < 0:
            i += 1
        if i == len(coeffs):
            return Series(lf, None, (), prec)
        coeffs = coeffs[i:]
        start += i
        if prec is None:
            j = len(coeffs)
            while coeffs[j - 1] < 0:
                j -= 1
            coeffs = coeffs[:j]
        return Series(lf, start, tuple(coeffs), prec)

    # basic queries
    @property
    def exact(self) -> bool:
        return self.prec is None

    def is_zero(self) -> bool:
        """True for a zero known to the tracked precision."""
        return self.val is None

    def valuation(self) -> int:
        if self.val is None:
            raise PrecisionError("valuation of a (truncated) zero")
        return self.val

    @property
    def lead(self) -> int:
        if self.val is None:
            raise PrecisionError("leading coefficient of a (truncated) zero")
        return self.coeffs[0]

    def coeff(self, i: int) -> int:
        if self.prec is not None and i >= self.prec:
            raise PrecisionError(f"coefficient {i} beyond precision {self.prec}")
        if self.val is None or i < self.val or i >= self.val + len(self.coeffs):
            return ZERO
        return self.coeffs[i - self.val]

    def rel_prec(self) -> int | None:
        if self.prec is None:
            return None
        return self.prec - (self.val if self.val is not None else self.prec)

    def in_ideal(self, n: int) -> bool:
        """Membership in P_E^n, refusing to guess past the precision window."""
        if self.val is not None:
            return self.val >= n
        if self.prec is None or self.prec >= n:
            return True
        raise PrecisionError(f"membership in P^{n} undetermined at precision {self.prec}")

    def __repr__(self) -> str:
        p = "exact" if self.prec is None else f"O(w^{self.prec})"
        return f"Series(val={self.val}, coeffs={self.coeffs}, {p})"

    def _key(self):
        return (self.val, self.coeffs, self.prec)

    def __eq__(self, other) -> bool:
        return isinstance(other, Series) and other.lf is self.lf and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    # arithmetic
    def __add__(self, other: Series) -> Series:
        lf = self.lf
        prec = _minprec(self.prec, other.prec)
        if self.val is None and other.val is None:
            return Series(lf, None, (), prec)
        lo = min(v for v in (self.val, other.val) if v is not None)
        hi = max(s.val + len(s.coeffs) for s in (self, other) if s.val is not None)
        if prec is not None:
            hi = min(hi, prec)
        if hi <= lo:
            return Series(lf, None, (), prec)
        out = [ZERO] * (hi - lo)
        add = lf.kE.add
        for s in (self, other):
            if s.val is None:
                continue
            off = s.val - lo
            for i, c in enumerate(s.coeffs):
                j = off + i
                if j >= len(out):
                    break
                out[j] = add(out[j], c)
        return Series.make(lf, out, lo, prec)

    def __neg__(self) -> Series:
        neg = self.lf.kE.neg
        return Series(self.lf, self.val, tuple(neg(c) for c in self.coeffs), self.prec)

    def __sub__(self, other: Series) -> Series:
        return self + (-other)

    def __mul__(self, other: Series) -> Series:
        lf = self.lf
        a, b = self, other
        if a.val is None or b.val is None:
            if (a.val is None and a.prec is None) or (b.val is None and b.prec is None):
                return lf.zero
            # a truncated zero times something
            z, o = (a, b) if a.val is None else (b, a)
            if o.val is None:
                return Series(lf, None, (), z.prec + o.prec)
            return Series(lf, None, (), z.prec + o.val)
        v = a.val + b.val
        prec = _minprec(None if a.prec is None else a.prec + b.val,
                        None if b.prec is None else b.prec + a.val)
        n = len(a.coeffs) + len(b.coeffs) - 1
        if prec is not None:
            n = min(n, prec - v)
        if len(a.coeffs) == 1 or len(b.coeffs) == 1:
            if len(a.coeffs) != 1:
                a, b = b, a
            c0 = a.coeffs[0]
            out = [c + c0 if c >= 0 else ZERO for c in b.coeffs[:n]]
            order = lf.kE.q - 1
            out = [c % order if c >= 0 else ZERO for c in out]
            return Series.make(lf, out, v, prec)
        mul, add = lf.kE.mul, lf.kE.add
        out = [ZERO] * n
        for i, x in enumerate(a.coeffs):
            if i >= n:
                break
            if x < 0:
                continue
            for j, y in enumerate(b.coeffs):
                if i + j >= n:
                    break
                out[i + j] = add(out[i + j], mul(x, y))
        return Series.make(lf, out, v, prec)

    def scale(self, a: int) -> Series:
        """Multiply by the residue a (raw log), i.e. by its Teichmueller lift."""
        return self * self.lf.monomial(a, 0)

    def shift(self, k: int) -> Series:
        """Multiply by varpi_E^k."""
        if self.val is None:
            return Series(self.lf, None, (), None if self.prec is None else self.prec + k)
        return Series(self.lf, self.val + k, self.coeffs,
                      None if self.prec is None else self.prec + k)

    def inverse(self) -> Series:
        lf = self.lf
        if self.val is None:
            raise ZeroDivisionError("inverse of a (truncated) zero")
        kE = lf.kE
        a0inv = kE.inv(self.coeffs[0])
        if self.prec is None and len(self.coeffs) == 1:
            return Series(lf, -self.val, (a0inv,), None)
        r = lf.precision if self.prec is None else self.prec - self.val
        a = [kE.mul(c, a0inv) for c in self.coeffs]  # normalized: a[0] = 1
        b = [0] + [ZERO] * (r - 1)
        for n in range(1, r):
            acc = ZERO
            for i in range(1, min(n, len(a) - 1) + 1):
                acc = kE.add(acc, kE.mul(a[i], b[n - i]))
            b[n] = kE.neg(acc)
        out = [kE.mul(c, a0inv) for c in b]
        return Series.make(lf, out, -self.val, -self.val + r)

    def __truediv__(self, other: Series) -> Series:
        return self * other.inverse()

    def __pow__(self, e: int) -> Series:
        if e < 0:
            return self.inverse() ** (-e)
        out = self.lf.one
        for _ in range(e):
            out = out * self
        return out

    def sigma(self) -> Series:
        """Galois conjugate: Frobenius on coefficients, or u -> -u."""
        lf = self.lf
        if self.val is None:
            return self
        if lf.unramified:
            fr = lf.kE.frob_raw
            return Series(lf, self.val, tuple(fr(c) for c in self.coeffs), self.prec)
        neg = lf.kE.neg
        out = tuple(neg(c) if (self.val + i) % 2 else c for i, c in enumerate(self.coeffs))
        return Series(lf, self.val, out, self.prec)

    def in_F(self) -> bool:
        """Membership in F on the tracked coefficients."""
        if self.val is None:
            return True
        lf = self.lf
        for i, c in enumerate(self.coeffs):
            if c < 0:
                continue
            if lf.unramified:
                if not lf.kE.in_subfield(c):
                    return False
            elif (self.val + i) % 2:
                return False
        return True


def _minprec(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def series_ops(x: Series, y: Series | None, op: str):
    """Dispatch form: op in {add, mul, inv, val, sigma}."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inverse()
    if op == "val":
        return x.valuation()
    if op == "sigma":
        return x.sigma()
    raise ValueError(f"unknown series operation {op!r}")


# -- additive character -------------------------------------------------------

@dataclass(frozen=True, eq=False)
class AddCharPsi:
    """psi_E(sum a_i w^i) = eta(sum_{i<=0} a_i), eta(a) = zeta_p^Tr(s a)."""

    lf: LocalField
    s: int
    trivial_on_F: bool

    @staticmethod
    def standard(lf: LocalField) -> AddCharPsi:
        if lf.unramified:
            return AddCharPsi(lf, solve_trace_zero(lf.kE).log, True)
        return AddCharPsi(lf, 0, False)

    def residue_exp(self, a: int) -> int:
        """Exponent of zeta_m for eta(a), a a raw residue log."""
        lf = self.lf
        return lf.kE.trace_to_prime(lf.kE.mul(self.s, a)) * (lf.m // lf.p)

    def exp(self, x: Series) -> int:
        if x.val is None:
            if x.prec is not None and x.prec < 1:
                raise PrecisionError("psi_E of a truncated zero with unknown constant term")
            return 0
        if x.val > 0:
            return 0
        if x.prec is not None and x.prec < 1:
            raise PrecisionError(f"psi_E needs the coefficients up to index 0; have prec {x.prec}")
        add = self.lf.kE.add
        acc = ZERO
        for i, c in enumerate(x.coeffs):
            if x.val + i > 0:
                break
            acc = add(acc, c)
        return self.residue_exp(acc)

    def __call__(self, x: Series) -> CycloVal:
        return self.lf.ring.root(self.exp(x))


def psi_eval(psi: AddCharPsi, x: Series) -> CycloVal:
    return psi(x)


# -- multiplicative characters -------------------------------------------------

@dataclass(frozen=True)
class MultChar:
    """Unitary quasi-character of E^x of depth 0 or 1.

    ``residue_index`` j gives phi(g^a) = zeta_(q_E-1)^(j a); ``pi_exp`` is the
    exponent of zeta_m for the value at varpi_E; ``c`` is the raw log of the
    residue of c_lambda (depth 1 only), with lambda(1 + w x) = psi_E(c x).
    """

    lf: LocalField
    depth: int
    residue_index: int
    pi_exp: int
    c: int | None = None

    def __post_init__(self) -> None:
        lf = self.lf
        object.__setattr__(self, "residue_index", self.residue_index % (lf.qE - 1))
        object.__setattr__(self, "pi_exp", self.pi_exp % lf.m)
        if self.depth not in (0, 1):
            raise ValueError("only depths 0 and 1 are modelled")
        if self.depth == 1 and (self.c is None or self.c < 0):
            raise ValueError("a depth-one character needs a nonzero c_lambda")
        if self.depth == 0 and self.c is not None:
            raise ValueError("a tame character carries no c_lambda")

    def residue_exp(self, a: int) -> int:
        """Exponent of phi_lambda(a) for a nonzero residue a."""
        lf = self.lf
        return self.residue_index * a * (lf.m // (lf.qE - 1))

    def exp(self, x: Series) -> int:
        if x.val is None:
            raise ZeroDivisionError("character evaluated at zero")
        if self.depth == 0:
            return self.exp_parts(x.val, x.coeffs[0], ZERO)
        return self.exp_parts(*leading_parts(x))

    def exp_parts(self, val: int, lead: int, x1: int) -> int:
        """Exponent at w^val * teich(lead) * (1 + w x1 + ...), x1 a raw residue log."""
        lf = self.lf
        e = val * self.pi_exp + self.residue_exp(lead)
        if self.depth == 1 and x1 >= 0:
            e += lf.psi.residue_exp(lf.kE.mul(self.c, x1))
        return e % lf.m

    def __call__(self, x: Series) -> CycloVal:
        return self.lf.ring.root(self.exp(x))

    def inverse(self) -> MultChar:
        c = None if self.c is None else self.lf.kE.neg(self.c)
        return MultChar(self.lf, self.depth, -self.residue_index, -self.pi_exp, c)

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "residue_index": self.residue_index,
            "value_at_uniformizer": self.pi_exp,
            "c_lambda": self.c,
        }

    def label(self) -> str:
        base = f"j{self.residue_index}_w{self.pi_exp}"
        return base if self.depth == 0 else f"{base}_c{self.c}"

    def __repr__(self) -> str:
        return f"MultChar(depth={self.depth}, {self.label()})"


def leading_parts(x: Series) -> tuple[int, int, int]:
    """(val, lead, x1) with x = w^val teich(lead) (1 + w x1 + O(w^2))."""
    if x.val is None:
        raise ZeroDivisionError("zero has no leading part")
    if x.prec is not None and x.prec < x.val + 2:
        raise PrecisionError("need two leading coefficients")
    kE = x.lf.kE
    a1 = x.coeffs[1] if len(x.coeffs) > 1 else ZERO
    return x.val, x.coeffs[0], kE.mul(a1, kE.inv(x.coeffs[0]))


def char_eval(lam: MultChar, x: Series) -> CycloVal:
    return lam(x)


def _F_test_elements(lf: LocalField, depth: int) -> list[Series]:
    """Generators of F^x modulo 1 + P_F^(depth+1), as elements of E."""
    tests = [lf.teich(lf.kF_generator()), lf.varpi_F]
    if depth >= 1:
        for b in range(lf.qF - 1):
            tests.append(lf.one + lf.varpi_F.scale(lf.from_kF(b)))
    return tests


@lru_cache(maxsize=None)
def _enumerate(lf: LocalField, depth: int, trivial_on_F: bool) -> tuple[MultChar, ...]:
    Z = lf.zeta_order
    cs = [None] if depth == 0 else list(range(lf.qE - 1))
    tests = _F_test_elements(lf, depth) if trivial_on_F else []
    out = []
    for j, w, c in product(range(lf.qE - 1), range(Z), cs):
        lam = MultChar(lf, depth, j, w * (lf.m // Z), c)
        if all(lam.exp(x) == 0 for x in tests):
            out.append(lam)
    return tuple(out)


def enumerate_chars(lf: LocalField, depth: int = 0, trivial_on_F: bool = False) -> list[MultChar]:
    """All unitary characters of the given depth with value at varpi_E in mu_Z.

    With ``trivial_on_F`` the list is complete among all unitary characters:
    triviality on F^x forces the value at the uniformizer into {1, -1}.
    """
    return list(_enumerate(lf, depth, trivial_on_F))


# -- coset transversals --------------------------------------------------------

def units_mod(lf: LocalField, k: int) -> list[Series]:
    """Transversal of O_E^x / (1 + P_E^k)."""
    _check_level(lf, k)
    q = lf.qE
    out = []
    digits = [ZERO] + list(range(q - 1))
    for a0 in range(q - 1):
        for rest in product(digits, repeat=k - 1):
            out.append(Series.make(lf, [a0, *rest], 0, None))
    return out


def one_plus_P_mod(lf: LocalField, k: int) -> list[Series]:
    """Transversal of (1 + P_E) / (1 + P_E^k)."""
    _check_level(lf, k)
    digits = [ZERO] + list(range(lf.qE - 1))
    return [Series.make(lf, [0, *rest], 0, None) for rest in product(digits, repeat=k - 1)]


def shell(lf: LocalField, val: int, k: int) -> list[Series]:
    """Transversal of varpi^val O_E^x / (1 + P_E^k)."""
    return [u.shift(val) for u in units_mod(lf, k)]


def _check_level(lf: LocalField, k: int) -> None:
    if not 1 <= k <= lf.precision:
        raise ValueError(f"level {k} outside [1, {lf.precision}]")


def coset_reps(lf: LocalField, shape: str, k: int, val: int = 0) -> list[Series]:
    if shape == "units_mod":
        return units_mod(lf, k)
    if shape == "one_plus_P_mod":
        return one_plus_P_mod(lf, k)
    if shape == "shell":
        return shell(lf, val, k)
    raise ValueError(f"unknown transversal shape {shape!r}")
