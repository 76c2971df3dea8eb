"""Brute-force GL(2) oracle: Whittaker functions of simple supercuspidals,
Rankin-Selberg integrals as exact finite sums, and gamma factors read off
the functional equation.

The Whittaker function of pi_(v, phi, zeta) is supported on N * J_v, where
J_v is generated by beta_v = [[0, (v w)^-1], [1, 0]], the scalar units and
U^1 (diagonal in 1+P, upper right in O, lower left in P).  On
g = u * beta_v^k * y * z it equals psi(u_12) zeta^k phi(y) psi((v w)^-1 z_21 + z_12).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cyclo import CycloVal, GammaMonomial, NotAMonomial, as_gamma_monomial, monomial_parts
from .lf import LocalField, MultChar, PrecisionError, Series, leading_parts, units_mod
from .ssc import SSCTriple, _phi_exp, _zeta_exp

DEFAULT_SHELLS = 6
DEFAULT_LEVEL = 3
PLAIN = "plain"
TILDE = "tilde"


class SupportNotExhausted(RuntimeError):
    """The outermost valuation shell of an integral has nonzero contribution."""


class ZeroDenominator(ArithmeticError):
    """No translate with an invertible Psi was found."""


class UnstableIntegral(RuntimeError):
    """An integrand table changed when the precision was raised."""


@dataclass(frozen=True)
class Mat2:
    a: Series
    b: Series
    c: Series
    d: Series

    @staticmethod
    def identity(lf: LocalField) -> Mat2:
        return Mat2(lf.one, lf.zero, lf.zero, lf.one)

    @staticmethod
    def w2(lf: LocalField) -> Mat2:
        return Mat2(lf.zero, lf.one, lf.one, lf.zero)

    @staticmethod
    def diag(x: Series, y: Series) -> Mat2:
        return Mat2(x, x.lf.zero, x.lf.zero, y)

    @staticmethod
    def upper(x: Series) -> Mat2:
        lf = x.lf
        return Mat2(lf.one, x, lf.zero, lf.one)

    @staticmethod
    def lower(x: Series) -> Mat2:
        lf = x.lf
        return Mat2(lf.one, lf.zero, x, lf.one)

    def __mul__(self, o: Mat2) -> Mat2:
        return Mat2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                    self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def det(self) -> Series:
        return self.a * self.d - self.b * self.c

    def transpose(self) -> Mat2:
        return Mat2(self.a, self.c, self.b, self.d)

    def inverse(self) -> Mat2:
        dinv = self.det().inverse()
        return Mat2(self.d * dinv, -self.b * dinv, -self.c * dinv, self.a * dinv)

    def entries(self) -> tuple[Series, Series, Series, Series]:
        return (self.a, self.b, self.c, self.d)


def beta(lf: LocalField, v: int) -> Mat2:
    return Mat2(lf.zero, lf.monomial(lf.kE.inv(v), -1), lf.one, lf.zero)


def alpha(lf: LocalField, c: int) -> Mat2:
    """[[1, -c w^-1], [0, 1]] with c the Teichmueller lift of a residue."""
    return Mat2.upper(-lf.monomial(c, -1))


@dataclass(frozen=True)
class WhittakerSpec:
    triple: SSCTriple
    lf: LocalField

    def __post_init__(self) -> None:
        if self.triple.n != 2:
            raise ValueError("the Whittaker oracle is implemented for GL(2) only")


def coset_data(lf: LocalField, v: int, g: Mat2,
               det: Series | None = None) -> tuple[int, int, int] | None:
    """Triple-independent part of W at g: (k, y, psi exponent), or None off the support.

    The value is then zeta^k phi(y) zeta_m^(psi exponent).  ``det`` may be
    supplied when the caller already knows it.
    """
    A, B, C, D = g.entries()
    kE = lf.kE
    if det is None:
        det = g.det()
    if det.is_zero():
        raise PrecisionError("determinant vanishes at the tracked precision")
    if not valuations_admissible(C, D, det):
        return None
    k = -det.val
    j = k // 2  # floor division, valid for negative k as well
    psi = lf.psi
    if k % 2 == 0:
        # s g = u y z with s = (v w)^j
        if det.lead != (2 * D.lead) % (kE.q - 1):
            return None
        y = (v * j + D.lead) % (kE.q - 1)
        x = B * D.inverse()
        e = psi.exp(x)
        if not C.is_zero():
            # psi((v w)^-1 s C / y), s = (v w)^j
            t = C.shift(j - 1).scale((v * (j - 1) - y) % (kE.q - 1))
            e += psi.exp(t)
        return k, y, e % lf.m
    # s g = u beta y z with s = (v w)^j
    if (kE.neg(v) + det.lead) % (kE.q - 1) != (2 * C.lead) % (kE.q - 1):
        return None
    y = (v * j + C.lead) % (kE.q - 1)
    x = A * C.inverse()
    e = psi.exp(x)
    if not D.is_zero():
        t = D.shift(j).scale((v * j - y) % (kE.q - 1))
        e += psi.exp(t)
    return k, y, e % lf.m


def valuations_admissible(C: Series, D: Series, det: Series) -> bool:
    """The valuation part of membership in N * J_v for a matrix with bottom row (C, D).

    With k = -val(det) = 2j (+1), the bottom row must be (P^(1-j), unit * w^-j)
    for even k and (unit * w^-j, P^-j) for odd k.
    """
    k = -det.val
    j = k // 2
    if k % 2 == 0:
        return not D.is_zero() and D.val + j == 0 and C.in_ideal(1 - j)
    return not C.is_zero() and C.val + j == 0 and D.in_ideal(-j)


def whittaker_exp(W: WhittakerSpec, g: Mat2) -> int | None:
    """Exponent of zeta_m for W(g), or None where W vanishes."""
    lf = W.lf
    data = coset_data(lf, W.triple.v, g)
    if data is None:
        return None
    k, y, e = data
    t = W.triple
    return (e + k * _zeta_exp(lf, t.zeta) + _phi_exp(lf, t.phi, y)) % lf.m


def whittaker_eval(W: WhittakerSpec, g: Mat2) -> CycloVal:
    e = whittaker_exp(W, g)
    return W.lf.ring.zero if e is None else W.lf.ring.root(e)


def tilde_matrix(g: Mat2) -> Mat2:
    """w_2 * transpose(g)^-1."""
    return Mat2.w2(g.a.lf) * g.transpose().inverse()


def whittaker_tilde(W: WhittakerSpec, g: Mat2) -> CycloVal:
    return whittaker_eval(W, tilde_matrix(g))


# -- integrals ---------------------------------------------------------------

def _integrand_matrix(lf: LocalField, h: Series, translate: Mat2, mode: str,
                      tdet: Series) -> tuple[Mat2, Series]:
    """The matrix fed to W in the integrand, together with its determinant."""
    T = translate
    if mode == PLAIN:
        return Mat2(h * T.a, h * T.b, T.c, T.d), h * tdet
    if mode == TILDE:
        # w_2 diag(h^-1, 1) T
        hinv = h.inverse()
        return Mat2(T.c, T.d, hinv * T.a, hinv * T.b), -(hinv * tdet)
    raise ValueError(f"unknown integral mode {mode!r}")


def _unit_parts(lf: LocalField, level: int) -> list[tuple[Series, tuple[int, int]]]:
    return [(u, leading_parts(u)[1:]) for u in units_mod(lf, level)]


_unit_cache: dict = {}


def _units(lf: LocalField, level: int):
    key = (lf.key(), level)
    if key not in _unit_cache:
        _unit_cache[key] = _unit_parts(lf, level)
    return _unit_cache[key]


@lru_cache(maxsize=4096)
def _raw_table(lf: LocalField, v: int, translate: Mat2, mode: str, shells: int,
               level: int) -> tuple[tuple[tuple[int, int, int, int, int, int], int], ...]:
    """Grouped nonzero integrand data: ((val, lead, x1, k, y, psi_exp), multiplicity)."""
    counts: Counter = Counter()
    tdet = translate.det()
    units = _units(lf, level)
    for val in range(-shells, shells + 1):
        # entries are products with h, so their valuations do not depend on the unit
        g, det = _integrand_matrix(lf, units[0][0].shift(val), translate, mode, tdet)
        if not valuations_admissible(g.c, g.d, det):
            continue
        for u, (lead, x1) in units:
            h = u.shift(val)
            g, det = _integrand_matrix(lf, h, translate, mode, tdet)
            data = coset_data(lf, v, g, det)
            if data is None:
                continue
            if abs(val) == shells:
                raise SupportNotExhausted(
                    f"integrand is nonzero on the boundary shell val={val}; enlarge the shell window")
            counts[(val, lead, x1, *data)] += 1
    return tuple(sorted(counts.items()))


def _lift_translate(translate: Mat2, lf: LocalField) -> Mat2:
    return Mat2(*(Series(lf, e.val, e.coeffs, e.prec) for e in translate.entries()))


def integrand_table(lf: LocalField, v: int, translate: Mat2, mode: str,
                    shells: int = DEFAULT_SHELLS, level: int = DEFAULT_LEVEL,
                    stability_check: bool = True):
    """Integrand table at precision N, compared against a rebuild at N + 2."""
    table = _raw_table(lf, v, translate, mode, shells, level)
    key = (lf, v, translate, mode, shells, level)
    if stability_check and key not in _stable:
        hi = lf.with_precision(lf.precision + 2)
        other = _raw_table(hi, v, _lift_translate(translate, hi), mode, shells, level)
        if other != table:
            raise UnstableIntegral(f"integrand table for v={v} changes between precision "
                                   f"{lf.precision} and {hi.precision}")
        _stable.add(key)
    return table


_stable: set = set()


@lru_cache(maxsize=1 << 16)
def _grouped_counts(table, chi: MultChar, mode: str):
    """Integrand exponent counts grouped by the (k, y) labels that carry the triple."""
    sign = 1 if mode == PLAIN else -1
    m = chi.lf.m
    groups: dict = {}
    for (val, lead, x1, k, y, e), count in table:
        ex = (e + chi.exp_parts(val, lead, x1)) % m
        bucket = groups.setdefault((k, y), Counter())
        bucket[(ex, sign * val, sign * val)] += count
    return tuple((ky, tuple(sorted(b.items()))) for ky, b in sorted(groups.items()))


@lru_cache(maxsize=4096)
def integral_psi(W: WhittakerSpec, translate: Mat2, chi: MultChar, mode: str = PLAIN,
                 shells: int = DEFAULT_SHELLS, level: int = DEFAULT_LEVEL,
                 stability_check: bool = True, mass: Fraction = Fraction(1)) -> CycloVal:
    """Psi(s; rho(T) W, chi) in plain mode; Psi~(1 - s; rho(w_21) (rho(T) W)~, chi) in tilde mode.

    The measure gives 1 + P_E mass ``mass`` (default 1), hence each coset of
    1 + P_E^level mass ``mass`` * q_E^-(level - 1).  In the result, Y^a X^b
    stands for q_E^(a/2 - b s) with the variable s of the integral.
    """
    lf = W.lf
    t = W.triple
    table = integrand_table(lf, t.v, translate, mode, shells, level, stability_check)
    ze = _zeta_exp(lf, t.zeta)
    m = lf.m
    acc: Counter = Counter()
    for (k, y), bucket in _grouped_counts(table, chi, mode):
        shift = k * ze + _phi_exp(lf, t.phi, y)
        for (ex, a, b), count in bucket:
            acc[((ex + shift) % m, a, b)] += count
    scale = mass / Fraction(lf.qE) ** (level - 1)
    return lf.ring.from_counts(dict(acc), scale)


def default_translates(lf: LocalField, chi: MultChar) -> list[Mat2]:
    out = [Mat2.identity(lf)]
    if chi.depth == 1:
        out.append(alpha(lf, chi.c))
    return out


def extra_translates(lf: LocalField, chi: MultChar) -> list[Mat2]:
    """Further right translates used to test that gamma does not depend on the choice."""
    w = lf.varpi(1)
    base = alpha(lf, chi.c) if chi.depth == 1 else alpha(lf, 0)
    return [
        base,
        Mat2.diag(lf.teich(1), lf.one) * base,
        base * Mat2.lower(w),
        base * Mat2.diag(lf.one + w, lf.one),
    ]


def gamma_for_translate(W: WhittakerSpec, chi: MultChar, translate: Mat2,
                        **kw) -> GammaMonomial | None:
    """gamma from one translate, or None when Psi is not an invertible monomial there."""
    lf = W.lf
    psi_val = integral_psi(W, translate, chi, PLAIN, **kw)
    if psi_val.is_zero:
        return None
    try:
        monomial_parts(psi_val)  # any nonzero rational multiple is invertible
    except NotAMonomial:
        return None
    tilde = integral_psi(W, translate, chi.inverse(), TILDE, **kw)
    sign = lf.ring.root(chi.exp(lf.integer(-1)) * (W.triple.n - 1))
    return as_gamma_monomial(tilde / (sign * psi_val))


def gamma_from_functional_equation(W: WhittakerSpec, chi: MultChar,
                                   translates: list[Mat2] | None = None,
                                   **kw) -> GammaMonomial:
    lf = W.lf
    for T in translates if translates is not None else default_translates(lf, chi):
        g = gamma_for_translate(W, chi, T, **kw)
        if g is not None:
            return g
    raise ZeroDenominator(f"Psi vanishes or is not invertible for every translate ({chi!r})")
