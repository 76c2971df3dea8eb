"""Parameters (v, phi, zeta) of simple supercuspidals of GL(n, E) and their invariants.

A triple stores v as a raw log in k_E^x, phi as a residue character index
(phi(g^a) = zeta_(q_E-1)^(phi a)) and zeta as an exponent of a primitive
Z-th root of unity.  Isomorphism of representations is triple equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .cyclo import GammaMonomial
from .ff import ZERO
from .lf import LocalField, MultChar, enumerate_chars


@dataclass(frozen=True, order=True)
class SSCTriple:
    n: int
    v: int
    phi: int
    zeta: int

    def normalized(self, lf: LocalField) -> SSCTriple:
        return SSCTriple(self.n, self.v % (lf.qE - 1), self.phi % (lf.qE - 1),
                         self.zeta % lf.zeta_order)

    def to_json(self) -> dict:
        return {"n": self.n, "v": self.v, "phi": self.phi, "zeta": self.zeta}


def make_triple(lf: LocalField, n: int, v: int, phi: int, zeta: int) -> SSCTriple:
    if n < 2:
        raise ValueError("n must be at least 2")
    if v < 0:
        raise ValueError("v must be a unit (raw log >= 0)")
    return SSCTriple(n, v, phi, zeta).normalized(lf)


def all_triples(lf: LocalField, n: int, zeta_order: int | None = None):
    """Every triple with zeta of order dividing ``zeta_order`` (default: the session bound)."""
    Z = lf.zeta_order
    zo = Z if zeta_order is None else zeta_order
    if Z % zo:
        raise ValueError(f"zeta order {zo} does not divide the session bound {Z}")
    step = Z // zo
    for v, phi, k in product(range(lf.qE - 1), range(lf.qE - 1), range(zo)):
        yield SSCTriple(n, v, phi, k * step)


# -- helpers on exponents ------------------------------------------------------

def _phi_exp(lf: LocalField, phi: int, a: int) -> int:
    return phi * a * (lf.m // (lf.qE - 1)) % lf.m


def _zeta_exp(lf: LocalField, zeta: int) -> int:
    return zeta * (lf.m // lf.zeta_order) % lf.m


def phi_trivial_on_kF(lf: LocalField, phi: int) -> bool:
    return _phi_exp(lf, phi, lf.kF_generator()) == 0


def central_char_at_varpi_exp(lf: LocalField, t: SSCTriple) -> int:
    """omega(varpi_E) = (zeta^n phi(v))^-1, as an exponent of zeta_m."""
    return -(t.n * _zeta_exp(lf, t.zeta) + _phi_exp(lf, t.phi, t.v)) % lf.m


def central_char(lf: LocalField, t: SSCTriple) -> MultChar:
    """omega as a tame character of E^x: phi on units, the formula above at varpi_E."""
    return MultChar(lf, 0, t.phi, central_char_at_varpi_exp(lf, t))


def central_char_trivial_on_F(t: SSCTriple, lf: LocalField) -> bool:
    omega = central_char(lf, t)
    return phi_trivial_on_kF(lf, t.phi) and omega.exp(lf.varpi_F) == 0


# -- parameter maps ------------------------------------------------------------

def contragredient(t: SSCTriple, lf: LocalField | None = None) -> SSCTriple:
    v = t.v
    if t.n % 2:
        if lf is None:
            raise ValueError("negating v needs the residue field")
        v = lf.kE.neg(v)
    out = SSCTriple(t.n, v, -t.phi, -t.zeta)
    return out.normalized(lf) if lf is not None else out


def galois_twist(t: SSCTriple, lf: LocalField) -> SSCTriple:
    """(sigma(v), phi o sigma, zeta); sigma acts on residues through Frobenius or trivially."""
    if lf.unramified:
        return SSCTriple(t.n, lf.sigma_residue(t.v), t.phi * lf.qF, t.zeta).normalized(lf)
    return t.normalized(lf)


def is_sigma_self_dual(t: SSCTriple, lf: LocalField) -> bool:
    return contragredient(t, lf) == galois_twist(t, lf)


def is_distinguished(t: SSCTriple, lf: LocalField) -> bool:
    t = t.normalized(lf)
    return (t.n % 2 == 0 and lf.unramified and lf.in_kF(t.v)
            and phi_trivial_on_kF(lf, t.phi) and t.zeta == 0)


def self_dual_conditions(t: SSCTriple, lf: LocalField) -> bool:
    """The explicit classification of sigma-self-dual triples, stated without the maps.

    phi must be trivial on the image of the residual norm, zeta must be +-1;
    odd n additionally needs E/F unramified and v outside k_F, even n needs v in k_F.
    """
    t = t.normalized(lf)
    norm_image = lf.residue_norm(1)  # generates the image of the residual norm
    phi_ok = _phi_exp(lf, t.phi, norm_image) == 0
    zeta_ok = (2 * t.zeta) % lf.zeta_order == 0
    if t.n % 2:
        v_ok = lf.unramified and not lf.in_kF(t.v)
    else:
        v_ok = lf.in_kF(t.v)
    return v_ok and phi_ok and zeta_ok


# -- gamma factors -------------------------------------------------------------

def gamma_tame(t: SSCTriple, lam: MultChar, lf: LocalField) -> GammaMonomial:
    """zeta^-1 lambda(-1)^(n-1) lambda(v varpi_E) q^(1/2 - s)."""
    if lam.depth != 0:
        raise ValueError("gamma_tame needs a tame character")
    minus_one = lf.kE.from_int(-1)
    u = (-_zeta_exp(lf, t.zeta)
         + (t.n - 1) * lam.exp_parts(0, minus_one, ZERO)
         + lam.exp_parts(1, t.v, ZERO))
    return GammaMonomial(lf.ring, u, Fraction(1, 2), 1)


def _depth_one_check(t: SSCTriple, lam: MultChar, lf: LocalField) -> None:
    if t.n != 2:
        raise ValueError("the depth-one formula is for GL(2)")
    if lam.depth != 1:
        raise ValueError("the depth-one formula needs a depth-one character")
    if lf.precision < 4:
        raise ValueError("the depth-one formula needs precision >= 4")


def _depth_one_parts(t: SSCTriple, lam: MultChar, lf: LocalField, sign: int) -> int:
    """omega(c^-1 w) * lambda(sign c^-2 w^2 (1 - (c^2 v)^-1 w)), as an exponent.

    Both arguments are read off through their leading parts: c^-1 w has
    valuation 1 and residue c^-1; the second has valuation 2, residue
    sign * c^-2 and next relative coefficient -(c^2 v)^-1.
    """
    kE = lf.kE
    c = lam.c
    cinv = kE.inv(c)
    lead = kE.mul(cinv, cinv)
    if sign < 0:
        lead = kE.neg(lead)
    x1 = kE.neg(kE.inv(kE.mul(kE.mul(c, c), t.v)))
    return central_char(lf, t).exp_parts(1, cinv, ZERO) + lam.exp_parts(2, lead, x1)


def gamma_depth_one_gl2(t: SSCTriple, lam: MultChar, lf: LocalField) -> GammaMonomial:
    """omega(c^-1 w) lambda(c^-2 w^2 (1 - (c^2 v)^-1 w)) psi(2 c w^-1) q^(1 - 2s)."""
    _depth_one_check(t, lam, lf)
    two_c = lf.kE.mul(lf.kE.from_int(2), lam.c)
    # psi of a valuation -1 monomial only sees its residue
    u = _depth_one_parts(t, lam, lf, 1) + lf.psi.residue_exp(two_c)
    return GammaMonomial(lf.ring, u, Fraction(1), 2)


def zeta_integral_depth_one(lam: MultChar, lf: LocalField) -> GammaMonomial:
    """Closed form of Psi(s; rho(alpha) W, lambda) = psi(-c w^-1), alpha = [[1, -c w^-1], [0, 1]]."""
    return GammaMonomial(lf.ring, lf.psi.residue_exp(lf.kE.neg(lam.c)), Fraction(0), 0)


def dual_zeta_integral_depth_one(t: SSCTriple, lam: MultChar, lf: LocalField) -> GammaMonomial:
    """Closed form of the dual integral at 1 - s against lambda^-1:
    omega(c^-1 w) lambda(-c^-2 w^2 (1 - (c^2 v)^-1 w)) psi(c w^-1) q^(1 - 2s)."""
    _depth_one_check(t, lam, lf)
    u = _depth_one_parts(t, lam, lf, -1) + lf.psi.residue_exp(lam.c)
    return GammaMonomial(lf.ring, u, Fraction(1), 2)


def gamma_condition_tame(t: SSCTriple, lf: LocalField) -> bool:
    """gamma(1/2, pi x lambda) = 1 for every tame lambda trivial on F^x."""
    return all(gamma_tame(t, lam, lf).is_one_at(Fraction(1, 2))
               for lam in enumerate_chars(lf, 0, trivial_on_F=True))


def gamma_table_rows(t: SSCTriple, lf: LocalField, depth: int, trivial_on_F: bool = True):
    """(character, monomial) pairs for every enumerated character of the given depth."""
    if depth == 0:
        fn = gamma_tame
    elif depth == 1:
        fn = gamma_depth_one_gl2
    else:
        raise ValueError("depth must be 0 or 1")
    return [(lam, fn(t, lam, lf)) for lam in enumerate_chars(lf, depth, trivial_on_F)]
