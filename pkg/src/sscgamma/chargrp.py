"""The finite group G = E^x / F^x (1 + P_E) and its character group.

Unramified: every class has a representative in the Teichmueller units, and
G is k_E^x / k_F^x, cyclic of order q_F + 1.  Ramified: the residue fields
agree, so only the parity of the valuation survives and G has order 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from .lf import LocalField, MultChar, Series


@dataclass(frozen=True)
class CyclicFactor:
    order: int
    generator: Series


class QuotientGroup:
    def __init__(self, lf: LocalField) -> None:
        self.lf = lf
        if lf.unramified:
            order = lf.qF + 1
            gen = lf.teich(0 if order == 1 else 1)
        else:
            order = 2
            gen = lf.varpi(1)
        self.factors = (CyclicFactor(order, gen),)
        self._verify_order()

    @property
    def order(self) -> int:
        out = 1
        for fac in self.factors:
            out *= fac.order
        return out

    def class_of(self, x: Series) -> int:
        """Normal form: the exponent of the generator representing x."""
        if x.is_zero():
            raise ZeroDivisionError("zero has no class in E^x")
        lf = self.lf
        if lf.unramified:
            # val is absorbed by varpi_F = varpi_E; k_F^x is the subgroup of logs divisible by q_F + 1
            return x.lead % (lf.qF + 1)
        # ramified: units and varpi_F (even valuation) lie in F^x (1 + P_E)
        return x.val % 2

    def is_identity(self, x: Series) -> bool:
        return self.class_of(x) == 0

    def element(self, j: int) -> Series:
        fac = self.factors[0]
        return fac.generator ** (j % fac.order)

    def _verify_order(self) -> None:
        """Count classes of a small window directly and compare with the formula."""
        lf = self.lf
        seen = set()
        for val in (0, 1):
            for a in range(lf.qE - 1):
                seen.add(self.class_of(lf.monomial(a, val)))
        if len(seen) != self.order:
            raise AssertionError(f"quotient has {len(seen)} classes, expected {self.order}")
        for x in (lf.varpi_F, lf.teich(lf.kF_generator())):
            if not self.is_identity(x):
                raise AssertionError("an element of F^x has a nontrivial class")

    @cached_property
    def dual(self) -> tuple[MultChar, ...]:
        lf = self.lf
        out = []
        for j in range(self.order):
            if lf.unramified:
                out.append(MultChar(lf, 0, j * (lf.qF - 1), 0))
            else:
                out.append(MultChar(lf, 0, 0, j * lf.m // 2))
        return tuple(out)

    def pairing_table(self) -> list[list[int]]:
        """Exponents (of zeta_m) of chi_i(generator^j)."""
        return [[chi.exp(self.element(j)) for j in range(self.order)] for chi in self.dual]

    def describe(self) -> dict:
        lf = self.lf
        return {
            "order": self.order,
            "factors": [
                {"order": fac.order, "generator": {"val": fac.generator.val,
                                                   "lead_log": fac.generator.lead}}
                for fac in self.factors
            ],
            "kind": lf.kind,
            "q_F": lf.qF,
            "dual_size": len(self.dual),
        }


@lru_cache(maxsize=None)
def build_quotient(lf: LocalField) -> QuotientGroup:
    return QuotientGroup(lf)


def dual_group(G: QuotientGroup) -> list[MultChar]:
    return list(G.dual)


def kernel_intersection_contains(G: QuotientGroup, x: Series) -> bool:
    """Does every character of G kill x?  Decided by evaluation only."""
    if x.is_zero():
        raise ZeroDivisionError("zero is not in E^x")
    return all(chi.exp(x) == 0 for chi in G.dual)
