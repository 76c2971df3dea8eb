"""Table-driven arithmetic in small finite fields of odd characteristic.

Elements are handled in two forms.  The kernels on :class:`FieldTable` work on
raw discrete logarithms (``int``), with :data:`ZERO` standing for the zero
element; addition goes through a Zech-logarithm table so that both ring
operations are single lookups.  :class:`FqElem` wraps a raw log together with
its field for user-facing code.

Field presentations are deterministic: the modulus is the lexicographically
smallest monic irreducible polynomial under the coefficient order
``(c_0, c_1, ...)`` and the generator is the primitive element with the
smallest coordinate code ``sum(c_i * p**i)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

ZERO = -1
MAX_FIELD_SIZE = 2**20


class FieldError(ValueError):
    """Invalid field parameters or an operation the field cannot perform."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over F_p, coefficient lists low degree first ----------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: list[int], mod: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    d = len(mod) - 1
    inv_lead = pow(mod[-1], p - 2, p)
    while len(a) - 1 >= d:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - d
        for i, m in enumerate(mod):
            a[shift + i] = (a[shift + i] - c * m) % p
        _trim(a)
    return a


def _polymulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _polymod(out, mod, p)


def _polypowmod(a: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _polymod(a, mod, p)
    while e:
        if e & 1:
            result = _polymulmod(result, base, mod, p)
        base = _polymulmod(base, base, mod, p)
        e >>= 1
    return result


def _polysub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _polygcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _polymod(a, b, p)
    return a


def is_irreducible(poly: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    d = len(poly) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    if _polysub(_polypowmod(x, p**d, poly, p), x, p):
        return False
    for r in prime_factors(d):
        h = _polysub(_polypowmod(x, p ** (d // r), poly, p), x, p)
        if len(_polygcd(poly, h, p)) != 1:
            return False
    return True


def smallest_irreducible(p: int, d: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible of degree d; returns all d+1 coefficients."""
    for low in product(range(p), repeat=d):
        poly = list(low) + [1]
        if is_irreducible(poly, p):
            return tuple(poly)
    raise FieldError(f"no irreducible polynomial of degree {d} over F_{p}")  # pragma: no cover


def _encode(coeffs: list[int], p: int) -> int:
    return sum(c * p**i for i, c in enumerate(coeffs))


def _decode(code: int, p: int, d: int) -> list[int]:
    out = []
    for _ in range(d):
        code, r = divmod(code, p)
        out.append(r)
    return _trim(out)


# -- field tables ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FieldTable:
    p: int
    f: int
    q: int
    modulus: tuple[int, ...]
    generator: int
    exp: tuple[int, ...] = field(repr=False)
    log: tuple[int, ...] = field(repr=False)
    zech: tuple[int, ...] = field(repr=False)
    abs_trace: tuple[int, ...] = field(repr=False)
    subfield: FieldTable | None = field(default=None, repr=False)
    embed_step: int = 0

    @property
    def order(self) -> int:
        """Order of the multiplicative group."""
        return self.q - 1

    # raw kernels on discrete logs
    def add(self, a: int, b: int) -> int:
        if a < 0:
            return b
        if b < 0:
            return a
        z = self.zech[(b - a) % (self.q - 1)]
        return ZERO if z < 0 else (a + z) % (self.q - 1)

    def mul(self, a: int, b: int) -> int:
        if a < 0 or b < 0:
            return ZERO
        return (a + b) % (self.q - 1)

    def neg(self, a: int) -> int:
        if a < 0:
            return ZERO
        return (a + (self.q - 1) // 2) % (self.q - 1)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def inv(self, a: int) -> int:
        if a < 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return (-a) % (self.q - 1)

    def power(self, a: int, e: int) -> int:
        if a < 0:
            if e <= 0:
                raise ZeroDivisionError("non-positive power of zero")
            return ZERO
        return (a * e) % (self.q - 1)

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F_q."""
        n %= self.p
        return ZERO if n == 0 else self.log[n]

    def code_of(self, a: int) -> int:
        return 0 if a < 0 else self.exp[a]

    def coords(self, a: int) -> tuple[int, ...]:
        code = self.code_of(a)
        return tuple((code // self.p**i) % self.p for i in range(self.f))

    def trace_to_prime(self, a: int) -> int:
        """Absolute trace Tr_{F_q/F_p}(a) as an integer in [0, p)."""
        return 0 if a < 0 else self.abs_trace[a]

    # subfield plumbing (quadratic extensions only)
    def _need_subfield(self) -> FieldTable:
        if self.subfield is None:
            raise FieldError(f"F_{self.q} has no registered subfield")
        return self.subfield

    def in_subfield(self, a: int) -> bool:
        sub = self._need_subfield()
        return a < 0 or a % (self.q - 1) % ((self.q - 1) // (sub.q - 1)) == 0

    def embed(self, b: int) -> int:
        """Image in this field of a raw element of the subfield."""
        self._need_subfield()
        return ZERO if b < 0 else (b * self.embed_step) % (self.q - 1)

    def restrict(self, a: int) -> int:
        """Inverse of :meth:`embed`; a must lie in the subfield."""
        sub = self._need_subfield()
        if not self.in_subfield(a):
            raise FieldError("element does not lie in the subfield")
        if a < 0:
            return ZERO
        # embed_step = ((q-1)/(q_F-1)) * t with t a unit mod q_F - 1
        k = (self.q - 1) // (sub.q - 1)
        t = self.embed_step // k
        return (a // k) * pow(t, -1, sub.q - 1) % (sub.q - 1)

    def frob_raw(self, a: int) -> int:
        sub = self._need_subfield()
        return self.power(a, sub.q)

    # element wrappers
    def __call__(self, a: int) -> FqElem:
        return FqElem(self, a if a < 0 else a % (self.q - 1))

    def from_code(self, code: int) -> FqElem:
        return FqElem(self, self.log[code])

    @property
    def zero(self) -> FqElem:
        return FqElem(self, ZERO)

    @property
    def one(self) -> FqElem:
        return FqElem(self, 0)

    @property
    def g(self) -> FqElem:
        return FqElem(self, 1)

    def elements(self) -> list[FqElem]:
        return [self.zero] + [FqElem(self, e) for e in range(self.q - 1)]

    def units(self) -> list[FqElem]:
        return [FqElem(self, e) for e in range(self.q - 1)]

    def __repr__(self) -> str:
        return f"FieldTable(q={self.p}^{self.f}, modulus={self.modulus}, generator={self.generator})"


@dataclass(frozen=True)
class FqElem:
    field: FieldTable
    log: int  # ZERO for the zero element

    def _check(self, other: FqElem) -> None:
        if other.field is not self.field:
            raise FieldError("operands live in different fields")

    @property
    def is_zero(self) -> bool:
        return self.log < 0

    def __add__(self, other: FqElem) -> FqElem:
        self._check(other)
        return FqElem(self.field, self.field.add(self.log, other.log))

    def __sub__(self, other: FqElem) -> FqElem:
        self._check(other)
        return FqElem(self.field, self.field.sub(self.log, other.log))

    def __mul__(self, other: FqElem) -> FqElem:
        self._check(other)
        return FqElem(self.field, self.field.mul(self.log, other.log))

    def __truediv__(self, other: FqElem) -> FqElem:
        return self * other.inverse()

    def __neg__(self) -> FqElem:
        return FqElem(self.field, self.field.neg(self.log))

    def __pow__(self, e: int) -> FqElem:
        return FqElem(self.field, self.field.power(self.log, e))

    def inverse(self) -> FqElem:
        return FqElem(self.field, self.field.inv(self.log))

    @property
    def code(self) -> int:
        return self.field.code_of(self.log)

    def __repr__(self) -> str:
        if self.log < 0:
            return f"0_F{self.field.q}"
        return f"g^{self.log}_F{self.field.q}"


def arith(x: FqElem, y: FqElem | None, op: str) -> FqElem:
    """Dispatch form of the field operations: op in {add, mul, inv, neg}."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inverse()
    if op == "neg":
        return -x
    raise ValueError(f"unknown field operation {op!r}")


def _build_table(p: int, d: int) -> FieldTable:
    q = p**d
    modulus = smallest_irreducible(p, d)
    mod = list(modulus)

    def mulcode(a: int, b: int) -> int:
        return _encode(_polymulmod(_decode(a, p, d), _decode(b, p, d), mod, p), p)

    def is_primitive(code: int) -> bool:
        x = _decode(code, p, d)
        return all(_polypowmod(x, (q - 1) // r, mod, p) != [1] for r in prime_factors(q - 1))

    gen = next(c for c in range(1, q) if is_primitive(c)) if q > 2 else 1

    exp = [1] * (q - 1)
    for i in range(1, q - 1):
        exp[i] = mulcode(exp[i - 1], gen)
    log = [ZERO] * q
    for i, c in enumerate(exp):
        log[c] = i

    def addcode(a: int, b: int) -> int:
        out, k = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * k
            a //= p
            b //= p
            k *= p
        return out

    zech = tuple(log[addcode(1, exp[k])] for k in range(q - 1))

    def raw_add(a: int, b: int) -> int:
        if a < 0:
            return b
        if b < 0:
            return a
        z = zech[(b - a) % (q - 1)]
        return ZERO if z < 0 else (a + z) % (q - 1)

    abs_trace = []
    for e in range(q - 1):
        acc = ZERO
        for i in range(d):
            acc = raw_add(acc, (e * p**i) % (q - 1))
        # the trace lies in F_p, i.e. it is a constant polynomial
        abs_trace.append(0 if acc < 0 else exp[acc])
    return FieldTable(
        p=p, f=d, q=q, modulus=modulus, generator=gen,
        exp=tuple(exp), log=tuple(log), zech=zech, abs_trace=tuple(abs_trace),
    )


def _check_params(p: int, f: int) -> None:
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if p == 2:
        raise FieldError("characteristic 2 is not supported")
    if f < 1:
        raise FieldError("extension degree must be positive")
    if p**f > MAX_FIELD_SIZE:
        raise FieldError(f"field size {p}^{f} exceeds {MAX_FIELD_SIZE}")


def make_field(p: int, f: int = 1) -> FieldTable:
    _check_params(p, f)
    return _build_table(p, f)


def make_quadratic_extension(base: FieldTable) -> FieldTable:
    """F_{q^2} with ``base`` registered as its subfield."""
    p, f = base.p, base.f
    _check_params(p, 2 * f)
    ext = _build_table(p, 2 * f)
    k = (ext.q - 1) // (base.q - 1)
    # choose the embedding g_base -> g_ext^(k t) with smallest admissible t;
    # admissible means it carries the Zech table of base onto that of ext
    for t in range(1, base.q):
        if base.q > 2 and _gcd(t, base.q - 1) != 1:
            continue
        step = k * t
        ok = True
        for j in range(base.q - 1):
            zb = base.zech[j]
            ze = ext.zech[(j * step) % (ext.q - 1)]
            expected = ZERO if zb < 0 else (zb * step) % (ext.q - 1)
            if ze != expected:
                ok = False
                break
        if ok:
            return FieldTable(
                p=ext.p, f=ext.f, q=ext.q, modulus=ext.modulus, generator=ext.generator,
                exp=ext.exp, log=ext.log, zech=ext.zech, abs_trace=ext.abs_trace,
                subfield=base, embed_step=step,
            )
    raise FieldError("no field embedding found")  # pragma: no cover


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# -- operations relative to the registered subfield ---------------------------

def norm_and_trace(x: FqElem) -> tuple[FqElem, FqElem]:
    """Norm and trace from a quadratic extension down to its subfield."""
    k = x.field
    sub = k._need_subfield()
    a = x.log
    frob = k.frob_raw(a)
    nrm = k.mul(a, frob)
    tr = k.add(a, frob)
    return FqElem(sub, k.restrict(nrm)), FqElem(sub, k.restrict(tr))


def frobenius(x: FqElem) -> FqElem:
    """The nontrivial automorphism x -> x^q_F of a quadratic extension."""
    return FqElem(x.field, x.field.frob_raw(x.log))


def solve_trace_zero(k: FieldTable) -> FqElem:
    """First nonzero element (by coordinate code) of trace zero down to the subfield."""
    k._need_subfield()
    for code in range(1, k.q):
        a = k.log[code]
        if k.add(a, k.frob_raw(a)) == ZERO:
            return FqElem(k, a)
    raise FieldError("no trace-zero element")  # pragma: no cover
