"""A non-noetherian graded algebra as an executable rewriting system.

The algebra is k[x, z0, z1, ...] modulo the relations

    z_m^2 = -(x^(2^(m+1)) * z_(m+2) + z_(m+1))    for every m >= 0,

graded by deg x = -1, deg z_i = 2^i.  Monomials x^m * F_n, where F_n is the
squarefree z-monomial read off the binary digits of n, form a k-basis with
one basis element per pair (m, n); inside one degree d the pairs satisfy
n - m = d, so the x-exponent m identifies the coordinate.

`normal_form` rewrites any element onto that basis: pick a z_m with
exponent e_m = 2a + b >= 2 and expand (z_m^2)^a binomially.  Each step
strictly decreases the total z-exponent, so rewriting terminates; the
result is independent of pivot choices (exercised by the confluence
tests).  Everything here is exact and immutable.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Mapping, Optional

from .caps import current_caps
from .coeff import Field, QQ
from .errors import CapExceeded
from .poly import Polynomial, PolyRing, poly_ring

Z_INDEX_CAP = 64


@dataclass(frozen=True)
class OmegaMonomial:
    """x^r times a finite product of z_i's: e is a sorted ((index, exp>=1), ...)."""

    r: int
    e: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("negative exponent on x")
        last = -1
        for i, exp in self.e:
            if i <= last:
                raise ValueError("z-indices must be strictly increasing")
            if i > Z_INDEX_CAP:
                raise CapExceeded("z-index cap exceeded")
            if exp < 1:
                raise ValueError("z-exponents must be positive")
            last = i

    def degree(self) -> int:
        return -self.r + sum(exp * (1 << i) for i, exp in self.e)

    def size(self) -> int:
        """Total z-exponent; the strictly decreasing rewrite measure."""
        return sum(exp for _, exp in self.e)

    def is_squarefree(self) -> bool:
        return all(exp == 1 for _, exp in self.e)

    def times(self, other: "OmegaMonomial") -> "OmegaMonomial":
        e = dict(self.e)
        for i, exp in other.e:
            e[i] = e.get(i, 0) + exp
        return omega_monomial(self.r + other.r, e)

    def sort_key(self):
        return (self.r, self.e)


def omega_monomial(r: int = 0, e: Mapping[int, int] | None = None) -> OmegaMonomial:
    items = tuple(sorted((i, exp) for i, exp in (e or {}).items() if exp))
    return OmegaMonomial(r, items)


MONO_ONE = omega_monomial()


class OmegaPoly:
    """Finite k-linear combination of OmegaMonomials (zero coeffs dropped)."""

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms: Mapping[OmegaMonomial, object]):
        zero = field.zero()
        self.field = field
        self.terms = {m: c for m, c in terms.items() if c != zero}

    @classmethod
    def zero(cls, field: Field = QQ) -> "OmegaPoly":
        return cls(field, {})

    @classmethod
    def monomial(cls, mono: OmegaMonomial, field: Field = QQ, coeff=1) -> "OmegaPoly":
        return cls(field, {mono: field.of(coeff)})

    @classmethod
    def x(cls, field: Field = QQ, power: int = 1) -> "OmegaPoly":
        return cls.monomial(omega_monomial(power), field)

    @classmethod
    def z(cls, index: int, field: Field = QQ) -> "OmegaPoly":
        return cls.monomial(omega_monomial(0, {index: 1}), field)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, OmegaPoly)
            and self.field == other.field
            and self.terms == other.terms
        )

    def __add__(self, other: "OmegaPoly") -> "OmegaPoly":
        out = dict(self.terms)
        fld = self.field
        for m, c in other.terms.items():
            out[m] = fld.add(out.get(m, fld.zero()), c)
        return OmegaPoly(fld, out)

    def __neg__(self) -> "OmegaPoly":
        fld = self.field
        return OmegaPoly(fld, {m: fld.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other: "OmegaPoly") -> "OmegaPoly":
        return self + (-other)

    def __mul__(self, other: "OmegaPoly") -> "OmegaPoly":
        fld = self.field
        out: dict[OmegaMonomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1.times(m2)
                out[m] = fld.add(out.get(m, fld.zero()), fld.mul(c1, c2))
        return OmegaPoly(fld, out)

    def __pow__(self, n: int) -> "OmegaPoly":
        if n < 0:
            raise ValueError("negative power")
        out = OmegaPoly.monomial(MONO_ONE, self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c) -> "OmegaPoly":
        fld = self.field
        cc = fld.of(c)
        return OmegaPoly(fld, {m: fld.mul(v, cc) for m, v in self.terms.items()})

    def degrees(self) -> set[int]:
        return {m.degree() for m in self.terms}

    def __str__(self) -> str:
        return render_omega(self)

    def __repr__(self) -> str:
        return f"OmegaPoly({render_omega(self)!r})"


def sigma(d: int) -> OmegaMonomial:
    """The squarefree monomial of degree d: one z_i per set binary digit of d."""
    if d < 0:
        raise ValueError("sigma of a negative integer")
    e = {}
    i = 0
    while d:
        if d & 1:
            e[i] = 1
        d >>= 1
        i += 1
    return omega_monomial(0, e)


def basis_monomial(m: int, n: int) -> OmegaMonomial:
    """x^m * F_n, the basis element with coordinates (m, n)."""
    return omega_monomial(m).times(sigma(n))


def defining_relation(m: int, field: Field = QQ) -> OmegaPoly:
    """z_m^2 + x^(2^(m+1)) z_(m+2) + z_(m+1); zero in the algebra."""
    return OmegaPoly(
        field,
        {
            omega_monomial(0, {m: 2}): field.one(),
            omega_monomial(1 << (m + 1), {m + 2: 1}): field.one(),
            omega_monomial(0, {m + 1: 1}): field.one(),
        },
    )


@dataclass(frozen=True)
class BasisExpansion:
    """One homogeneous component on the basis: entries (m, n, coeff), n-m=d."""

    degree: int
    entries: tuple[tuple[int, int, object], ...]

    def __post_init__(self):
        last_m = -1
        for m, n, coeff in self.entries:
            if m < 0 or n < 0:
                raise ValueError("negative basis coordinate")
            if n - m != self.degree:
                raise ValueError(f"entry ({m}, {n}) does not have degree {self.degree}")
            if m <= last_m:
                raise ValueError("x-exponents must be strictly increasing")
            last_m = m

    def min_x_exponent(self) -> int:
        return self.entries[0][0]


def _expand_once(
    mono: OmegaMonomial, coeff, field: Field, pivot: str
) -> list[tuple[OmegaMonomial, object]]:
    """Apply the defining relation once at the chosen pivot index."""
    eligible = [i for i, exp in mono.e if exp >= 2]
    m = max(eligible) if pivot == "largest" else min(eligible)
    e = dict(mono.e)
    a, b = divmod(e.pop(m), 2)
    if b:
        e[m] = b
    sign = field.pow(field.of(-1), a)
    out = []
    for j in range(a + 1):
        binom = field.mul(sign, field.of(math.comb(a, j)))
        c = field.mul(coeff, binom)
        if c == field.zero():
            continue
        new_e = dict(e)
        if a - j:
            new_e[m + 1] = new_e.get(m + 1, 0) + (a - j)
        if j:
            new_e[m + 2] = new_e.get(m + 2, 0) + j
        out.append((omega_monomial(mono.r + j * (1 << (m + 1)), new_e), c))
    return out


def normal_form(p: OmegaPoly, pivot: str = "largest") -> dict[int, BasisExpansion]:
    """Rewrite p onto the x^m F_n basis, one homogeneous component per degree.

    Each step replaces one monomial with z-size S by monomials of z-size
    S - a (a >= 1), so the multiset of sizes strictly decreases and the
    loop terminates.  pivot chooses which repeated z-index to expand;
    "smallest" exists for the confluence tests.
    """
    if pivot not in ("largest", "smallest"):
        raise ValueError("pivot must be 'largest' or 'smallest'")
    caps = current_caps()
    field = p.field
    zero = field.zero()
    work = dict(p.terms)
    while True:
        if len(work) > caps.terms:
            raise CapExceeded("instance too large")
        pending = sorted(
            (m for m in work if not m.is_squarefree()), key=OmegaMonomial.sort_key
        )
        if not pending:
            break
        for mono in pending:
            coeff = work.pop(mono, zero)
            if coeff == zero:
                continue
            for new_mono, c in _expand_once(mono, coeff, field, pivot):
                total = field.add(work.get(new_mono, zero), c)
                if total == zero:
                    work.pop(new_mono, None)
                else:
                    work[new_mono] = total

    by_degree: dict[int, list[tuple[int, int, object]]] = {}
    for mono, coeff in work.items():
        m = mono.r
        n = sum(1 << i for i, _ in mono.e)
        by_degree.setdefault(n - m, []).append((m, n, coeff))
    out = {}
    for d, entries in sorted(by_degree.items()):
        entries.sort(key=lambda t: t[0])
        assert len({m for m, _, _ in entries}) == len(entries)
        out[d] = BasisExpansion(d, tuple(entries))
    return out


def in_x_omega(p: OmegaPoly) -> bool:
    """Membership in the principal ideal (x): every basis coordinate has m >= 1."""
    nf = normal_form(p)
    return all(m >= 1 for exp in nf.values() for m, _, _ in exp.entries)


def x_adic_floor(p: OmegaPoly) -> int:
    """The largest m with p in x^m * (the algebra); errors on p = 0."""
    nf = normal_form(p)
    if not nf:
        raise ValueError("zero has infinite order")
    return min(exp.min_x_exponent() for exp in nf.values())


def expansion_poly(nf: Mapping[int, BasisExpansion], field: Field = QQ) -> OmegaPoly:
    """Reassemble a normal-form map into the OmegaPoly it denotes."""
    terms = {}
    for exp in nf.values():
        for m, n, coeff in exp.entries:
            terms[basis_monomial(m, n)] = coeff
    return OmegaPoly(field, terms)


def expansion_text(nf: Mapping[int, BasisExpansion], field: Field = QQ) -> str:
    """Canonical one-line rendering of a normal-form map, for exact comparison."""
    parts = []
    for d in sorted(nf):
        inner = ", ".join(
            f"({m}, {n}, {field.render(c)})" for m, n, c in nf[d].entries
        )
        parts.append(f"deg {d}: [{inner}]")
    return "; ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# bridge to the polynomial text syntax (names x, z0, z1, ...)
# ---------------------------------------------------------------------------

_Z_NAME = re.compile(r"\bz(\d+)\b")


def _bridge_ring(field: Field, max_index: int) -> PolyRing:
    return poly_ring(field, ("x",) + tuple(f"z{i}" for i in range(max_index + 1)))


def to_poly(p: OmegaPoly, ring: Optional[PolyRing] = None) -> Polynomial:
    """Render into an ordinary polynomial ring with variables x, z0..zK."""
    top = max((i for m in p.terms for i, _ in m.e), default=0)
    if ring is None:
        ring = _bridge_ring(p.field, top)
    out = ring.zero()
    for mono, coeff in p.terms.items():
        exps = {f"z{i}": exp for i, exp in mono.e}
        if mono.r:
            exps["x"] = mono.r
        out = out + ring.monomial(exps, coeff)
    return out


def from_poly(q: Polynomial) -> OmegaPoly:
    """Read an OmegaPoly off a polynomial in variables x, z0, z1, ..."""
    ring = q.ring
    terms = {}
    for exp, coeff in q.terms.items():
        r = 0
        e = {}
        for name, k in zip(ring.names, exp):
            if not k:
                continue
            if name == "x":
                r = k
            else:
                match = _Z_NAME.fullmatch(name)
                if not match:
                    raise ValueError(f"variable {name!r} is not x or z<i>")
                e[int(match.group(1))] = k
        terms[omega_monomial(r, e)] = coeff
    return OmegaPoly(ring.field, terms)


def parse_omega(text: str, field: Field = QQ) -> OmegaPoly:
    top = max((int(m) for m in _Z_NAME.findall(text)), default=0)
    return from_poly(_bridge_ring(field, top).parse(text))


def render_omega(p: OmegaPoly) -> str:
    return str(to_poly(p))
