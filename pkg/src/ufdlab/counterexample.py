"""Order certificates for the hypersurface-chain ring over k[x, y].

The ring is k[x, y][z_0, z_1, ...] modulo the relations

    x*z_(i+1) + y^(s(i+1)-1) * z_i^s(i+1) - z_(i-1)     (i >= 1),

where s is the integer sequence s(1)=2, s(2)=3, s(n)=n*prod(s(i), i<=n-2).
Solving relation i for z_(i-1) and substituting repeatedly pushes z_0 ever
deeper into powers of the maximal ideal (x, y) — and, after inverting the
substitution y = x*T, into powers of (x).  The exact expansions blow up
with s, so the certificates come in two tiers: exact polynomial identities
at small depth, and an abstract order-tracking derivation (each
substitution multiplies every branch by an element of the ideal, so orders
increase by one per round) for depths up to 32.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

from .coeff import Field, PrimeField, QQ
from .errors import CapExceeded
from .groebner import LEX, Ideal, ideal, ideal_equal
from .poly import Polynomial, PolyRing, RingMap, poly_ring

EXPAND_DEPTH_CAP = 3
IDENTITY_DEPTH_CAP = 2
ORDER_CAP = 32
COORDINATE_CAP = 3


# ---------------------------------------------------------------------------
# the exponent sequence
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SSeq:
    """The memoized exponent sequence: values[i] = s(i+1)."""

    values: tuple[int, ...]

    def value(self, i: int) -> int:
        return self.values[i - 1]


def s_sequence(n: int) -> SSeq:
    """s(1)=2, s(2)=3, s(n) = n * product of s(1)..s(n-2) for n >= 3."""
    if n < 1:
        raise ValueError("need n >= 1")
    vals = [2, 3]
    prefix = 1  # product of s(1)..s(len(vals)-2)
    for m in range(3, n + 1):
        prefix *= vals[m - 3]
        vals.append(m * prefix)
    return SSeq(tuple(vals[:n]))


def _warn_positive_characteristic(field: Field):
    if isinstance(field, PrimeField):
        warnings.warn(
            "this construction assumes characteristic zero; "
            f"computing over {field} anyway",
            stacklevel=3,
        )


# ---------------------------------------------------------------------------
# exact expansions of z_0
# ---------------------------------------------------------------------------


def _substitute_once(
    q: Polynomial, zname: str, rhs: Polynomial
) -> tuple[Polynomial, Polynomial]:
    """Replace zname by rhs in q.  Returns (result, cofactor) with
    q - result = (z - rhs) * cofactor, an exact telescoping identity."""
    ring = q.ring
    idx = ring.vars.index(zname)
    z = ring.var(zname)
    by_power: dict[int, Polynomial] = {}
    for exp, coeff in q.terms.items():
        k = exp[idx]
        rest = exp[:idx] + (0,) + exp[idx + 1 :]
        part = by_power.setdefault(k, ring.zero())
        by_power[k] = part + Polynomial(ring, {rest: coeff})
    result = ring.zero()
    cofactor = ring.zero()
    rhs_pow = {0: ring.one()}
    for k in sorted(by_power):
        top = max(rhs_pow)
        acc = rhs_pow[top]
        for m in range(top + 1, k + 1):
            acc = acc * rhs
            rhs_pow[m] = acc
        a_k = by_power[k]
        result = result + a_k * rhs_pow[k]
        # z^k - rhs^k = (z - rhs) * sum_{t<k} z^t rhs^(k-1-t)
        h = ring.zero()
        for t in range(k):
            h = h + z**t * rhs_pow[k - 1 - t]
        cofactor = cofactor + a_k * h
    return result, cofactor


def _chain_ring(field: Field, top_index: int, extra: tuple[str, ...] = ("x", "y")) -> PolyRing:
    return poly_ring(field, extra + tuple(f"z{i}" for i in range(top_index + 1)))


def _solved_rhs(ring: PolyRing, j: int, s: SSeq, x_for_y: bool) -> Polynomial:
    """z_j = x*z_(j+2) + y^(s-1) * z_(j+1)^s with s = s(j+2); with the
    substitution y = x*T the coefficient becomes x^(s-1) * T^(s-1)."""
    sv = s.value(j + 2)
    x = ring.var("x")
    lead = x * ring.var(f"z{j+2}")
    if x_for_y:
        coeff = x ** (sv - 1) * ring.var("T") ** (sv - 1)
    else:
        coeff = ring.var("y") ** (sv - 1)
    return lead + coeff * ring.var(f"z{j+1}") ** sv


def _expand(
    depth: int, field: Field, x_for_y: bool
) -> tuple[Polynomial, dict[int, Polynomial]]:
    """Iterated solve-and-substitute, with cofactors against the relations.

    Round r replaces every z_j currently present (j = r-1 .. 2r-2, handled
    in decreasing order so freshly introduced variables are kept, matching
    one simultaneous substitution per round).  Returns the expansion and a
    map i -> g_i with z0 - expansion = sum g_i * f_i over the defining
    relations f_i = x*z_(i+1) + y^(s(i+1)-1)*z_i^s(i+1) - z_(i-1).
    """
    s = s_sequence(max(2 * depth, 2))
    extra = ("x", "T") if x_for_y else ("x", "y")
    ring = _chain_ring(field, 2 * depth, extra)
    p = ring.var("z0")
    cofactors: dict[int, Polynomial] = {}
    for r in range(1, depth + 1):
        for j in range(2 * r - 2, r - 2, -1):
            rhs = _solved_rhs(ring, j, s, x_for_y)
            p, cof = _substitute_once(p, f"z{j}", rhs)
            if cof:
                # z_j - rhs = -f_(j+1), so q_old - q_new = -f_(j+1) * cof
                prev = cofactors.get(j + 1, ring.zero())
                cofactors[j + 1] = prev - cof
    return p, cofactors


def expand_z0(depth: int, field: Field = QQ) -> Polynomial:
    """The exact representative of z_0 after `depth` substitution rounds,
    a polynomial in x, y and z_depth .. z_(2*depth)."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if depth > EXPAND_DEPTH_CAP:
        raise CapExceeded("instance too large")
    _warn_positive_characteristic(field)
    p, _ = _expand(depth, field, x_for_y=False)
    keep = ("x", "y") + tuple(f"z{i}" for i in range(depth, 2 * depth + 1))
    return p.project(p.ring.restrict([n for n in keep if n in p.ring.names]))


def expand_z0_bprime(depth: int, field: Field = QQ) -> Polynomial:
    """The expansion of z_0 after substituting y = x*T: every round
    contributes one full factor of x, so the result is divisible by x^depth."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if depth > EXPAND_DEPTH_CAP:
        raise CapExceeded("instance too large")
    _warn_positive_characteristic(field)
    p, _ = _expand(depth, field, x_for_y=True)
    keep = ("x", "T") + tuple(f"z{i}" for i in range(depth, 2 * depth + 1))
    return p.project(p.ring.restrict([n for n in keep if n in p.ring.names]))


def check_expansion_identity(depth: int, field: Field = QQ) -> bool:
    """Certify symbolically that expand_z0(depth) equals z_0: multiply out
    the tracked cofactors and compare z0 - expansion = sum g_i * f_i."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if depth > IDENTITY_DEPTH_CAP:
        raise CapExceeded("instance too large")
    p, cofactors = _expand(depth, field, x_for_y=False)
    ring = p.ring
    s = s_sequence(max(2 * depth, 2))
    total = ring.zero()
    for i, g in cofactors.items():
        f_i = _solved_rhs(ring, i - 1, s, x_for_y=False) - ring.var(f"z{i-1}")
        total = total + g * f_i
    return ring.var("z0") - p == total


def min_xy_degree(p: Polynomial) -> int:
    """Minimum combined (x, y)-degree over the monomials of p; the exact
    shadow of membership in a power of (x, y)."""
    if not p:
        raise ValueError("degree of zero")
    ring = p.ring
    cols = [i for i, n in enumerate(ring.names) if n in ("x", "y")]
    return min(sum(exp[i] for i in cols) for exp in p.terms)


# ---------------------------------------------------------------------------
# abstract order certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrderCert:
    """A derivation that z_0 has order >= `order` for the named ideal.

    Each log entry (round, index, increment) records one substitution
    z_index -> (ideal element) * (z_(index+1) or z_(index+2) branch); the
    increment is the guaranteed order gain, always exactly 1.  The state
    after the last round lists (z-index, guaranteed order) pairs.
    """

    target: str
    ideal: str
    order: int
    log: tuple[tuple[int, int, int], ...]
    final_state: tuple[tuple[int, int], ...]
    accepted: bool

    def __post_init__(self):
        if any(inc < 1 for _, _, inc in self.log):
            raise ValueError("order increments must be >= 1")

    def to_json(self) -> dict:
        return {
            "target": self.target,
            "ideal": self.ideal,
            "order": self.order,
            "rounds": self.order,
            "log": [list(step) for step in self.log],
            "final_state": [list(pair) for pair in self.final_state],
            "accepted": self.accepted,
        }


def _order_certificate(n: int, ideal_tag: str) -> OrderCert:
    if n < 0:
        raise ValueError("order must be nonnegative")
    if n > ORDER_CAP:
        raise CapExceeded("instance too large")
    state = {(0, 0)}
    log: list[tuple[int, int, int]] = []
    for rnd in range(1, n + 1):
        nxt = set()
        for i, k in sorted(state):
            log.append((rnd, i, 1))
            nxt.add((i + 1, k + 1))
            nxt.add((i + 2, k + 1))
        state = nxt
    final = tuple(sorted(state))
    accepted = all(k >= n for _, k in final)
    return OrderCert("z0", ideal_tag, n, tuple(log), final, accepted)


def m_order_certificate(n: int) -> OrderCert:
    """Certify z_0 in (x, y)^n: every substitution z_(i-1) ->
    x*z_(i+1) + y^(s-1)*z_i^s multiplies each branch by an element of (x, y)."""
    return _order_certificate(n, "(x, y)-adic")


def x_order_certificate_bprime(n: int) -> OrderCert:
    """Certify z_0 in x^n * B[y/x]: after y = x*T each substitution reads
    z_(i-1) = x * (z_(i+1) + x^(s-2) * T^(s-1) * z_i^s), one x per round."""
    return _order_certificate(n, "x-adic after y = x*T")


# ---------------------------------------------------------------------------
# coordinate checks on the truncated relation ideals
# ---------------------------------------------------------------------------


def coordinate_checks(n: int, field: Field = QQ) -> dict[str, bool]:
    """Three exact ideal identities for J_n = (f_1, ..., f_n) in
    k[x, y, Z0..Z_(n+1)]:

    composite_linearizes: the composite of the shear maps
        Z_(i-1) -> Z_(i-1) + x*Z_(i+1) + y^(s-1)*Z_i^s (applied for i = 1..n)
        carries J_n onto the coordinate ideal (Z0, ..., Z_(n-1));
    mod_x_matches: (x) + J_n = (x, y^(s-1)*Z_i^s - Z_(i-1) for i = 1..n);
    mod_y_matches: (y) + J_n = (y, x*Z_(i+1) - Z_(i-1) for i = 1..n).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > COORDINATE_CAP:
        raise CapExceeded("instance too large")
    if n == 0:
        return {"composite_linearizes": True, "mod_x_matches": True, "mod_y_matches": True}
    _warn_positive_characteristic(field)
    s = s_sequence(n + 1)
    # With the Z variables first, every relation below is lex-solved for its
    # own Z_(i-1): the leading terms are distinct single variables, so each
    # generating set is already a Groebner basis and the equality checks stay
    # cheap (under grevlex the same ideals force enormous S-polynomials).
    ring = poly_ring(field, tuple(f"Z{i}" for i in range(n + 2)) + ("x", "y"))
    x, y = ring.var("x"), ring.var("y")

    def zvar(i):
        return ring.var(f"Z{i}")

    fs = [
        x * zvar(i + 1) + y ** (s.value(i + 1) - 1) * zvar(i) ** s.value(i + 1) - zvar(i - 1)
        for i in range(1, n + 1)
    ]
    J = ideal(ring, *fs)

    images = list(fs)
    for i in range(1, n + 1):
        shear = RingMap(
            ring,
            ring,
            {
                f"Z{i-1}": zvar(i - 1)
                + x * zvar(i + 1)
                + y ** (s.value(i + 1) - 1) * zvar(i) ** s.value(i + 1)
            },
        )
        images = [shear.apply(g) for g in images]
    coords = ideal(ring, *(zvar(i) for i in range(n)))
    composite_ok = ideal_equal(ideal(ring, *images), coords, LEX)

    mod_x_rhs = ideal(
        ring,
        x,
        *(y ** (s.value(i + 1) - 1) * zvar(i) ** s.value(i + 1) - zvar(i - 1) for i in range(1, n + 1)),
    )
    mod_x_ok = ideal_equal(J + Ideal(ring, (x,)), mod_x_rhs, LEX)

    mod_y_rhs = ideal(ring, y, *(x * zvar(i + 1) - zvar(i - 1) for i in range(1, n + 1)))
    mod_y_ok = ideal_equal(J + Ideal(ring, (y,)), mod_y_rhs, LEX)

    return {
        "composite_linearizes": composite_ok,
        "mod_x_matches": mod_x_ok,
        "mod_y_matches": mod_y_ok,
    }
