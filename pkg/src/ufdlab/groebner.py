"""Groebner engine over exact fields: Buchberger, elimination, quotients.

Everything here works in plain polynomial rings (no invertible variables);
ideals in localizations must be rephrased first, e.g. by saturating at the
would-be unit.  Reduced monic Groebner bases are computed, so a basis is a
canonical form for its ideal: two ideals are equal iff their reduced bases
under the same order coincide.

`brute_force_member` is an independent membership decision: it never calls
the Buchberger machinery, only linear algebra over a truncated monomial
basis, and is complete once the degree bound covers the true cofactors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .caps import current_caps
from .coeff import PrimeField, RationalField
from .errors import CapExceeded
from .poly import (
    Exp,
    Polynomial,
    PolyRing,
    mono_div,
    mono_divides,
    mono_mul,
    poly_ring,
)


# ---------------------------------------------------------------------------
# monomial orders
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Order:
    """A monomial order: "lex", "grevlex", or "block" (elimination).

    A block order compares block by block, grevlex inside each block, so it
    eliminates the variables of the earlier blocks.
    """

    kind: str
    blocks: tuple[tuple[str, ...], ...] = ()

    def key_for(self, ring: PolyRing):
        if self.kind == "lex":
            return lambda exp: exp
        if self.kind == "grevlex":
            n = ring.nvars
            return lambda exp: (sum(exp), tuple(-exp[i] for i in range(n - 1, -1, -1)))
        if self.kind == "block":
            seen: list[str] = [n for blk in self.blocks for n in blk]
            if sorted(seen) != sorted(ring.names):
                raise ValueError("block order must partition the ring variables")
            index_blocks = [
                tuple(ring.vars.index(n) for n in blk) for blk in self.blocks
            ]

            def key(exp: Exp):
                parts = []
                for idx in index_blocks:
                    parts.append(sum(exp[i] for i in idx))
                    parts.append(tuple(-exp[i] for i in reversed(idx)))
                return tuple(parts)

            return key
        raise ValueError(f"unknown order kind {self.kind!r}")


LEX = Order("lex")
GREVLEX = Order("grevlex")


def elimination_order(front: Sequence[str], back: Sequence[str]) -> Order:
    return Order("block", (tuple(front), tuple(back)))


def _check_plain_ring(ring: PolyRing) -> None:
    if ring.vars.invertible:
        raise ValueError("saturate the unit first")


# ---------------------------------------------------------------------------
# division / reduction
# ---------------------------------------------------------------------------


def divide(
    p: Polynomial, divisors: Sequence[Polynomial], order: Order = GREVLEX
) -> tuple[Polynomial, list[Polynomial]]:
    """Multivariate division: p = sum(q_i * divisors_i) + r with no term of r
    divisible by any divisor's leading term.  Returns (r, [q_i])."""
    ring = p.ring
    _check_plain_ring(ring)
    keyfn = order.key_for(ring)
    fld = ring.field
    caps = current_caps()
    leads = []
    for g in divisors:
        if g.ring != ring:
            raise ValueError("divisor from a different ring")
        if not g:
            raise ValueError("zero divisor in reduction")
        leads.append(g.leading(keyfn))
    quotients: list[dict[Exp, object]] = [{} for _ in divisors]
    remainder: dict[Exp, object] = {}
    work = p
    while work:
        if work.term_count() > caps.terms:
            raise CapExceeded("instance too large")
        we, wc = work.leading(keyfn)
        if sum(k for k in we if k > 0) > caps.degree:
            raise CapExceeded("instance too large")
        # Among usable divisors prefer the smallest leading term: a rule that
        # solves for a big monomial (Z -> long tail) forward-substitutes and
        # can balloon the intermediate work, while a small rule (a lone
        # variable, say) kills the term outright.  The remainder itself is
        # path-independent, this only picks a cheap route to it.
        hit = None
        for i, (de, dc) in enumerate(leads):
            if mono_divides(de, we) and (hit is None or keyfn(de) < keyfn(hit[1])):
                hit = (i, de, dc)
        if hit is None:
            remainder[we] = wc
            work = work - Polynomial(ring, {we: wc})
            continue
        i, de, dc = hit
        qe = mono_div(we, de)
        qc = fld.div(wc, dc)
        quotients[i][qe] = fld.add(quotients[i].get(qe, fld.zero()), qc)
        work = work - Polynomial(ring, {qe: qc}) * divisors[i]
    return Polynomial(ring, remainder), [Polynomial(ring, q) for q in quotients]


def reduce(
    p: Polynomial, divisors: Sequence[Polynomial], order: Order = GREVLEX
) -> Polynomial:
    """Remainder of p on division by divisors (membership test against a
    Groebner basis: remainder 0 iff p is in the ideal)."""
    r, _ = divide(p, divisors, order)
    return r


def _s_poly(f: Polynomial, g: Polynomial, keyfn) -> Polynomial:
    fe, fc = f.leading(keyfn)
    ge, gc = g.leading(keyfn)
    lcm = tuple(max(a, b) for a, b in zip(fe, ge))
    fld = f.ring.field
    mf = Polynomial(f.ring, {mono_div(lcm, fe): fld.inv(fc)})
    mg = Polynomial(g.ring, {mono_div(lcm, ge): fld.inv(gc)})
    return mf * f - mg * g


def buchberger(
    gens: Sequence[Polynomial], order: Order = GREVLEX, interreduce: bool = True
) -> list[Polynomial]:
    """Monic Groebner basis of the ideal generated by gens.

    Pair selection is by smallest lcm (normal strategy); the coprime and
    chain criteria prune pairs.  With interreduce=True (the default) the
    output is the unique reduced basis, sorted with the largest leading
    term first.  With interreduce=False the basis is only minimal (no
    leading term divides another): still a Groebner basis, so normal forms
    against it are the same, but tails stay unreduced -- which matters when
    the reduced tails would be astronomically larger than the generators.
    """
    if not gens:
        return []
    ring = gens[0].ring
    _check_plain_ring(ring)
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators from different rings")
    keyfn = order.key_for(ring)
    caps = current_caps()

    basis: list[Polynomial] = []
    for g in gens:
        if not g:
            continue
        if g.total_degree() > caps.degree or g.term_count() > caps.terms:
            raise CapExceeded("instance too large")
        if g.monic(keyfn) not in basis:
            basis.append(g.monic(keyfn))
    if not basis:
        return []

    def lead(i: int) -> Exp:
        return basis[i].leading(keyfn)[0]

    pairs: set[tuple[int, int]] = {
        (i, j) for j in range(len(basis)) for i in range(j)
    }
    done: set[tuple[int, int]] = set()

    def lcm_of(i: int, j: int) -> Exp:
        return tuple(max(a, b) for a, b in zip(lead(i), lead(j)))

    while pairs:
        i, j = min(pairs, key=lambda ij: (keyfn(lcm_of(*ij)), ij))
        pairs.discard((i, j))
        done.add((i, j))
        lcm = lcm_of(i, j)
        if mono_mul(lead(i), lead(j)) == lcm:
            continue  # coprime leading terms: S-poly reduces to zero
        chain = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            a, b = (min(i, k), max(i, k)), (min(j, k), max(j, k))
            if mono_divides(lead(k), lcm) and a in done and b in done:
                chain = True
                break
        if chain:
            continue
        s = _s_poly(basis[i], basis[j], keyfn)
        r, _ = divide(s, basis, order)
        if not r:
            continue
        if r.total_degree() > caps.degree or r.term_count() > caps.terms:
            raise CapExceeded("instance too large")
        basis.append(r.monic(keyfn))
        new = len(basis) - 1
        pairs.update((k, new) for k in range(new))

    # minimalize: keep only elements with pairwise non-divisible leading terms
    basis.sort(key=lambda g: keyfn(g.leading(keyfn)[0]))
    keep: list[Polynomial] = []
    for g in basis:
        e = g.leading(keyfn)[0]
        if not any(mono_divides(h.leading(keyfn)[0], e) for h in keep):
            keep.append(g)
    if interreduce:
        # inter-reduce tails (leading terms are stable, so one pass suffices)
        for idx in range(len(keep)):
            others = keep[:idx] + keep[idx + 1 :]
            if others:
                r, _ = divide(keep[idx], others, order)
                keep[idx] = r.monic(keyfn)
    keep.sort(key=lambda g: keyfn(g.leading(keyfn)[0]), reverse=True)
    return keep


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------


class Ideal:
    """An ideal given by generators, with cached reduced Groebner bases."""

    def __init__(self, ring: PolyRing, gens: Iterable[Polynomial]):
        _check_plain_ring(ring)
        self.ring = ring
        self.gens = tuple(g for g in gens if g)
        for g in self.gens:
            if g.ring != ring:
                raise ValueError("generator from a different ring")
        self._gb: dict[Order, tuple[Polynomial, ...]] = {}
        self._gb_min: dict[Order, tuple[Polynomial, ...]] = {}

    def __repr__(self):
        inner = ", ".join(str(g) for g in self.gens) or "0"
        return f"Ideal({inner})"

    def groebner(self, order: Order = GREVLEX) -> tuple[Polynomial, ...]:
        cached = self._gb.get(order)
        if cached is None:
            cached = tuple(buchberger(self.gens, order))
            self._gb[order] = cached
            self._gb_min[order] = cached  # reduced is in particular minimal
        return cached

    def _min_basis(self, order: Order = GREVLEX) -> tuple[Polynomial, ...]:
        """Minimal (not tail-reduced) basis: enough for normal forms, and
        immune to the tail blowup that full reduction can trigger."""
        cached = self._gb_min.get(order)
        if cached is None:
            cached = tuple(buchberger(self.gens, order, interreduce=False))
            self._gb_min[order] = cached
        return cached

    def contains(self, p: Polynomial, order: Order = GREVLEX) -> bool:
        return not self.normal_form(p, order)

    def normal_form(self, p: Polynomial, order: Order = GREVLEX) -> Polynomial:
        gb = self._min_basis(order)
        if not gb:
            return p
        r, _ = divide(p, gb, order)
        return r

    def is_trivial(self) -> bool:
        gb = self._min_basis()
        return len(gb) == 1 and gb[0] == self.ring.one()

    def is_zero(self) -> bool:
        return not self.groebner()

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.ring != self.ring:
            raise ValueError("ideals in different rings")
        return Ideal(self.ring, self.gens + other.gens)

    def scaled(self, f: Polynomial) -> "Ideal":
        return Ideal(self.ring, tuple(f * g for g in self.gens))


def ideal(ring: PolyRing, *gens: Polynomial) -> Ideal:
    return Ideal(ring, gens)


def ideal_equal(a: Ideal, b: Ideal, order: Order = GREVLEX) -> bool:
    """Mutual containment, checked by normal forms of the generators.

    Equivalent to comparing reduced bases, but never tail-reduces: the
    reduced basis of an ideal can be exponentially larger than any of its
    minimal bases (forward substitution of chained relations), while the
    generator normal forms stay small.
    """
    if a.ring != b.ring:
        raise ValueError("ideals in different rings")
    return all(b.contains(g, order) for g in a.gens) and all(
        a.contains(g, order) for g in b.gens
    )


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    if a.ring != b.ring:
        raise ValueError("ideals in different rings")
    return Ideal(a.ring, tuple(f * g for f in a.gens for g in b.gens))


def ideal_power(a: Ideal, n: int) -> Ideal:
    if n < 0:
        raise ValueError("negative ideal power")
    out = Ideal(a.ring, (a.ring.one(),))
    for _ in range(n):
        out = ideal_product(out, a)
    return out


def _fresh_name(ring: PolyRing, stem: str) -> str:
    name = stem
    k = 0
    while name in ring.names:
        k += 1
        name = f"{stem}{k}"
    return name


def elim_ideal(a: Ideal, keep: Sequence[str]) -> Ideal:
    """I intersected with the subring on `keep`: compute a basis under a
    block order that puts the discarded variables first, then take the
    basis elements supported on the kept variables only."""
    keep_set = set(keep)
    for n in keep_set:
        a.ring.vars.index(n)
    front = [n for n in a.ring.names if n not in keep_set]
    back = [n for n in a.ring.names if n in keep_set]
    order = elimination_order(front, back)
    gb = a.groebner(order)
    small = a.ring.restrict(back)
    kept = [g.project(small) for g in gb if g.support() <= keep_set]
    return Ideal(small, kept)


def intersect(a: Ideal, b: Ideal) -> Ideal:
    """I cap J via the tag trick: eliminate t from t*I + (1-t)*J."""
    if a.ring != b.ring:
        raise ValueError("ideals in different rings")
    ring = a.ring
    tname = _fresh_name(ring, "_t")
    big = ring.extend((tname,))
    t = big.var(tname)
    gens = [t * g.lift(big) for g in a.gens]
    gens += [(big.one() - t) * g.lift(big) for g in b.gens]
    elim = elim_ideal(Ideal(big, gens), ring.names)
    assert elim.ring == ring
    return Ideal(ring, elim.gens)


def ideal_quotient(a: Ideal, f) -> Ideal:
    """Colon ideal (a : f) for a single polynomial or (a : J) for an ideal."""
    if isinstance(f, Ideal):
        out: Optional[Ideal] = None
        if not f.gens:
            raise ValueError("quotient by the zero ideal")
        for g in f.gens:
            part = ideal_quotient(a, g)
            out = part if out is None else intersect(out, part)
        return out
    if not isinstance(f, Polynomial):
        raise TypeError("quotient needs a Polynomial or an Ideal")
    if not f:
        raise ValueError("quotient by zero")
    cap = intersect(a, Ideal(a.ring, (f,)))
    return Ideal(a.ring, tuple(g.exact_div(f) for g in cap.gens))


def saturation(a: Ideal, f: Polynomial, max_rounds: int = 32) -> tuple[Ideal, int]:
    """(a : f^infinity) by iterating colon ideals until they stabilize.

    Returns (saturated ideal, saturation index): the index is the first k
    with (a : f^k) = (a : f^(k+1)).
    """
    if not f:
        raise ValueError("saturation by zero")
    current = a
    for k in range(max_rounds):
        nxt = ideal_quotient(current, f)
        if ideal_equal(nxt, current):
            return current, k
        current = nxt
    raise CapExceeded("instance too large")


# ---------------------------------------------------------------------------
# brute-force oracles (independent of Buchberger)
# ---------------------------------------------------------------------------


def _monomials_up_to(ring: PolyRing, degree: int) -> list[Exp]:
    """All exponent tuples of total degree <= degree, ascending grevlex."""
    n = ring.nvars
    out: list[Exp] = []

    def rec(prefix: list[int], remaining: int, pos: int):
        if pos == n:
            out.append(tuple(prefix))
            return
        for k in range(remaining + 1):
            rec(prefix + [k], remaining - k, pos + 1)

    rec([], degree, 0)
    keyfn = GREVLEX.key_for(ring)
    out.sort(key=keyfn)
    return out


def brute_force_member(p: Polynomial, gens: Sequence[Polynomial], max_deg: int) -> bool:
    """Decide membership of p in (gens) allowing cofactors up to max_deg.

    Pure linear algebra over the monomials of degree <= max_deg + max gen
    degree: complete whenever some representation p = sum(q_i g_i) exists
    with deg q_i <= max_deg.  A False answer therefore only means "no
    low-degree certificate", which is exact if max_deg is large enough.
    """
    ring = p.ring
    _check_plain_ring(ring)
    gens = [g for g in gens if g]
    if not gens:
        return not p
    if not p:
        return True
    target_deg = max(max_deg + max(g.total_degree() for g in gens), p.total_degree())
    rows = _monomials_up_to(ring, target_deg)
    row_index = {e: i for i, e in enumerate(rows)}
    columns: list[dict[int, object]] = []
    for g in gens:
        for m in _monomials_up_to(ring, max_deg):
            prod = Polynomial(ring, {m: ring.field.one()}) * g
            columns.append({row_index[e]: c for e, c in prod.terms.items()})
    rhs = {row_index[e]: c for e, c in p.terms.items()}
    fld = ring.field
    if isinstance(fld, PrimeField):
        return _in_span_mod_p(columns, rhs, len(rows), fld.p)
    return _in_span_fractions(columns, rhs, len(rows))


def _in_span_mod_p(columns, rhs, nrows: int, p: int) -> bool:
    a = np.zeros((nrows, len(columns) + 1), dtype=np.int64)
    for j, col in enumerate(columns):
        for i, c in col.items():
            a[i, j] = c % p
    for i, c in rhs.items():
        a[i, len(columns)] = c % p
    row = 0
    ncols = len(columns)
    for col in range(ncols + 1):
        piv = None
        for r in range(row, nrows):
            if a[r, col] % p:
                piv = r
                break
        if piv is None:
            continue
        a[[row, piv]] = a[[piv, row]]
        inv = pow(int(a[row, col]), p - 2, p)
        a[row] = (a[row] * inv) % p
        mask = a[:, col] % p != 0
        mask[row] = False
        if mask.any():
            a[mask] = (a[mask] - np.outer(a[mask, col], a[row])) % p
        if col == ncols:
            return False  # pivot in the rhs column: inconsistent
        row += 1
        if row == nrows:
            break
    return True


def _in_span_fractions(columns, rhs, nrows: int) -> bool:
    ncols = len(columns)
    dense = [[Fraction(0)] * (ncols + 1) for _ in range(nrows)]
    for j, col in enumerate(columns):
        for i, c in col.items():
            dense[i][j] = Fraction(c)
    for i, c in rhs.items():
        dense[i][ncols] = Fraction(c)
    row = 0
    for col in range(ncols + 1):
        piv = next((r for r in range(row, nrows) if dense[r][col]), None)
        if piv is None:
            continue
        dense[row], dense[piv] = dense[piv], dense[row]
        inv = 1 / dense[row][col]
        dense[row] = [v * inv for v in dense[row]]
        for r in range(nrows):
            if r != row and dense[r][col]:
                factor = dense[r][col]
                dense[r] = [v - factor * w for v, w in zip(dense[r], dense[row])]
        if col == ncols:
            return False
        row += 1
        if row == nrows:
            break
    return True


@dataclass(frozen=True)
class FactorVerdict:
    """Outcome of the exhaustive factor search."""

    status: str  # "irreducible" | "reducible"
    factors: Optional[tuple[Polynomial, Polynomial]] = None

    @property
    def irreducible(self) -> bool:
        return self.status == "irreducible"

    def __repr__(self):
        if self.factors:
            g, h = self.factors
            return f"reducible({g}, {h})"
        return self.status


def brute_force_irreducible(
    f: Polynomial, max_deg: int, candidate_cap: int = 10_000_000
) -> FactorVerdict:
    """Exhaustive factor search over a prime field: trial division by every
    monic polynomial of total degree 1..max_deg in f's variables.

    Requires deg f <= 2*max_deg + 1 so that "no factor found" really means
    irreducible (a proper factorization always has a factor of degree
    <= deg f // 2 <= max_deg).  Raises when the candidate count would
    exceed the cap.
    """
    ring = f.ring
    _check_plain_ring(ring)
    fld = ring.field
    if not isinstance(fld, PrimeField):
        raise ValueError("irreducibility search needs a finite field")
    if not f or f.is_constant():
        raise ValueError("irreducibility of a constant")
    if f.total_degree() > 2 * max_deg + 1:
        raise ValueError("degree bound too small to certify irreducibility")
    monos = _monomials_up_to(ring, max_deg)
    total = 0
    plans = []
    for lead_pos, lead in enumerate(monos):
        if sum(lead) == 0:
            continue
        count = fld.p ** lead_pos
        plans.append((lead, monos[:lead_pos]))
        total += count
        if total > candidate_cap:
            raise CapExceeded("instance too large")
    elements = list(range(fld.p))
    for lead, lower in plans:
        for coeffs in itertools.product(elements, repeat=len(lower)):
            terms = {lead: fld.one()}
            for m, c in zip(lower, coeffs):
                if c:
                    terms[m] = c
            g = Polynomial(ring, terms)
            if g.total_degree() >= f.total_degree():
                continue
            try:
                h = f.exact_div(g)
            except ValueError:
                continue
            return FactorVerdict("reducible", (g, h))
    return FactorVerdict("irreducible")
