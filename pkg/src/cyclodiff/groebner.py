"""A Buchberger engine over the rationals, sized for desk-scale systems.

The target workload is the twist-indexed quadratic systems of polysys:
append an aggregate variable, eliminate everything else, and read off
the univariate polynomial whose roots are the admissible g0 values.
Coefficients are Fractions internally but every stored polynomial is
content-stripped to primitive integer form, which keeps the arithmetic
honest and the intermediate growth observable.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd
from typing import Optional

from .config import current_limits
from .errors import (LimitExceeded, NotZeroDimensional, OrderMismatch,
                     UncertifiedBasis)
from .intpoly import IntPoly, squarefree_part
from .polysys import MPoly, PolySystem, gen_ghat_system
from .tables import f_table


# -- monomial orders -------------------------------------------------------------


class MonomialOrder:
    """grevlex, lex, or a two-block elimination order (first block larger).

    key(exps) returns a tuple that sorts monomials ascending, so the
    leading monomial of a set is the max under key.
    """

    def __init__(self, kind: str, elim: int = 0):
        if kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown order kind {kind!r}")
        if kind == "block" and elim <= 0:
            raise ValueError("block order needs a positive first block size")
        self.kind = kind
        self.elim = elim if kind == "block" else 0

    @staticmethod
    def _grevlex_key(exps):
        return (sum(exps), tuple(-e for e in reversed(exps)))

    def key(self, exps):
        if self.kind == "lex":
            return exps
        if self.kind == "grevlex":
            return self._grevlex_key(exps)
        return (self._grevlex_key(exps[:self.elim]),
                self._grevlex_key(exps[self.elim:]))

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder)
                and (self.kind, self.elim) == (other.kind, other.elim))

    def __repr__(self):
        if self.kind == "block":
            return f"MonomialOrder(block, elim={self.elim})"
        return f"MonomialOrder({self.kind})"


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


# -- polynomials -----------------------------------------------------------------


@dataclass(frozen=True)
class QPoly:
    """Primitive-integer sparse polynomial; the rational scalars a basis
    computation passes through are normalized away on storage."""

    nvars: int
    terms: tuple     # ((exps, coeff), ...) sorted by no particular order

    @classmethod
    def from_dict(cls, nvars: int, d: dict) -> "QPoly":
        items = _strip_content(d)
        return cls(nvars, tuple(sorted(items.items())))

    @classmethod
    def from_mpoly(cls, p: MPoly) -> "QPoly":
        return cls.from_dict(p.nvars, dict(p.terms))

    def as_dict(self) -> dict:
        return {e: Fraction(c) for e, c in self.terms}

    def is_zero(self) -> bool:
        return not self.terms

    def leading(self, order: MonomialOrder):
        return max((e for e, _ in self.terms), key=order.key)

    def sorted_terms(self, order: MonomialOrder):
        return sorted(self.terms, key=lambda t: order.key(t[0]), reverse=True)

    def total_degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)


def _strip_content(d: dict) -> dict:
    """Clear denominators, divide by integer content, make leading-ish sign
    deterministic (largest exps tuple positive)."""
    live = {e: Fraction(c) for e, c in d.items() if c != 0}
    if not live:
        return {}
    den = 1
    for c in live.values():
        den = den * c.denominator // gcd(den, c.denominator)
    ints = {e: int(c * den) for e, c in live.items()}
    g = 0
    for c in ints.values():
        g = gcd(g, c)
    ints = {e: c // g for e, c in ints.items()}
    if ints[max(ints)] < 0:
        ints = {e: -c for e, c in ints.items()}
    return ints


def _max_bits(d: dict) -> int:
    out = 0
    for c in d.values():
        c = abs(int(c)) if not isinstance(c, Fraction) else max(
            abs(c.numerator), c.denominator)
        out = max(out, int(c).bit_length())
    return out


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _reduce_full(f: dict, gens: list, order: MonomialOrder) -> dict:
    """Remainder of f on division by gens; every term of the remainder is
    irreducible.  gens entries are (terms dict, leading exps, leading coeff).
    """
    okey = order.key
    remainder: dict = {}
    work = {e: Fraction(c) for e, c in f.items() if c != 0}
    while work:
        lead = max(work, key=okey)
        for gterms, glead, glc in gens:
            if _divides(glead, lead):
                factor = work[lead] / glc
                shift = tuple(a - b for a, b in zip(lead, glead))
                for ge, gc in gterms.items():
                    key = tuple(a + b for a, b in zip(ge, shift))
                    val = work.get(key, 0) - factor * gc
                    if val:
                        work[key] = val
                    else:
                        work.pop(key, None)
                break
        else:
            remainder[lead] = work.pop(lead)
    return remainder


def _spoly(a, b, order: MonomialOrder) -> dict:
    """S-polynomial of two (terms, lead, lc) triples."""
    (at, al, ac), (bt, bl, bc) = a, b
    lcm = tuple(max(x, y) for x, y in zip(al, bl))
    sa = tuple(l - x for l, x in zip(lcm, al))
    sb = tuple(l - x for l, x in zip(lcm, bl))
    out: dict = {}
    for e, c in at.items():
        key = tuple(x + y for x, y in zip(e, sa))
        out[key] = out.get(key, 0) + Fraction(c) / ac
    for e, c in bt.items():
        key = tuple(x + y for x, y in zip(e, sb))
        out[key] = out.get(key, 0) - Fraction(c) / bc
    return {e: c for e, c in out.items() if c}


@dataclass
class GBasis:
    generators: tuple            # QPoly, reduced
    order: MonomialOrder
    nvars: int
    certified: bool
    stats: dict = dc_field(default_factory=dict)

    def __len__(self):
        return len(self.generators)

    def is_unit_ideal(self) -> bool:
        # terms are stored ascending, so a constant term alone does not
        # settle it: the whole polynomial must be that constant
        return (len(self.generators) == 1
                and len(self.generators[0].terms) == 1
                and self.generators[0].terms[0][0] == (0,) * self.nvars)


def _as_qpolys(system) -> tuple[int, list]:
    if isinstance(system, PolySystem):
        return len(system.var_names), [QPoly.from_mpoly(p)
                                       for p in system.polys]
    polys = list(system)
    if not polys:
        raise ValueError("empty generating set")
    return polys[0].nvars, polys


def buchberger(system, order: MonomialOrder = GREVLEX, seed: int = 0,
               max_spairs: Optional[int] = None,
               max_coeff_bits: Optional[int] = None,
               timeout: Optional[float] = None) -> GBasis:
    """Reduced Groebner basis with normal pair selection and both of the
    classical pair-discarding criteria.

    The seed only permutes tie-breaking among equally ranked pairs, so
    it changes the route, never the reduced basis: a property the tests
    lean on.  Limits fall back to the configured defaults; exceeding one
    raises LimitExceeded carrying the partial, uncertified basis.
    """
    limits = current_limits()
    max_spairs = max_spairs or limits.gb_max_spairs
    max_coeff_bits = max_coeff_bits or limits.gb_max_coeff_bits
    timeout = timeout or limits.gb_timeout
    nvars, qpolys = _as_qpolys(system)
    t0 = time.monotonic()
    stats = {"spairs_reduced": 0, "spairs_discarded": 0,
             "max_coeff_bits": 0, "generators": 0, "seconds": 0.0}

    basis: list = []             # (terms dict, lead exps, lead coeff)
    for qp in qpolys:
        if qp.is_zero():
            continue
        d = {e: Fraction(c) for e, c in qp.terms}
        lead = qp.leading(order)
        basis.append((d, lead, d[lead]))

    def lcm_of(i, j):
        return tuple(max(x, y) for x, y in zip(basis[i][1], basis[j][1]))

    def pair_rank(i, j):
        lcm = lcm_of(i, j)
        tie = ((i * 2654435761 + j * 40503) ^ seed) & 0xFFFFFFFF
        return (sum(lcm), order.key(lcm), tie)

    pending = {(j, i) for i in range(len(basis)) for j in range(i)}

    def partial_basis():
        gens = tuple(QPoly.from_dict(nvars, d) for d, _, _ in basis)
        return GBasis(gens, order, nvars, certified=False, stats=stats)

    def bail(reason):
        stats["seconds"] = time.monotonic() - t0
        stats["generators"] = len(basis)
        raise LimitExceeded(reason, stats=stats, partial=partial_basis())

    while pending:
        if stats["spairs_reduced"] >= max_spairs:
            bail(f"S-pair budget {max_spairs} exhausted")
        if time.monotonic() - t0 > timeout:
            bail(f"timeout after {timeout:.0f}s")
        i, j = min(pending, key=lambda ij: pair_rank(*ij))
        pending.discard((i, j))
        li, lj = basis[i][1], basis[j][1]
        lcm = lcm_of(i, j)
        # coprime leading monomials: S-polynomial reduces to zero
        if all(x + y == z for x, y, z in zip(li, lj, lcm)):
            stats["spairs_discarded"] += 1
            continue
        # chain criterion: a third generator divides the lcm and both
        # side pairs are already settled
        settled = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if _divides(basis[k][1], lcm) \
                    and tuple(sorted((i, k))) not in pending \
                    and tuple(sorted((j, k))) not in pending:
                settled = True
                break
        if settled:
            stats["spairs_discarded"] += 1
            continue
        s = _spoly(basis[i], basis[j], order)
        rem = _reduce_full(s, basis, order)
        stats["spairs_reduced"] += 1
        if not rem:
            continue
        rem = {e: Fraction(c) for e, c in _strip_content(rem).items()}
        bits = _max_bits(rem)
        stats["max_coeff_bits"] = max(stats["max_coeff_bits"], bits)
        if bits > max_coeff_bits:
            bail(f"coefficient growth {bits} bits exceeds {max_coeff_bits}")
        lead = max(rem, key=order.key)
        basis.append((rem, lead, rem[lead]))
        new = len(basis) - 1
        pending.update((t, new) for t in range(new))

    # minimalize: drop generators whose lead another lead divides
    keep = []
    for i, (_, li, _) in enumerate(basis):
        if not any(k != i and _divides(basis[k][1], li)
                   for k in range(len(basis)) if k in keep or k > i):
            keep.append(i)
    minimal = [basis[i] for i in keep]
    # inter-reduce tails
    reduced = []
    for i, (d, li, lc) in enumerate(minimal):
        others = [minimal[k] for k in range(len(minimal)) if k != i]
        rem = _reduce_full(d, others, order) if others else d
        rem = _strip_content(rem)
        if rem:
            reduced.append(rem)
    gens = tuple(sorted(
        (QPoly.from_dict(nvars, d) for d in reduced),
        key=lambda q: order.key(q.leading(order))))
    stats["seconds"] = time.monotonic() - t0
    stats["generators"] = len(gens)
    return GBasis(gens, order, nvars, certified=True, stats=stats)


def normal_form(f: QPoly, basis: GBasis) -> QPoly:
    """Remainder of f modulo the basis; zero iff f is in the ideal when
    the basis is certified."""
    if f.nvars != basis.nvars:
        raise OrderMismatch(f"{f.nvars} variables against basis in "
                            f"{basis.nvars}")
    gens = []
    for q in basis.generators:
        d = {e: Fraction(c) for e, c in q.terms}
        lead = q.leading(basis.order)
        gens.append((d, lead, d[lead]))
    rem = _reduce_full({e: Fraction(c) for e, c in f.terms}, gens,
                       basis.order)
    return QPoly.from_dict(f.nvars, rem)


def certify(basis: GBasis) -> bool:
    """Independent check: every S-polynomial reduces to zero."""
    gens = []
    for q in basis.generators:
        d = {e: Fraction(c) for e, c in q.terms}
        lead = q.leading(basis.order)
        gens.append((d, lead, d[lead]))
    for i in range(len(gens)):
        for j in range(i):
            s = _spoly(gens[i], gens[j], basis.order)
            if _reduce_full(s, gens, basis.order):
                return False
    return True


def is_zero_dimensional(basis: GBasis) -> bool:
    """True iff every variable shows a pure power among the leading
    monomials, which for a certified basis characterizes finitely many
    complex solutions."""
    if not basis.certified:
        raise UncertifiedBasis("zero-dimension test needs a certified basis")
    if basis.is_unit_ideal():
        return True
    leads = [q.leading(basis.order) for q in basis.generators]
    for v in range(basis.nvars):
        if not any(e[v] > 0 and all(x == 0 for k, x in enumerate(e) if k != v)
                   for e in leads):
            return False
    return True


# -- elimination to the aggregate variable ---------------------------------------


def staircase(basis: GBasis, cap: int = 65536) -> list:
    """Monomials outside the leading-term ideal: a Q-vector-space basis of
    the quotient ring when the ideal is zero-dimensional."""
    if not basis.certified:
        raise UncertifiedBasis("staircase needs a certified basis")
    leads = [q.leading(basis.order) for q in basis.generators]
    nv = basis.nvars
    seen = {(0,) * nv}
    queue = [(0,) * nv]
    out = []
    while queue:
        mono = queue.pop()
        if any(_divides(l, mono) for l in leads):
            continue
        out.append(mono)
        if len(out) > cap:
            raise LimitExceeded(f"quotient dimension exceeds {cap}",
                                stats=dict(basis.stats))
        for v in range(nv):
            nxt = mono[:v] + (mono[v] + 1,) + mono[v + 1:]
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return out


def _minimal_polynomial_of_var(basis: GBasis, var: int,
                               max_power: int) -> Optional[IntPoly]:
    """Monic generator of {p in Q[y] : p(x_var) in ideal}, found as the
    first linear dependence among normal forms of successive powers."""
    gens = []
    for q in basis.generators:
        d = {e: Fraction(c) for e, c in q.terms}
        lead = q.leading(basis.order)
        gens.append((d, lead, d[lead]))
    nv = basis.nvars
    rows: dict = {}                 # pivot monomial -> (vec, combo)
    current = _reduce_full({(0,) * nv: Fraction(1)}, gens, basis.order)
    for k in range(max_power + 1):
        vec = dict(current)
        combo = [Fraction(0)] * k + [Fraction(1)]
        while vec:
            pivot = max(vec)
            if pivot not in rows:
                inv = 1 / vec[pivot]
                vec = {e: c * inv for e, c in vec.items()}
                combo = [c * inv for c in combo]
                rows[pivot] = (vec, combo)
                break
            rvec, rcombo = rows[pivot]
            factor = vec.pop(pivot)
            for e, c in rvec.items():
                if e == pivot:
                    continue
                val = vec.get(e, 0) - factor * c
                if val:
                    vec[e] = val
                else:
                    vec.pop(e, None)
            combo = [a - factor * b for a, b in
                     zip(combo, rcombo + [Fraction(0)] * len(combo))]
        else:
            den = 1
            for c in combo:
                den = den * c.denominator // gcd(den, c.denominator)
            return IntPoly([int(c * den) for c in combo]).primitive()
        shifted = {e[:var] + (e[var] + 1,) + e[var + 1:]: c
                   for e, c in current.items()}
        current = _reduce_full(shifted, gens, basis.order)
    return None


def eliminate_to_univariate(system: PolySystem, target: str = "auto",
                            strategy: str = "quotient", seed: int = 0,
                            stats_sink: Optional[dict] = None,
                            **limit_kw) -> IntPoly:
    """Adjoin the aggregate variable y and eliminate everything else.

    ghat level: y is the mean of the ghat values (m*y = sum ghat_t), the
    quantity the tabulated univariate polynomials vanish on.  g level: y
    is g0 itself.  Returns the primitive positive-leading generator of
    the ideal's intersection with Q[y].

    The quotient strategy computes a grevlex basis and finds the first
    linear dependence among normal forms of powers of y; the block
    strategy eliminates through a two-block order directly.  Both name
    the same ideal intersection; block is kept as an independent
    cross-check because its coefficient growth makes it the slower
    route on anything nontrivial.
    """
    if target == "auto":
        target = "mean_ghat" if system.level == "ghat" else "g0"
    nv = len(system.var_names)
    polys = [QPoly.from_dict(nv + 1, {e + (0,): c for e, c in p.terms.items()})
             for p in system.polys]
    if target == "mean_ghat":
        if system.level != "ghat":
            raise ValueError("mean_ghat aggregate needs a ghat-level system")
        agg = {(0,) * nv + (1,): system.m}
        for i in range(nv):
            e = [0] * (nv + 1)
            e[i] = 1
            agg[tuple(e)] = -1
    elif target == "g0":
        agg = {(0,) * nv + (1,): 1, (1,) + (0,) * nv: -1}
    else:
        raise ValueError(f"unknown aggregate {target!r}")
    polys.append(QPoly.from_dict(nv + 1, agg))

    if strategy == "block":
        order = MonomialOrder("block", elim=nv)
        basis = buchberger(polys, order, seed=seed, **limit_kw)
        if stats_sink is not None:
            stats_sink.update(basis.stats)
        best = None
        for q in basis.generators:
            if all(all(x == 0 for x in e[:nv]) for e, _ in q.terms):
                uni = [0] * (max(e[nv] for e, _ in q.terms) + 1)
                for e, c in q.terms:
                    uni[e[nv]] = c
                cand = IntPoly(uni)
                if best is None or cand.degree < best.degree:
                    best = cand
        if best is None:
            raise NotZeroDimensional(
                "the elimination ideal meets Q[y] only in zero")
        return best.primitive()
    if strategy != "quotient":
        raise ValueError(f"unknown strategy {strategy!r}")

    basis = buchberger(polys, GREVLEX, seed=seed, **limit_kw)
    if stats_sink is not None:
        stats_sink.update(basis.stats)
    if basis.is_unit_ideal():
        return IntPoly([1])
    if is_zero_dimensional(basis):
        max_power = len(staircase(basis)) + 1
    else:
        max_power = 128
    poly = _minimal_polynomial_of_var(basis, nv, max_power)
    if poly is None:
        raise NotZeroDimensional(
            "no univariate relation on the aggregate was found")
    return poly


def compute_f_poly(m: int, theta: int, squarefree: bool = True,
                   strategy: str = "quotient", seed: int = 0,
                   stats_sink: Optional[dict] = None,
                   **limit_kw) -> IntPoly:
    """The univariate polynomial vanishing on the aggregate of the twist-
    theta system; the unit ideal gives the constant 1."""
    system = gen_ghat_system(m, theta)
    poly = eliminate_to_univariate(system, "mean_ghat", strategy=strategy,
                                   seed=seed, stats_sink=stats_sink,
                                   **limit_kw)
    return squarefree_part(poly) if squarefree and poly.degree > 0 else poly


def probe_g0_zero(m: int, theta: int, seed: int = 0, **limit_kw) -> str:
    """Can the aggregate vanish?  Adds sum(ghat_t) = 0 to the twist-theta
    system and reads the answer off the basis: the unit ideal means no
    solution anywhere over C."""
    system = gen_ghat_system(m, theta)
    nv = len(system.var_names)
    polys = [QPoly.from_mpoly(p) for p in system.polys]
    polys.append(QPoly.from_dict(nv, {tuple(int(i == k) for k in range(nv)): 1
                                      for i in range(nv)}))
    try:
        basis = buchberger(polys, GREVLEX, seed=seed, **limit_kw)
    except LimitExceeded:
        return "undecided"
    return "empty" if basis.is_unit_ideal() else "nonempty"
