"""Q-ideals: finitely generated ideals raised to nonnegative rational
exponents, with sums, products, rational powers, formal fractions, and
orders of vanishing along arcs.

Only order-along-arc semantics are implemented; the integral-closure order
relation between Q-ideals is out of scope.  Equality of Q-ideals is never
tested structurally anywhere in this package: tests compare orders along
sampled arcs instead.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .poly import MPoly
from .series import OrderVal, PSeries, as_frac, frac_str

YES = "yes"
NO = "no"
UNKNOWN = "unknown"


class QIdeal:
    """Generators (all MPoly or all PSeries) with a rational exponent >= 0.

    The zero Q-ideal carries no generators and is equal to (0)^q for every
    q; its order along any arc is infinite.
    """

    __slots__ = ("gens", "exp", "is_zero")

    def __init__(self, gens, exp, *, allow_zero=False):
        exp = as_frac(exp)
        if exp < 0:
            raise ValueError("Q-ideal exponent must be nonnegative")
        kept = []
        for g in gens:
            if isinstance(g, (int, Fraction)):
                g = MPoly.const(g)
            if isinstance(g, PSeries):
                if g.is_exactly_zero:
                    continue
            elif isinstance(g, MPoly):
                if g.is_zero():
                    continue
            else:
                raise TypeError("generators must be MPoly or PSeries")
            kept.append(g)
        if kept:
            kinds = {type(g) for g in kept}
            if len(kinds) != 1:
                raise ValueError("generator domain must be homogeneous")
        elif not allow_zero:
            raise ValueError(
                "no nonzero generators; use QIdeal.zero() for the zero ideal")
        self.gens = tuple(kept)
        self.exp = exp
        self.is_zero = not kept

    @classmethod
    def zero(cls):
        return cls((), Fraction(0), allow_zero=True)

    @classmethod
    def unit(cls):
        return cls((MPoly.const(1),), Fraction(1))

    @classmethod
    def principal(cls, gen, exp=1):
        return cls((gen,), exp)

    def __repr__(self):
        if self.is_zero:
            return "(0)"
        body = ", ".join(repr(g) for g in self.gens)
        return f"({body})^{frac_str(self.exp)}"

    def to_json(self):
        if self.is_zero:
            return {"exp": frac_str(self.exp), "gens": []}
        return {"exp": frac_str(self.exp),
                "gens": [g.to_json() for g in self.gens]}

    @classmethod
    def from_json(cls, obj):
        gens = []
        for g in obj["gens"]:
            if "vars" in g:
                gens.append(MPoly.from_json(g))
            else:
                gens.append(PSeries.from_json(g))
        if not gens:
            return cls.zero()
        return cls(gens, Fraction(obj["exp"]))


class QIdealFrac:
    """Formal fraction numer * denom^(-1) of two Q-ideals."""

    __slots__ = ("numer", "denom")

    def __init__(self, numer: QIdeal, denom: QIdeal):
        self.numer = numer
        self.denom = denom

    def to_json(self):
        return {"num": self.numer.to_json(), "den": self.denom.to_json()}

    @classmethod
    def from_json(cls, obj):
        return cls(QIdeal.from_json(obj["num"]), QIdeal.from_json(obj["den"]))


def _lcm(a, b):
    return a * b // math.gcd(a, b)


def _common_denominator(ideals):
    m = 1
    for a in ideals:
        m = _lcm(m, a.exp.denominator)
    return m


_POWER_BUDGET = 4096


def _int_power_gens(gens, k):
    """Generators of J^k: the k-fold products g_1^(e_1)...g_n^(e_n) with
    e_1 + ... + e_n = k, built incrementally (one multiplication per node)."""
    if k == 0:
        g = gens[0]
        if isinstance(g, PSeries):
            return (PSeries.one(g.var),)
        return (MPoly.const(1),)
    n = len(gens)
    from math import comb
    if comb(n + k - 1, k) > _POWER_BUDGET:
        from .errors import BudgetError
        raise BudgetError(
            f"generator set of an integer power J^{k} exceeds the budget")
    out = []

    def rec(i, remaining, acc):
        if i == n - 1:
            cur = acc
            for _ in range(remaining):
                cur = cur * gens[i]
            out.append(cur)
            return
        cur = acc
        for e in range(remaining + 1):
            rec(i + 1, remaining - e, cur)
            if e < remaining:
                cur = cur * gens[i]

    one = _int_power_gens(gens, 0)[0]
    rec(0, k, one)
    return tuple(_dedup(out))


def _dedup(gens):
    return list(dict.fromkeys(gens))


def qi_product(ideals) -> QIdeal:
    """Product of Q-ideals at the minimal common denominator m:
    prod J_i^(q_i) = (prod J_i^(m q_i))^(1/m)."""
    ideals = list(ideals)
    if not ideals:
        return QIdeal.unit()
    if any(a.is_zero for a in ideals):
        return QIdeal.zero()
    m = _common_denominator(ideals)
    gens = None
    for a in ideals:
        k = int(a.exp * m)
        gk = _int_power_gens(a.gens, k)
        if gens is None:
            gens = list(gk)
        else:
            gens = _dedup([x * y for x in gens for y in gk])
    return QIdeal(gens, Fraction(1, m))


def qi_sum(ideals) -> QIdeal:
    """Sum of Q-ideals at the minimal common denominator m:
    sum J_i^(q_i) = (sum J_i^(m q_i))^(1/m)."""
    ideals = [a for a in ideals if not a.is_zero]
    if not ideals:
        return QIdeal.zero()
    m = _common_denominator(ideals)
    gens = []
    for a in ideals:
        k = int(a.exp * m)
        gens.extend(_int_power_gens(a.gens, k))
    return QIdeal(_dedup(gens), Fraction(1, m))


def qi_power(a: QIdeal, q) -> QIdeal:
    """Rational power: exponent multiplies, generators unchanged."""
    q = as_frac(q)
    if q < 0:
        raise ValueError("rational power must be nonnegative")
    if a.is_zero:
        return QIdeal.zero()
    return QIdeal(a.gens, a.exp * q)


def _gen_order(gen, arc) -> OrderVal:
    if isinstance(gen, PSeries):
        if arc is None:
            return gen.order()
        u = arc.get(gen.var)
        if u is None:
            raise ValueError(f"arc does not cover variable {gen.var!r}")
        return gen.substitute(u).order()
    if arc is None:
        raise ValueError("polynomial generators require an arc")
    return gen.eval_series({v: arc[v] for v in gen.vars}).order()


def qi_ord(a: QIdeal, arc=None) -> OrderVal:
    """Order of vanishing along an arc (variable -> positive-order series).

    For ideals with series generators, `arc=None` means the identity arc:
    the order of the series themselves.  Exponent times the minimum of the
    generator orders, in interval semantics.
    """
    if a.is_zero:
        return OrderVal.infinite()
    if arc is not None:
        for v, u in arc.items():
            if u.order().lower <= 0:
                raise ValueError(
                    f"arc component {v!r} must have positive order")
    vals = [_gen_order(g, arc) for g in a.gens]
    return OrderVal.min_of(vals).scale(a.exp)


def qi_ord_along_arc(a: QIdeal, arc) -> OrderVal:
    return qi_ord(a, arc)


def lc_dim1(pair: QIdealFrac, arc=None):
    """One-variable log-canonicity test for a fraction of Q-ideals:
    yes iff ord(numer) - ord(denom) <= 1, with interval-aware verdicts.

    Raises ValueError when either part is the zero Q-ideal (malformed pair).
    """
    if pair.numer.is_zero or pair.denom.is_zero:
        raise ValueError("log-canonicity test on a zero Q-ideal")
    on = qi_ord(pair.numer, arc)
    od = qi_ord(pair.denom, arc)
    return ord_diff_le_one(on, od)


def ord_diff_le_one(on: OrderVal, od: OrderVal):
    """Three-way verdict for ord(numer) - ord(denom) <= 1 (inf - inf = inf)."""
    if on.is_infinite:
        return NO
    if on.is_exact:
        if od.is_infinite:
            return YES  # finite minus infinite
        if od.is_exact:
            return YES if on.value - od.value <= 1 else NO
        # od true value >= od.value, so diff <= on.value - od.value
        return YES if on.value - od.value <= 1 else UNKNOWN
    # on is at-least: true value in [on.value, inf]
    if od.is_exact:
        return NO if on.value - od.value > 1 else UNKNOWN
    return UNKNOWN
