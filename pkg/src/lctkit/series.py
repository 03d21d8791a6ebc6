"""Exact truncated power series and Puiseux series in one variable over Q.

A PSeries stores finitely many terms c*t^e with rational c != 0 and rational
e >= 0, plus a truncation bound `trunc`: every exponent strictly below
`trunc` is known, everything at or above it is unknown.  `trunc` may be the
float infinity (INF), which certifies the series is known exactly -- this is
how polynomial input data is represented.  Orders of vanishing are reported
through OrderVal, a three-way value (exact / at-least / infinite) so that
truncated data degrades to "unknown" instead of producing wrong answers.

All values are immutable and all operations are pure.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction

from .errors import ConsistencyError, TruncationError

INF = math.inf

_ZERO = Fraction(0)
_ONE = Fraction(1)


def default_trunc():
    """Working truncation bound for operations that must pick one."""
    raw = os.environ.get("LCTKIT_TRUNC", "64")
    return Fraction(raw)


def as_frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def frac_str(q) -> str:
    """Serialize a rational as "p" or "p/q" (never floating point)."""
    q = as_frac(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _trunc_str(t) -> str:
    return "inf" if t == INF else frac_str(t)


def _trunc_parse(s):
    return INF if s == "inf" else Fraction(s)


class OrderVal:
    """Order of vanishing: Exact(q), AtLeast(q) (from truncation), or Infinite.

    AtLeast(q) means the true order is >= q and is otherwise unknown (it may
    be infinite).  Infinite is only produced from exactly-known zero data.
    """

    __slots__ = ("kind", "value")

    EXACT = "exact"
    ATLEAST = "atleast"
    INFINITE = "inf"

    def __init__(self, kind, value=None):
        if kind not in (self.EXACT, self.ATLEAST, self.INFINITE):
            raise ValueError(f"bad OrderVal kind {kind!r}")
        if kind == self.INFINITE:
            value = None
        else:
            value = as_frac(value)
        self.kind = kind
        self.value = value

    @classmethod
    def exact(cls, q):
        return cls(cls.EXACT, q)

    @classmethod
    def at_least(cls, q):
        return cls(cls.ATLEAST, q)

    @classmethod
    def infinite(cls):
        return cls(cls.INFINITE)

    @property
    def is_exact(self):
        return self.kind == self.EXACT

    @property
    def is_at_least(self):
        return self.kind == self.ATLEAST

    @property
    def is_infinite(self):
        return self.kind == self.INFINITE

    @property
    def lower(self):
        """Certified lower bound (INF for the infinite order)."""
        return INF if self.is_infinite else self.value

    def __eq__(self, other):
        if not isinstance(other, OrderVal):
            return NotImplemented
        return self.kind == other.kind and self.value == other.value

    def __hash__(self):
        return hash((self.kind, self.value))

    def __repr__(self):
        if self.is_infinite:
            return "ord(inf)"
        if self.is_at_least:
            return f"ord(>={frac_str(self.value)})"
        return f"ord({frac_str(self.value)})"

    def __add__(self, other):
        if not isinstance(other, OrderVal):
            return NotImplemented
        if self.is_infinite or other.is_infinite:
            return OrderVal.infinite()
        v = self.value + other.value
        if self.is_exact and other.is_exact:
            return OrderVal.exact(v)
        return OrderVal.at_least(v)

    def scale(self, c) -> "OrderVal":
        """Multiply by a rational c >= 0; scale(0, anything finite-or-not) = Exact(0).

        Callers that need a different 0*inf convention must special-case
        before scaling (the V-evaluator does).
        """
        c = as_frac(c)
        if c < 0:
            raise ValueError("scale by negative rational")
        if c == 0:
            return OrderVal.exact(0)
        if self.is_infinite:
            return OrderVal.infinite()
        return OrderVal(self.kind, self.value * c)

    def sub(self, other) -> "OrderVal":
        """Difference with the convention inf - inf = inf.

        The subtrahend must be exact: subtracting a value known only from
        below admits no sound lower bound for the difference.
        """
        if self.is_infinite:
            return OrderVal.infinite()
        if other.is_infinite:
            raise ValueError("finite minus infinite order is undefined here")
        if not other.is_exact:
            raise ValueError("cannot subtract an order known only from below")
        if self.is_exact:
            return OrderVal.exact(self.value - other.value)
        return OrderVal.at_least(self.value - other.value)

    def le(self, bound):
        """Three-valued `true order <= bound`: True, False, or None (unknown)."""
        bound = as_frac(bound)
        if self.is_infinite:
            return False
        if self.is_exact:
            return self.value <= bound
        # at-least: order in [value, inf]
        if self.value > bound:
            return False
        return None

    def sort_key(self):
        rank = {self.EXACT: 0, self.ATLEAST: 1, self.INFINITE: 2}[self.kind]
        return (self.lower, rank)

    @staticmethod
    def min_of(vals) -> "OrderVal":
        vals = list(vals)
        if not vals:
            raise ValueError("min of empty order list")
        lo = min(v.lower for v in vals)
        # exact witness at the global lower bound pins the minimum
        for v in vals:
            if v.is_exact and v.value == lo:
                return v
        if lo == INF:
            return OrderVal.infinite()
        return OrderVal.at_least(lo)

    @staticmethod
    def max_of(vals) -> "OrderVal":
        vals = list(vals)
        if not vals:
            raise ValueError("max of empty order list")
        if any(v.is_infinite for v in vals):
            return OrderVal.infinite()
        hi = max(v.lower for v in vals)
        if all(v.is_exact for v in vals):
            return OrderVal.exact(hi)
        return OrderVal.at_least(hi)

    @staticmethod
    def sum_of(vals) -> "OrderVal":
        total = OrderVal.exact(0)
        for v in vals:
            total = total + v
        return total

    def to_json(self):
        if self.is_infinite:
            return {"kind": "inf"}
        return {"kind": self.kind, "value": frac_str(self.value)}

    @classmethod
    def from_json(cls, obj):
        if obj["kind"] == "inf":
            return cls.infinite()
        return cls(obj["kind"], Fraction(obj["value"]))


class PSeries:
    """Truncated Puiseux series: finitely many exact terms below `trunc`."""

    __slots__ = ("var", "terms", "trunc")

    def __init__(self, var, terms, trunc=INF):
        if not isinstance(var, str) or not var:
            raise ValueError("series variable must be a nonempty string")
        if trunc != INF:
            trunc = as_frac(trunc)
            if trunc <= 0:
                raise ValueError("truncation bound must be positive")
        clean = {}
        for e, c in terms.items():
            e = as_frac(e)
            c = as_frac(c)
            if c == 0:
                continue
            if e < 0:
                raise ValueError(f"negative exponent {e} in series")
            if e >= trunc:
                continue  # at/beyond the truncation bound: unknown, drop
            clean[e] = c
        self.var = var
        self.terms = clean
        self.trunc = trunc

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, var, trunc=INF):
        return cls(var, {}, trunc)

    @classmethod
    def one(cls, var):
        return cls(var, {_ZERO: _ONE})

    @classmethod
    def const(cls, var, c):
        return cls(var, {_ZERO: as_frac(c)})

    @classmethod
    def monomial(cls, var, e, c=1, trunc=INF):
        return cls(var, {as_frac(e): as_frac(c)}, trunc)

    # -- basic queries ------------------------------------------------------

    @property
    def ram(self) -> int:
        """Ramification index: lcm of the exponent denominators present."""
        n = 1
        for e in self.terms:
            n = n * e.denominator // math.gcd(n, e.denominator)
        return n

    @property
    def is_exactly_zero(self) -> bool:
        return not self.terms and self.trunc == INF

    def order(self) -> OrderVal:
        """ps_ord: Exact for a witnessed least exponent, AtLeast(trunc) when
        no terms are stored, Infinite only for exactly-known zero."""
        if self.terms:
            return OrderVal.exact(min(self.terms))
        if self.trunc == INF:
            return OrderVal.infinite()
        return OrderVal.at_least(self.trunc)

    def coeff(self, e) -> Fraction:
        return self.terms.get(as_frac(e), _ZERO)

    def max_exp(self):
        return max(self.terms) if self.terms else None

    def sorted_terms(self):
        return sorted(self.terms.items())

    # -- arithmetic ----------------------------------------------------------

    def _check_var(self, other):
        if self.var != other.var:
            raise ValueError(
                f"series variable mismatch: {self.var!r} vs {other.var!r}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PSeries.const(self.var, other)
        if not isinstance(other, PSeries):
            return NotImplemented
        self._check_var(other)
        trunc = min(self.trunc, other.trunc)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, _ZERO) + c
        return PSeries(self.var, terms, trunc)

    __radd__ = __add__

    def __neg__(self):
        return PSeries(self.var, {e: -c for e, c in self.terms.items()},
                       self.trunc)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PSeries.const(self.var, other)
        if not isinstance(other, PSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = as_frac(c)
        if c == 0:
            return PSeries.zero(self.var, self.trunc)
        return PSeries(self.var, {e: c * k for e, k in self.terms.items()},
                       self.trunc)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, PSeries):
            return NotImplemented
        self._check_var(other)
        # product known below min(T_a + ord_lb(b), T_b + ord_lb(a))
        trunc = min(self.trunc + other.order().lower,
                    other.trunc + self.order().lower)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                if e >= trunc:
                    continue
                terms[e] = terms.get(e, _ZERO) + c1 * c2
        return PSeries(self.var, terms, trunc)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("series power wants a nonnegative integer")
        result = PSeries.one(self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, PSeries):
            return NotImplemented
        return (self.var == other.var and self.terms == other.terms
                and self.trunc == other.trunc)

    def __hash__(self):
        return hash((self.var, tuple(sorted(self.terms.items())), self.trunc))

    def truncated(self, trunc):
        return PSeries(self.var, self.terms, min(self.trunc, trunc))

    def is_zero(self) -> bool:
        """No stored terms (exactly zero, or zero as far as known)."""
        return not self.terms

    def substitute(self, g: "PSeries") -> "PSeries":
        """Composition f(g) for f with integer exponents and ord(g) > 0."""
        for e in self.terms:
            if e.denominator != 1:
                raise ValueError(
                    "substitution into fractional-exponent series is undefined")
        w = g.order().lower  # certified lower bound on ord(g)
        if w <= 0:
            raise ValueError("substitution requires a series of positive order")
        # the unknown tail of f sits beyond trunc(f)*ord(g); g's own
        # truncation is threaded through the arithmetic below
        trunc = INF if self.trunc == INF else self.trunc * w
        exps = sorted({int(e) for e in self.terms}, reverse=True)
        if not exps:
            return PSeries.zero(g.var, trunc)
        # Horner over descending integer exponents
        result = PSeries.zero(g.var, INF)
        prev = None
        for e in exps:
            if prev is not None:
                for _ in range(prev - e):
                    result = result * g
            result = result + self.terms[Fraction(e)]
            prev = e
        for _ in range(prev):
            result = result * g
        return result.truncated(trunc)

    def div_exact(self, b: "PSeries", max_exp=None) -> "PSeries":
        """Quotient self/b when b divides self in the Puiseux-polynomial ring.

        Used by fraction-free elimination, which guarantees divisibility for
        exactly-known data; raises ConsistencyError when division fails.
        Truncated inputs yield a correctly truncated quotient.
        """
        self._check_var(b)
        if b.is_zero():
            if b.trunc != INF:
                raise TruncationError("division by a series with no known terms",
                                      required=b.trunc)
            raise ZeroDivisionError("series division by exact zero")
        ob = min(b.terms)
        lead_b = b.terms[ob]
        # quotient known below this bound
        if self.trunc == INF and b.trunc == INF:
            q_trunc = INF
        else:
            oa = self.order().lower
            q_trunc = min(self.trunc - ob, b.trunc + oa - 2 * ob)
        if max_exp is None:
            if self.trunc == INF:
                me = self.max_exp()
                bx = b.max_exp()
                max_exp = (me - ob) if me is not None else _ZERO
                # exact polynomial divisibility cannot exceed this
            else:
                max_exp = q_trunc
        rem = dict(self.terms)
        out = {}
        while rem:
            e = min(rem)
            qe = e - ob
            if qe >= q_trunc:
                break
            if qe > max_exp or qe < 0:
                raise ConsistencyError(
                    "series division left a nonzero remainder")
            qc = rem[e] / lead_b
            out[qe] = qc
            for eb, cb in b.terms.items():
                k = qe + eb
                v = rem.get(k, _ZERO) - qc * cb
                if v == 0:
                    rem.pop(k, None)
                else:
                    rem[k] = v
        if rem and q_trunc == INF:
            raise ConsistencyError("series division left a nonzero remainder")
        return PSeries(self.var, out, q_trunc)

    # -- serialization -------------------------------------------------------

    def to_json(self):
        return {
            "var": self.var,
            "ram": self.ram,
            "trunc": _trunc_str(self.trunc),
            "terms": [{"e": frac_str(e), "c": frac_str(c)}
                      for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, obj):
        terms = {Fraction(t["e"]): Fraction(t["c"]) for t in obj["terms"]}
        s = cls(obj["var"], terms, _trunc_parse(obj["trunc"]))
        if "ram" in obj and s.ram != obj["ram"]:
            raise ValueError(
                f"ramification field {obj['ram']} does not match exponents")
        return s

    def __repr__(self):
        if not self.terms:
            body = "0"
        else:
            parts = []
            for e, c in self.sorted_terms():
                if e == 0:
                    parts.append(frac_str(c))
                else:
                    cs = "" if c == 1 else ("-" if c == -1 else frac_str(c) + "*")
                    es = self.var if e == 1 else f"{self.var}^{frac_str(e)}"
                    parts.append(f"{cs}{es}")
            body = " + ".join(parts).replace("+ -", "- ")
        if self.trunc == INF:
            return body
        return f"{body} + O({self.var}^{frac_str(self.trunc)})"


# Functional aliases over the methods.

def ps_add(a: PSeries, b: PSeries) -> PSeries:
    return a + b


def ps_mul(a: PSeries, b: PSeries) -> PSeries:
    return a * b


def ps_ord(a: PSeries) -> OrderVal:
    return a.order()


def ps_substitute(f: PSeries, g: PSeries) -> PSeries:
    return f.substitute(g)
