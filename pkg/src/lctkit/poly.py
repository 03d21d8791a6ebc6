"""Exact polynomial arithmetic: multivariate polynomials over Q, monic
univariate polynomials over polynomial or series coefficients, resultants,
Taylor shifts, reduction of symmetric polynomials to elementary symmetric
ones, and the auxiliary monic polynomials whose roots are products,
differences, or polynomial images of the roots of a given polynomial.

Resultants take two routes depending on the coefficient domain: a
fraction-free subresultant remainder sequence when the coefficients are
series (keeps truncation loss in check), and a Sylvester determinant via
fraction-free Bareiss elimination for the small symbolic cases.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .errors import BudgetError, ConsistencyError
from .series import PSeries, as_frac, frac_str

# Degree caps for the cached symbolic constructions (configurable).
COMPOUND_BUDGET = 4
DIFFERENCE_BUDGET = 4

_ZERO = Fraction(0)


class MPoly:
    """Multivariate polynomial over Q: ordered variable tuple plus a map
    exponent-vector -> nonzero rational coefficient."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms):
        vars = tuple(vars)
        clean = {}
        for exps, c in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(vars):
                raise ValueError("exponent arity does not match variables")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent in polynomial")
            c = as_frac(c)
            if c:
                clean[exps] = c
        self.vars = vars
        self.terms = clean

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, vars=()):
        return cls(vars, {})

    @classmethod
    def const(cls, c, vars=()):
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): as_frac(c)})

    @classmethod
    def variable(cls, name, vars=None):
        if vars is None:
            vars = (name,)
        vars = tuple(vars)
        exps = tuple(1 if v == name else 0 for v in vars)
        if sum(exps) != 1:
            raise ValueError(f"variable {name!r} not in {vars}")
        return cls(vars, {exps: Fraction(1)})

    # -- structure -----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_const(self):
        return all(not any(e) for e in self.terms)

    def const_value(self):
        if not self.terms:
            return _ZERO
        [(exps, c)] = self.terms.items()
        if any(exps):
            raise ValueError("not a constant polynomial")
        return c

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def with_vars(self, vars):
        """Reinterpret over a superset of variables (order given by `vars`)."""
        vars = tuple(vars)
        pos = {v: i for i, v in enumerate(vars)}
        terms = {}
        for exps, c in self.terms.items():
            new = [0] * len(vars)
            for v, e in zip(self.vars, exps):
                if e:
                    if v not in pos:
                        raise ValueError(f"variable {v!r} missing from {vars}")
                    new[pos[v]] = e
            terms[tuple(new)] = terms.get(tuple(new), _ZERO) + c
        return MPoly(vars, terms)

    @staticmethod
    def _common_vars(a, b):
        if a.vars == b.vars:
            return a.vars
        return tuple(sorted(set(a.vars) | set(b.vars)))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other, self.vars)
        if not isinstance(other, MPoly):
            return NotImplemented
        vars = MPoly._common_vars(self, other)
        a = self if self.vars == vars else self.with_vars(vars)
        b = other if other.vars == vars else other.with_vars(vars)
        terms = dict(a.terms)
        for exps, c in b.terms.items():
            terms[exps] = terms.get(exps, _ZERO) + c
        return MPoly(vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other, self.vars)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = as_frac(c)
        if c == 0:
            return MPoly.zero(self.vars)
        return MPoly(self.vars, {e: c * k for e, k in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        vars = MPoly._common_vars(self, other)
        a = self if self.vars == vars else self.with_vars(vars)
        b = other if other.vars == vars else other.with_vars(vars)
        terms = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms.get(e, _ZERO) + c1 * c2
        return MPoly(vars, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial power wants a nonnegative integer")
        result = MPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        if self.vars == other.vars:
            return self.terms == other.terms
        vars = MPoly._common_vars(self, other)
        return self.with_vars(vars).terms == other.with_vars(vars).terms

    def __hash__(self):
        return hash((self.vars, tuple(sorted(self.terms.items()))))

    # -- lex order & exact division -------------------------------------------

    def lex_lead(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms)
        return e, self.terms[e]

    def div_exact(self, b: "MPoly") -> "MPoly":
        """Exact quotient self/b; raises ConsistencyError if b does not
        divide self."""
        if b.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        vars = MPoly._common_vars(self, b)
        a = self if self.vars == vars else self.with_vars(vars)
        bb = b if b.vars == vars else b.with_vars(vars)
        if bb.is_const():
            return a.scale(1 / bb.const_value())
        lead_b, lc_b = bb.lex_lead()
        rem = dict(a.terms)
        out = {}
        while rem:
            m = max(rem)
            diff = tuple(x - y for x, y in zip(m, lead_b))
            if any(e < 0 for e in diff):
                raise ConsistencyError("polynomial division is not exact")
            c = rem[m] / lc_b
            out[diff] = c
            for eb, cb in bb.terms.items():
                k = tuple(x + y for x, y in zip(diff, eb))
                v = rem.get(k, _ZERO) - c * cb
                if v == 0:
                    rem.pop(k, None)
                else:
                    rem[k] = v
        return MPoly(vars, out)

    # -- substitution & evaluation --------------------------------------------

    def substitute(self, mapping) -> "MPoly":
        """Map some variables to MPoly/rational values; others stay symbolic."""
        out = None
        for exps, c in self.terms.items():
            term = MPoly.const(c)
            for v, e in zip(self.vars, exps):
                if not e:
                    continue
                val = mapping.get(v)
                if val is None:
                    val = MPoly.variable(v)
                elif isinstance(val, (int, Fraction)):
                    val = MPoly.const(val)
                term = term * val ** e
            out = term if out is None else out + term
        return MPoly.zero(()) if out is None else out

    def eval_series(self, mapping, out_var=None) -> PSeries:
        """Evaluate at series values for every variable."""
        var = out_var
        for s in mapping.values():
            if var is None:
                var = s.var
            elif s.var != var:
                raise ValueError("series arguments use different variables")
        if var is None:
            var = "t"
        total = PSeries.zero(var)
        pow_cache = {}
        for exps, c in self.terms.items():
            term = PSeries.const(var, c)
            for v, e in zip(self.vars, exps):
                if not e:
                    continue
                if v not in mapping:
                    raise ValueError(f"no series value for variable {v!r}")
                key = (v, e)
                if key not in pow_cache:
                    pow_cache[key] = mapping[v] ** e
                term = term * pow_cache[key]
            total = total + term
        return total

    def eval_frac(self, mapping) -> Fraction:
        total = _ZERO
        for exps, c in self.terms.items():
            val = c
            for v, e in zip(self.vars, exps):
                if e:
                    val *= as_frac(mapping[v]) ** e
            total += val
        return total

    def permuted(self, rename) -> "MPoly":
        """Apply a variable renaming (a dict), keeping the variable set."""
        new_names = [rename.get(v, v) for v in self.vars]
        if sorted(new_names) != sorted(self.vars):
            raise ValueError("renaming must permute the variable set")
        pos = {v: i for i, v in enumerate(self.vars)}
        terms = {}
        for exps, c in self.terms.items():
            new = [0] * len(exps)
            for v, e in zip(new_names, exps):
                new[pos[v]] = e
            terms[tuple(new)] = c
        return MPoly(self.vars, terms)

    # -- serialization ---------------------------------------------------------

    def to_json(self):
        return {
            "vars": list(self.vars),
            "terms": [{"exps": list(e), "c": frac_str(c)}
                      for e, c in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, obj):
        return cls(tuple(obj["vars"]),
                   {tuple(t["exps"]): Fraction(t["c"]) for t in obj["terms"]})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in sorted(self.terms.items(), reverse=True):
            factors = [f"{v}^{e}" if e > 1 else v
                       for v, e in zip(self.vars, exps) if e]
            if not factors:
                parts.append(frac_str(c))
            else:
                body = "*".join(factors)
                if c == 1:
                    parts.append(body)
                elif c == -1:
                    parts.append(f"-{body}")
                else:
                    parts.append(f"{frac_str(c)}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# Coefficient-domain helpers shared by UPoly / resultants.  Elements are
# either MPoly or PSeries; both support +, -, *, scale, is_zero, div_exact.
# ---------------------------------------------------------------------------

def _lift(value, template):
    """Coerce ints/Fractions into the domain of `template`."""
    if isinstance(value, (int, Fraction)):
        if isinstance(template, PSeries):
            return PSeries.const(template.var, value)
        return MPoly.const(value, template.vars)
    return value


def _dom_one(template):
    if isinstance(template, PSeries):
        return PSeries.one(template.var)
    return MPoly.const(1, template.vars)


def _dpow(x, n):
    out = _dom_one(x)
    while n:
        if n & 1:
            out = out * x
        n >>= 1
        if n:
            x = x * x
    return out


class UPoly:
    """Monic univariate polynomial y^d + a_1 y^(d-1) + ... + a_d with
    coefficients a_i in one shared domain (MPoly or PSeries)."""

    __slots__ = ("var", "coeffs")

    def __init__(self, var, coeffs):
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("UPoly degree must be positive")
        template = next((c for c in coeffs
                         if isinstance(c, (MPoly, PSeries))), None)
        if template is None:
            raise ValueError(
                "coefficients must include at least one MPoly or PSeries")
        coeffs = [_lift(c, template) for c in coeffs]
        kinds = {type(c) for c in coeffs}
        if len(kinds) != 1:
            raise ValueError("coefficient domain must be homogeneous")
        if isinstance(template, PSeries):
            svars = {c.var for c in coeffs}
            if len(svars) != 1:
                raise ValueError("series coefficients use different variables")
        self.var = var
        self.coeffs = tuple(coeffs)

    @property
    def degree(self):
        return len(self.coeffs)

    @property
    def is_series(self):
        return isinstance(self.coeffs[0], PSeries)

    def coeff(self, i):
        """a_i for 1 <= i <= d; a_0 is the implicit leading 1."""
        if i == 0:
            return _dom_one(self.coeffs[0])
        return self.coeffs[i - 1]

    def dense(self):
        """Descending coefficient list [1, a_1, ..., a_d]."""
        return [_dom_one(self.coeffs[0])] + list(self.coeffs)

    @classmethod
    def from_roots(cls, var, roots):
        """Monic product of (y - r) over the given domain elements."""
        roots = list(roots)
        if not roots:
            raise ValueError("need at least one root")
        template = roots[0]
        dense = [_dom_one(template)]
        for r in roots:
            r = _lift(r, template)
            dense.append(_lift(0, template))
            for i in range(len(dense) - 2, -1, -1):
                shifted = dense[i] * r
                dense[i + 1] = dense[i + 1] - shifted
        return cls(var, dense[1:])

    def evaluate(self, w):
        """h(w) by Horner; w in the coefficient domain."""
        w = _lift(w, self.coeffs[0])
        acc = _dom_one(self.coeffs[0])
        for a in self.coeffs:
            acc = acc * w + a
        return acc

    def __eq__(self, other):
        if not isinstance(other, UPoly):
            return NotImplemented
        return self.var == other.var and self.coeffs == other.coeffs

    def __repr__(self):
        y = self.var
        parts = [f"{y}^{self.degree}"]
        for i, a in enumerate(self.coeffs, start=1):
            if isinstance(a, PSeries) and a.is_zero():
                continue
            if isinstance(a, MPoly) and a.is_zero():
                continue
            e = self.degree - i
            ys = "" if e == 0 else (y if e == 1 else f"{y}^{e}")
            parts.append(f"({a!r}){ys}" if ys else f"({a!r})")
        return " + ".join(parts)


def taylor_shift(h: UPoly, w) -> UPoly:
    """h(y + w): synthetic Pascal-style shift, O(d^2) ring operations.

    `w` may be a domain element, a rational, or a fresh symbol name (for
    polynomial-coefficient input).
    """
    if isinstance(w, str):
        if h.is_series:
            raise ValueError("symbolic shift requires polynomial coefficients")
        w = MPoly.variable(w)
    w = _lift(w, h.coeffs[0])
    c = h.dense()
    d = h.degree
    for i in range(d):
        for j in range(1, d + 1 - i):
            c[j] = c[j] + w * c[j - 1]
    return UPoly(h.var, c[1:])


# ---------------------------------------------------------------------------
# Resultants
# ---------------------------------------------------------------------------

def _strip(f):
    i = 0
    while i < len(f) and f[i].is_zero():
        i += 1
    return f[i:]


def _prem(f, g):
    """Pseudo-remainder lc(g)^(deg f - deg g + 1) * f mod g (dense, descending)."""
    df, dg = len(f) - 1, len(g) - 1
    if df < dg:
        raise ValueError("pseudo-remainder needs deg f >= deg g")
    l = g[0]
    r = list(f)
    n = df - dg + 1
    while r and len(r) - 1 >= dg:
        lcr = r[0]
        # l*r - lcr*g*x^(deg r - dg); the leading terms cancel exactly
        r = [l * c for c in r[1:]]
        for i in range(dg):
            r[i] = r[i] - lcr * g[i + 1]
        r = _strip(r)
        n -= 1
    if n > 0:
        scale = _dpow(l, n)
        r = [scale * c for c in r]
    return r


def _prs_resultant(f, g):
    """Resultant of dense descending coefficient lists over a shared domain,
    by the subresultant PRS (Brown's algorithm)."""
    f, g = _strip(list(f)), _strip(list(g))
    if not f or not g:
        raise ValueError("resultant of the zero polynomial")
    n, m = len(f) - 1, len(g) - 1
    sign = 1
    if n < m:
        f, g = g, f
        n, m = m, n
        if n % 2 and m % 2:
            sign = -sign
    one = _dom_one(f[0])
    if n == 0:
        return one  # two nonzero constants
    if m == 0:
        res = _dpow(g[0], n)
        return res if sign == 1 else -res
    d = n - m
    b = one if (d + 1) % 2 == 0 else -one
    h = _prem(f, g)
    h = [b * c for c in h]
    lc = g[0]
    c = _dpow(lc, d)
    subres = [one, c]
    c = -c
    while h:
        k = len(h) - 1
        f, g = g, h
        d = m - k
        m = k
        bb = -(lc * _dpow(c, d))
        h = _prem(f, g)
        h = [x.div_exact(bb) for x in h]
        lc = g[0]
        if d > 1:
            q = _dpow(c, d - 1)
            c = _dpow(-lc, d).div_exact(q)
        else:
            c = -lc
        subres.append(-c)
    if len(g) - 1 > 0:
        # nonconstant gcd: resultant vanishes
        if isinstance(one, PSeries):
            return PSeries.zero(one.var)
        return MPoly.zero(one.vars)
    res = subres[-1]
    return res if sign == 1 else -res


def _sylvester_matrix(f, g):
    """Sylvester matrix rows for dense descending lists (deg >= 1 each)."""
    n, m = len(f) - 1, len(g) - 1
    size = n + m
    one = _dom_one(f[0])
    zero = one - one
    rows = []
    for i in range(m):
        rows.append([zero] * i + list(f) + [zero] * (size - n - 1 - i))
    for i in range(n):
        rows.append([zero] * i + list(g) + [zero] * (size - m - 1 - i))
    return rows


def _bareiss_det(mat):
    """Fraction-free determinant with pivoting; consumes `mat`."""
    n = len(mat)
    if n == 0:
        raise ValueError("empty matrix")
    sign = 1
    prev = None
    for k in range(n - 1):
        if mat[k][k].is_zero():
            pivot = next((r for r in range(k + 1, n)
                          if not mat[r][k].is_zero()), None)
            if pivot is None:
                return mat[k][k]  # a zero of the right domain
            mat[k], mat[pivot] = mat[pivot], mat[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = mat[k][k] * mat[i][j] - mat[i][k] * mat[k][j]
                mat[i][j] = num if prev is None else num.div_exact(prev)
            mat[i][k] = mat[i][k] - mat[i][k]  # zero out
        prev = mat[k][k]
    det = mat[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant(f: UPoly, g: UPoly):
    """Classical resultant eliminating the shared main variable; vanishes
    iff f and g have a common root."""
    if f.var != g.var:
        raise ValueError("resultant requires a shared main variable")
    if f.degree < 1 or g.degree < 1:
        raise ValueError("resultant needs positive-degree inputs")
    return resultant_lists(f.dense(), g.dense())


def resultant_lists(fd, gd):
    """Resultant of dense descending coefficient lists (general leading
    coefficients allowed)."""
    fd, gd = _strip(list(fd)), _strip(list(gd))
    if not fd or not gd:
        raise ValueError("resultant of the zero polynomial")
    template = fd[0]
    if isinstance(template, PSeries):
        return _prs_resultant(fd, gd)
    if len(fd) == 1 or len(gd) == 1:
        return _prs_resultant(fd, gd)
    return _bareiss_det(_sylvester_matrix(fd, gd))


# ---------------------------------------------------------------------------
# Symmetric polynomials
# ---------------------------------------------------------------------------

def _root_vars(d):
    return tuple(f"r{i}" for i in range(1, d + 1))


@lru_cache(maxsize=None)
def _elem_sym(d, i):
    """Elementary symmetric polynomial e_i in the d root variables."""
    vars = _root_vars(d)
    terms = {}
    for subset in itertools.combinations(range(d), i):
        exps = tuple(1 if j in subset else 0 for j in range(d))
        terms[exps] = Fraction(1)
    return MPoly(vars, terms)


def _is_symmetric(p: MPoly, vars) -> bool:
    for i in range(len(vars) - 1):
        swap = {vars[i]: vars[i + 1], vars[i + 1]: vars[i]}
        if p.permuted(swap) != p:
            return False
    return True


def symmetric_reduce(p: MPoly, evars=None) -> MPoly:
    """Rewrite a symmetric polynomial in the r_i as a polynomial in the
    elementary symmetric polynomials e_1..e_d, by lex leading-term
    subtraction.  Raises ValueError on non-symmetric input."""
    d = len(p.vars)
    vars = _root_vars(d)
    if p.vars != vars:
        p = p.with_vars(vars)
    if not _is_symmetric(p, vars):
        raise ValueError("input polynomial is not symmetric")
    if evars is None:
        evars = tuple(f"e{i}" for i in range(1, d + 1))
    evars = tuple(evars)
    work = p
    out = MPoly.zero(evars)
    while not work.is_zero():
        lead, c = work.lex_lead()
        if any(lead[i] < lead[i + 1] for i in range(d - 1)):
            raise ConsistencyError(
                "leading exponent of a symmetric polynomial must be sorted")
        mu = [lead[i] - (lead[i + 1] if i + 1 < d else 0) for i in range(d)]
        emono = MPoly(evars, {tuple(mu): c})
        out = out + emono
        sub = MPoly.const(c, _root_vars(d))
        for i, m in enumerate(mu, start=1):
            if m:
                sub = sub * _elem_sym(d, i) ** m
        work = work - sub
    return out


def _subst_e_to_z(q: MPoly, d) -> MPoly:
    """Substitute e_i -> (-1)^i z_i (the sign convention a_i = (-1)^i s_i)."""
    mapping = {}
    for i in range(1, d + 1):
        zi = MPoly.variable(f"z{i}")
        mapping[f"e{i}"] = zi if i % 2 == 0 else -zi
    return q.substitute(mapping).with_vars(z_vars(d))


def z_vars(d):
    return tuple(f"z{i}" for i in range(1, d + 1))


def _dense_from_root_exprs(root_exprs):
    """Descending coefficients of the monic product of (y - r) over MPoly."""
    template = root_exprs[0]
    dense = [MPoly.const(1, template.vars)]
    for r in root_exprs:
        dense.append(MPoly.zero(template.vars))
        for i in range(len(dense) - 2, -1, -1):
            dense[i + 1] = dense[i + 1] - dense[i] * r
    return dense


@lru_cache(maxsize=None)
def generic_compound_coeffs(d, k):
    """Coefficients (as MPoly in z_1..z_d) of the monic polynomial whose
    roots are the products of k distinct roots of the generic monic degree-d
    polynomial; entry index ell carries (-1)^ell s_ell of the products."""
    if not 1 <= k <= d:
        raise ValueError("k out of range")
    if d > COMPOUND_BUDGET:
        raise BudgetError(f"symbolic compound construction capped at degree "
                          f"{COMPOUND_BUDGET}; use the numeric route")
    vars = _root_vars(d)
    rs = [MPoly.variable(v, vars) for v in vars]
    prods = []
    for subset in itertools.combinations(range(d), k):
        p = MPoly.const(1, vars)
        for j in subset:
            p = p * rs[j]
        prods.append(p)
    dense = _dense_from_root_exprs(prods)
    out = []
    for coeff in dense[1:]:
        reduced = symmetric_reduce(coeff)
        out.append(_subst_e_to_z(reduced, d))
    return tuple(out)


@lru_cache(maxsize=None)
def generic_difference_coeffs(d):
    """Coefficients (MPoly in z_1..z_d) of the monic polynomial of degree
    d(d-1) whose roots are the ordered pairwise root differences."""
    if d < 2:
        raise ValueError("difference polynomial needs degree >= 2")
    if d > DIFFERENCE_BUDGET:
        raise BudgetError(f"symbolic difference construction capped at degree "
                          f"{DIFFERENCE_BUDGET}")
    vars = _root_vars(d)
    rs = [MPoly.variable(v, vars) for v in vars]
    diffs = [rs[i] - rs[j]
             for i in range(d) for j in range(d) if i != j]
    dense = _dense_from_root_exprs(diffs)
    return tuple(_subst_e_to_z(symmetric_reduce(c), d) for c in dense[1:])


def _eval_generic(coeff_polys, h: UPoly):
    d = h.degree
    if h.is_series:
        mapping = {f"z{i}": h.coeff(i) for i in range(1, d + 1)}
        return [c.eval_series(mapping, out_var=h.coeffs[0].var)
                for c in coeff_polys]
    mapping = {f"z{i}": h.coeff(i) for i in range(1, d + 1)}
    return [c.substitute(mapping) for c in coeff_polys]


def compound_poly(h: UPoly, k: int) -> UPoly:
    """Monic polynomial whose roots are the products of k distinct roots
    of h (degree C(d, k))."""
    d = h.degree
    if not 1 <= k <= d:
        raise ValueError("k out of range")
    coeffs = _eval_generic(generic_compound_coeffs(d, k), h)
    return UPoly(h.var, coeffs)


def _interp_nodes(count):
    nodes = []
    k = 1
    while len(nodes) < count:
        nodes.append(Fraction(k))
        if len(nodes) < count:
            nodes.append(Fraction(-k))
        k += 1
    return nodes


def _lagrange_coeffs(nodes, values):
    """Dense descending coefficients of the interpolating polynomial through
    (node, value); nodes rational, values domain elements."""
    n = len(nodes)
    master = [Fraction(1)]
    for r in nodes:
        master.append(Fraction(0))
        for i in range(len(master) - 2, -1, -1):
            master[i + 1] -= master[i] * r
    zero = values[0] - values[0]
    out = [zero] * n
    for j, r in enumerate(nodes):
        # basis numerator: master / (y - r), by synthetic division
        basis = [Fraction(1)]
        for i in range(1, n):
            basis.append(master[i] + basis[-1] * r)
        denom = Fraction(1)
        for i, rr in enumerate(nodes):
            if i != j:
                denom *= r - rr
        scale = 1 / denom
        for i in range(n):
            out[i] = out[i] + values[j].scale(basis[i] * scale)
    return out


def difference_poly(h: UPoly) -> UPoly:
    """Monic polynomial of degree d(d-1) whose roots are the ordered pairwise
    differences of the roots of h; realized through the resultant of h(z)
    and h(z+y) with the d trivial zero roots removed."""
    d = h.degree
    if d < 2:
        raise ValueError("difference polynomial needs degree >= 2")
    if h.is_series:
        big_d = d * (d - 1)
        nodes = _interp_nodes(big_d + 1)
        fd = h.dense()
        values = []
        for r in nodes:
            gd = taylor_shift(h, r).dense()
            res = resultant_lists(fd, gd)
            values.append(res.scale(Fraction(1, 1) / r ** d))
        coeffs = _lagrange_coeffs(nodes, values)
        lead = coeffs[0]
        if not (lead - PSeries.one(lead.var)).is_zero():
            raise ConsistencyError("difference polynomial is not monic")
        return UPoly(h.var, coeffs[1:])
    coeffs = _eval_generic(generic_difference_coeffs(d), h)
    return UPoly(h.var, coeffs)


def value_poly(h: UPoly, G: MPoly) -> UPoly:
    """Monic degree-d polynomial whose roots are G(a_1..a_d, alpha_i) over
    the roots alpha_i of h; realized as the resultant in w of h(w) and
    y - G(a, w), interpolated through rational y-values."""
    d = h.degree
    wvar = "w"
    if wvar not in G.vars:
        G = G.with_vars(tuple(G.vars) + (wvar,))
    # split G by powers of w, substituting the actual coefficients for z_i
    wpos = G.vars.index(wvar)
    template = h.coeffs[0]
    by_w = {}
    for exps, c in G.terms.items():
        wexp = exps[wpos]
        rest = {v: e for v, e in zip(G.vars, exps) if v != wvar and e}
        mono = _lift(c, template)
        for v, e in rest.items():
            if not v.startswith("z"):
                raise ValueError(f"unexpected variable {v!r} in G")
            i = int(v[1:])
            if not 1 <= i <= d:
                raise ValueError(f"variable {v!r} outside z1..z{d}")
            mono = mono * _dpow(h.coeff(i), e)
        by_w[wexp] = by_w.get(wexp, mono - mono) + mono
    wdeg = max(by_w) if by_w else 0
    zero = template - template
    g_base = [by_w.get(e, zero) for e in range(wdeg, -1, -1)]
    nodes = _interp_nodes(d + 1)
    fd = h.dense()
    one = _dom_one(template)
    values = []
    for r in nodes:
        g = list(g_base)
        g = [-c for c in g]
        g[-1] = g[-1] + one.scale(r)
        g = _strip(g)
        if not g:
            values.append(zero)
            continue
        if len(g) == 1:
            values.append(_dpow(g[0], d))
            continue
        values.append(resultant_lists(fd, g))
    coeffs = _lagrange_coeffs(nodes, values)
    lead = coeffs[0]
    if not (lead - one).is_zero():
        raise ConsistencyError("value polynomial is not monic")
    return UPoly(h.var, coeffs[1:])


# ---------------------------------------------------------------------------
# Dense univariate polynomials over Q (helpers for squarefree structure,
# discriminants, and edge-polynomial checks).
# ---------------------------------------------------------------------------

def q_strip(f):
    i = 0
    while i < len(f) and f[i] == 0:
        i += 1
    return [as_frac(c) for c in f[i:]]


def q_deriv(f):
    n = len(f) - 1
    return q_strip([c * (n - i) for i, c in enumerate(f[:-1])])


def q_divmod(f, g):
    f, g = q_strip(f), q_strip(g)
    if not g:
        raise ZeroDivisionError
    if len(f) < len(g):
        return [], f
    r = list(f)
    q = []
    for _ in range(len(f) - len(g) + 1):
        c = r[0] / g[0]
        q.append(c)
        for i in range(1, len(g)):
            r[i] -= c * g[i]
        r.pop(0)
    return q_strip(q), q_strip(r)


def q_gcd_monic(f, g):
    f, g = q_strip(f), q_strip(g)
    while g:
        f, g = g, q_divmod(f, g)[1]
    if not f:
        return []
    return [c / f[0] for c in f]


def q_squarefree(f) -> bool:
    f = q_strip(f)
    if len(f) <= 1:
        return True
    return len(q_gcd_monic(f, q_deriv(f))) == 1


def _q_sub(f, g):
    n = max(len(f), len(g))
    f = [_ZERO] * (n - len(f)) + list(f)
    g = [_ZERO] * (n - len(g)) + list(g)
    return q_strip([x - y for x, y in zip(f, g)])


def q_squarefree_decomposition(f):
    """Yun's algorithm: list of (monic squarefree factor, multiplicity)."""
    f = q_strip(f)
    if len(f) <= 1:
        return []
    f = [c / f[0] for c in f]
    df = q_deriv(f)
    a = q_gcd_monic(f, df)
    b = q_divmod(f, a)[0]
    c = q_divmod(df, a)[0]
    d = _q_sub(c, q_deriv(b))
    out = []
    i = 1
    while len(b) > 1:
        a = q_gcd_monic(b, d)
        if len(a) > 1:
            out.append((a, i))
        b = q_divmod(b, a)[0]
        c = q_divmod(d, a)[0]
        d = _q_sub(c, q_deriv(b))
        i += 1
    return out


def q_eval(f, x):
    acc = _ZERO
    for c in f:
        acc = acc * x + c
    return acc


def q_resultant(f, g):
    """Resultant of dense rational coefficient lists (field arithmetic)."""
    f, g = q_strip(f), q_strip(g)
    if not f or not g:
        return _ZERO
    n, m = len(f) - 1, len(g) - 1
    if n == 0:
        return f[0] ** m
    if m == 0:
        return g[0] ** n
    _, r = q_divmod(f, g)
    if not r:
        return _ZERO
    k = len(r) - 1
    sign = Fraction(-1) if (n % 2 and m % 2) else Fraction(1)
    return sign * g[0] ** (n - k) * q_resultant(g, r)


def q_discriminant(f):
    """Discriminant of a dense rational polynomial (degree >= 1)."""
    f = q_strip(f)
    n = len(f) - 1
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    res = q_resultant(f, q_deriv(f))
    s = -1 if (n * (n - 1) // 2) % 2 else 1
    return s * res / f[0]
