"""Root-order data for monic polynomials over one-variable series.

The exact layer: Newton polygons with truncation-aware ordinates, root-order
multisets, partial sums of the smallest root orders (computed two independent
ways that must agree), and the maximum root order (again dual-route).

The numeric layer: Newton-Puiseux expansion with exact rational exponents and
arbitrary-precision complex coefficients, used to attach pairwise
root-difference orders to individual roots.  Every numerically derived order
is certified against an exact resultant-based computation; a mismatch
escalates precision and ultimately raises, never returning a silent answer.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction

import mpmath

from .errors import ConsistencyError, PrecisionError, TruncationError
from .poly import (
    UPoly, difference_poly, q_squarefree_decomposition, taylor_shift,
)
from .qideal import QIdeal, qi_ord, qi_power
from .series import INF, OrderVal, PSeries, as_frac, frac_str

_ZERO = Fraction(0)


def default_precision() -> int:
    return int(os.environ.get("LCTKIT_PRECISION", "256"))


# ---------------------------------------------------------------------------
# Newton polygon (exact)
# ---------------------------------------------------------------------------

class NewtonPolygon:
    """Lower hull of the coefficient-order points of a monic polynomial over
    series; the (negated) slopes are the root orders with multiplicity.

    `points` lists (i, ord(a_i)) for i = 0..d with a_0 = 1; the hull is over
    abscissa j = d - i with the anchor (d, 0) from the leading coefficient.
    `slopes` is the ascending multiset [(OrderVal, multiplicity)]; an entry
    may be Infinite when trailing coefficients vanish identically.
    """

    __slots__ = ("degree", "points", "hull", "slopes")

    def __init__(self, degree, points, hull, slopes):
        self.degree = degree
        self.points = points
        self.hull = hull
        self.slopes = slopes

    def order_list(self):
        """Root orders as a flat ascending list of OrderVal (length d)."""
        out = []
        for val, mult in self.slopes:
            out.extend([val] * mult)
        return out

    def to_json(self):
        return {"slopes": [[("inf" if v.is_infinite else frac_str(v.value)),
                            m] for v, m in self.slopes]}


def _lower_hull(points):
    """Lower convex hull vertices of (x, y) pairs with distinct x, sorted."""
    pts = sorted(points)
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # keep turn strictly convex: drop middle if on or above segment
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def _hull_value(hull, x):
    """Value of the piecewise-linear lower hull at abscissa x (hull covers x)."""
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        if x1 <= x <= x2:
            return y1 + (y2 - y1) * Fraction(x - x1, x2 - x1)
    if hull and x == hull[0][0]:
        return hull[0][1]
    raise ValueError("abscissa outside hull range")


def newton_polygon(h: UPoly) -> NewtonPolygon:
    """Exact Newton polygon; raises TruncationError when truncated coefficient
    data leaves the hull ambiguous (with a required-truncation hint)."""
    if not h.is_series:
        raise ValueError("newton_polygon expects series coefficients")
    d = h.degree
    points = [(0, OrderVal.exact(0))]
    for i in range(1, d + 1):
        points.append((i, h.coeff(i).order()))
    # abscissa j = d - i; anchor at (d, 0)
    exact_pts = []
    atleast_pts = []
    for i, ov in points:
        j = d - i
        if ov.is_exact:
            exact_pts.append((j, ov.value))
        elif ov.is_at_least:
            atleast_pts.append((j, ov.value))
    j_start = min(j for j, _ in exact_pts)
    for j, t in atleast_pts:
        if j < j_start:
            # an unknown coefficient below every known one: the hull's left
            # end (and the infinite-order root count) cannot be certified
            raise TruncationError(
                f"coefficient a_{d - j} is unknown below its truncation and "
                "controls the polygon", required=None)
    hull = _lower_hull(exact_pts)
    for j, t in atleast_pts:
        if j <= j_start:
            continue
        bound = _hull_value(hull, j)
        if t < bound:
            raise TruncationError(
                f"coefficient a_{d - j} is only known up to order {t}",
                required=bound)
    slopes = []
    if j_start > 0:
        slopes.append((OrderVal.infinite(), j_start))
    seg = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        q = Fraction(y1 - y2, x2 - x1)
        seg.append((OrderVal.exact(q), x2 - x1))
    seg.reverse()  # ascending root order
    slopes = seg + slopes
    merged = []
    for val, mult in slopes:
        if merged and merged[-1][0] == val:
            merged[-1] = (val, merged[-1][1] + mult)
        else:
            merged.append((val, mult))
    return NewtonPolygon(d, points, hull, merged)


def _lem1_ideal_order(h: UPoly) -> OrderVal:
    """Order of the ideal sum of (z_i)^(1/i) evaluated at the coefficients.

    Uses the semigroup law ord(sum) = min(ord): materializing the sum at a
    common denominator would raise generators to the lcm(1..d)-th power,
    which explodes for the large degrees this check runs on (difference
    polynomials reach degree d(d-1))."""
    d = h.degree
    vals = []
    for i in range(1, d + 1):
        a = h.coeff(i)
        if a.is_exactly_zero:
            continue
        vals.append(qi_ord(qi_power(QIdeal.principal(a), Fraction(1, i))))
    if not vals:
        return OrderVal.infinite()
    return OrderVal.min_of(vals)


def root_orders(h: UPoly):
    """Ascending multiset of root orders (slope multiset), with the smallest
    order checked against the coefficient-ideal route."""
    np = newton_polygon(h)
    orders = np.order_list()
    lem1 = _lem1_ideal_order(h)
    smallest = OrderVal.min_of(orders)
    if smallest != lem1:
        raise ConsistencyError(
            f"minimum root order {smallest!r} disagrees with the coefficient "
            f"ideal order {lem1!r}")
    return orders


def partial_sums(h: UPoly, k: int) -> OrderVal:
    """Sum of the k smallest root orders, computed both from the slope
    multiset and from the explicit coefficient recursion; the two must
    agree."""
    d = h.degree
    if not 1 <= k <= d:
        raise ValueError("k out of range")
    orders = root_orders(h)
    from_slopes = OrderVal.sum_of(orders[:k])
    prev = OrderVal.exact(0)
    from_rec = None
    for kk in range(1, k + 1):
        candidates = []
        for i in range(kk, d + 1):
            term = h.coeff(i).order().scale(Fraction(1, i - kk + 1)) + \
                prev.scale(Fraction(i - kk, i - kk + 1))
            candidates.append(term)
        prev = OrderVal.min_of(candidates)
    from_rec = prev
    if from_slopes != from_rec:
        raise ConsistencyError(
            f"partial sum routes disagree: {from_slopes!r} vs {from_rec!r}")
    return from_slopes


def max_root_order(h: UPoly) -> OrderVal:
    """Largest root order, from the slopes and from the complementary-product
    ideal formula ord(a_d) - min_i [ord(a_{d-i}) + (i-1) ord(a_d)]/i."""
    d = h.degree
    orders = root_orders(h)
    from_slopes = orders[-1]
    ad = h.coeff(d).order()
    if ad.is_infinite:
        if not from_slopes.is_infinite:
            raise ConsistencyError("vanishing a_d must give an infinite root")
        return from_slopes
    candidates = []
    for i in range(1, d + 1):
        low = OrderVal.exact(0) if i == d else h.coeff(d - i).order()
        term = (low + ad.scale(i - 1)).scale(Fraction(1, i))
        candidates.append(term)
    cval = OrderVal.min_of(candidates)
    if not cval.is_exact:
        raise TruncationError(
            "complementary-product order is not resolved by the data")
    from_formula = ad.sub(cval)
    if from_slopes != from_formula:
        raise ConsistencyError(
            f"max root order routes disagree: {from_slopes!r} vs "
            f"{from_formula!r}")
    return from_slopes


# ---------------------------------------------------------------------------
# Numeric series (exact rational exponents, arbitrary-precision complex
# coefficients); internal to the expansion machinery.
# ---------------------------------------------------------------------------

class _NSeries:
    __slots__ = ("terms", "trunc")

    def __init__(self, terms, trunc):
        self.terms = terms
        self.trunc = trunc

    @property
    def empty(self):
        return not self.terms

    def min_exp(self):
        return min(self.terms)


def _tolerances(prec):
    zero = mpmath.mpf(2) ** (-(prec // 2))
    gray = mpmath.mpf(2) ** (-(prec // 4))
    return zero, gray


def _ns_normalize(terms, trunc, prec):
    tol_zero, tol_gray = _tolerances(prec)
    clean = {}
    for e, c in terms.items():
        if trunc != INF and e >= trunc:
            continue
        m = abs(c)
        if m <= tol_zero:
            continue
        if m < tol_gray:
            raise PrecisionError(
                "coefficient indistinguishable from zero at the working "
                "tolerance")
        clean[e] = c
    return _NSeries(clean, trunc)


def _ns_from_pseries(ps: PSeries, prec) -> _NSeries:
    terms = {}
    for e, c in ps.terms.items():
        terms[e] = mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)
    return _NSeries(terms, ps.trunc)


def _series_terms_numeric(ps: PSeries):
    """Exact series as an ascending numeric term list [(exp, mpc)]."""
    return [(e, mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator))
            for e, c in ps.sorted_terms()]


# ---------------------------------------------------------------------------
# Newton-Puiseux expansion
# ---------------------------------------------------------------------------

class PuiseuxRootSet:
    """d root expansions: per root an ascending list of (exponent, complex
    coefficient) with every exponent below `depth`."""

    __slots__ = ("depth", "precision", "roots")

    def __init__(self, depth, precision, roots):
        self.depth = depth
        self.precision = precision
        self.roots = roots

    def __len__(self):
        return len(self.roots)


def _solve_char(phi_num, phi_exact, prec):
    """Roots of the characteristic polynomial with multiplicity structure.

    phi_num: descending mpc coefficients; phi_exact: matching Fractions when
    the data is exact (top level), else None.  Returns [(root, mult)].
    Exact data gets its multiplicities from a squarefree decomposition; the
    numeric fallback clusters by tolerance.
    """
    deg = len(phi_num) - 1
    if phi_exact is not None:
        out = []
        for factor, mult in q_squarefree_decomposition(phi_exact):
            coeffs = [mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)
                      for c in factor]
            if len(coeffs) == 2:
                roots = [-coeffs[1] / coeffs[0]]
            else:
                try:
                    roots = mpmath.polyroots(coeffs, maxsteps=200,
                                             extraprec=prec)
                except mpmath.libmp.libhyper.NoConvergence:
                    raise PrecisionError("characteristic roots did not "
                                         "converge")
            out.extend((r, mult) for r in roots)
        if sum(m for _, m in out) != deg:
            raise ConsistencyError("squarefree multiplicities do not add up")
        return out
    try:
        roots = mpmath.polyroots(phi_num, maxsteps=200, extraprec=2 * prec)
    except mpmath.libmp.libhyper.NoConvergence:
        raise PrecisionError("characteristic roots did not converge")
    tol_cluster = mpmath.mpf(2) ** (-(prec // 8))
    clusters = []
    for r in roots:
        for c in clusters:
            if abs(r - c[0]) < tol_cluster:
                c[1].append(r)
                break
        else:
            clusters.append([r, [r]])
    out = []
    for _, members in clusters:
        centroid = sum(members) / len(members)
        out.append((centroid, len(members)))
    return out


def _numeric_polygon(coeffs, depth):
    """Lower hull data for numeric coefficients c_0..c_d (ascending powers).

    Returns (j0, segments): j0 = count of low coefficients with no visible
    terms (their branches all have order >= depth or vanish identically);
    segments = [(j1, v1, j2, v2, slope)] with slope > 0 only.  Truncated
    empty coefficients are sound as long as any branch they could hide lies
    at or beyond `depth`.
    """
    d = len(coeffs) - 1
    j0 = 0
    while j0 <= d and coeffs[j0].empty:
        j0 += 1
    if j0 > d:
        raise ConsistencyError("numeric polynomial vanished identically")
    pts = [(j, coeffs[j].min_exp()) for j in range(j0, d + 1)
           if not coeffs[j].empty]
    hull = _lower_hull(pts)
    v_start = hull[0][1]
    for j in range(j0):
        tj = coeffs[j].trunc
        if tj == INF:
            continue
        # branches hiding behind the truncation have order at least
        # (tj - v_start) / (j0 - j); they may be ignored beyond depth
        if (tj - v_start) < depth * (j0 - j):
            raise TruncationError(
                "a transformed coefficient is unknown below its truncation",
                required=depth * (j0 - j) + v_start)
    for j in range(j0 + 1, d + 1):
        if coeffs[j].empty and coeffs[j].trunc != INF:
            if coeffs[j].trunc < _hull_value(hull, j):
                raise TruncationError(
                    "a truncated coefficient could cut the numeric polygon",
                    required=_hull_value(hull, j))
    segments = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        q = Fraction(y1 - y2, x2 - x1)
        if q > 0:
            segments.append((x1, y1, x2, y2, q))
    return j0, segments


def _transform(coeffs, q, u, mu, prec):
    """Coefficients of h(t^q (u + z)) / t^mu in z, given those of h in y."""
    d = len(coeffs) - 1
    acc = [dict() for _ in range(d + 1)]
    truncs = [INF] * (d + 1)
    for j in range(d + 1):
        cj = coeffs[j]
        if cj.empty and cj.trunc == INF:
            continue
        shift = q * j - mu
        if cj.trunc != INF:
            tj = cj.trunc + shift
        else:
            tj = INF
        upow = mpmath.mpc(1)
        for i in range(j, -1, -1):
            binom = math.comb(j, i)
            target = acc[i]
            for e, c in cj.terms.items():
                key = e + shift
                add = c * binom * upow
                target[key] = target.get(key, mpmath.mpc(0)) + add
            truncs[i] = min(truncs[i], tj)
            if i > 0:
                upow = upow * u
    return [_ns_normalize(acc[i], truncs[i], prec) for i in range(d + 1)]


def _expand_rec(coeffs, exact, depth, prec, level):
    """All positive-order root expansions of the polynomial with coefficients
    c_0..c_d (ascending), truncated below `depth` (relative exponents)."""
    if level > 512:
        raise ConsistencyError("expansion recursion exceeded its level cap")
    d = len(coeffs) - 1
    expansions = []
    j0, segments = _numeric_polygon(coeffs, depth)
    expansions.extend([] for _ in range(j0))
    for (j1, v1, j2, v2, q) in segments:
        mult_total = j2 - j1
        if q >= depth:
            expansions.extend([] for _ in range(mult_total))
            continue
        # characteristic polynomial from the points on the segment
        phi_num = []
        phi_exact = [] if exact is not None else None
        for j in range(j2, j1 - 1, -1):
            line = v1 - q * (j - j1)
            c = coeffs[j].terms.get(line)
            phi_num.append(c if c is not None else mpmath.mpc(0))
            if phi_exact is not None:
                phi_exact.append(exact[j].coeff(line))
        mu = v1 + q * j1
        found = 0
        for (u, mult) in _solve_char(phi_num, phi_exact, prec):
            if abs(u) == 0:
                continue
            found += mult
            sub_coeffs = _transform(coeffs, q, u, mu, prec)
            subs = _expand_rec(sub_coeffs, None, depth - q, prec, level + 1)
            if len(subs) != mult:
                raise PrecisionError(
                    "branch multiplicity does not match its continuation")
            for s in subs:
                expansions.append([(q, u)] + [(e + q, c) for (e, c) in s])
        if found != mult_total:
            raise PrecisionError("characteristic roots lost multiplicity")
    return expansions


def puiseux_expand(h: UPoly, depth, precision=None) -> PuiseuxRootSet:
    """Numeric Newton-Puiseux expansion of all d roots down to exponent
    `depth`, with exact exponents; the leading data must reproduce the exact
    Newton polygon slopes."""
    depth = as_frac(depth)
    if depth <= 0:
        raise ValueError("depth must be positive")
    prec = precision or default_precision()
    np_exact = newton_polygon(h)
    d = h.degree
    with mpmath.workprec(prec + 64):
        coeffs = []
        exact = []
        for j in range(d + 1):
            i = d - j
            ps = PSeries.one(h.coeffs[0].var) if i == 0 else h.coeff(i)
            if ps.trunc != INF and ps.trunc < depth:
                raise TruncationError(
                    f"coefficient a_{i} is truncated below the requested "
                    f"depth", required=depth)
            coeffs.append(_ns_from_pseries(ps, prec))
            exact.append(ps)
        if any(ps.trunc != INF for ps in exact):
            exact = None  # exact char-poly route needs fully exact data
        expansions = _expand_rec(coeffs, exact, depth, prec, 0)
    if len(expansions) != d:
        raise ConsistencyError(
            f"expected {d} expansions, produced {len(expansions)}")
    # certify leading exponents against the exact polygon
    lead_num = sorted((exp[0][0] if exp else INF) for exp in expansions)
    lead_exact = sorted(
        INF if (v.is_infinite or v.lower >= depth) else v.value
        for v in np_exact.order_list())
    if lead_num != lead_exact:
        raise ConsistencyError(
            "numeric leading exponents disagree with the Newton polygon")
    roots = [tuple(exp) for exp in expansions]
    return PuiseuxRootSet(depth, prec, roots)


# ---------------------------------------------------------------------------
# Difference-order tables
# ---------------------------------------------------------------------------

class DiffOrderTable:
    """d x d matrix of ord(alpha_j - alpha_i) with per-root sorted rows;
    the off-diagonal multiset is certified against the exact root orders of
    the difference polynomial."""

    __slots__ = ("degree", "entries", "rows", "certificate", "depth")

    def __init__(self, degree, entries, certificate, depth):
        self.degree = degree
        self.entries = entries
        self.certificate = certificate
        self.depth = depth
        self.rows = []
        for i in range(degree):
            row = sorted(entries[i], key=lambda v: v.sort_key())
            self.rows.append(row)

    def row_prefix_sum(self, i, k) -> OrderVal:
        """Sum of the k smallest difference orders at center i."""
        return OrderVal.sum_of(self.rows[i][:k])

    def to_json(self):
        return {
            "diffTable": [[v.to_json() for v in row]
                          for row in self.entries],
            "rows": [[v.to_json() for v in row] for row in self.rows],
            "certificate": [v.to_json() for v in self.certificate],
        }


def _pair_order(terms_a, terms_b, depth, tol):
    """First exponent (below depth) where two ascending numeric term lists
    differ by more than tol; None when they agree throughout."""
    ia = ib = 0
    while ia < len(terms_a) or ib < len(terms_b):
        ea = terms_a[ia][0] if ia < len(terms_a) else None
        eb = terms_b[ib][0] if ib < len(terms_b) else None
        if eb is None or (ea is not None and ea < eb):
            e, ca, cb = ea, terms_a[ia][1], mpmath.mpc(0)
            ia += 1
        elif ea is None or eb < ea:
            e, ca, cb = eb, mpmath.mpc(0), terms_b[ib][1]
            ib += 1
        else:
            e, ca, cb = ea, terms_a[ia][1], terms_b[ib][1]
            ia += 1
            ib += 1
        if e >= depth:
            return None
        if abs(ca - cb) > tol:
            return e
    return None


def _match_certificate(finite_found, unresolved_count, cert_orders, depth):
    """Check the numerically found finite orders against the exact multiset;
    returns the backfill value for unresolved pairs (an OrderVal) or None on
    mismatch."""
    cert_small = sorted(v.value for v in cert_orders
                        if v.is_exact and v.value < depth)
    cert_rest = [v for v in cert_orders
                 if v.is_infinite or (v.is_exact and v.value >= depth)]
    if sorted(finite_found) != cert_small:
        return None
    if unresolved_count != len(cert_rest):
        return None
    if unresolved_count == 0:
        return OrderVal.at_least(depth)  # unused
    if all(v.is_infinite for v in cert_rest):
        return OrderVal.infinite()
    return OrderVal.at_least(depth)


def _auto_depth(order_lists):
    m = _ZERO
    for vals in order_lists:
        for v in vals:
            if v.is_exact:
                m = max(m, v.value)
    return m + 1


def diff_orders(h: UPoly, depth=None, precision=None) -> DiffOrderTable:
    """Pairwise root-difference orders with exact certification.

    The default depth is one past the largest finite order in the exact
    difference data, which resolves every pair exactly (entries are Exact or
    Infinite); smaller explicit depths may leave AtLeast entries.
    """
    d = h.degree
    if d == 1:
        root_orders(h)  # validate input
        table = [[OrderVal.infinite()]]
        return DiffOrderTable(1, table, [], as_frac(depth or 1))
    orders = root_orders(h)
    cert = root_orders(difference_poly(h))
    if any(v.is_at_least for v in cert):
        raise TruncationError("difference-polynomial orders are truncated")
    if depth is None:
        depth = _auto_depth([orders, cert])
    depth = as_frac(depth)
    prec = precision or default_precision()
    last_error = None
    for attempt in range(5):
        try:
            rootset = puiseux_expand(h, depth, prec << attempt)
        except PrecisionError as exc:
            last_error = exc
            continue
        tol = mpmath.mpf(2) ** (-((prec << attempt) // 8))
        entries = [[None] * d for _ in range(d)]
        finite_found = []
        unresolved = 0
        with mpmath.workprec((prec << attempt) + 64):
            for i in range(d):
                entries[i][i] = OrderVal.infinite()
                for j in range(i + 1, d):
                    e = _pair_order(rootset.roots[i], rootset.roots[j],
                                    depth, tol)
                    if e is None:
                        unresolved += 2
                        continue
                    entries[i][j] = entries[j][i] = OrderVal.exact(e)
                    finite_found.extend([e, e])
        fill = _match_certificate(finite_found, unresolved, cert, depth)
        if fill is None:
            last_error = ConsistencyError(
                "numeric difference orders disagree with the exact "
                "difference polynomial")
            continue
        for i in range(d):
            for j in range(d):
                if entries[i][j] is None:
                    entries[i][j] = fill
        return DiffOrderTable(d, entries, cert, depth)
    raise last_error if isinstance(last_error, ConsistencyError) else \
        ConsistencyError(f"difference orders failed to certify: {last_error}")


def orders_against_series(h: UPoly, w: PSeries, depth=None, precision=None):
    """Per-root orders ord(alpha_i - w), numerically grouped and certified
    against the exact Newton polygon of h(y + w).

    Returns (values, certificate) where values align with the expansion
    order of puiseux_expand(h, ...).
    """
    d = h.degree
    shifted = taylor_shift(h, w)
    cert = root_orders(shifted)
    if depth is None:
        depth = _auto_depth([cert, root_orders(h),
                             [w.order()] if not w.is_exactly_zero else []])
    depth = as_frac(depth)
    prec = precision or default_precision()
    last_error = None
    for attempt in range(5):
        p = prec << attempt
        try:
            rootset = puiseux_expand(h, depth, p)
        except PrecisionError as exc:
            last_error = exc
            continue
        tol = mpmath.mpf(2) ** (-(p // 8))
        with mpmath.workprec(p + 64):
            wterms = _series_terms_numeric(w)
            vals = []
            finite = []
            unresolved = 0
            for i in range(d):
                e = _pair_order(rootset.roots[i], wterms, depth, tol)
                if e is None:
                    vals.append(None)
                    unresolved += 1
                else:
                    vals.append(OrderVal.exact(e))
                    finite.append(e)
        cert_small = sorted(v.value for v in cert
                            if v.is_exact and v.value < depth)
        cert_rest = [v for v in cert
                     if v.is_infinite or (not v.is_exact) or v.value >= depth]
        if sorted(finite) != cert_small or unresolved != len(cert_rest):
            last_error = ConsistencyError(
                "numeric contact orders disagree with the shifted polygon")
            continue
        if unresolved:
            fill = OrderVal.infinite() if all(v.is_infinite
                                              for v in cert_rest) \
                else OrderVal.at_least(depth)
            vals = [fill if v is None else v for v in vals]
        return vals, cert
    raise last_error if isinstance(last_error, ConsistencyError) else \
        ConsistencyError(f"contact orders failed to certify: {last_error}")


# ---------------------------------------------------------------------------
# Integrality of roots
# ---------------------------------------------------------------------------

def _is_integral(v: OrderVal) -> bool:
    if v.is_infinite:
        return True
    if not v.is_exact:
        raise TruncationError("cannot certify integrality from truncated data")
    return v.value.denominator == 1


def integrality_test(h: UPoly):
    """All roots lie in unramified series iff every root order and every
    pairwise difference order is an integer (or infinite).  Fully exact:
    root orders from the polygon, difference orders through the difference
    polynomial.  Returns (verdict, certificate)."""
    orders = root_orders(h)
    for v in orders:
        if not _is_integral(v):
            return False, {"integral": False, "source": "root",
                           "violating_order": frac_str(v.value)}
    if h.degree >= 2:
        dorders = root_orders(difference_poly(h))
        for v in dorders:
            if not _is_integral(v):
                return False, {"integral": False, "source": "difference",
                               "violating_order": frac_str(v.value)}
    return True, {"integral": True, "violating_order": None}


# ---------------------------------------------------------------------------
# Contact-order identity and perturbation bound
# ---------------------------------------------------------------------------

def _ov_ge(a: OrderVal, b: OrderVal):
    """Three-valued a >= b."""
    if a.is_infinite:
        return True
    if b.is_infinite:
        return False
    if a.is_exact and b.is_exact:
        return a.value >= b.value
    if a.lower >= b.value and b.is_exact:
        return True
    if b.lower > a.value and a.is_exact:
        return False
    return None


def contact_order_identity_check(h: UPoly, w: PSeries, depth=None,
                                 precision=None):
    """For each center i, ord(h(w)) >= sum_j min(ord(w - alpha_i),
    ord(alpha_i - alpha_j)), with equality at every center maximizing
    ord(w - alpha_i).  Returns a report dict."""
    d = h.degree
    hw = h.evaluate(w).order()
    table = diff_orders(h, depth=depth, precision=precision)
    wvals, _ = orders_against_series(h, w, depth=depth, precision=precision)
    per_center = []
    best = OrderVal.max_of(wvals)
    ok = True
    for i in range(d):
        bound = OrderVal.sum_of(
            OrderVal.min_of([wvals[i], table.entries[i][j]])
            for j in range(d))
        is_max = wvals[i] == best
        ge = _ov_ge(hw, bound)
        eq = hw == bound
        if ge is not True or (is_max and not eq):
            ok = False
        per_center.append({
            "center": i,
            "bound": bound.to_json(),
            "max_center": is_max,
            "holds": ge is True,
            "equality": bool(eq),
        })
    return {"pass": ok, "order_h_w": hw.to_json(), "centers": per_center}


def cross_difference_orders(f: UPoly, g: UPoly):
    """Exact multiset of ord(beta_j - alpha_i) over roots alpha of f and
    beta of g, via the resultant of f(z) and g(z + y)."""
    from .poly import _interp_nodes, _lagrange_coeffs, resultant_lists
    if f.degree < 1 or g.degree < 1:
        raise ValueError("positive degrees required")
    dy = f.degree * g.degree
    nodes = _interp_nodes(dy + 1)
    fd = f.dense()
    values = []
    for r in nodes:
        gd = taylor_shift(g, r).dense()
        values.append(resultant_lists(fd, gd))
    coeffs = _lagrange_coeffs(nodes, values)
    lead = coeffs[0]
    if not (lead - PSeries.one(lead.var)).is_zero():
        raise ConsistencyError("cross-difference polynomial is not monic")
    C = UPoly(f.var, coeffs[1:])
    return root_orders(C)


def perturbation_check(f: UPoly, g: UPoly, N, depth=None, precision=None):
    """Checks that every root of g matches some root of f to order at least
    N/d, given ord(a_i - b_i) >= N for all coefficients.  Numeric matching
    is certified against the exact cross-difference polynomial."""
    d = f.degree
    if g.degree != d:
        raise ValueError("perturbation check needs equal degrees")
    N = as_frac(N)
    for i in range(1, d + 1):
        diff = f.coeff(i) - g.coeff(i)
        ov = diff.order()
        if ov.lower < N:
            raise ValueError(
                f"coefficient {i} differs at order {ov!r}, below N={N}")
    cert = cross_difference_orders(f, g)
    bound = N / d
    if depth is None:
        depth = _auto_depth([cert, root_orders(f), root_orders(g)])
    depth = as_frac(depth)
    prec = precision or default_precision()
    last_error = None
    for attempt in range(5):
        p = prec << attempt
        try:
            rf = puiseux_expand(f, depth, p)
            rg = puiseux_expand(g, depth, p)
        except PrecisionError as exc:
            last_error = exc
            continue
        tol = mpmath.mpf(2) ** (-(p // 8))
        finite = []
        unresolved = 0
        matrix = [[None] * d for _ in range(d)]
        with mpmath.workprec(p + 64):
            for i in range(d):
                for j in range(d):
                    e = _pair_order(rf.roots[i], rg.roots[j], depth, tol)
                    if e is None:
                        unresolved += 1
                    else:
                        matrix[i][j] = OrderVal.exact(e)
                        finite.append(e)
        fill = _match_certificate(finite, unresolved, cert, depth)
        if fill is None:
            last_error = ConsistencyError(
                "numeric perturbation orders disagree with the exact "
                "cross-difference polynomial")
            continue
        rows = []
        ok = True
        for j in range(d):
            col = [matrix[i][j] if matrix[i][j] is not None else fill
                   for i in range(d)]
            best = OrderVal.max_of(col)
            holds = best.lower >= bound
            if not holds:
                ok = False
            rows.append({"root": j, "best_match": best.to_json(),
                         "holds": bool(holds)})
        return {"pass": ok, "bound": frac_str(bound), "roots": rows}
    raise last_error if isinstance(last_error, ConsistencyError) else \
        ConsistencyError(f"perturbation check failed to certify: {last_error}")
