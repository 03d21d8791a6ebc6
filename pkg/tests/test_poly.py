import itertools
import random
from fractions import Fraction

import pytest

from lctkit.errors import ConsistencyError
from lctkit.poly import (
    MPoly, UPoly, compound_poly, difference_poly, generic_difference_coeffs,
    q_discriminant, q_eval, q_resultant, q_squarefree,
    q_squarefree_decomposition, resultant, resultant_lists, symmetric_reduce,
    taylor_shift, value_poly,
)
from lctkit.series import PSeries

F = Fraction


def zpoly(name):
    return MPoly.variable(name)


def mono(e, c=1, var="t"):
    return PSeries.monomial(var, F(e), F(c))


def generic(d, var="y"):
    return UPoly(var, [zpoly(f"z{i}") for i in range(1, d + 1)])


def const_upoly(var, coeffs):
    """UPoly over rational constants embedded as variable-free MPolys."""
    return UPoly(var, [MPoly.const(c) for c in coeffs])


class TestMPoly:
    def test_arith(self):
        a, b = zpoly("a"), zpoly("b")
        p = (a + b) * (a - b)
        assert p == a * a - b * b

    def test_substitute(self):
        a, b = zpoly("a"), zpoly("b")
        p = a ** 2 + b
        q = p.substitute({"a": b, "b": MPoly.const(3)})
        assert q == b ** 2 + 3

    def test_eval_series(self):
        a, b = zpoly("a"), zpoly("b")
        p = a * b + a ** 2
        s = p.eval_series({"a": mono(1), "b": mono(2)})
        assert s == mono(3) + mono(2)

    def test_div_exact(self):
        a, b = zpoly("a"), zpoly("b")
        p = (a + b) ** 3
        assert p.div_exact(a + b) == (a + b) ** 2
        with pytest.raises(ConsistencyError):
            (a ** 2 + b).div_exact(a + b)

    def test_json_roundtrip(self):
        p = zpoly("z1") ** 2 - 4 * zpoly("z2")
        assert MPoly.from_json(p.to_json()) == p


class TestTaylorShift:
    def test_quadratic_symbolic(self):
        h = generic(2)
        s = taylor_shift(h, "w")
        w, z1, z2 = zpoly("w"), zpoly("z1"), zpoly("z2")
        assert s.coeffs[0] == z1 + 2 * w
        assert s.coeffs[1] == w ** 2 + z1 * w + z2

    def test_shift_zero_identity(self):
        h = UPoly("y", [PSeries.zero("t"), -mono(3)])
        assert taylor_shift(h, PSeries.zero("t")) == h

    def test_cube(self):
        h = UPoly("y", [MPoly.zero(("w",)), MPoly.zero(("w",)),
                        MPoly.zero(("w",))])
        s = taylor_shift(h, "w")
        w = zpoly("w")
        assert list(s.coeffs) == [3 * w, 3 * w ** 2, w ** 3]

    def test_shift_then_unshift(self):
        rng = random.Random(3)
        for _ in range(20):
            coeffs = [PSeries("t", {F(e): F(rng.randint(-5, 5))
                                    for e in range(rng.randint(0, 3))})
                      for _ in range(3)]
            h = UPoly("y", [c + mono(1) for c in coeffs])
            w = mono(1, 2) + mono(2, -1)
            assert taylor_shift(taylor_shift(h, w), -w) == h


class TestResultant:
    def test_linear_elimination(self):
        # Res_z(z^2 + a, y - z) = y^2 + a
        a, y = zpoly("a"), zpoly("y")
        fd = [MPoly.const(1), MPoly.const(0), a]       # z^2 + a
        gd = [MPoly.const(-1), y]                      # -z + y
        assert resultant_lists(fd, gd) == y ** 2 + a

    def test_common_root_vanishes(self):
        one = MPoly.const(1)
        fd = [one, MPoly.const(-1)]
        assert resultant_lists(fd, list(fd)).is_zero()

    def test_series_perturbation(self):
        # Res_z(z^2 - t^3, z^2 - t^3 + t^10) = t^20
        f = UPoly("z", [PSeries.zero("t"), -mono(3)])
        g = UPoly("z", [PSeries.zero("t"), -mono(3) + mono(10)])
        assert resultant(f, g) == mono(20)

    def test_prs_matches_bareiss_and_field(self):
        rng = random.Random(11)
        for _ in range(60):
            df, dg = rng.randint(1, 4), rng.randint(1, 4)
            fq = [F(rng.randint(-4, 4)) for _ in range(df + 1)]
            gq = [F(rng.randint(-4, 4)) for _ in range(dg + 1)]
            if fq[0] == 0 or gq[0] == 0:
                continue
            from lctkit.poly import _bareiss_det, _prs_resultant, _sylvester_matrix
            fm = [MPoly.const(c) for c in fq]
            gm = [MPoly.const(c) for c in gq]
            r_prs = _prs_resultant(fm, gm).const_value()
            r_det = _bareiss_det(_sylvester_matrix(fm, gm)).const_value()
            r_q = q_resultant(fq, gq)
            assert r_prs == r_det == r_q

    def test_prs_on_series_matches_field_specialization(self):
        rng = random.Random(23)
        for _ in range(30):
            df, dg = rng.randint(1, 3), rng.randint(1, 3)
            fs = [mono(0, 1)] + [mono(rng.randint(0, 3), rng.randint(-3, 3))
                                 for _ in range(df)]
            gs = [mono(0, 1)] + [mono(rng.randint(0, 3), rng.randint(-3, 3))
                                 for _ in range(dg)]
            res = resultant_lists(fs, gs)
            x = F(rng.randint(1, 5), rng.randint(1, 3))
            fq = [sum((c * x ** e for e, c in p.terms.items()), F(0)) for p in fs]
            gq = [sum((c * x ** e for e, c in p.terms.items()), F(0)) for p in gs]
            want = q_resultant(fq, gq)
            got = sum((c * x ** e for e, c in res.terms.items()), F(0))
            assert got == want


class TestSymmetricReduce:
    def test_power_sum(self):
        r1, r2 = zpoly("r1"), zpoly("r2")
        e1, e2 = zpoly("e1"), zpoly("e2")
        assert symmetric_reduce(r1 ** 2 + r2 ** 2) == e1 ** 2 - 2 * e2

    def test_product(self):
        r1, r2 = zpoly("r1"), zpoly("r2")
        assert symmetric_reduce(r1 * r2) == zpoly("e2")

    def test_difference_square(self):
        r1, r2 = zpoly("r1"), zpoly("r2")
        e1, e2 = zpoly("e1"), zpoly("e2")
        assert symmetric_reduce((r1 - r2) ** 2) == e1 ** 2 - 4 * e2

    def test_identity_on_elementary(self):
        from lctkit.poly import _elem_sym
        for d in (2, 3, 4):
            for i in range(1, d + 1):
                out = symmetric_reduce(_elem_sym(d, i))
                assert out == zpoly(f"e{i}")

    def test_rejects_nonsymmetric(self):
        r1, r2 = zpoly("r1"), zpoly("r2")
        with pytest.raises(ValueError):
            symmetric_reduce(r1 ** 2 + r2)

    def test_commutes_with_evaluation(self):
        rng = random.Random(17)
        d = 3
        r = [zpoly(f"r{i}") for i in range(1, d + 1)]
        p = (r[0] * r[1] + r[1] * r[2] + r[0] * r[2]) ** 2 + \
            (r[0] + r[1] + r[2])
        red = symmetric_reduce(p)
        for _ in range(100):
            vals = {f"r{i}": F(rng.randint(-5, 5)) for i in range(1, d + 1)}
            evals = {}
            names = sorted(vals)
            for i in range(1, d + 1):
                acc = F(0)
                for sub in itertools.combinations(names, i):
                    prod = F(1)
                    for v in sub:
                        prod *= vals[v]
                    acc += prod
                evals[f"e{i}"] = acc
            assert p.eval_frac(vals) == red.eval_frac(evals)


class TestCompoundPoly:
    def test_d2_k2(self):
        g = compound_poly(generic(2), 2)
        assert g.degree == 1
        assert g.coeffs[0] == -zpoly("z2")

    def test_d2_k1_identity(self):
        h = generic(2)
        assert compound_poly(h, 1) == h

    def test_d3_k3(self):
        g = compound_poly(generic(3), 3)
        assert g.degree == 1
        assert g.coeffs[0] == zpoly("z3")

    @pytest.mark.parametrize("d,k", [(2, 1), (2, 2), (3, 1), (3, 2), (3, 3),
                                     (4, 2), (4, 3), (4, 4)])
    def test_numeric_brute_force(self, d, k):
        rng = random.Random(100 * d + k)
        for _ in range(8):
            roots = [F(rng.randint(-5, 5), rng.randint(1, 3))
                     for _ in range(d)]
            h = UPoly.from_roots("y", [MPoly.const(r) for r in roots])
            got = compound_poly(h, k)
            prods = [MPoly.const(
                __import__("math").prod(sub, start=F(1)))
                for sub in itertools.combinations(roots, k)]
            want = UPoly.from_roots("y", prods)
            assert got == want


class TestDifferencePoly:
    def test_symbolic_quadratic(self):
        h = generic(2)
        H = difference_poly(h)
        z1, z2 = zpoly("z1"), zpoly("z2")
        assert H.degree == 2
        assert H.coeffs[0].is_zero()
        assert H.coeffs[1] == -(z1 ** 2 - 4 * z2)

    def test_series_cusp(self):
        h = UPoly("y", [PSeries.zero("t"), -mono(3)])
        H = difference_poly(h)
        assert H.degree == 2
        assert H.coeffs[0].is_zero()
        assert H.coeffs[1] == mono(3, -4)

    def test_two_branches(self):
        h = UPoly.from_roots("y", [mono(1), mono(2)])
        H = difference_poly(h)
        diff = mono(1) - mono(2)
        assert H.coeffs[1] == -(diff * diff)

    def test_series_matches_generic_route(self):
        rng = random.Random(31)
        for _ in range(20):
            d = rng.randint(2, 4)
            coeffs = [PSeries("t", {F(rng.randint(0, 4)): F(rng.randint(-3, 3))
                                    for _ in range(rng.randint(0, 2))})
                      for _ in range(d)]
            h = UPoly("y", [c if not c.is_zero() else PSeries.zero("t")
                            for c in coeffs])
            H1 = difference_poly(h)
            gen = generic_difference_coeffs(d)
            mapping = {f"z{i}": h.coeff(i) for i in range(1, d + 1)}
            H2 = [c.eval_series(mapping, out_var="t") for c in gen]
            assert list(H1.coeffs) == H2

    def test_constant_term_is_discriminant(self):
        # H(0) = prod over ordered pairs of (alpha_j - alpha_i)
        #      = (-1)^C(d,2) * disc(h) for monic h
        rng = random.Random(41)
        for d in (2, 3, 4):
            sign = -1 if (d * (d - 1) // 2) % 2 else 1
            for _ in range(10):
                coeffs = [F(rng.randint(-4, 4)) for _ in range(d)]
                h = const_upoly("y", coeffs)
                H = difference_poly(h)
                const = H.coeffs[-1].const_value()
                disc = q_discriminant([F(1)] + coeffs)
                assert const == sign * disc


class TestValuePoly:
    def test_identity(self):
        h = generic(3)
        G = MPoly.variable("w")
        assert value_poly(h, G) == h

    def test_square_map(self):
        # roots of y^2 - a2 square to a2 twice
        h = UPoly("y", [MPoly.zero(("z2",)), -zpoly("z2")])
        G = MPoly.variable("w") ** 2
        got = value_poly(h, G)
        z2 = zpoly("z2")
        assert got.coeffs[0] == -2 * z2
        assert got.coeffs[1] == z2 ** 2

    def test_cubic_resolvent(self):
        # G = z2 + 3w^2 on y^3 + a y + b gives y^3 + 3a y^2 - (4a^3 + 27b^2)
        a, b = zpoly("a"), zpoly("b")
        h = UPoly("y", [MPoly.zero(("a", "b")), a, b])
        G = MPoly.variable("z2") + 3 * MPoly.variable("w") ** 2
        got = value_poly(h, G)
        assert got.coeffs[0] == 3 * a
        assert got.coeffs[1].is_zero()
        assert got.coeffs[2] == -(4 * a ** 3 + 27 * b ** 2)

    def test_series_domain(self):
        h = UPoly.from_roots("y", [mono(1), mono(2)])
        G = MPoly.variable("w") ** 2
        got = value_poly(h, G)
        want = UPoly.from_roots("y", [mono(2), mono(4)])
        assert got == want


class TestQHelpers:
    def test_squarefree(self):
        assert q_squarefree([F(1), F(0), F(1)])
        assert not q_squarefree([F(1), F(2), F(1)])

    def test_squarefree_decomposition(self):
        # (x-1)^2 (x+2)
        f = [F(1), F(0), F(-3), F(2)]
        dec = q_squarefree_decomposition(f)
        assert ([F(1), F(2)], 1) in dec
        assert ([F(1), F(-1)], 2) in dec

    def test_discriminant_quadratic(self):
        assert q_discriminant([F(1), F(3), F(1)]) == 5

    def test_discriminant_cubic(self):
        # y^3 + ay + b -> -4a^3 - 27b^2
        rng = random.Random(2)
        for _ in range(20):
            a, b = F(rng.randint(-5, 5)), F(rng.randint(-5, 5))
            assert q_discriminant([F(1), F(0), a, b]) == -4 * a ** 3 - 27 * b ** 2

    def test_eval(self):
        assert q_eval([F(2), F(0), F(-1)], F(3)) == 17
