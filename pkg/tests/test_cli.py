import json
from fractions import Fraction

import pytest

from lctkit.cli import (
    parse_poly, parse_series, parse_series_group, parse_upoly, run,
)
from lctkit.errors import ParseError
from lctkit.series import PSeries

F = Fraction


class TestParseSeries:
    def test_two_terms_ram_two(self):
        s = parse_series("t^2 - 4*t^(3/2)")
        assert s.ram == 2
        assert s.terms == {F(2): F(1), F(3, 2): F(-4)}

    def test_rational_coefficient(self):
        s = parse_series("1/2*t + 3")
        assert s.terms == {F(1): F(1, 2), F(0): F(3)}

    def test_zero_denominator(self):
        with pytest.raises(ParseError):
            parse_series("1/0")

    def test_constant_default_var(self):
        s = parse_series("5")
        assert s.var == "t" and s.terms == {F(0): F(5)}

    def test_exact_roundtrip_with_repr(self):
        s = parse_series("t^2 - 4*t^(3/2)")
        assert parse_series(repr(s)) == s

    def test_json_roundtrip(self):
        s = parse_series("3*x - 1/7*x^4", var="x")
        assert PSeries.from_json(json.loads(json.dumps(s.to_json()))) == s

    def test_group_infers_shared_var(self):
        a, b, c = parse_series_group(["0", "x^2", "0"])
        assert a.var == b.var == c.var == "x"

    def test_bad_character_position(self):
        with pytest.raises(ParseError) as err:
            parse_series("t^2 ? 1")
        assert err.value.pos == 4


class TestParsePoly:
    def test_two_vars(self):
        p = parse_poly("y^3 + x^2")
        assert set(p.vars) == {"x", "y"}

    def test_upoly_degree(self):
        h = parse_upoly("y^3 + x^2")
        assert h.degree == 3
        assert h.coeffs[2].terms == {F(2): F(1)}

    def test_upoly_cusp(self):
        h = parse_upoly("y^2 - t^3")
        assert h.degree == 2
        assert h.coeffs[1].terms == {F(3): F(-1)}

    def test_upoly_monic_enforced(self):
        with pytest.raises(ParseError):
            parse_upoly("2*y^2 + x")

    def test_upoly_middle_coefficients(self):
        h = parse_upoly("y^3 + x^2*y + x^4")
        assert h.coeffs[0].is_zero()
        assert h.coeffs[1].terms == {F(2): F(1)}
        assert h.coeffs[2].terms == {F(4): F(1)}


class TestCommands:
    def test_orders(self, capsys):
        assert run(["orders", "--poly", "y^2 - t^3"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["slopes"] == [["3/2", 2]]

    def test_lct_yes(self, capsys):
        rc = run(["lct", "--c", "5/6", "--coeff", "0", "--coeff", "0",
                  "--coeff", "x^2"])
        assert rc == 0
        out = json.loads(capsys.readouterr().out)
        assert out["verdict"] == "yes"
        assert out["V"] == {"kind": "exact", "value": "1"}
        assert (out["p"], out["c1"], out["c2"]) == (2, "1/6", "2/3")

    def test_lct_from_file(self, tmp_path, capsys):
        blob = {"d": 3, "c": "5/6",
                "coeffs": [PSeries.zero("x").to_json(),
                           PSeries.zero("x").to_json(),
                           PSeries.monomial("x", 2).to_json()]}
        path = tmp_path / "cusp.json"
        path.write_text(json.dumps(blob))
        rc = run(["lct", "--c", "5/6", "--coeffs", str(path)])
        assert rc == 0
        out = json.loads(capsys.readouterr().out)
        assert out["verdict"] == "yes"

    def test_degree3(self, capsys):
        assert run(["degree3", "--a", "0", "--b", "x^2", "--c", "5/6"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["verdict"] == "yes"

    def test_integrality(self, capsys):
        assert run(["integrality", "--poly", "y^2 - t^4"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["integral"] is True

    def test_diffs_full_and_shallow(self, capsys):
        assert run(["diffs", "--poly", "y^2 - t^3"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["diffTable"][0][1] == {"kind": "exact", "value": "3/2"}
        assert run(["diffs", "--poly", "y^2 - t^3", "--depth", "1"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["diffTable"][0][1] == {"kind": "atleast", "value": "1"}
        # the exact certificate is reported either way
        assert out["certificate"] == [{"kind": "exact", "value": "3/2"}] * 2

    def test_oracle_plane(self, capsys):
        assert run(["oracle", "--poly", "y^3 + x^2*y + x^4"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["lct"] == "2/3"

    def test_oracle_vectors(self, capsys):
        assert run(["oracle", "--vectors", "[[2,0],[0,3]]"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["lct"] == "5/6"

    def test_parse_error_exit_code(self, capsys):
        assert run(["orders", "--poly", "1/0"]) == 2

    def test_truncation_exit_code(self, tmp_path, capsys):
        # a truncated coefficient that the polygon cannot certify
        blob = [PSeries.monomial("x", 1).to_json(),
                PSeries.zero("x", 5).to_json()]
        path = tmp_path / "trunc.json"
        path.write_text(json.dumps(blob))
        rc = run(["lct", "--c", "3/4", "--coeffs", str(path)])
        assert rc == 3

    def test_verify_lem1(self, capsys):
        assert run(["verify", "--suite", "lem1", "--trials", "5",
                    "--seed", "42"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["failures"] == 0
        assert out["trials"] == 5

    def test_verify_unknown_suite(self, capsys):
        assert run(["verify", "--suite", "nope"]) == 2


class TestDeterminism:
    @pytest.mark.parametrize("argv", [
        ["verify", "--suite", "lem1", "--trials", "8", "--seed", "7"],
        ["verify", "--suite", "diffs", "--trials", "4", "--seed", "3"],
        ["verify", "--suite", "cor3", "--trials", "6", "--seed", "1"],
        ["lct", "--c", "5/6", "--coeff", "0", "--coeff", "0",
         "--coeff", "x^2"],
        ["orders", "--poly", "y^3 + t^2*y + t^3"],
    ])
    def test_byte_identical(self, argv, capsys):
        assert run(list(argv)) == 0
        first = capsys.readouterr().out
        assert run(list(argv)) == 0
        second = capsys.readouterr().out
        assert first == second

    def test_all_suites_pass_briefly(self, capsys):
        from lctkit.cli import _SUITES
        seen = set()
        for name in sorted(_SUITES):
            if _SUITES[name] in seen:
                continue  # terse aliases point at the same suite
            seen.add(_SUITES[name])
            trials = 3 if name not in ("oracle",) else 1
            rc = run(["verify", "--suite", name, "--trials", str(trials),
                      "--seed", "5"])
            out = json.loads(capsys.readouterr().out)
            assert rc == 0, (name, out)
            assert out["failures"] == 0

    def test_alias_matches_primary(self, capsys):
        for alias, primary in (("lem1", "orders"), ("cor2", "shift")):
            assert run(["verify", "--suite", alias, "--trials", "3",
                        "--seed", "2"]) == 0
            out_a = capsys.readouterr().out
            assert run(["verify", "--suite", primary, "--trials", "3",
                        "--seed", "2"]) == 0
            out_p = capsys.readouterr().out
            assert json.loads(out_a)["results"] == \
                json.loads(out_p)["results"]
