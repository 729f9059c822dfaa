"""End-to-end tests for the command line interface."""

import json
import pathlib

import pytest

from bockstein.cli import (
    CliError,
    emit_table,
    evaluate,
    main,
    parse,
    parse_cdexpr,
    parse_group,
    verify,
)
from bockstein.groups import Q, Z, Zloc, Zmod
from bockstein.oracle import Universe, enumerate_types

from oracles import ROW_KINDS, fig1_row, fig2_row, pinned_product_cells

GOLDEN_DIR = pathlib.Path(__file__).parent / "golden"

GOLDEN_CASES = {
    "eval_norm.txt": ["eval", "norm(Phi(Zp(2),3) [+] Phi(Q,2))"],
    "eval_dim.txt": ["eval", "dim(nat(3), Z/2^2)"],
    "eval_inorm.txt": ["eval", "inorm(nat(5))"],
    "table_fundamental.txt": ["table", "fundamental", "--n", "3"],
    "table_products.txt": ["table", "products", "--n", "4", "--m", "3"],
    "verify_mp_pair.txt": ["verify", "mp-pair", "--p", "2", "--coeff", "Q"],
    "check_laws.txt": ["check-laws", "--primes", "2", "--max", "2",
                       "--laws",
                       "round-trip,norm-sandwich,field-bound,"
                       "conjugation-zero"],
}


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEval:
    @pytest.mark.parametrize("expr, want", [
        ("norm(Phi(Zp(2),3) [+] Phi(Q,2))", "4"),
        ("dim(nat(3), Z/2^2)", "3"),
        ("inorm(nat(5))", "5"),
        ("norm(pow(Phi(Zp(2),2), 2))", "4"),
        ("leq(nat(1), nat(2))", "true"),
        ("leq(nat(2), nat(1))", "false"),
        ("sigma(Zinv(3))", "Zloc(p) for all p != 3"),
    ])
    def test_query_text(self, capsys, expr, want):
        code, out, err = run(capsys, ["eval", expr])
        assert (code, err) == (0, "")
        assert out == want + "\n"

    def test_bare_expression_renders_canonically(self, capsys):
        code, out, _ = run(capsys, ["eval", "nat(2) [+] nat(1)"])
        assert code == 0
        assert out == "nat(3)\n"

    def test_phi_query(self, capsys):
        code, out, _ = run(capsys, ["eval", "phi(Phi(Zp(2),2))"])
        assert code == 0
        assert out == ("Q: 1; Zp: {default: 1, 2: 2}; "
                       "Zpinf: {default: 1}; Zloc: {default: 1, 2: 2}\n")

    def test_precedence_times_binds_tighter_than_sum(self, capsys):
        # nat(2) [+] (nat(2) [x] nat(3)) = nat(8), not nat(12)
        code, out, _ = run(capsys, ["eval", "nat(2) [+] nat(2) [x] nat(3)"])
        assert (code, out) == (0, "nat(8)\n")

    @pytest.mark.parametrize("expr", [
        "Phi(Z,3)",             # Z is not a basis kind
        "norm(nat(2)",          # unbalanced parens
        "nat(2) nat(3)",        # trailing input
        "Phi(Zp(4),2)",         # not a prime
        "frob(nat(1))",         # unknown form
        "dim(nat(2), Z/4)",     # modulus must be p^k
    ])
    def test_parse_errors_exit_two(self, capsys, expr):
        code, out, err = run(capsys, ["eval", expr])
        assert code == 2
        assert out == ""
        assert err.startswith("error: ")

    def test_json_is_sorted_and_stable(self, capsys):
        argv = ["eval", "--json", "norm(Phi(Zp(2),3) [+] Phi(Q,2))"]
        code, first, _ = run(capsys, argv)
        assert code == 0
        assert json.loads(first) == {"query": "norm", "value": 4}
        _, second, _ = run(capsys, argv)
        assert first == second == '{"query": "norm", "value": 4}\n'


class TestParsing:
    def test_round_trip_over_the_model(self):
        for f in enumerate_types(Universe([2, 3], 2)):
            again = evaluate(parse(f.render()))
            assert again["text"] == f.render()
            assert again["json"]["value"] == f.to_json()

    def test_round_trip_extended_model(self):
        for f in enumerate_types(Universe([2], 2, True)):
            assert evaluate(parse(f.render()))["json"]["value"] == f.to_json()

    def test_group_forms(self):
        assert parse_group("Z + Z/2^2") == Z + Zmod(2, 2)
        assert parse_group("Zloc{2,3}") == Zloc([2, 3])
        assert parse_group("Q") is Q

    def test_cdexpr_rejects_queries(self):
        with pytest.raises(CliError):
            parse_cdexpr("norm(nat(1))")

    def test_query_shape(self):
        kind, name, args = parse("dim(nat(2), Q)")
        assert (kind, name) == ("query", "dim")
        assert args[1] is Q


class TestTables:
    def test_fundamental_cells_match_known_rows(self):
        for n in (2, 3, 5):
            _, jobj = emit_table("fundamental", n)
            assert [r["label"] for r in jobj["rows"]] == [
                "F(Q, {})".format(n), "F(Zloc(2), {})".format(n),
                "F(Zp(2), {})".format(n), "F(Zpinf(2), {})".format(n)]
            for kind, row in zip(ROW_KINDS, jobj["rows"]):
                assert tuple(row["cells"]) == fig1_row(kind, n)

    def test_products_cells_match_known_rows(self):
        for n, m in ((3, 2), (4, 2), (4, 3), (5, 3)):
            _, jobj = emit_table("products", n, m)
            for kind, row in zip(ROW_KINDS, jobj["rows"]):
                assert tuple(row["cells"]) == fig2_row(kind, n, m)

    def test_pinned_product_cells(self):
        n, m = 5, 3
        _, jobj = emit_table("products", n, m)
        grid = {kind: row["cells"]
                for kind, row in zip(ROW_KINDS, jobj["rows"])}
        # columns: Zloc(p), Zp(p), Zpinf(p), Q, then the q block
        col = {"Zloc": 0, "Zp": 1, "ZpInf": 2, "Q": 3}
        for (row_kind, col_kind), want in pinned_product_cells(n, m).items():
            assert grid[row_kind][col[col_kind]] == want

    def test_table_text_headers(self, capsys):
        code, out, _ = run(capsys, ["table", "fundamental", "--n", "2",
                                    "--p", "3", "--q", "5"])
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "dim_G F(G', 2) with p=3, q=5"
        assert lines[1].split() == ["Zloc(3)", "Zp(3)", "Zpinf(3)", "Q",
                                    "Zloc(5)", "Zp(5)", "Zpinf(5)"]

    @pytest.mark.parametrize("argv", [
        ["table", "fundamental", "--n", "3", "--p", "3", "--q", "3"],
        ["table", "fundamental", "--n", "0"],
        ["table", "products", "--n", "3"],
        ["table", "products", "--n", "2", "--m", "3"],
        ["table", "products", "--n", "3", "--m", "1"],
    ])
    def test_rejected_tables_exit_two(self, capsys, argv):
        code, _, err = run(capsys, argv)
        assert code == 2
        assert err.startswith("error: ")


class TestVerify:
    @pytest.mark.parametrize("argv", [
        ["verify", "mp-pair", "--p", "3", "--coeff", "Z/5"],
        ["verify", "pontryagin", "--p", "2", "--stages", "1"],
        ["verify", "ew", "--p", "3", "--n", "2"],
        ["verify", "join", "--p", "2", "--q", "3"],
    ])
    def test_targets_pass(self, capsys, argv):
        code, out, err = run(capsys, argv)
        assert (code, err) == (0, "")
        assert out.rstrip("\n").endswith("pass")
        assert "FAIL" not in out

    def test_unknown_target_is_an_argparse_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "nothing"])
        assert exc.value.code == 2

    def test_unsupported_coefficient(self, capsys):
        code, _, err = run(capsys, ["verify", "mp-pair", "--coeff",
                                    "Zloc{2}"])
        assert code == 2
        assert "coefficient" in err

    def test_verify_function_reports_checks(self):
        ok, text, jobj = verify("join", p=2, q=3)
        assert ok and jobj["ok"]
        assert all(c["ok"] for c in jobj["checks"])
        assert text.endswith("pass")


class TestCheckLaws:
    def test_small_suite_passes(self, capsys):
        code, out, err = run(capsys, ["check-laws", "--primes", "2",
                                      "--max", "2",
                                      "--laws", "round-trip,norm-sandwich"])
        assert (code, err) == (0, "")
        lines = out.splitlines()
        assert lines[0] == "round-trip                 checked        6  pass"
        assert lines[-1] == "suite: pass"

    def test_unknown_law_exits_two(self, capsys):
        code, _, err = run(capsys, ["check-laws", "--laws", "bogus"])
        assert code == 2
        assert "unknown law" in err

    def test_bad_bound_exits_two(self, capsys):
        code, _, err = run(capsys, ["check-laws", "--max", "0"])
        assert code == 2

    def test_bad_primes_exit_two(self, capsys):
        code, _, err = run(capsys, ["check-laws", "--primes", "2,9"])
        assert code == 2


class TestGolden:
    @pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
    def test_byte_stable_against_golden(self, capsys, name):
        argv = GOLDEN_CASES[name]
        code, first, err = run(capsys, argv)
        assert (code, err) == (0, "")
        code, second, _ = run(capsys, argv)
        assert code == 0
        want = (GOLDEN_DIR / name).read_text()
        assert first == second == want
