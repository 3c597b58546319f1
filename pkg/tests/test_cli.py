import json

from pifinite.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _no_floats(pairs):
    d = dict(pairs)
    for v in d.values():
        assert not isinstance(v, float), f"float leaked into JSON: {v!r}"
    return d


class TestCard:
    def test_plain(self, capsys):
        code, out, _ = run(capsys, "card", "--space", "B(S3)", "--prime", "2", "--height", "1")
        assert code == 0 and out.strip() == "2/3"

    def test_integer_prints_without_denominator(self, capsys):
        code, out, _ = run(capsys, "card", "--space", "B^2(C3)", "--prime", "3", "--height", "0")
        assert code == 0 and out.strip() == "3"

    def test_json_schema(self, capsys):
        code, out, _ = run(capsys, "card", "--space", "B(S3)", "--prime", "2",
                           "--height", "1", "--format", "json")
        assert code == 0
        payload = json.loads(out, object_pairs_hook=_no_floats)
        assert payload == {"space": "B(S3)", "prime": 2, "height": 1,
                           "cardinality": {"num": "2", "den": "3"}}
        assert int(payload["cardinality"]["num"]) == 2


class TestSubcommands:
    def test_loop(self, capsys):
        code, out, _ = run(capsys, "loop", "--space", "B(S3)", "--prime", "2")
        assert code == 0 and out.strip() == "B(S3) + B^1(C2)"

    def test_profile(self, capsys):
        code, out, _ = run(capsys, "profile", "--space", "B(C2)", "--prime", "2", "--range", "3")
        assert code == 0
        assert out.splitlines() == ["0: 1/2", "1: 1", "2: 2", "3: 4"]

    def test_delta(self, capsys):
        code, out, _ = run(capsys, "delta", "6", "--prime", "3")
        assert code == 0 and out.strip() == "-70"
        code, out, _ = run(capsys, "delta", "4", "--prime", "2", "--iterations", "2")
        assert code == 0 and out.strip() == str((-6 - (-6) ** 2) // 2)

    def test_beta(self, capsys):
        code, out, _ = run(capsys, "beta", "--prime", "2", "--k", "0", "--range", "3")
        assert code == 0
        assert out.splitlines() == ["0: 0 (zero)", "1: 1 (divisible)",
                                    "2: 3 (divisible)", "3: 7 (divisible)"]

    def test_classify(self, capsys):
        code, out, _ = run(capsys, "classify", "--space", "B(C2)", "--prime", "2", "--range", "2")
        assert code == 0
        assert out.splitlines() == ["0: 1/2 (divisible)", "1: 1 (divisible)", "2: 2 (complete)"]

    def test_wreath(self, capsys):
        code, out, _ = run(capsys, "wreath", "C2", "--prime", "2", "--height", "2")
        assert code == 0 and out.strip() == "lhs -1, rhs 1, sign -1"

    def test_counterexample(self, capsys):
        code, out, _ = run(capsys, "counterexample", "--prime", "3")
        assert code == 0 and out.strip() == "lhs 29, rhs 27, multiplicativity fails"

    def test_table(self, capsys):
        code, out, _ = run(capsys, "table", "--prime", "3", "--kmax", "3", "--nmax", "4",
                           "--format", "json")
        assert code == 0
        payload = json.loads(out)
        values = payload["values"]
        assert len(values) == 5 and len(values[0]) == 4
        assert values[4][2] == {"num": "27", "den": "1"}
        assert values[0][1] == {"num": "1", "den": "3"}

    def test_verify_passes(self, capsys):
        code, out, _ = run(capsys, "verify")
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 8
        assert all(line.startswith("PASS") for line in lines)

    def test_verify_exit_three_on_mismatch(self, capsys, monkeypatch):
        import pifinite.cli as cli
        broken = cli._VERIFY_TABLE + [("forced", lambda: (False, "forced failure"))]
        monkeypatch.setattr(cli, "_VERIFY_TABLE", broken)
        code, out, _ = run(capsys, "verify")
        assert code == 3
        assert "FAIL  forced" in out


class TestExitCodes:
    def test_bad_expression_is_input_error(self, capsys):
        code, _, err = run(capsys, "card", "--space", "B(Q8)", "--prime", "2", "--height", "1")
        assert code == 1 and "position" in err

    def test_usage_error_is_input_error(self, capsys):
        code, _, err = run(capsys, "card", "--space", "pt")
        assert code == 1 and err

    def test_bad_delta_value(self, capsys):
        code, _, err = run(capsys, "delta", "one", "--prime", "2")
        assert code == 1 and "rational" in err

    def test_order_cap_is_resource_error(self, capsys, monkeypatch):
        monkeypatch.setenv("PIFINITE_ORDER_CAP", "10")
        code, _, err = run(capsys, "card", "--space", "B(S4)", "--prime", "2", "--height", "1")
        assert code == 2 and "cap" in err

    def test_nonprime_rejected(self, capsys):
        code, _, err = run(capsys, "card", "--space", "pt", "--prime", "6", "--height", "1")
        assert code == 1 and "prime" in err
