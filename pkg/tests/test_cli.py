import json

from zsegz.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_known_instance(capsys):
    code, out, _ = run_cli(
        capsys,
        "--format",
        "json",
        "count",
        "--group",
        "2,2",
        "--seq",
        "(1,1):3 (0,1):1 (1,0):1",
        "--k",
        "4",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert doc["result"]["count"] == 0


def test_count_identity_pairs(capsys):
    code, out, _ = run_cli(
        capsys, "count", "--group", "2,2", "--seq", "(0,0):5", "--k", "2"
    )
    assert code == 0
    assert "count: 10" in out


def test_count_table_csv_row_sums(capsys):
    code, out, _ = run_cli(
        capsys,
        "--format",
        "csv",
        "count",
        "--group",
        "2,2",
        "--seq",
        "(0,0):1 (1,0):1 (0,1):1 (1,1):1",
        "--kmax",
        "4",
        "--table",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "k,count"
    assert lines[1:] == ["0,1", "1,1", "2,0", "3,1", "4,1"]


def test_count_table_json_row_sums_binomial(capsys):
    code, out, _ = run_cli(
        capsys,
        "--format",
        "json",
        "count",
        "--group",
        "2,2",
        "--seq",
        "(0,0):1 (1,0):1 (0,1):1 (1,1):1",
        "--kmax",
        "4",
        "--table",
    )
    doc = json.loads(out)
    assert doc["result"]["row_sums"] == {"0": 1, "1": 4, "2": 6, "3": 4, "4": 1}


def test_constant_matches_table(capsys):
    code, out, _ = run_cli(
        capsys,
        "--format",
        "json",
        "constant",
        "--group",
        "2,2",
        "--lengths",
        "2",
        "--modified",
    )
    assert code == 0
    doc = json.loads(out)["result"]
    assert doc["value"] == 5
    assert doc["matches_table"] is True


def test_constant_unmodified_kemnitz(capsys):
    code, out, _ = run_cli(
        capsys, "--format", "json", "constant", "--group", "3,3", "--lengths", "3"
    )
    assert code == 0
    doc = json.loads(out)["result"]
    assert doc["value"] == 9
    lens = [o["length"] for o in doc["outcomes"]]
    assert lens == sorted(lens)


def test_constant_byte_identical_across_threads(capsys):
    args = [
        "--format",
        "json",
        "constant",
        "--group",
        "3,3",
        "--lengths",
        "6",
        "--modified",
    ]
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, "--threads", "4", *args[0:])
    assert code1 == code2 == 0
    assert out1 == out2


def test_constant_explicit_ceiling_sandwich_case(capsys):
    code, out, _ = run_cli(
        capsys,
        "--format",
        "json",
        "constant",
        "--group",
        "2,4",
        "--lengths",
        "4",
        "--modified",
        "--ceiling",
        "9",
    )
    assert code == 0
    doc = json.loads(out)["result"]
    assert doc["value"] == 9
    assert doc["bounds"]["lower"] == 3 and doc["bounds"]["upper"] == 8


def test_constant_unsound_ceiling_exit_code(capsys):
    code, _, err = run_cli(
        capsys,
        "constant",
        "--group",
        "2,4",
        "--lengths",
        "4",
        "--modified",
        "--ceiling",
        "8",
    )
    assert code == 4
    assert "not a valid upper bound" in err


def test_constant_inconclusive_exit_code(capsys):
    code, _, err = run_cli(
        capsys,
        "--orbit-budget",
        "3",
        "constant",
        "--group",
        "3,3",
        "--lengths",
        "3",
    )
    assert code == 3
    assert "inconclusive" in err


def test_construct_command(capsys):
    code, out, _ = run_cli(
        capsys,
        "--format",
        "json",
        "construct",
        "lower_gcd",
        "--n",
        "5",
        "--t",
        "2",
    )
    assert code == 0
    doc = json.loads(out)["result"]
    assert doc["verification"]["all_passed"] is True
    assert doc["verification"]["claimed_length"] == 17
    # round-trip: the emitted sequence parses back identically
    from zsegz.sequences import format_seq, parse_seq

    assert format_seq(parse_seq(doc["sequence"])) == doc["sequence"]


def test_congruence_command_alias(capsys):
    code, out, _ = run_cli(
        capsys, "--format", "json", "congruence", "reiher", "--p", "3", "--exhaustive"
    )
    assert code == 0
    reports = json.loads(out)["result"]["reports"]
    assert [r["length"] for r in reports] == [7, 8]
    assert all(r["failures"] == 0 for r in reports)


def test_congruence_sampled_echoes_seed(capsys):
    code, out, _ = run_cli(
        capsys,
        "--format",
        "json",
        "--seed",
        "11",
        "congruence",
        "cw_rank3_full",
        "--p",
        "5",
        "--samples",
        "25",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["config"]["seed"] == 11
    assert doc["result"]["reports"][0]["seed"] == 11


def test_parse_error_exit_code(capsys):
    code, _, err = run_cli(
        capsys, "count", "--group", "2,2", "--seq", "(1,1):x", "--k", "2"
    )
    assert code == 2
    assert "parse error" in err


def test_usage_error_exit_code(capsys):
    code, _, _ = run_cli(capsys, "count", "--group", "2,2", "--seq", "(1,1)")
    assert code == 2  # neither --k nor --kmax


def test_csv_unavailable_elsewhere(capsys):
    code, _, _ = run_cli(
        capsys, "--format", "csv", "constant", "--group", "2,2", "--lengths", "2",
        "--modified",
    )
    assert code == 2


def test_selftest_single_criterion(capsys):
    code, out, _ = run_cli(capsys, "selftest", "--criterion", "1")
    assert code == 0
    assert "PASS criterion 1" in out
