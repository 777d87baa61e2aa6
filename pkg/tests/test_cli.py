import csv
import io
import json

import pytest

from ffdet.bench import BenchRecord, dump_poly_matrix, parse_matrix, parse_ring, InputError
from ffdet.cli import main


@pytest.fixture
def mat(tmp_path):
    def write(text, name="m.txt"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_det_two_by_two(capsys, mat):
    f = mat("2 2\n1 2\n3 4\n")
    code, out, _ = run(capsys, "det", f, "--algo", "dodgson")
    assert code == 0 and out == "-2\n"
    code, out, _ = run(capsys, "det", f)
    assert code == 0 and out.split() == ["-2"] * 4


def test_det_identity_combined_auto(capsys, mat):
    f = mat("3 3\n1 0 0\n0 1 0\n0 0 1\n")
    assert run(capsys, "det", f, "--algo", "combined", "--r", "auto")[1] == "1\n"


def test_det_rectangular(capsys, mat):
    f = mat("2 3\n1 2 5\n3 4 6\n")
    assert run(capsys, "det", f, "--algo", "dodgson")[1] == "-2 -9\n"
    assert run(capsys, "det", f, "--algo", "one-pass")[0] == 2


def test_det_polynomial_file(capsys, mat):
    doc = {"s": 1, "p": 1, "rows": [[[[1, 1]], [[1, 0]]], [[[1, 0]], [[1, 1], [-1, 0]]]]}
    f = mat(json.dumps(doc), "p.json")
    code, out, _ = run(capsys, "det", f)
    assert code == 0 and set(out.splitlines()) == {"x^2 - x - 1"}


def test_det_prime_field(capsys, mat):
    f = mat("2 2\n1 2\n3 4\n")
    assert run(capsys, "det", f, "--ring", "primefield:7", "--algo", "one-pass")[1] == "5\n"


@pytest.mark.parametrize("text", ["", "2 2\n1 2\n3\n", "2 x\n", "3 2\n1 2\n3 4\n5 6\n"])
def test_input_errors_exit_2(capsys, mat, text):
    assert run(capsys, "det", mat(text))[0] == 2


def test_missing_file_and_bad_ring(capsys, mat):
    assert run(capsys, "det", "/nonexistent/file")[0] == 2
    assert run(capsys, "det", mat("1 1\n5\n"), "--ring", "primefield:15")[0] == 2


def test_overflow_exit_3(capsys, mat):
    big = 2**40
    f = mat(f"2 2\n{big} 1\n1 {big}\n")
    code, _, err = run(capsys, "det", f, "--ring", "int", "--algo", "dodgson")
    assert code == 3 and "overflow" in err


def test_counts_exact_match(capsys):
    code, out, _ = run(capsys, "counts", "--n", "3..6")
    assert code == 0 and out.rstrip().endswith("EXACT MATCH")


def test_counts_one_pass_n3_has_no_divisions(capsys):
    code, out, err = run(capsys, "counts", "--n", "3..3", "--algo", "one-pass", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and rows[0]["n_div"] == "0" and "EXACT MATCH" in err


def test_counts_sweep_minimum_at_r3(capsys):
    code, out, _ = run(capsys, "counts", "--n", "5..5", "--algo", "combined", "--r", "all", "--format", "json")
    recs = json.loads(out)
    best = min(recs, key=lambda r: (r["n_mul"] + r["n_div"], r["r"]))
    assert code == 0 and best["r"] == 3


def test_counts_range_checked(capsys):
    assert run(capsys, "counts", "--n", "2..5")[0] == 2


def test_bench_deterministic_csv_schema(capsys):
    args = ("bench", "--n", "8", "--ring", "int", "--seed", "42", "--reps", "2", "--entry-range", "0..9")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0 and out1 == out2
    header = out1.splitlines()[0].split(",")
    assert header == BenchRecord.columns()
    rows = list(csv.DictReader(io.StringIO(out1)))
    for row in rows:
        if row["formula_n_mul"]:
            assert row["n_mul"] == row["formula_n_mul"]


def test_bench_modular_matches_direct(capsys):
    code, out, _ = run(capsys, "bench", "--n", "6", "--ring", "bigint", "--algo", "all", "--format", "json",
                       "--entry-range=-1000000..1000000")
    recs = json.loads(out)
    assert code == 0
    assert {r["algorithm"] for r in recs} == {"dodgson", "one-pass", "combined", "modular", "modular-conversion"}
    assert len({r["result_digest"] for r in recs}) == 1


def test_bench_polynomial_ordering(capsys):
    code, out, _ = run(capsys, "bench", "--n", "8", "--ring", "poly:1,1", "--algo", "all", "--r", "4",
                       "--format", "json", "--seed", "1")
    recs = {r["algorithm"]: r for r in json.loads(out)}
    assert code == 0
    assert recs["combined"]["c_mul"] <= recs["dodgson"]["c_mul"] <= recs["one-pass"]["c_mul"]


def test_bench_machine_words_overflow_deterministically(capsys):
    args = ("bench", "--n", "8", "--ring", "int", "--seed", "42")
    assert run(capsys, *args)[0] == run(capsys, *args)[0] == 3


def test_bench_timing_off_by_default(capsys):
    _, out, _ = run(capsys, "bench", "--n", "3", "--format", "json")
    assert all(r["wall_time_ns"] == 0 for r in json.loads(out))


def test_plan_matrix_file(capsys, mat):
    f = mat("2 2\n1 2\n3 4\n")
    code, out, _ = run(capsys, "plan", f, "--prime-pool", "7,5,3", "--format", "json")
    report = json.loads(out)
    assert code == 0 and report["primes"] == [7, 5] and report["bound"] == 12
    code, out, _ = run(capsys, "plan", mat("3 3\n1 0 0\n0 1 0\n0 0 1\n"), "--format", "json")
    assert json.loads(out)["prime_count"] == 1


def test_plan_shape_reports_estimate(capsys):
    code, out, _ = run(capsys, "plan", "--n", "2", "--s", "1", "--p", "1", "--l", "1", "--word-bits", "31",
                       "--format", "json")
    report = json.loads(out)
    assert code == 0 and report["estimated_mu"] == 5 and report["rigorous_moduli"] >= 1


def test_plan_pool_exhaustion(capsys, mat):
    assert run(capsys, "plan", mat("2 2\n100 1\n1 100\n"), "--prime-pool", "7,5")[0] == 2


def test_ring_descriptors():
    assert parse_ring("poly:2,3").degree == 3
    assert parse_ring("poly:1,1/primefield:7").ring.base.modulus == 7
    for bad in ("poly:1", "float", "primefield:x", "poly:-1,2"):
        with pytest.raises(InputError):
            parse_ring(bad)


def test_poly_matrix_round_trip():
    doc = {"s": 2, "p": 1, "rows": [[[[3, 1, 0], [-1, 0, 1]], []], [[[2, 0, 0]], [[1, 1, 1]]]]}
    A = parse_matrix(json.dumps(doc))
    assert parse_matrix(dump_poly_matrix(A, 1)) == A
    doc["rows"][0][0].append([1, 2, 0])
    with pytest.raises(InputError):
        parse_matrix(json.dumps(doc))
