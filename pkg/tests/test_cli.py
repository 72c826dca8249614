import json
import subprocess
import sys
from math import comb

import pytest

from mfchains import actions as A
from mfchains.cli import parse_state, render_diagram, run
from mfchains.coefficients import CoeffTable, genbin_table
from mfchains.markov import Generator, generator
from mfchains.simulate import Trajectory, read_jsonl, sample_path


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_coeffs_csv_is_pascal(capsys):
    code, out, _ = _run(capsys, "coeffs", "--action", "un:n=5", "--max-weight", "4", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "lambda;mu;value"
    for line in lines[1:]:
        lam, mu, value = line.split(";")
        l, m = int(lam or 0), int(mu or 0)
        assert value == (f"{comb(l, m)}/1" if m <= l else "0/1")


def test_coeffs_json_round_trip(tmp_path, capsys):
    path = tmp_path / "table.json"
    assert _run(capsys, "coeffs", "--action", "sphere:n=5", "--max-weight", "3", "-o", str(path))[0] == 0
    table = CoeffTable.from_json(path.read_text())
    assert table == genbin_table(A.sphere(5), 3)
    code, out, _ = _run(capsys, "coeffs", "--input", str(path))
    assert code == 0 and CoeffTable.from_json(out) == table


def test_rates_json_round_trip(tmp_path, capsys):
    path = tmp_path / "gen.json"
    assert _run(capsys, "rates", "--action", "symc:m=2", "--direction", "birth",
                "--max-weight", "3", "-o", str(path))[0] == 0
    gen = Generator.from_json(path.read_text())
    assert gen.to_dense() == generator(A.symc(2), "birth", 3).to_dense()
    code, out, _ = _run(capsys, "rates", "--input", str(path), "--format", "csv")
    assert code == 0 and out.startswith("from;to;rate")


def test_semigroup_exact_and_numeric(capsys):
    code, out, _ = _run(capsys, "semigroup", "--action", "torus:n=2", "--direction", "birth",
                        "--from", "", "--to", "1,0", "--x", "1/3")
    assert code == 0 and json.loads(out)["value"] == "2/27"
    code, out, _ = _run(capsys, "semigroup", "--action", "un:n=2", "--direction", "death",
                        "--from", "2", "--x", "1/2")
    assert code == 0
    assert json.loads(out)["row"] == {"2": "1/4", "1": "1/2", "": "1/4"}
    code, out, _ = _run(capsys, "semigroup", "--action", "un:n=1", "--direction", "death",
                        "--from", "1", "--to", "0", "--t", "0.5", "--format", "text")
    assert code == 0 and abs(float(out) - 0.3934693402873666) < 1e-15


def test_verify_exit_codes(capsys):
    code, out, _ = _run(capsys, "verify", "--suite", "all", "--action", "symc:m=2", "--max-weight", "5")
    assert code == 0 and "PASS" in out
    code, out, _ = _run(capsys, "verify", "--suite", "composition", "--action", "un:n=4",
                        "--max-weight", "3", "--format", "json")
    assert code == 0 and json.loads(out)["pass"] is True


def test_verify_failure_exit_code(monkeypatch, capsys):
    from mfchains.oracles import identities

    def broken(suite, action, max_weight):
        report = identities.Report(suite, str(action), max_weight)
        report.add("x", 1, 2)
        return report

    monkeypatch.setattr("mfchains.cli.check_identity", broken)
    code, out, _ = _run(capsys, "verify", "--suite", "scaling", "--action", "un:n=1", "--max-weight", "1")
    assert code == 2 and "FAIL" in out


@pytest.mark.parametrize(
    "argv,code_tag",
    [
        (["coeffs", "--action", "sphere:n=2", "--max-weight", "2"], "E_DOMAIN"),
        (["coeffs", "--action", "un:n=2"], "E_USAGE"),
        (["semigroup", "--action", "un:n=1", "--direction", "death", "--from", "2", "--x", "3/2"], "E_DOMAIN"),
        (["semigroup", "--action", "un:n=1", "--direction", "death", "--from", "a", "--x", "1/2"], "E_STATE"),
        (["semigroup", "--action", "symc:m=2", "--direction", "death", "--from", "1,1,1", "--x", "1/2"], "E_DOMAIN"),
        (["verify", "--suite", "nope", "--action", "un:n=1", "--max-weight", "1"], "E_USAGE"),
        (["coeffs", "--action", "torus:n=3", "--max-weight", "8", "--cap-states", "10"], "E_CAP"),
        (["diagram", "--input", "/nonexistent/file.jsonl"], "E_IO"),
        ([], "E_USAGE"),
    ],
)
def test_domain_errors(capsys, argv, code_tag):
    code, out, err = _run(capsys, *argv)
    assert code == 1
    assert err.startswith(f"mfchains: error[{code_tag}]:")


def test_simulate_and_diagram(tmp_path, capsys):
    traj = tmp_path / "paths.jsonl"
    summary = tmp_path / "summary.json"
    args = ["simulate", "--action", "symc:m=2", "--direction", "birth", "--start", "", "--t-max", "0.7",
            "--paths", "50", "--seed", "7", "--report-tv", "-o", str(traj), "--summary", str(summary)]
    assert _run(capsys, *args)[0] == 0
    first = traj.read_bytes()
    assert _run(capsys, *args, "--threads", "3")[0] == 0
    assert traj.read_bytes() == first
    with open(traj) as fh:
        paths = read_jsonl(fh)
    assert len(paths) == 50 and [p.path for p in paths] == list(range(50))
    data = json.loads(summary.read_text())
    assert set(data) == {"t", "marginal", "tv_vs_exact"}
    assert abs(sum(data["marginal"].values()) - 1) < 1e-12
    record = json.loads(first.splitlines()[0])
    assert set(record) >= {"seed", "start", "horizon", "events"}

    code, out, _ = _run(capsys, "diagram", "--input", str(traj), "--path", "2")
    assert code == 0 and out.startswith("# path 2")


def _boxes(frame):
    body = frame.splitlines()[1:]
    return [] if body == ["(empty)"] else [len(row) for row in body]


@pytest.mark.parametrize("direction,start", [("birth", ()), ("death", (4, 2, 1))])
def test_diagram_frames_differ_by_one_box(direction, start):
    tr = sample_path(A.symtorus(3), direction, start, 2.0, seed=3)
    frames = render_diagram(tr)
    assert len(frames) == len(tr.events) + 1
    for a, b in zip(frames, frames[1:]):
        ra, rb = _boxes(a), _boxes(b)
        n = max(len(ra), len(rb))
        ra += [0] * (n - len(ra))
        rb += [0] * (n - len(rb))
        assert sum(abs(x - y) for x, y in zip(ra, rb)) == 1


def test_parse_state():
    assert parse_state("", A.symc(2)) == ()
    assert parse_state("2,1", A.symc(2)) == (2, 1)
    assert parse_state("", A.torus(3)) == (0, 0, 0)
    assert parse_state("1", A.torus(3)) == (1, 0, 0)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mfchains", "coeffs", "--action", "un:n=1",
                           "--max-weight", "1", "--format", "text"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "[1; 1] = 1/1" in proc.stdout
