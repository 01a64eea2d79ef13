import io

import pytest

from neighborly.cli import build_parser, run

from .conftest import TABLE2_TEXT

WITNESS = "000****\n01*0***\n0*11***\n1***00*\n1***1*0\n1****11\n"
TRIANGLES = "d=2\n0 0\n2 0\n0 2\n\n0 0\n2 0\n0 -2\n"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = run(list(argv), out, err)
    return status, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {
        "table2": TABLE2_TEXT,
        "ex1": "00*\n*11\n",
        "witness": WITNESS,
        "bad": "00*\n0x1\n",
        "triangles": TRIANGLES,
    }.items():
        p = tmp_path / f"{name}.txt"
        p.write_text(text)
        paths[name] = str(p)
    return paths


def test_all_subcommands_registered():
    sub = next(a for a in build_parser()._actions if a.dest == "command")
    assert set(sub.choices) >= {
        "check", "volume", "slice", "partition", "standardize", "iso", "canon", "inflate",
        "inflate-all", "corollary", "search", "simplex2code", "neighborly2d",
    }


def test_check_witness(files):
    status, out, _ = call("check", files["witness"], "--d", "3", "--neighborly", "--twin-free")
    assert status == 0
    assert "neighborly=true" in out and "twin_pairs=0" in out


def test_check_failure_reports_witness(files):
    status, out, _ = call("check", files["ex1"], "--d", "3")
    assert status == 1 and "FAIL" in out


def test_inflate_table2(files):
    status, out, _ = call("inflate", files["table2"], "--order", "3,2,1", "--delta", "0,0,0")
    assert status == 0
    assert out.split() == ["***1**", "***0*0", "***001"]


def test_inflate_invalid_choice(files):
    status, out, _ = call("inflate", files["ex1"], "--order", "3", "--delta", "0")
    assert status == 1
    assert out.startswith("InvalidChoice")


def test_inflate_trace(files):
    status, out, _ = call("inflate", files["table2"], "--order", "3,2,1", "--delta", "0,0,0", "--trace")
    assert status == 0
    lines = out.splitlines()
    assert lines[2].startswith("# step 1:") and "Balanced" in lines[2]
    assert any("010**0 removed" in line for line in lines)
    assert any("***001 unmodified" in line for line in lines)


def test_parse_error_exit_2(files):
    status, out, err = call("check", files["bad"])
    assert status == 2 and out == ""
    assert len(err.strip().splitlines()) == 1 and "IllegalCharacter" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["inflate", "FILE", "--order", "a,b"],
        ["inflate", "FILE", "--order", "9"],
        ["slice", "FILE", "--pos", "1", "--letter", "x"],
        ["search", "--d", "2"],
        ["search", "--d", "2", "--n-range", "5..3"],
        ["random", "--d", "2", "--n", "4", "--target", "3"],
        ["nope"],
        ["volume", "/nonexistent/file"],
    ],
)
def test_usage_errors(files, argv, capsys):
    argv = [files["ex1"] if a == "FILE" else a for a in argv]
    status, _, _ = call(*argv)
    assert status == 2


def test_round_trip(tmp_path):
    p = tmp_path / "c.txt"
    p.write_text("# header\n\n0*1**0\n010**0\n   \n***001\n")
    status, out, _ = call("slice", str(p), "--pos", "1", "--letter", "*")
    assert out == "***001\n"
    status, out, _ = call("canon", str(p))
    body = [line for line in out.splitlines() if not line.startswith("#")]
    assert len(body) == 3


def test_volume_and_partition(files):
    assert call("volume", files["table2"])[1] == "50\n"
    status, out, _ = call("partition", files["table2"], "--pos", "1")
    assert status == 0 and out == "C0={2,3,4}\nC1={5}\nD={6}\n"


def test_standardize_and_iso(files):
    status, out, _ = call("standardize", files["table2"])
    assert status == 0 and "# s=4 r=5" in out
    assert status == 0 and call("iso", files["table2"], files["table2"])[0] == 0
    assert call("iso", files["ex1"], files["ex1"])[1].startswith("sigma:")


def test_search_header(files):
    status, out, _ = call("search", "--d", "2", "--n-range", "3..4")
    assert status == 0
    headers = [line for line in out.splitlines() if line.startswith("d=")]
    assert headers == ["d=2 n=3 max=3 exhaustive=true", "d=2 n=4 max=3 exhaustive=true"]


def test_search_node_limit_not_exhaustive():
    status, out, _ = call("search", "--d", "3", "--n", "6", "--node-limit", "1")
    assert status == 1 and "exhaustive=false" in out


def test_random_deterministic():
    argv = ("random", "--d", "3", "--n", "6", "--target", "5", "--seed", "7")
    a, b = call(*argv), call(*argv)
    assert a == b and a[0] == 0


def test_corollary(files):
    status, out, _ = call("corollary", files["table2"])
    assert status == 1 and out.startswith("HypothesesUnsatisfied:") and "d-code" in out


def test_inflate_all(files):
    status, out, _ = call("inflate-all", files["ex1"], "--positions", "2")
    assert status == 0
    assert [block.split() for block in out.split("\n\n")] == [["0**"], ["**1"]]


def test_simplex_commands(files):
    status, out, _ = call("simplex2code", files["triangles"])
    assert status == 0
    assert [line for line in out.splitlines() if not line.startswith("#")] == ["011*", "*100"]
    assert call("neighborly2d", files["triangles"])[1:] == ("1 2 true\n", "")


@pytest.mark.parametrize("cmd", [["check"], ["standardize"], ["canon"], ["corollary"]])
def test_byte_identical_runs(files, cmd):
    argv = cmd + [files["table2"]]
    assert call(*argv) == call(*argv)
