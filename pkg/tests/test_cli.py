import json

import pytest

from shilov.cli import main

CIRCLE = '[{"turns":["0"]},{"turns":["1/2"]},{"turns":["3/4"]}]'


def _run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr().out
    return status, out


def test_classify_circle_triple(capsys):
    status, out = _run(capsys, "classify-triple", CIRCLE)
    data = json.loads(out)
    assert status == 0
    assert data["N"] == [0, 0, 0, 0, 1]
    assert data["invariant"]["iota"] == 1


def test_classify_equal_points(capsys):
    pt = '{"re":[[1,0],[0,1]],"flavor":"HERMITIAN"}'
    _, out = _run(capsys, "classify-triple", f"[{pt},{pt},{pt}]")
    assert json.loads(out)["N"] == [2, 2, 2, 2, 2]


def test_classify_triple_with_witness(capsys):
    pts = '[{"re":[[1,0],[0,1]]},{"re":[[-1,0],[0,-1]]},{"re":[[0,0],[0,0]],"im":[[1,0],[0,-1]]}]'
    status, out = _run(capsys, "classify-triple", "--flavor", "SYMMETRIC", "--witness", pts)
    data = json.loads(out)
    assert status == 0
    assert data["torus"][2]["turns"] == ["1/4", "3/4"]
    assert data["witness"]["flavor"] == "SYMMETRIC"


@pytest.mark.parametrize("second, mu", [("[[-1,0],[0,-1]]", 0), ("[[1,0],[0,1]]", 2), ("[[1,0],[0,-1]]", 1)])
def test_classify_pair(capsys, second, mu):
    pts = f'[{{"re":[[1,0],[0,1]],"flavor":"SYMMETRIC"}},{{"re":{second},"flavor":"SYMMETRIC"}}]'
    status, out = _run(capsys, "classify-pair", pts)
    assert status == 0
    assert json.loads(out)["mu"] == mu


def test_standard_and_enumerate(capsys):
    _, out = _run(capsys, "standard", "--N", "0,0,0,0,1", "--rank", "1", "--flavor", "SYMMETRIC")
    data = json.loads(out)
    assert [t["turns"] for t in data["torus"]] == [["0/1"], ["1/2"], ["3/4"]]
    assert data["matrices"][2]["im"] == [[-1.0]]
    _, out = _run(capsys, "enumerate", "--rank", "1")
    assert json.loads(out)["count"] == 6


def test_maslov_and_cartan(capsys):
    _, out = _run(capsys, "maslov", '[{"basis":[[1,0]]},{"basis":[[0,1]]},{"basis":[[1,1]]}]')
    assert json.loads(out) == {"maslov": 1}
    _, out = _run(capsys, "cartan", '{"vectors":[{"re":[1,1]},{"re":[1,-1]},{"re":[1,0],"im":[0,1]}]}')
    assert json.loads(out)["cartan"]["re"] == pytest.approx(-1)


def test_reduce_from_file(capsys, tmp_path):
    path = tmp_path / "triple.json"
    path.write_text('{"points":[{"re":[[1]],"flavor":"HERMITIAN"},{"re":[[-1]],"flavor":"HERMITIAN"},'
                    '{"re":[[0]],"im":[[-1]],"flavor":"HERMITIAN"}]}')
    status, out = _run(capsys, "reduce", str(path))
    assert status == 0
    assert json.loads(out)["torus"][2]["turns"] == ["3/4"]


@pytest.mark.parametrize(
    "argv, status, code",
    [
        (["standard", "--N", "0,2,1,0,0", "--rank", "3"], 1, "not_monotone"),
        (["standard", "--N", "0,0,0,0,3", "--rank", "2"], 1, "out_of_range"),
        (["classify-pair", '[{"re":[[2]],"flavor":"HERMITIAN"},{"re":[[1]],"flavor":"HERMITIAN"}]'], 1, "not_boundary"),
        (["classify-pair", '[{"re":[[1]],"flavor":"SPIN"},{"re":[[1]],"flavor":"SPIN"}]'], 1, "unknown_flavor"),
        (["classify-pair", "{oops"], 3, "parse_error"),
        (["bogus"], 3, "parse_error"),
        (["maslov", '[{"basis":[[1,0]]},{"basis":[[1,3e-9]]},{"basis":[[0,1]]}]'], 2, "signature_unstable"),
    ],
)
def test_errors(capsys, argv, status, code):
    got, out = _run(capsys, *argv)
    assert got == status
    assert json.loads(out)["error"]["code"] == code


def test_text_format(capsys):
    status, out = _run(capsys, "classify-triple", CIRCLE, "--format", "text")
    assert status == 0
    assert "iota" in out and not out.lstrip().startswith("{")


def test_output_is_deterministic(capsys):
    pts = '[{"re":[[0,1],[1,0]],"flavor":"SYMMETRIC"},{"re":[[1,0],[0,-1]],"flavor":"SYMMETRIC"},' \
          '{"re":[[0,0],[0,0]],"im":[[1,0],[0,1]],"flavor":"SYMMETRIC"}]'
    first = _run(capsys, "classify-triple", "--witness", pts)
    second = _run(capsys, "classify-triple", "--witness", pts)
    assert first == second
