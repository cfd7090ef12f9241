import csv
import io

import pytest

import beepcast


def test_codebooks():
    assert beepcast.codebook("narayana", 4) == ["00", "01", "1"]
    assert beepcast.codebook("fibonacci", 3) == ["0", "1"]
    assert [beepcast.narayana(i) for i in range(8)] == [1, 1, 1, 2, 3, 4, 6, 9]
    assert beepcast.narayana_closed_form(40) == beepcast.narayana(40)
    assert beepcast.min_r(5) == 6
    assert beepcast.cost("0110") == 8


def test_message_space_roundtrip():
    for mu in range(1, 34):
        word = beepcast.encode(33, mu)
        assert beepcast.decode(33, word) == mu
    assert beepcast.decode(33, "") is None
    assert beepcast.self_delimiting_encode(5) == "1011001110"
    assert beepcast.self_delimiting_decode("1011001110") == 5


def test_run():
    r = beepcast.run("path:3", m=2, mu=1)
    assert r["completion_round"] == 6
    assert r["decode_ok"]
    assert beepcast.run("single", m=2, mu=1)["completion_round"] == 2
    traced = beepcast.run("E:3", m=5, mu=4, trace=True)
    assert traced["trace"].startswith('{"format":"beepcast-trace"')


def test_sweep_csv_is_deterministic():
    a = beepcast.sweep(["path:1..4", "E:2..3"], protocols=["optimal", "beepwaves"], ms=[2, 9], threads=1)
    b = beepcast.sweep(["path:1..4", "E:2..3"], protocols=["optimal", "beepwaves"], ms=[2, 9], threads=3)
    assert a == b
    rows = list(csv.DictReader(io.StringIO(a)))
    assert len(rows) == 6 * 2 * 11
    assert all(r["decode_ok"] == "1" for r in rows)


def test_compare_dominance():
    rows = list(csv.DictReader(io.StringIO(beepcast.compare(["path:1..5"], ms=[16]))))
    assert all(int(r["optimal"]) <= int(r["beepwaves"]) for r in rows)


def test_verify():
    ok = beepcast.verify(paths=4, e=4, stars=4, randoms=1, ms=[2, 5])
    assert ok["passed"]
    assert "protocols.schedule" in ok["checks"]
    bad = beepcast.verify(paths=3, e=0, stars=0, randoms=0, ms=[5], inject_fault=True)
    assert not bad["passed"]
    assert bad["checks"]["protocols.schedule"]["counterexample"]


def test_errors():
    with pytest.raises(beepcast.BeepcastError, match="invalid-m"):
        beepcast.min_r(1)
    with pytest.raises(beepcast.BeepcastError):
        beepcast.run("ring:3", m=2, mu=1)
    with pytest.raises(ValueError):
        beepcast.encode(4, 5)
