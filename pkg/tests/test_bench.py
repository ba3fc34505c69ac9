from chordtri.bench import RunResult, machine_fingerprint, median_of_medians, time_orderings
from chordtri.families import gen_family
from chordtri.sparse import resolve_orderings


def test_runs_every_ordering():
    F = gen_family("lattice", 3)
    orders = resolve_orderings(F, "peo,random:2", seed=1)
    runs = time_orderings(F, orders, "regser", repeat=2, timeout=60)
    assert [r.label for r in runs] == ["peo", "random:1", "random:2"]
    for r in runs:
        assert len(r.times) == 2 and all(t is not None and t > 0 for t in r.times)
        assert r.systems >= 1 and not r.error


def test_parallel_matches_serial_counts():
    F = gen_family("adjacent", 2)
    orders = resolve_orderings(F, "peo,random:3")
    serial = time_orderings(F, orders, "wang", repeat=1)
    par = time_orderings(F, orders, "wang", repeat=1, parallel=3)
    assert [r.systems for r in serial] == [r.systems for r in par]


def test_timeout_marks_run():
    # this ordering needs minutes
    F = gen_family("lattice", 17)
    orders = resolve_orderings(F, "random", seed=1)
    (run,) = time_orderings(F, orders, "regser", repeat=1, timeout=0.5)
    assert run.timed_out and run.median() is None and run.median(0.5) == 0.5


def test_worker_error_is_reported():
    F = gen_family("lattice", 2)
    (run,) = time_orderings(F, [("bad", ["nope"])], "wang", repeat=1)
    assert run.error and run.median() is None


def test_median_of_medians():
    runs = [RunResult("a", [], 1, [1.0, 3.0]), RunResult("b", [], 1, [5.0])]
    assert median_of_medians(runs) == 3.5
    assert median_of_medians(runs + [RunResult("c", [], 1, [None])]) is None
    assert median_of_medians(runs + [RunResult("c", [], 1, [None])], budget=9) == 5.0


def test_fingerprint():
    assert {"python", "machine", "cpus"} <= set(machine_fingerprint())
