"""Acceptance criteria, one test each.

Every test records a ``PASS``/``FAIL`` line which conftest prints in the
terminal summary. Running this file directly prints the same lines.
"""
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from chordtri.bench import median_of_medians, time_orderings  # noqa: E402
from chordtri.decompose import ALGORITHMS, decompose, reduce_chain  # noqa: E402
from chordtri.elimination import (pseudo_divide, subresultant_chain,  # noqa: E402
                                  sylvester_resultant)
from chordtri.errors import ResourceError  # noqa: E402
from chordtri.families import gen_family  # noqa: E402
from chordtri.graph import associated_graph, is_peo, is_subgraph, variable_sparsity  # noqa: E402
from chordtri.oracle import check_systems, verify_decomposition  # noqa: E402
from chordtri.sparse import resolve_orderings  # noqa: E402
from gen_systems import random_chordal_system, random_qq_poly, random_system  # noqa: E402
from helpers import EXAMPLE_P, EXAMPLE_Q, ILLUSTRATIVE, X4, X5, polys, ring_of  # noqa: E402
from test_elimination import dense, euclid_gcd  # noqa: E402

RESULTS = {}

# pinned thresholds
GOLDEN_SECONDS = 1.0
THEOREM_SYSTEMS = 200
THEOREM_SECONDS = 300.0
ORACLE_SYSTEMS = 500
PER_RUN_SECONDS = 20.0
SPEEDUP = 1.5
RANDOM_ORDERINGS = 5
TREND_RUN_SECONDS = 30.0
TREND_BUDGET_SECONDS = 600.0
TRIALS = 1000


def record(n, ok, detail):
    RESULTS[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    return ok


# -- 1 ----------------------------------------------------------------------------

PRINTED_T1 = "-x1^3 + x1^2 + 14*x1 + 16; x2+x1+2; (x2+2)*x3+x1; (x3+x2)*x4+x3-1"
PRINTED_T2 = "x1+1; x2+1; x3-1; x4+x2"
PRINTED_T3 = "x1; x2+2; (x2-1)*x3+x2^2+1; (x3+x2)*x4+x3-1"


def criterion_1():
    F = polys(ILLUSTRATIVE, X4)
    t0 = time.perf_counter()
    res = decompose(F, "wang")
    elapsed = time.perf_counter() - t0
    Ts = [S.T for S in res.systems]
    checks = {"3 systems": len(Ts) == 3}
    if len(Ts) == 3:
        checks["T2 verbatim"] = Ts[1] == tuple(polys(PRINTED_T2, X4))
        checks["T3 verbatim"] = Ts[2] == tuple(polys(PRINTED_T3, X4))
        checks["T1 supports"] = [f.support for f in Ts[0]] == [f.support for f in polys(PRINTED_T1, X4)]
        GF = associated_graph(F)
        G = [associated_graph(T) for T in Ts]
        checks["G(T1) = G(F)"] = G[0] == GF
        checks["G(T2), G(T3) strict"] = all(is_subgraph(g, GF) and g != GF for g in G[1:])
    rep = verify_decomposition(F, "wang", primes=(5, 7, 11, 13))
    checks["oracle 5,7,11,13"] = rep.status == "pass"
    checks[f"< {GOLDEN_SECONDS:g} s"] = elapsed < GOLDEN_SECONDS
    bad = [k for k, v in checks.items() if not v]
    note = f"; T1 starts {Ts[0][0]} (printed -x1^3 + x1^2 + 14*x1 + 16)" if Ts else ""
    return record(1, not bad, f"{elapsed:.3f} s; " + ("all checks hold" if not bad else
                                                      "failed: " + ", ".join(bad)) + note)


# -- 2 ----------------------------------------------------------------------------

def _nodes_in_graph(tree, GF):
    bad = 0
    for e in tree:
        if not (is_subgraph(associated_graph(e.node.P), GF)
                and is_subgraph(associated_graph(e.node.Q), GF)):
            bad += 1
    return len(tree), bad


def criterion_2(seed=2024):
    rng = random.Random(seed)
    t0 = time.perf_counter()
    complete = nodes = violations = capped = generated = 0
    while complete < THEOREM_SYSTEMS:
        F, R, p = random_chordal_system(rng, n_max=8, max_deg=3)
        generated += 1
        GF = associated_graph(F)
        assert is_peo(GF, sorted(GF.vertices))
        all_done = True
        for alg in ALGORITHMS:
            try:
                tree = decompose(F, alg, ring=R, time_limit=PER_RUN_SECONDS).tree
            except ResourceError as exc:
                # the nodes generated before the cap still count
                tree, all_done = exc.tree, False
                capped += 1
            k, b = _nodes_in_graph(tree, GF)
            nodes += k
            violations += b
        complete += all_done
    elapsed = time.perf_counter() - t0
    ok = violations == 0 and elapsed < THEOREM_SECONDS
    return record(2, ok, f"{complete} systems complete under all 3 algorithms ({generated} generated, "
                         f"{capped} runs capped at {PER_RUN_SECONDS:g} s and checked on their "
                         f"partial trees), {nodes} nodes, {violations} violations, {elapsed:.0f} s")


# -- 3 ----------------------------------------------------------------------------

def criterion_3(seed=3033):
    rng = random.Random(seed)
    complete = generated = capped = failures = 0
    witnesses = []
    while complete < ORACLE_SYSTEMS:
        # alternate chordal and unstructured inputs
        if generated % 2:
            F, R, p = random_chordal_system(rng, n_max=4, max_deg=3, primes=(5, 7))
        else:
            F, R, p = random_system(rng, n_max=4, max_deg=3, primes=(5, 7), n_min=2, min_polys=2)
        generated += 1
        results = []
        for alg in ALGORITHMS:
            try:
                results.append((alg, decompose(F, alg, ring=R, record=False,
                                               time_limit=PER_RUN_SECONDS).systems))
            except ResourceError:
                capped += 1
        if len(results) < len(ALGORITHMS):
            continue
        complete += 1
        for alg, systems in results:
            c = check_systems(F, systems, p)
            if c.status != "pass":
                failures += 1
                witnesses.append((alg, [str(f) for f in F], c.missing[:2], c.extra[:2]))
    detail = (f"{complete} systems x 3 algorithms, {failures} mismatches "
              f"({generated} generated, {capped} runs capped at {PER_RUN_SECONDS:g} s)")
    if witnesses:
        detail += f"; first: {witnesses[0]}"
    return record(3, failures == 0, detail)


# -- 4 ----------------------------------------------------------------------------

def criterion_4():
    P = polys(EXAMPLE_P, X5)
    Q = set(polys(EXAMPLE_Q, X5))
    snaps = reduce_chain(P)
    Qp_expected = set(polys("x2+x1; x3+x1; x3^2+x2^3; x3; -x2*x4+x3; x5+x2", X5))
    GP, GQ, GQp = associated_graph(P), associated_graph(Q), associated_graph(snaps[1])
    checks = {
        "red_5(P) = Q": snaps[0] == Q,
        "red_4 = Q'": snaps[1] == Qp_expected,
        "G(Q') not in G(Q)": not is_subgraph(GQp, GQ),
        "G(Q') in G(P)": is_subgraph(GQp, GP),
    }
    bad = [k for k, v in checks.items() if not v]
    return record(4, not bad, "all checks hold (x3^2 + x2^3 in Q')" if not bad
                  else "failed: " + ", ".join(bad))


# -- 5 ----------------------------------------------------------------------------

def criterion_5():
    bad = []
    for i in range(2, 38):
        F = gen_family("lattice", i)
        n = i + 3
        if variable_sparsity(F) != Fraction(6 * n - 12, n * n - n):
            bad.append(f"lattice {i} sparsity")
        if not is_peo(associated_graph(F), list(range(n))):
            bad.append(f"lattice {i} order")
    for i in range(1, 16):
        F = gen_family("adjacent", i)
        n = 2 * i + 2
        if variable_sparsity(F) != Fraction(5 * n - 8, n * n - n):
            bad.append(f"adjacent {i} sparsity")
        if not is_peo(associated_graph(F), list(range(n))):
            bad.append(f"adjacent {i} order")
    worked = variable_sparsity(gen_family("lattice", 16))
    if worked != Fraction(51, 171):
        bad.append(f"worked value {worked}")
    return record(5, not bad, "lattice i=2..37, adjacent i=1..15, 51/171, natural orders are PEOs"
                  if not bad else "failed: " + ", ".join(bad))


# -- 6 ----------------------------------------------------------------------------

def _trend(family, i, seed):
    F = gen_family(family, i)
    orders = resolve_orderings(F, f"peo,random:{RANDOM_ORDERINGS}", seed=seed)
    t0 = time.perf_counter()
    runs = time_orderings(F, orders, "regser", repeat=1, timeout=TREND_RUN_SECONDS)
    spent = time.perf_counter() - t0
    peo = median_of_medians([r for r in runs if r.label == "peo"], TREND_RUN_SECONDS)
    rnd = median_of_medians([r for r in runs if r.label != "peo"], TREND_RUN_SECONDS)
    over = sum(r.timed_out for r in runs)
    return peo, rnd, over, spent


def criterion_6(seed=42):
    parts, ok = [], True
    for family, i in (("lattice", 17), ("adjacent", 7)):
        size = i
        while True:
            peo, rnd, over, spent = _trend(family, size, seed)
            n = len(gen_family(family, size)[0].ring.names)
            if peo is not None and peo < TREND_BUDGET_SECONDS or n <= 12:
                break
            size -= 1
        if peo is None or rnd is None:
            ok = False
            parts.append(f"{family} n={n}: no timing")
            continue
        # a run over budget counts as the budget, so the ratio is a lower bound
        ratio = rnd / max(peo, 1e-6)
        ok &= ratio >= SPEEDUP
        parts.append(f"{family} n={n}: peo {peo:.4f} s, random median {rnd:.3f} s "
                     f"({over} over {TREND_RUN_SECONDS:g} s), ratio >= {ratio:.1f}")
    return record(6, ok, "; ".join(parts))


# -- 7 ----------------------------------------------------------------------------

def _pair(rng, others=2):
    R = ring_of(["y", "z", "x"])
    m, l = sorted((rng.randint(1, 4), rng.randint(1, 4)), reverse=True)
    return random_qq_poly(R, rng, 2, m, others), random_qq_poly(R, rng, 2, l, others)


def _prop_pseudo_division(rng):
    F, G = _pair(rng)
    q, r, s = pseudo_divide(F, G, 2)
    return G.lc(2) ** s * F == q * G + r and (r.is_zero or r.degree(2) < G.degree(2))


def _prop_resultant_product(rng):
    R = ring_of(["y", "x"])
    F1, F2, G = (random_qq_poly(R, rng, 1, rng.randint(1, 3)) for _ in range(3))
    return sylvester_resultant(F1 * F2, G, 1) == (sylvester_resultant(F1, G, 1)
                                                  * sylvester_resultant(F2, G, 1))


def _prop_degree_bounds(rng):
    F, G = _pair(rng, others=1)
    ch = subresultant_chain(F, G, 2)
    return all(S.is_zero or S.degree(2) <= j for j, S in ch.chain)


def _prop_gcd_agreement(rng):
    RX = ring_of(["x"])
    H = random_qq_poly(RX, rng, 0, rng.randint(0, 2), 0) if rng.random() < 0.7 else RX.one()
    F = random_qq_poly(RX, rng, 0, rng.randint(1, 4), 0) * H
    G = random_qq_poly(RX, rng, 0, rng.randint(1, 4), 0) * H
    if F.degree(0) < G.degree(0):
        F, G = G, F
    det = subresultant_chain(F, G, 0, method="determinant")
    rec = subresultant_chain(F, G, 0)
    if det.chain != rec.chain:
        return False
    seq = [G] + [S for _, S in det.chain if not S.is_zero]
    last = seq[-1]
    g = euclid_gcd(dense(F), dense(G))
    lead = dense(last)[0]
    return [Fraction(c) / lead for c in dense(last)] == g


PROPERTIES = [("pseudo-division identity", _prop_pseudo_division),
              ("resultant multiplicativity", _prop_resultant_product),
              ("subresultant degree bounds", _prop_degree_bounds),
              ("determinant vs remainder-sequence gcd", _prop_gcd_agreement)]


def criterion_7(seed=7):
    parts, ok = [], True
    for name, prop in PROPERTIES:
        rng = random.Random(f"{seed}-{name}")
        fails = sum(not prop(rng) for _ in range(TRIALS))
        ok &= fails == 0
        parts.append(f"{name} {TRIALS - fails}/{TRIALS}")
    return record(7, ok, ", ".join(parts))


# -- pytest entry points --------------------------------------------------------------

def test_criterion_1_golden_run():
    assert criterion_1(), RESULTS[1]


@pytest.mark.slow
def test_criterion_2_chordal_graphs_preserved():
    assert criterion_2(), RESULTS[2]


@pytest.mark.slow
def test_criterion_3_zero_sets_match_oracle():
    assert criterion_3(), RESULTS[3]


def test_criterion_4_reduction_chain():
    assert criterion_4(), RESULTS[4]


def test_criterion_5_sparsity_formulas():
    assert criterion_5(), RESULTS[5]


@pytest.mark.slow
def test_criterion_6_peo_speedup_trend():
    assert criterion_6(), RESULTS[6]


def test_criterion_7_kernel_properties():
    assert criterion_7(), RESULTS[7]


if __name__ == "__main__":
    for fn in (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
               criterion_7):
        fn()
        print(RESULTS[int(fn.__name__[-1])], flush=True)
    sys.exit(0 if all(": PASS" in line for line in RESULTS.values()) else 1)
