"""Wall-clock comparison of decompositions under different variable orderings.

Each run happens in a child process so a time budget can be enforced and
runs can proceed in parallel without sharing state.
"""
from __future__ import annotations

import multiprocessing as mp
import os
import platform
import statistics
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .decompose import decompose

DEFAULT_REPEAT = 3


@dataclass
class RunResult:
    label: str
    ordering: list
    repeat: int
    times: list = field(default_factory=list)  # seconds; None for a run over budget
    systems: Optional[int] = None
    error: str = ""

    @property
    def timed_out(self) -> bool:
        return any(t is None for t in self.times)

    def median(self, budget: Optional[float] = None) -> Optional[float]:
        """Median time; runs over budget count as ``budget`` (a lower bound)."""
        if self.error:
            return None
        vals = [budget if t is None else t for t in self.times]
        if not vals or any(v is None for v in vals):
            return None
        return statistics.median(vals)

    def to_dict(self) -> dict:
        return {"label": self.label, "ordering": list(self.ordering), "times": self.times,
                "median": self.median(), "systems": self.systems, "error": self.error}


def machine_fingerprint() -> dict:
    return {"python": platform.python_version(), "machine": platform.machine(),
            "system": platform.system(), "processor": platform.processor() or "unknown",
            "cpus": os.cpu_count()}


def _child(conn, polys, names, algorithm, max_nodes):
    try:
        ring = polys[0].ring.reordered(names)
        work = [f.to_ring(ring) for f in polys]
        t0 = time.perf_counter()
        res = decompose(work, algorithm, ring=ring, max_nodes=max_nodes, record=False)
        conn.send(("ok", time.perf_counter() - t0, len(res.systems)))
    except Exception as exc:  # reported to the parent
        conn.send(("error", None, f"{type(exc).__name__}: {exc}"))
    finally:
        conn.close()


def _start(polys, names, algorithm, max_nodes):
    ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else mp.get_context()
    parent, child = ctx.Pipe(duplex=False)
    proc = ctx.Process(target=_child, args=(child, polys, names, algorithm, max_nodes), daemon=True)
    proc.start()
    child.close()
    return proc, parent


def time_orderings(F: Sequence, orderings: Sequence, algorithm: str = "regser",
                   repeat: int = DEFAULT_REPEAT, timeout: Optional[float] = None,
                   parallel: int = 1, max_nodes: int = 10**6) -> list:
    """Time ``decompose`` for each ``(label, names)`` ordering ``repeat`` times."""
    F = list(F)
    results = [RunResult(label, list(names), repeat) for label, names in orderings]
    jobs = [(i, r) for i in range(len(results)) for r in range(repeat)]
    slots = {}
    parallel = max(1, int(parallel))
    pending = list(jobs)
    collected = {i: [] for i in range(len(results))}
    while pending or slots:
        while pending and len(slots) < parallel:
            i, r = pending.pop(0)
            proc, conn = _start(F, results[i].ordering, algorithm, max_nodes)
            slots[(i, r)] = (proc, conn, time.monotonic())
        for key in list(slots):
            proc, conn, started = slots[key]
            i = key[0]
            if conn.poll(0.01):
                status, dt, info = conn.recv()
                proc.join()
                if status == "ok":
                    collected[i].append(dt)
                    results[i].systems = info
                else:
                    collected[i].append(None)
                    results[i].error = info
                del slots[key]
            elif timeout is not None and time.monotonic() - started > timeout:
                proc.terminate()
                proc.join()
                collected[i].append(None)
                del slots[key]
            elif not proc.is_alive() and not conn.poll(0):
                collected[i].append(None)
                results[i].error = results[i].error or f"worker exited with code {proc.exitcode}"
                del slots[key]
    for i, res in enumerate(results):
        res.times = collected[i]
    return results


def median_of_medians(runs: Sequence[RunResult], budget: Optional[float] = None) -> Optional[float]:
    meds = [r.median(budget) for r in runs]
    if any(m is None for m in meds) or not meds:
        return None
    return statistics.median(meds)
