"""Worker pool: independent annealing runs plus legal Pareto aggregation.

Workers share nothing; each one owns its seed (base_seed + index), so the
pool's output is a pure function of (problem, pool config) regardless of
scheduling. A failed worker surfaces as an error record in its slot and
never disturbs its siblings.
"""

import os
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .annealer import AnnealConfig, SolutionRecord, run
from .core import DomainError, validate_problem


@dataclass(frozen=True)
class PoolConfig:
    n_workers: int | None = None  # None: one per available core
    base_seed: int = 0
    anneal: AnnealConfig = field(default_factory=AnnealConfig)
    backend: str = "auto"

    def resolved_workers(self):
        n = self.n_workers if self.n_workers is not None else os.cpu_count() or 1
        if n < 1:
            raise DomainError("pool needs at least one worker")
        return n


@dataclass(frozen=True)
class ParetoPoint:
    hpwl: float
    whitespace_pct: float
    record: SolutionRecord


def solution_whitespace_pct(record):
    """Whitespace of the record's floorplan as a percentage of its bbox."""
    used = sum(r.w * r.h for r in record.floorplan.rects)
    bbox = record.report.bbox_area
    return 100.0 * (bbox - used) / bbox if bbox > 0 else 0.0


def _worker(args):
    problem, config, seed, backend = args
    try:
        return run(problem, config, seed, backend=backend)
    except Exception:
        return SolutionRecord(seed=seed, config=config, floorplan=None,
                              report=None, steps=0,
                              error=traceback.format_exc(limit=16))


def run_pool(problem, pool_config):
    """Run n_workers independent searches; records come back in seed order
    and are identical to running the same seeds sequentially."""
    issues = validate_problem(problem)
    if issues:
        raise DomainError("invalid problem:\n" + "\n".join(str(i) for i in issues))
    n = pool_config.resolved_workers()
    jobs = [(problem, pool_config.anneal, pool_config.base_seed + i,
             pool_config.backend) for i in range(n)]
    if n == 1:
        return [_worker(jobs[0])]
    records = [None] * n
    with ProcessPoolExecutor(max_workers=n) as pool:
        futures = [pool.submit(_worker, job) for job in jobs]
        for i, fut in enumerate(futures):
            try:
                records[i] = fut.result()
            except Exception:
                records[i] = SolutionRecord(
                    seed=pool_config.base_seed + i, config=pool_config.anneal,
                    floorplan=None, report=None, steps=0,
                    error=traceback.format_exc(limit=16))
    return records


def pareto_front(records):
    """Non-dominated legal records under (hpwl, whitespace %), both
    minimized, sorted by hpwl ascending. Duplicates of the same point are
    all kept; an empty legal set gives an empty front."""
    legal = [r for r in records if r.ok and r.report.legal]
    points = [ParetoPoint(r.report.hpwl, solution_whitespace_pct(r), r)
              for r in legal]
    front = []
    for p in points:
        dominated = False
        for q in points:
            if (q.hpwl <= p.hpwl and q.whitespace_pct <= p.whitespace_pct
                    and (q.hpwl < p.hpwl or q.whitespace_pct < p.whitespace_pct)):
                dominated = True
                break
        if not dominated:
            front.append(p)
    front.sort(key=lambda p: (p.hpwl, p.whitespace_pct, p.record.seed))
    return front
