"""Seeded Monte-Carlo campaigns over (m1, m2) grids.

Every trial draws its own generator from mix_seed(base_seed, m1, m2, index),
so a pair's results do not depend on grid order or on how trials are spread
over worker processes.
"""
from __future__ import annotations

import csv
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .bounds import chi_list_bound, radius_theorem1
from .codes import (AlternantBasis, CodeSpec, alternant_basis, apply_column_errors, code_from_config,
                    sample_codeword_pair)
from .decoder import DecoderParams, decode
from .errors import BadMultiplicities, InvariantViolation
from .multiplicity import candidate1_pair, candidate2_pair
from .poly import substitute

WORKERS_ENV = "ALTLISTDEC_WORKERS"
CSV_HEADER = ["m1", "m2", "m_total", "trials", "success_rate", "failure_rate",
              "mean_raw_list", "mean_filtered_list", "mean_ms"]

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def mix_seed(base_seed: int, m1: int, m2: int, index: int) -> int:
    """Fold each field into the state with one SplitMix64 step."""
    h = splitmix64(base_seed & MASK64)
    for v in (m1, m2, index):
        h = splitmix64(h ^ (v & MASK64))
    return h


@dataclass(frozen=True)
class CampaignConfig:
    code: dict
    t: int
    pairs: Tuple[Tuple[int, int], ...]
    trials: int
    base_seed: int = 0
    record_timing: bool = False
    debug: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.pairs:
            raise BadMultiplicities("no multiplicity pairs given")
        for m1, m2 in self.pairs:
            if not (m1 >= 1 and 0 <= m2 < m1):
                raise BadMultiplicities(f"invalid pair ({m1}, {m2})")

    @classmethod
    def from_dict(cls, cfg: dict) -> "CampaignConfig":
        code = dict(cfg["code"])
        t = int(cfg["t"])
        if "pairs" in cfg:
            pairs = tuple((int(a), int(b)) for a, b in cfg["pairs"])
        else:
            strat = cfg["strategy"]
            spec = code_from_config(code)
            name, mt = strat["name"], int(strat["m_total"])
            if name == "candidate1":
                pairs = (candidate1_pair(spec.n, spec.d, mt),)
            elif name == "candidate2":
                pairs = (candidate2_pair(spec.n, t, mt),)
            else:
                raise ValueError(f"unknown strategy {name!r}")
        return cls(code, t, pairs, int(cfg["trials"]), int(cfg.get("base_seed", 0)),
                   bool(cfg.get("record_timing", False)), bool(cfg.get("debug", False)))

    @classmethod
    def load(cls, path) -> "CampaignConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pairs"] = [list(p) for p in self.pairs]
        return d


@dataclass
class TrialRecord:
    seed: int
    m1: int
    m2: int
    index: int
    status: str
    success: bool
    raw_list: int
    filtered_list: int
    tau_hat: Optional[str]
    delta_hat: Optional[int]
    ms: float
    constraints: int
    gcd_branches: int = 0


@lru_cache(maxsize=8)
def _code_and_basis(code_json: str) -> Tuple[CodeSpec, AlternantBasis]:
    spec = code_from_config(json.loads(code_json))
    return spec, alternant_basis(spec)


def _check_invariants(res, spec: CodeSpec, params: DecoderParams, t: int, f, g):
    basis = res.basis
    deg1 = basis.lm_degree(0)
    if deg1 > params.delta + 1e-9:
        raise InvariantViolation(f"deg_w(G_1) = {deg1} exceeds the budget {params.delta:.4f}")
    if params.m1 > params.m2 and t < radius_theorem1(spec.n, params.delta, params.m1, params.m2):
        limit = params.m1 * (spec.n - t) + params.m2 * t
        for j in range(basis.l):
            if basis.lm_degree(j) >= limit:
                break
            if not substitute(basis.poly(j), f, g).is_zero():
                raise InvariantViolation(f"basis element {j} does not vanish at the transmitted pair")
    chi = chi_list_bound(spec.n, t, spec.k_grs, params.m1, params.m2)
    if res.raw_list_size > chi:
        raise InvariantViolation(f"raw list size {res.raw_list_size} exceeds {chi:.1f}")


def _trial(code_json: str, t: int, base_seed: int, pair: Tuple[int, int], index: int, debug: bool) -> TrialRecord:
    spec, basis = _code_and_basis(code_json)
    m1, m2 = pair
    seed = mix_seed(base_seed, m1, m2, index)
    rng = np.random.default_rng(seed)
    C, f, g = sample_codeword_pair(basis, rng)
    R, _ = apply_column_errors(C, t, rng)
    params = DecoderParams(spec.n, spec.k_grs, m1, m2)
    t0 = time.perf_counter()
    res = decode(R, spec, params, keep_basis=debug)
    ms = (time.perf_counter() - t0) * 1000.0
    if debug:
        _check_invariants(res, spec, params, t, f, g)
    hit = any(a == f and b == g for a, b in res.candidates)
    return TrialRecord(
        seed=seed, m1=m1, m2=m2, index=index, status=res.status, success=res.success and hit,
        raw_list=res.raw_list_size, filtered_list=res.list_size,
        tau_hat=None if res.tau_hat is None else str(res.tau_hat), delta_hat=res.delta_hat,
        ms=ms, constraints=res.constraints_processed, gcd_branches=res.gcd_branches,
    )


def _trial_star(args):
    return _trial(*args)


def run_trial(config: CampaignConfig, pair: Tuple[int, int], trial_index: int) -> TrialRecord:
    return _trial(json.dumps(config.code, sort_keys=True), config.t, config.base_seed,
                  tuple(pair), trial_index, config.debug)


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_pair(config: CampaignConfig, pair: Tuple[int, int], workers: Optional[int] = None) -> List[TrialRecord]:
    code_json = json.dumps(config.code, sort_keys=True)
    jobs = [(code_json, config.t, config.base_seed, tuple(pair), i, config.debug) for i in range(config.trials)]
    workers = worker_count() if workers is None else workers
    if workers <= 1:
        return [_trial_star(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(_trial_star, jobs))  # map preserves trial order


def summarize(records: Sequence[TrialRecord], record_timing: bool) -> dict:
    n = len(records)
    m1, m2 = records[0].m1, records[0].m2
    return {
        "m1": m1,
        "m2": m2,
        "m_total": m1 + 3 * m2,
        "trials": n,
        "success_rate": sum(r.success for r in records) / n,
        "failure_rate": sum(r.status == "failure" for r in records) / n,
        "mean_raw_list": sum(r.raw_list for r in records) / n,
        "mean_filtered_list": sum(r.filtered_list for r in records) / n,
        "mean_ms": sum(r.ms for r in records) / n if record_timing else math.nan,
    }


def _fmt(v) -> str:
    if isinstance(v, float):
        return "nan" if math.isnan(v) else f"{v:.6f}"
    return str(v)


def run_campaign(config: CampaignConfig, out_dir, workers: Optional[int] = None, progress=None) -> dict:
    """Run every pair, then write results.csv and summary.json into out_dir."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows, trials = [], []
    for pair in config.pairs:
        recs = run_pair(config, pair, workers)
        rows.append(summarize(recs, config.record_timing))
        for r in recs:
            d = asdict(r)
            if not config.record_timing:
                d.pop("ms")
            trials.append(d)
        if progress:
            progress(rows[-1])
    with open(out / "results.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for row in rows:
            w.writerow([_fmt(row[c]) for c in CSV_HEADER])
    summary = {
        "config": config.to_dict(),
        "pairs": [{k: (None if isinstance(v, float) and math.isnan(v) else v) for k, v in row.items()} for row in rows],
        "trials": trials,
    }
    with open(out / "summary.json", "w") as fh:
        json.dump(summary, fh, indent=1, sort_keys=True)
    return summary
