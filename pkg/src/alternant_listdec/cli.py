"""Command line entry point: decode, multiplicity, bounds, simulate."""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from typing import List, Optional

import numpy as np

from .bounds import classical_radii, compute_delta, gs_radius, radius_theorem1, sigma_nu
from .codes import load_code
from .decoder import DecoderParams, decode
from .errors import ListDecError
from .harness import CampaignConfig, run_campaign
from .multiplicity import (assign_multiplicities, best_ratio, build_reliability, candidate1_pair,
                           candidate1_ratio, dominant_levels)
from .poly import format_poly


def parse_rows(tokens: List[str], n: int) -> np.ndarray:
    """Two hex integers; bit s of each is the entry in column s."""
    if len(tokens) != 2:
        raise SystemExit("--received needs exactly two hex rows")
    R = np.zeros((2, n), dtype=np.uint8)
    for i, tok in enumerate(tokens):
        v = int(tok, 16)
        if v >> n:
            raise SystemExit(f"row {i} has bits beyond column {n - 1}")
        for s in range(n):
            R[i, s] = (v >> s) & 1
    return R


def _hex_coeffs(p) -> List[str]:
    return [f"{c:x}" for c in p.coeffs]


def cmd_decode(args) -> int:
    spec = load_code(args.code)
    R = parse_rows(args.received, spec.n)
    params = DecoderParams(spec.n, spec.k_grs, args.m1, args.m2)
    res = decode(R, spec, params, keep_basis=args.dump_basis)
    out = {
        "status": res.status,
        "tau_hat": None if res.tau_hat is None else {"num": res.tau_hat.numerator, "den": res.tau_hat.denominator},
        "list": [{"f_coeffs_hex": _hex_coeffs(f), "g_coeffs_hex": _hex_coeffs(g), "distance": d}
                 for (f, g), d in zip(res.candidates, res.distances)],
        "raw_list_size": res.raw_list_size,
        "delta_hat": res.delta_hat,
        "constraints_processed": res.constraints_processed,
    }
    if args.dump_basis:
        w = params.weights
        out["basis"] = [format_poly(p, w) for p in res.basis.polys()]
    text = json.dumps(out, indent=1)
    if args.json_out:
        with open(args.json_out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if res.success else 1


def cmd_multiplicity(args) -> int:
    n, d = args.n, args.d
    if args.strategy == "candidate1":
        rho, _ = candidate1_ratio(n, d)
        m1, m2 = candidate1_pair(n, d, args.m_total)
    else:
        if args.t is None:
            raise SystemExit("candidate2 needs --t")
        Pi = build_reliability(args.t, n, np.zeros((2, n), dtype=np.uint8))
        m1, m2 = dominant_levels(assign_multiplicities(Pi, args.m_total))
        rho = m2 / m1
    sigma, _ = sigma_nu(rho, d / n)
    k_grs = n - d + 1
    radius = radius_theorem1(n, compute_delta(n, k_grs, m1, m2), m1, m2) if k_grs >= 2 else math.nan
    print(f"m1={m1} m2={m2}")
    print(f"rho={rho:.6f}")
    print(f"sigma={sigma:.6f}")
    print(f"radius={radius:.6f}")
    return 0


def _grid(spec: str) -> List[float]:
    a, b, c = (float(x) for x in spec.split(":"))
    count = int(round((b - a) / c)) + 1
    return [round(a + i * c, 12) for i in range(count)]


def cmd_bounds(args) -> int:
    if args.dn_grid:
        n = float(args.n) if args.n else 1.0
        dns = _grid(args.dn_grid)
    else:
        if args.n is None or args.d is None:
            raise SystemExit("need --n and --d, or --dn-grid")
        n = float(args.n)
        dns = [args.d / args.n]
    header = ["dn", "gs", "kv_binary", "johnson_q2", "sigma_star", "rho_star"]
    extra = args.m1 is not None and args.m2 is not None
    if extra:
        if args.n is None:
            raise SystemExit("--m1/--m2 need --n")
        header.append("theorem1_radius")
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(header)
    for dn in dns:
        row = [f"{dn:.6f}"]
        try:
            radii = classical_radii(n, dn * n)
            row += [f"{radii[key] / n:.6f}" for key in ("gs", "kv_binary", "johnson_q2")]
        except ListDecError:
            row += [f"{gs_radius(n, dn * n) / n:.6f}", "nan", "nan"]
        rho, sigma = best_ratio(dn)
        row += [f"{sigma:.6f}", f"{rho:.6f}"]
        if extra:
            d = int(round(dn * n))
            k_grs = int(n) - d + 1
            r = radius_theorem1(n, compute_delta(int(n), k_grs, args.m1, args.m2), args.m1, args.m2)
            row.append(f"{r / n:.6f}")
        w.writerow(row)
    return 0


def cmd_simulate(args) -> int:
    cfg = CampaignConfig.load(args.config)

    def progress(row):
        print(f"({row['m1']},{row['m2']}) success={row['success_rate']:.3f} failure={row['failure_rate']:.3f}",
              file=sys.stderr)

    run_campaign(cfg, args.out, progress=progress)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="altlistdec", description="List decoding of 2-interleaved binary alternant codes")
    sub = ap.add_subparsers(dest="cmd", required=True)

    d = sub.add_parser("decode", help="decode one received 2 x n word")
    d.add_argument("--code", required=True, help="code config JSON file")
    d.add_argument("--received", nargs=2, required=True, metavar="HEX", help="two rows; bit s is column s")
    d.add_argument("--m1", type=int, required=True)
    d.add_argument("--m2", type=int, required=True)
    d.add_argument("--dump-basis", action="store_true")
    d.add_argument("--json-out")
    d.set_defaults(func=cmd_decode)

    m = sub.add_parser("multiplicity", help="choose (m1, m2)")
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--d", type=int, required=True)
    m.add_argument("--t", type=int)
    m.add_argument("--m-total", type=int, required=True)
    m.add_argument("--strategy", choices=["candidate1", "candidate2"], default="candidate1")
    m.set_defaults(func=cmd_multiplicity)

    b = sub.add_parser("bounds", help="normalized decoding radii as CSV")
    b.add_argument("--n", type=int)
    b.add_argument("--d", type=int)
    b.add_argument("--dn-grid", help="start:stop:step, stop included")
    b.add_argument("--m1", type=int)
    b.add_argument("--m2", type=int)
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("simulate", help="run a seeded campaign")
    s.add_argument("--config", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_simulate)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ListDecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
