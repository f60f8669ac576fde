"""Command-line front end: tables, sweeps, certificates, and phase reports.

Every command prints its assertions machine-readably (`ASSERT PASS|FAIL name
:: detail`) and the exit code reflects them: 0 ok, 1 assertion failure,
2 usage error, 3 resource cap.  Output is deterministic for a fixed
configuration; floats are printed at 12 significant digits and --seed only
affects random candidate sweeps.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import (bifurcation, cycles, hardness, maps, oscillation, pl, relunet,
               spectra, svgplot, vcbounds, warmup)
from .errors import CertificateError, ResourceLimitError


def fmt(x) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def parse_map(spec: str) -> maps.UnimodalMap:
    """kind:r with r a fraction or decimal string, e.g. tent:1, logistic:0.958."""
    kind, _, r = spec.partition(":")
    if not r:
        raise argparse.ArgumentTypeError(f"map spec needs kind:r, got {spec!r}")
    if kind in ("tent", "flat_tent"):
        cls = maps.TentMap if kind == "tent" else maps.FlatTentMap
        return cls(Fraction(r))
    if kind == "logistic":
        return maps.LogisticMap(float(r))
    if kind == "sine":
        return maps.SineMap(float(r))
    raise argparse.ArgumentTypeError(f"unknown map kind {kind!r}")


class Reporter:
    def __init__(self):
        self.failures = 0

    def check(self, name: str, ok: bool, detail: str = ""):
        tag = "PASS" if ok else "FAIL"
        if not ok:
            self.failures += 1
        print(f"ASSERT {tag} {name} :: {detail}")

    @property
    def exit_code(self) -> int:
        return 1 if self.failures else 0


def _write(out_dir: str | None, name: str, text: str):
    if out_dir is None:
        sys.stdout.write(text)
        return
    path = Path(out_dir)
    path.mkdir(parents=True, exist_ok=True)
    (path / name).write_text(text)
    print(f"wrote {path / name}")


# ---------------------------------------------------------------------------
# subcommands


def cmd_rho_table(args) -> int:
    rep = Reporter()
    rows = spectra.rho_table()
    lines = ["p,rho_inc,fact_lower_bound,rho_odd"]
    for row in rows:
        odd = fmt(row["rho_odd"]) if row["rho_odd"] is not None else "n/a"
        lines.append(f"{row['p']},{fmt(row['rho_inc'])},"
                     f"{fmt(row['fact_lower_bound'])},{odd}")
        rep.check(f"rho_bracket_p{row['p']}",
                  spectra.verify_root_bounds(row["p"]),
                  f"rho_inc={row['rho_inc']:.6f}")
    _write(args.out, "rho_table.csv", "\n".join(lines) + "\n")
    return rep.exit_code


def cmd_superstable(args) -> int:
    rep = Reporter()
    rows = cycles.solve_forcing_table()
    lines = ["p,itinerary,regime,r_solved,r_paper,abs_delta"]
    for row in rows:
        lines.append(
            f"{row['p']},{row['itinerary']},{row['regime']},"
            f"{fmt(row['r_solved'])},{fmt(row['r'])},{fmt(row['delta'])}")
        rep.check(f"superstable_{row['itinerary']}", row["delta"] <= 5e-4,
                  f"r_solved={row['r_solved']:.6f} vs paper {row['r']}")
    _write(args.out, "superstable.csv", "\n".join(lines) + "\n")
    return rep.exit_code


def cmd_warmup(args) -> int:
    rep = Reporter()
    k_max = args.k_max
    series = warmup.growth_comparison(k_max)
    lines = ["k," + ",".join(f"M_{name}" for name in series) + ",pow2"]
    for k in range(1, k_max + 1):
        row = [str(k)] + [str(s.counts[k - 1]) for s in series.values()]
        row.append(str(2**k))
        lines.append(",".join(row))
    _write(args.out, "warmup_growth.csv", "\n".join(lines) + "\n")

    s1234, s123, s1324 = (series[n] for n in ("1234", "123", "1324"))
    rep.check("ordering_from_k6",
              all(s1234.counts[k] > s123.counts[k] > s1324.counts[k]
                  for k in range(5, k_max)),
              "M(1234) > M(123) > M(1324) for k >= 6")
    g1234 = s1234.geometric_rate(8, min(14, k_max))
    g123 = s123.geometric_rate(8, min(14, k_max))
    rep.check("rate_1234", 1.74 <= g1234 <= 1.94, f"geom[8,14]={g1234:.4f}")
    rep.check("rate_123", 1.55 <= g123 <= 1.68, f"geom[8,14]={g123:.4f}")
    rep.check("poly_cap_1324",
              all(c <= 2 * (4 * k) ** 3
                  for k, c in enumerate(s1324.counts, 1)),
              "M(1324,k) <= 2(4k)^3")
    rep.check("rate_1324", s1324.rates[-1] <= 1.2,
              f"log-rate at k={k_max}: {s1324.rates[-1]:.4f}")
    rep.check("maximal_1324", warmup.itinerary_1324_is_maximal(),
              "no period-8 or odd cycle <= 9")

    if args.out is not None:
        plot = svgplot.line_plot(
            [(name, [(k, c) for k, c in enumerate(s.counts, 1)])
             for name, s in series.items()]
            + [("2^k", [(k, 2.0**k) for k in range(1, k_max + 1)])],
            title="monotone pieces of iterated toy maps",
            x_label="k", y_label="M(f^k)", log_y=True)
        _write(args.out, "warmup_growth.svg", plot)
    return rep.exit_code


def cmd_bifurcation(args) -> int:
    rep = Reporter()
    kind = args.family
    data = bifurcation.sweep(kind, args.r_lo, args.r_hi, steps=args.steps,
                             burn=args.burn, keep=args.keep, jobs=args.jobs)
    lines = ["r,x"]
    for r, tail in data:
        for x in tail:
            lines.append(f"{fmt(r)},{fmt(x)}")
    meta = {"family": kind, "x0": bifurcation.X0, "burn": args.burn,
            "keep": args.keep, "steps": args.steps}
    _write(args.out, f"bifurcation_{kind}.csv", "\n".join(lines) + "\n")
    _write(args.out, f"bifurcation_{kind}.json",
           json.dumps(meta, sort_keys=True) + "\n")
    if args.out is not None:
        pts = [(r, x) for r, tail in data for x in tail]
        _write(args.out, f"bifurcation_{kind}.svg",
               svgplot.scatter(pts, title=f"{kind} bifurcation",
                               x_label="r", y_label="x"))
    rep.check("sweep_nonempty", bool(data), f"{len(data)} slices")
    return rep.exit_code


def cmd_certify(args) -> int:
    rep = Reporter()
    m = args.map
    p, k, depth = args.p, args.k, args.depth
    found = cycles.find_cycles(m, p)
    inc = [c for c in found if c.period == p and c.increasing]
    if not inc:
        print(f"no increasing {p}-cycle detected", file=sys.stderr)
        return 1
    cert = hardness.increasing_certificate(m, inc[0], k)
    rep.check("certificate_count", cert.count >= cert.required_count(),
              f"count={cert.count} need={cert.required_count():.2f}")
    rep.check("certificate_width", float(cert.width) >= 1 / 18,
              f"width={float(cert.width):.4f}")
    threshold = hardness.width_threshold(p, k, depth, "linf")
    payload = {"certificate": json.loads(cert.to_json()),
               "width_threshold": {"u_max": threshold.u_max,
                                   "vacuous": threshold.vacuous},
               "candidates": []}

    if m.is_exact:
        fk = pl.iterate(m.to_pl(), k, cap=args.cap)
        sample = hardness.adversarial_sample(fk, cert)
        rng = random.Random(args.seed)
        cands = [("decimated_8", hardness.decimated_candidate(fk, 8)),
                 ("lstsq_8", hardness.least_squares_candidate(fk, 8)),
                 ("eps_approx", relunet.eps_approx(fk, Fraction(1, 8)))]
        cands += [(f"random_{i}", hardness.random_candidate(rng, 8))
                  for i in range(args.random_candidates)]
        for name, g in cands:
            report = hardness.certify_against_candidate(fk, g, cert, sample)
            payload["candidates"].append(
                {"name": name, **json.loads(report.to_json())})
            rep.check(f"counting_floor_{name}", report.ok,
                      f"cls={float(report.cls_error):.4f} "
                      f"pieces={report.g_pieces}")
    _write(args.out, "certify.json",
           json.dumps(payload, sort_keys=True, indent=1) + "\n")
    return rep.exit_code


def cmd_cycles(args) -> int:
    found = cycles.find_cycles(args.map, args.p_max)
    payload = [json.loads(c.to_json()) for c in found]
    _write(args.out, "cycles.json",
           json.dumps(payload, sort_keys=True, indent=1) + "\n")
    return 0


def cmd_phase(args) -> int:
    rep = Reporter()
    out = []
    for m in args.maps:
        found = cycles.find_cycles(m, args.p_max)
        report = cycles.classify_regime(found, p_max=args.p_max)
        series = oscillation.entropy_estimate(m, args.k_max, cap=args.cap)
        entry = {
            "map": json.loads(m.to_json()),
            "regime": report.regime,
            "q": report.max_power_of_two,
            "entropy": series.entropy,
            "rates": list(series.rates),
            "counts": list(series.counts),
        }
        if report.regime == "doubling":
            p = max(c.period for c in found) if found else 1
            entry["vc_bound"] = vcbounds.doubling_vc_bound(p)
            tail = series.rates[7:]
            rep.check(f"doubling_rates_decrease_{fmt(m.r)}",
                      all(b < a for a, b in zip(tail, tail[1:])),
                      "per-k rates strictly decreasing from k=8")
        else:
            entry["witness"] = json.loads(report.witness.to_json())
            if isinstance(m, maps.TentMap) and m.r == 1:
                witness = vcbounds.shatter(m, args.shatter_d)
                entry["shatter"] = json.loads(witness.to_json())
        out.append(entry)
    _write(args.out, "phase.json",
           json.dumps(out, sort_keys=True, indent=1) + "\n")
    return rep.exit_code


def cmd_synth(args) -> int:
    rep = Reporter()
    m = args.map
    if not m.is_exact:
        print("synth needs an exact PL map", file=sys.stderr)
        return 2
    fk = pl.iterate(m.to_pl(), args.k, cap=args.cap)
    net = relunet.synth_from_pl(fk)
    back = relunet.net_to_pl(net)
    rep.check("round_trip", back.knots == fk.knots,
              f"width={net.width} depth={net.depth}")
    block = relunet.synth_from_pl(m.to_pl())
    deep = relunet.stack(block, args.k)
    rep.check("stack_equals_iterate",
              relunet.net_to_pl(deep).knots == fk.knots,
              f"deep: width={deep.width} depth={deep.depth}")
    payload = {"k": args.k, "shallow": {"width": net.width,
                                        "depth": net.depth},
               "deep": {"width": deep.width, "depth": deep.depth},
               "network": json.loads(net.to_json())}
    _write(args.out, "synth.json",
           json.dumps(payload, sort_keys=True, indent=1) + "\n")
    return rep.exit_code


def cmd_vc(args) -> int:
    rep = Reporter()
    expr = vcbounds.parse_regex(args.regex)
    bound = vcbounds.vcw_bound(expr)
    payload = {"regex": args.regex, "vcw_bound": bound,
               "interleave_constant_note":
               "statement says 4max+2; proof gives 4d+3; 4max+3 implemented"}
    rep.check("worked_example_bound", bound <= 4 if args.regex ==
              "1*0(01)^inf|10^inf" else True, f"bound={bound}")
    if args.shatter_d:
        witness = vcbounds.shatter(maps.TentMap(1), args.shatter_d)
        payload["shatter"] = json.loads(witness.to_json())
        rep.check("shatter_complete",
                  len(witness.table) == 2**args.shatter_d,
                  f"{len(witness.table)} labelings")
    payload["doubling_bounds"] = {p: vcbounds.doubling_vc_bound(p)
                                  for p in (1, 2, 4, 8)}
    _write(args.out, "vc.json",
           json.dumps(payload, sort_keys=True, indent=1) + "\n")
    return rep.exit_code


def cmd_counterexample(args) -> int:
    rep = Reporter()
    eps = Fraction(args.eps)
    out = {}
    for name, build in (("need_symmetry", hardness.build_need_symmetry),
                        ("need_concavity", hardness.build_need_concavity)):
        m = build(args.p, eps)
        report = hardness.counterexample_report(m, args.p, eps,
                                                k_max=args.k_max)
        out[name] = {
            "symmetric": report["symmetric"], "concave": report["concave"],
            "max_linf_error": float(report["max_linf_error"]),
            "net_width": report["net_width"],
        }
        rep.check(f"{name}_structure",
                  report["symmetric"] != report["concave"],
                  f"symmetric={report['symmetric']} "
                  f"concave={report['concave']}")
        rep.check(f"{name}_approx", report["max_linf_error"] <= eps,
                  f"max L-inf over k<={args.k_max}: "
                  f"{float(report['max_linf_error']):.4f}")
        rep.check(f"{name}_width3", report["net_width"] == 3, "three ReLUs")
    _write(args.out, "counterexample.json",
           json.dumps(out, sort_keys=True, indent=1) + "\n")
    return rep.exit_code


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="itermaps",
        description="iterated unimodal maps: tables, certificates, phases")
    ap.add_argument("--out", default=None,
                    help="output directory (default: stdout)")
    ap.add_argument("--format", default="csv", choices=("csv", "json", "svg"),
                    help="preferred table format where applicable")
    ap.add_argument("--cap", type=int, default=pl.DEFAULT_KNOT_CAP,
                    help="knot/node resource cap")
    ap.add_argument("--jobs", type=int, default=1, help="parallel workers")
    ap.add_argument("--seed", type=int, default=0,
                    help="seed for random candidate sweeps")
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("rho-table", help="polynomial-root table").set_defaults(
        fn=cmd_rho_table)

    sub.add_parser("superstable",
                   help="solve the logistic forcing table").set_defaults(
        fn=cmd_superstable)

    w = sub.add_parser("warmup", help="toy-map growth comparison")
    w.add_argument("--k-max", type=int, default=14)
    w.set_defaults(fn=cmd_warmup)

    b = sub.add_parser("bifurcation", help="parameter sweep orbit cloud")
    b.add_argument("--family", default="logistic",
                   choices=("logistic", "tent", "flat_tent", "sine"))
    b.add_argument("--r-lo", type=float, default=0.6)
    b.add_argument("--r-hi", type=float, default=1.0)
    b.add_argument("--steps", type=int, default=bifurcation.DEFAULT_STEPS)
    b.add_argument("--burn", type=int, default=bifurcation.DEFAULT_BURN)
    b.add_argument("--keep", type=int, default=bifurcation.DEFAULT_KEEP)
    b.set_defaults(fn=cmd_bifurcation)

    c = sub.add_parser("certify", help="oscillation certificate pipeline")
    c.add_argument("--map", type=parse_map, required=True)
    c.add_argument("--p", type=int, default=3)
    c.add_argument("--k", type=int, default=10)
    c.add_argument("--depth", type=int, default=2)
    c.add_argument("--random-candidates", type=int, default=10)
    c.set_defaults(fn=cmd_certify)

    cy = sub.add_parser("cycles", help="list detected cycles")
    cy.add_argument("--map", type=parse_map, required=True)
    cy.add_argument("--p-max", type=int, default=6)
    cy.set_defaults(fn=cmd_cycles)

    ph = sub.add_parser("phase", help="regime/entropy/VC phase report")
    ph.add_argument("--maps", type=lambda s: [parse_map(t)
                                              for t in s.split(",")],
                    required=True)
    ph.add_argument("--p-max", type=int, default=8)
    ph.add_argument("--k-max", type=int, default=14)
    ph.add_argument("--shatter-d", type=int, default=2)
    ph.set_defaults(fn=cmd_phase)

    sy = sub.add_parser("synth", help="exact ReLU synthesis of f^k")
    sy.add_argument("--map", type=parse_map, required=True)
    sy.add_argument("--k", type=int, default=6)
    sy.set_defaults(fn=cmd_synth)

    v = sub.add_parser("vc", help="weak-VC calculus and shattering")
    v.add_argument("--regex", default="1*0(01)^inf|10^inf")
    v.add_argument("--shatter-d", type=int, default=2)
    v.set_defaults(fn=cmd_vc)

    ce = sub.add_parser("counterexample",
                        help="symmetry/concavity necessity constructions")
    ce.add_argument("--p", type=int, default=3)
    ce.add_argument("--eps", default="1/10")
    ce.add_argument("--k-max", type=int, default=10)
    ce.set_defaults(fn=cmd_counterexample)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = args.fn(args)
    except ResourceLimitError as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return 3
    except CertificateError as exc:
        print(f"certificate failure: {exc}", file=sys.stderr)
        return 1
    return code


if __name__ == "__main__":
    sys.exit(main())
