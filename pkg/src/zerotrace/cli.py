"""Command line: analyze instances, tabulate growth, verify, export.

Subcommands:

* analyze: independence verdict, enumerated trace family on the
  construction-derived sample, both dimensions, both growth profiles,
  and the d-1 assertions;
* shatter-fn: the per-n table of pi, rho, and the C(n,<d) reference
  column with per-n maximality verdicts;
* verify: the full claims checklist, one pass/fail line per check;
* export: canonical JSON bundles (instance, family with witnesses,
  tree, optional cover) and the shatter CSV, re-verified on write.

Reports are deterministic given the config; wall-clock timings live
under a separate key excluded from that guarantee.  Exit codes: 0 all
pass, 1 assertion or check failure, 2 resource limit, 3 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional

from . import __version__
from .claims import CHECKS, DEFAULT_SEED, run_checks
from .constructions import binom_le, dual_basis, independence_sequence
from .errors import (
    BudgetExhaustedError,
    InvalidInputError,
    ResourceLimitError,
    StreamExhaustedError,
    ZerotraceError,
)
from .instances import (
    builtin_help,
    instance_from_spec,
    parse_instance_name,
    sample_from_spec,
)
from .littlestone import ldim, ldim_witness, rho, tree_from_json, tree_to_json
from .maximality import cover_from_instance, cover_to_json
from .setsystem import family_to_json, pi, vcdim
from .zerosets import (
    Sample,
    enumerate_family_flats,
    family_bundle,
    linearly_independent,
    point_to_json,
    verify_bundle,
)

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_RESOURCE = 2
EXIT_INVALID = 3


@dataclass
class RunConfig:
    """Echoed verbatim into every report."""

    command: str
    instance: Optional[str] = None
    n_max: int = 6
    depth_cap: int = 16
    budget: int = 10_000
    out: Optional[str] = None
    format: str = "json"
    seed: int = DEFAULT_SEED
    checks: Optional[tuple] = None

    def __post_init__(self):
        if self.n_max < 1:
            raise InvalidInputError("n-max must be >= 1")
        if self.depth_cap < 1 or self.budget < 1:
            raise InvalidInputError("budgets and caps must be positive")
        if self.format not in ("json", "csv"):
            raise InvalidInputError(f"unknown format {self.format!r}")


def _canonical(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _load_instance(cfg: RunConfig):
    """NAME for built-ins, or a path to a JSON instance spec.

    Returns (instance, spec_dict_or_None); a file spec may carry its
    own sample section.
    """
    if not cfg.instance:
        raise InvalidInputError("this command needs --instance NAME|PATH")
    text = cfg.instance
    path = Path(text)
    if text.endswith(".json") or path.is_file():
        spec = json.loads(path.read_text())
        return instance_from_spec(spec), spec
    return parse_instance_name(text), None


def _default_sample(inst, spec, cfg: RunConfig, verdict):
    if spec is not None and "sample" in spec:
        return sample_from_spec(inst, spec, default_prefix=inst.d), "spec"
    if verdict.kind == "independent":
        db = dual_basis(inst, budget=cfg.budget)
        return Sample.take(inst, db.points), "dual-basis"
    return Sample.prefix(inst, inst.d), "stream-prefix"


def cmd_analyze(cfg: RunConfig) -> dict:
    inst, spec = _load_instance(cfg)
    verdict = linearly_independent(inst, budget=cfg.budget)
    sample, sample_kind = _default_sample(inst, spec, cfg, verdict)
    zfam = enumerate_family_flats(sample)
    fam = zfam.to_set_family()
    vc, ld = vcdim(fam), ldim(fam)
    pi_top = min(cfg.n_max, fam.ground.size)
    rho_top = min(cfg.n_max, cfg.depth_cap)
    pis = [pi(fam, n) for n in range(pi_top + 1)]
    rhos = [rho(fam, n, depth_cap=cfg.depth_cap) for n in range(rho_top + 1)]
    assertions = [
        {
            "assertion": "littlestone.ldim(fam) <= d-1",
            "passed": ld <= inst.d - 1,
            "values": {"ldim": ld, "d": inst.d},
        },
        {
            "assertion": "setsystem.vcdim(fam) <= littlestone.ldim(fam)",
            "passed": vc <= ld,
            "values": {"vcdim": vc, "ldim": ld},
        },
        {
            "assertion": "pi(n) <= rho(n) for computed n",
            "passed": all(
                pis[n] <= rhos[n] for n in range(min(pi_top, rho_top) + 1)
            ),
            "values": {"pi": pis, "rho": rhos},
        },
    ]
    if verdict.kind == "independent":
        assertions.append(
            {
                "assertion": "vcdim(fam) == ldim(fam) == d-1 on the dual-point sample",
                "passed": vc == ld == inst.d - 1,
                "values": {"vcdim": vc, "ldim": ld, "d": inst.d},
            }
        )
    return {
        "command": "analyze",
        "config": asdict(cfg),
        "instance": {"name": inst.name, "d": inst.d},
        "independence": {
            "kind": verdict.kind,
            "scanned": verdict.scanned,
            "rank": verdict.rank,
            "stream_exhausted": verdict.stream_exhausted,
            "witness_coeffs": (
                [str(x) for x in verdict.witness_coeffs.entries]
                if verdict.witness_coeffs is not None
                else None
            ),
        },
        "sample": {
            "kind": sample_kind,
            "points": [point_to_json(p) for p in sample.points],
        },
        "family": {
            "method": zfam.method,
            "count": len(zfam.sets),
            "masks": [z.mask for z in zfam.sets],
            "witnesses": [[str(x) for x in z.witness.entries] for z in zfam.sets],
        },
        "vcdim": vc,
        "ldim": ld,
        "profiles": {
            "pi": pis,
            "rho": rhos,
            "binom_le_dminus1": [binom_le(n, inst.d - 1) for n in range(rho_top + 1)],
        },
        "assertions": assertions,
    }


def _shatter_rows(inst, cfg: RunConfig):
    d = inst.d
    designed = None
    if inst.profile_points is not None:
        # The instance names its own extremal sample; pi and rho are
        # then profiled on that one family across every n.
        sampling = "designed-grid"
        points = list(inst.profile_points(cfg.n_max))
        designed = enumerate_family_flats(Sample.take(inst, points)).to_set_family()
    else:
        want = cfg.n_max + (d - 1 if d >= 2 else 0)
        sampling = "independent-prefix"
        try:
            seq = independence_sequence(inst, want, budget=cfg.budget)
            points = list(seq.points)
        except (BudgetExhaustedError, StreamExhaustedError):
            sampling = "stream-prefix"
            points = []
            images = set()
            for p in inst.stream():
                img = inst.image(p).entries
                if img in images:
                    continue
                images.add(img)
                points.append(p)
                if len(points) == cfg.n_max:
                    break
    rows = []
    top = min(cfg.n_max, len(points))
    for n in range(1, top + 1):
        if designed is None:
            sample = Sample.take(inst, points[:n])
            fam = enumerate_family_flats(sample).to_set_family()
        else:
            fam = designed
        p_n = pi(fam, n)
        r_n = rho(fam, n, depth_cap=cfg.depth_cap)
        ref = binom_le(n, d - 1)
        rows.append(
            {
                "n": n,
                "pi": p_n,
                "rho": r_n,
                "binom_le_dminus1": ref,
                "maximal_vc": p_n == ref,
                "maximal_ldim": r_n == ref,
            }
        )
    return rows, sampling, points if designed is not None else points[:top]


def _rows_to_csv(rows) -> str:
    header = "n,pi,rho,binom_le_dminus1,maximal_vc,maximal_ldim"
    lines = [header]
    for row in rows:
        lines.append(
            f"{row['n']},{row['pi']},{row['rho']},{row['binom_le_dminus1']},"
            f"{str(row['maximal_vc']).lower()},{str(row['maximal_ldim']).lower()}"
        )
    return "\n".join(lines) + "\n"


def cmd_shatter_fn(cfg: RunConfig) -> dict:
    inst, _ = _load_instance(cfg)
    rows, sampling, points = _shatter_rows(inst, cfg)
    return {
        "command": "shatter-fn",
        "config": asdict(cfg),
        "instance": {"name": inst.name, "d": inst.d},
        "sampling": sampling,
        "points": [point_to_json(p) for p in points],
        "rows": rows,
    }


def cmd_verify(cfg: RunConfig) -> dict:
    results = run_checks(
        cfg.checks,
        budget=cfg.budget,
        seed=cfg.seed,
        depth_cap=cfg.depth_cap,
    )
    return {
        "command": "verify",
        "config": asdict(cfg),
        "results": [
            {
                "name": r.name,
                "assertion": r.assertion,
                "passed": r.passed,
                "details": r.details,
                "error": r.error,
            }
            for r in results
        ],
        "passed": sum(r.passed for r in results),
        "failed": sum(not r.passed for r in results),
    }


def cmd_export(cfg: RunConfig) -> dict:
    if not cfg.out:
        raise InvalidInputError("export needs --out DIR")
    inst, spec = _load_instance(cfg)
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    written = {}

    recipe = inst.spec
    if recipe is None:
        raise InvalidInputError(f"instance {inst.name} has no exportable recipe")
    written["instance.json"] = _canonical(recipe)

    verdict = linearly_independent(inst, budget=cfg.budget)
    sample, _ = _default_sample(inst, spec, cfg, verdict)
    zfam = enumerate_family_flats(sample)
    bundle = family_bundle(zfam)
    verify_bundle(bundle)  # every membership bit, re-derived
    written["family.json"] = _canonical(bundle)

    fam = zfam.to_set_family()
    written["family_sets.json"] = _canonical(family_to_json(fam))

    tree = ldim_witness(fam)
    tree_blob = tree_to_json(tree)
    reparsed = tree_from_json(json.loads(_canonical(tree_blob)), fam)
    if _canonical(tree_to_json(reparsed)) != _canonical(tree_blob):
        raise AssertionError("tree export is not canonical")
    written["tree.json"] = _canonical(tree_blob)

    if inst.cover_subspaces is not None:
        written["cover.json"] = _canonical(cover_to_json(cover_from_instance(inst)))

    rows, sampling, _ = _shatter_rows(inst, cfg)
    written["shatter.csv"] = _rows_to_csv(rows)

    for name, payload in written.items():
        (out / name).write_text(payload)
    return {
        "command": "export",
        "config": asdict(cfg),
        "instance": {"name": inst.name, "d": inst.d},
        "sampling": sampling,
        "files": sorted(written),
        "out": str(out),
    }


# ---------------------------------------------------------------------------
# Wiring
# ---------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file mirroring the flags")
    p.add_argument("--instance", help="built-in name or path to an instance spec")
    p.add_argument("--n-max", type=int, dest="n_max")
    p.add_argument("--depth-cap", type=int, dest="depth_cap")
    p.add_argument("--budget", type=int)
    p.add_argument("--out", help="directory for written artifacts")
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--seed", type=int)


def build_parser() -> argparse.ArgumentParser:
    epilog = "built-in instances:\n" + "\n".join(
        f"  {name}: {text}" for name, text in sorted(builtin_help().items())
    )
    parser = argparse.ArgumentParser(
        prog="zerotrace",
        description="exact trace families of zero sets: dimensions, growth, verification",
        epilog=epilog,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"zerotrace {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("analyze", "dimensions and profiles of one instance"),
        ("shatter-fn", "per-n growth table with the C(n,<d) reference"),
        ("verify", "run the claims checklist"),
        ("export", "write canonical JSON bundles and the CSV table"),
    ):
        p = sub.add_parser(name, help=text)
        _add_common(p)
        if name == "verify":
            p.add_argument(
                "--checks",
                help="comma-separated subset of checks (default: all)",
            )
    return parser


def _merge_config(args: argparse.Namespace) -> RunConfig:
    values = {}
    if args.config:
        loaded = json.loads(Path(args.config).read_text())
        if not isinstance(loaded, dict):
            raise InvalidInputError("config file must hold a JSON object")
        unknown = set(loaded) - {
            "instance",
            "n_max",
            "depth_cap",
            "budget",
            "out",
            "format",
            "seed",
            "checks",
        }
        if unknown:
            raise InvalidInputError(f"unknown config keys: {sorted(unknown)}")
        values.update(loaded)
    for key in ("instance", "n_max", "depth_cap", "budget", "out", "format", "seed"):
        given = getattr(args, key, None)
        if given is not None:
            values[key] = given
    checks = getattr(args, "checks", None)
    if checks is not None:
        values["checks"] = tuple(c.strip() for c in checks.split(",") if c.strip())
    elif isinstance(values.get("checks"), list):
        values["checks"] = tuple(values["checks"])
    for name in values.get("checks") or ():
        if name not in CHECKS:
            raise InvalidInputError(f"unknown check {name!r}")
    return RunConfig(command=args.command, **values)


def _emit(report: dict, cfg: RunConfig, elapsed: float) -> None:
    if cfg.format == "csv":
        if "rows" not in report:
            raise InvalidInputError(f"{report['command']} has no CSV table")
        sys.stdout.write(_rows_to_csv(report["rows"]))
    else:
        payload = dict(report)
        payload["timings"] = {"wall_s": round(elapsed, 3)}
        sys.stdout.write(_canonical(payload))
    if cfg.out and report["command"] != "export":
        out = Path(cfg.out)
        out.mkdir(parents=True, exist_ok=True)
        name = report["command"].replace("-", "_") + "_report.json"
        (out / name).write_text(_canonical(report))


def _failures(report: dict) -> int:
    if report["command"] == "verify":
        return report["failed"]
    if report["command"] == "analyze":
        return sum(not a["passed"] for a in report["assertions"])
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _merge_config(args)
        runner = {
            "analyze": cmd_analyze,
            "shatter-fn": cmd_shatter_fn,
            "verify": cmd_verify,
            "export": cmd_export,
        }[cfg.command]
        start = time.perf_counter()
        report = runner(cfg)
        elapsed = time.perf_counter() - start
        if cfg.command == "verify":
            for r in report["results"]:
                mark = "PASS" if r["passed"] else "FAIL"
                line = f"{mark} {r['name']}: {r['assertion']}"
                if r["error"]:
                    line += f" [{r['error']}]"
                sys.stderr.write(line + "\n")
        _emit(report, cfg, elapsed)
        return EXIT_ASSERTION if _failures(report) else EXIT_OK
    except (ResourceLimitError, BudgetExhaustedError, StreamExhaustedError) as e:
        sys.stderr.write(f"resource limit: {e}\n")
        return EXIT_RESOURCE
    except AssertionError as e:
        sys.stderr.write(f"assertion failed: {e}\n")
        return EXIT_ASSERTION
    except (ZerotraceError, OSError, json.JSONDecodeError) as e:
        sys.stderr.write(f"invalid input: {e}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
