"""Command-line entry point.

Every subcommand builds a report (a JSON-able object plus a flat list of rows
for CSV) from one ScenarioConfig. Output is deterministic for a fixed config:
keys are sorted and all randomness comes from ``--seed``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

COMMANDS = ("space", "homology", "sq", "adem", "em-model", "divide", "loop", "mapping-space",
            "shuffle-witness", "verify")


@dataclass
class ScenarioConfig:
    command: str
    spaces: list[str] = field(default_factory=list)
    model: str = "em:2"
    n: int = 2
    max_degree: int = 8
    arity_cap: int = 2
    opdeg_cap: int = 2
    length_cap: int = 3
    reduced: bool = False
    times: int = 1
    monomial: Optional[str] = None
    items: list[str] = field(default_factory=list)
    jobs: int = 1
    seed: int = 0
    format: str = "json"
    out: Optional[str] = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        for key in ("max_degree", "arity_cap", "opdeg_cap", "length_cap", "times", "jobs"):
            if getattr(self, key) <= 0:
                raise ValueError(f"--{key.replace('_', '-')} must be positive")
        if self.format not in ("json", "csv"):
            raise ValueError("--format must be json or csv")


# model and coalgebra specs

def load_model(spec: str):
    from .free_ealgebra import mandell_model, presentation_from_json

    if spec.startswith("em:"):
        return mandell_model(int(spec[3:]))
    if spec.endswith(".json"):
        with open(spec) as fh:
            return presentation_from_json(json.load(fh))
    raise ValueError(f"model spec {spec!r} should be em:<n> or a .json presentation")


def load_coalgebra(spec: str, reduced: bool):
    from .coaction import CircleCoalgebra, PointCoalgebra, SimplicialCoalgebra
    from .simplicial import parse_space

    if spec == "circle":
        return CircleCoalgebra()
    if spec == "point":
        return PointCoalgebra()
    x = parse_space(spec)
    prefix = "reduced " if reduced else ""
    return SimplicialCoalgebra(x, reduced=reduced, name=f"{prefix}N_*({spec})")


def _one_space(cfg: ScenarioConfig, default: str) -> str:
    return cfg.spaces[0] if cfg.spaces else default


# commands: each returns (report, rows)

def cmd_space(cfg):
    from .simplicial import parse_space, to_json

    x = parse_space(_one_space(cfg, "sphere:2"))
    counts = [len(x.nondegenerate(n)) for n in range(x.top_dim + 1)]
    rows = [{"dim": n, "nondegenerate": c} for n, c in enumerate(counts)]
    return {"space": _one_space(cfg, "sphere:2"), "counts": counts, "simplicial_set": to_json(x)}, rows


def cmd_homology(cfg):
    from .simplicial import cohomology, homology, parse_space

    x = parse_space(_one_space(cfg, "sphere:2"))
    hi = min(cfg.max_degree, x.top_dim)
    h = homology(x, (0, hi)).dims
    c = cohomology(x, (0, hi)).dims
    rows = [{"degree": k, "homology": h[k], "cohomology": c[k]} for k in range(hi + 1)]
    return {"space": _one_space(cfg, "sphere:2"), "degrees": rows}, rows


def cmd_sq(cfg):
    from .simplicial import parse_space
    from .steenrod import SpaceSteenrod, binom2

    spec = _one_space(cfg, f"nerve_z2:{cfg.max_degree}")
    x = parse_space(spec)
    top = min(cfg.max_degree, x.top_dim)
    st = SpaceSteenrod(x, top)
    is_rp = spec.startswith("nerve_z2")
    rows = []
    for n in range(top + 1):
        for i in range(0, top - n + 1):
            for k in range(st.dim(n)):
                image = st.sq(i, n, 1 << k)
                row = {"i": i, "j": n, "class": k, "image": image}
                if is_rp:
                    row["lucas"] = binom2(n, i)
                    row["match"] = int(image == row["lucas"])
                rows.append(row)
    report = {"space": spec, "max_degree": top, "table": rows}
    if is_rp:
        report["mismatches"] = sum(1 - r["match"] for r in rows)
    return report, rows


def cmd_adem(cfg):
    from .steenrod import adem_normalize, format_monomial, format_sum, parse_monomial

    if cfg.monomial:
        m = parse_monomial(cfg.monomial)
        out = adem_normalize(m)
        rows = [{"monomial": format_monomial(m), "normal_form": format_sum(out)}]
        return {"rows": rows}, rows
    rows = []
    for total in range(0, cfg.max_degree + 1):
        for j in range(0, total + 1):
            i = total - j
            if i < 2 * j:
                rows.append({"i": i, "j": j, "normal_form": format_sum(adem_normalize((i, j)))})
    return {"max_degree": cfg.max_degree, "rows": rows}, rows


def _presentation_rows(F):
    from .free_ealgebra import format_element

    return [{"generator": g.name, "degree": g.degree, "internal_d": " + ".join(sorted(g.diff)) or "0",
             "h": format_element(F.h_of(g.name))} for g in F.generators]


def _presentation_report(F, extra: dict):
    from .free_ealgebra import presentation_to_json

    rep = dict(extra)
    rep["presentation"] = presentation_to_json(F)
    rep["name"] = F.name
    return rep, _presentation_rows(F)


def cmd_em_model(cfg):
    from .free_ealgebra import mandell_model

    return _presentation_report(mandell_model(cfg.n), {"n": cfg.n})


def cmd_divide(cfg):
    from .division import divide_almost_free

    F = load_model(cfg.model)
    k = load_coalgebra(_one_space(cfg, "sphere:1"), cfg.reduced)
    return _presentation_report(divide_almost_free(F, k), {"model": cfg.model, "coalgebra": k.name})


def cmd_loop(cfg):
    from .division import loop_model

    F = load_model(cfg.model)
    for _ in range(cfg.times):
        F = loop_model(F)
    return _presentation_report(F, {"model": cfg.model, "loops": cfg.times, "suspension": F.susp})


def cmd_mapping_space(cfg):
    from .simplicial import parse_space
    from .steenrod import mapping_space_series

    spec = _one_space(cfg, "sphere:1")
    series = mapping_space_series(parse_space(spec), cfg.n, cfg.max_degree)
    rows = [{"degree": d, "dim": v} for d, v in enumerate(series)]
    return {"space": spec, "n": cfg.n, "series": series}, rows


def cmd_shuffle_witness(cfg):
    from .acceptance import item_shuffle
    from .coaction import shuffle_witness
    from .simplicial import parse_space, product

    if not cfg.spaces:
        rep = item_shuffle()
        flat = {k: v for k, v in rep.get("witness", {}).items() if not isinstance(v, list)}
        return rep, [{"status": rep["status"], **flat}]
    if len(cfg.spaces) != 2:
        raise ValueError("shuffle-witness takes two --space factors (or none for Delta1 x Delta1)")
    w = shuffle_witness(product(parse_space(cfg.spaces[0]), parse_space(cfg.spaces[1])), cfg.opdeg_cap)
    if w is None:
        return {"found": False}, [{"found": False}]
    rep = {"found": True, "rho": w["rho"], "verified": w["verified"],
           "u_degree": w["u"].degree, "v_degree": w["v"].degree}
    return rep, [rep]


def _run_item(args):
    from .acceptance import run_item

    name, seed = args
    return run_item(name, seed)


def cmd_verify(cfg):
    from .acceptance import ITEMS

    names = sorted(cfg.items) if cfg.items else sorted(ITEMS)
    unknown = [n for n in names if n not in ITEMS]
    if unknown:
        raise ValueError(f"unknown acceptance item {unknown[0]!r}")
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            reports = list(pool.map(_run_item, [(n, cfg.seed) for n in names]))
    else:
        reports = [_run_item((n, cfg.seed)) for n in names]
    reports.sort(key=lambda r: r["item"])
    rows = [{"item": r["item"], "status": r["status"]} for r in reports]
    return reports, rows


HANDLERS = {
    "space": cmd_space, "homology": cmd_homology, "sq": cmd_sq, "adem": cmd_adem,
    "em-model": cmd_em_model, "divide": cmd_divide, "loop": cmd_loop,
    "mapping-space": cmd_mapping_space, "shuffle-witness": cmd_shuffle_witness, "verify": cmd_verify,
}


def render(report, rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True, default=str) + "\n"
    buf = io.StringIO()
    keys: list[str] = []
    for r in rows:
        keys.extend(k for k in r if k not in keys)
    w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ediv", description="Chain-level E-infinity computations over F2.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--space", action="append", dest="spaces", default=[],
                   help="kind:n (sphere, simplex, boundary, nerve_z2), pt, a*b, circle, point, or a .json file")
    p.add_argument("--model", default="em:2", help="em:<n> or a .json presentation")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--max-degree", type=int, default=8)
    p.add_argument("--arity-cap", type=int, default=2)
    p.add_argument("--opdeg-cap", type=int, default=2)
    p.add_argument("--length-cap", type=int, default=3)
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--times", type=int, default=1, help="loop count for the loop command")
    p.add_argument("--monomial", help='a single monomial for adem, e.g. "Sq2 Sq2"')
    p.add_argument("--item", action="append", dest="items", default=[])
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", default="json", choices=("json", "csv"))
    p.add_argument("--out")
    return p


def run(argv: Optional[list[str]] = None) -> int:
    from .coaction import CapabilityError

    args = build_parser().parse_args(argv)
    cfg = ScenarioConfig(**vars(args))
    try:
        cfg.validate()
        report, rows = HANDLERS[cfg.command](cfg)
    except CapabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = render(report, rows, cfg.format)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if cfg.command == "verify":
        return 0 if all(r["status"] == "pass" for r in report) else 1
    return 0


def main() -> None:
    sys.exit(run())
