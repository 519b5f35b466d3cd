"""Command-line front end.

Exit codes: 0 success, 1 validation failure (a structured report is still
written), 2 I/O or parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import curves, engine, obstruction
from .braids import WordError
from .fiber import FiberError
from .poly import MPoly, PolyError
from .report import dumps, matrix_json, matrix_table

log = logging.getLogger("discmethod")

DATA_DIR = Path(__file__).parent / "data"
COMMANDS = ("validate", "vanish", "intersect", "plmats", "compose", "infinity", "obstruct", "disc", "family-check")


class InputError(Exception):
    pass


class CheckFailed(Exception):
    def __init__(self, payload):
        super().__init__("check failed")
        self.payload = payload


@dataclass
class JobConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    output: str | None = None
    format: str = "json"
    cluster: int | None = None
    pair: tuple[str, str] | None = None
    expr: str | None = None
    vars: tuple[str, ...] = ("x", "y")
    sqrt: int | None = None
    perturb: tuple[str, str] | None = None


def resolve(path: str) -> Path:
    """A path on disk, or the name of a bundled data file."""
    p = Path(path)
    if p.exists():
        return p
    bundled = DATA_DIR / p.name
    if bundled.exists() and p.parent == Path("."):
        return bundled
    raise InputError(f"no such file: {path}")


def read_json(path: str):
    p = resolve(path)
    try:
        with open(p) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{p}: invalid JSON ({exc})") from None


def load_morse(path: str) -> engine.MorseData:
    try:
        return engine.MorseData.from_json(read_json(path))
    except (KeyError, TypeError) as exc:
        raise InputError(f"{path}: malformed Morse data ({exc!r})") from None


def _single_input(cfg: JobConfig) -> str:
    if len(cfg.inputs) != 1:
        raise InputError(f"{cfg.command} needs exactly one input file")
    return cfg.inputs[0]


def _checked(d: engine.MorseData) -> engine.MorseData:
    rep = engine.validate(d)
    if not rep.ok:
        raise CheckFailed(rep.to_json())
    for w in rep.warnings:
        log.warning(w)
    return d


# commands return (json payload, text rendering)

def cmd_validate(cfg):
    d = load_morse(_single_input(cfg))
    rep = engine.validate(d).to_json()
    lines = [f"valid: {rep['valid']}", f"mu: {rep['mu']}", f"cycle rank: {rep['cycle_rank']}"]
    lines += [f"  {i}: {p}" for i, p in enumerate(rep["transpositions"], 1)]
    lines += [f"error: {e}" for e in rep["errors"]] + [f"warning: {w}" for w in rep["warnings"]]
    text = "\n".join(lines) + "\n"
    if not rep["valid"]:
        raise CheckFailed((rep, text))
    return rep, text


def cmd_vanish(cfg):
    d = _checked(load_morse(_single_input(cfg)))
    cycles = []
    lines = []
    for i, vc in enumerate(engine.vanishing_basis(d), 1):
        cycles.append({
            "index": i,
            "delta": list(vc.delta.coeffs),
            "transposition": list(vc.pair),
            "path": vc.path.to_json(),
        })
        lines.append(f"Delta_{i} = {vc.delta}    ({vc.pair[0]},{vc.pair[1]})    path {vc.path}")
    return {"mu": d.mu, "cycles": cycles}, "\n".join(lines) + "\n"


def cmd_intersect(cfg):
    d = _checked(load_morse(_single_input(cfg)))
    m = engine.intersection_matrix(d)
    return {"mu": d.mu, "matrix": matrix_json(m)}, matrix_table(m, d.clusters)


def cmd_plmats(cfg):
    d = _checked(load_morse(_single_input(cfg)))
    out, text = [], []
    for i in range(1, d.mu + 1):
        m = engine.pl_matrix(d, i)
        out.append({"index": i, "matrix": matrix_json(m)})
        text.append(f"M_{i}\n" + matrix_table(m, d.clusters))
    return {"matrices": out}, "\n".join(text)


def cmd_compose(cfg):
    d = _checked(load_morse(_single_input(cfg)))
    which = [cfg.cluster] if cfg.cluster is not None else list(range(1, len(d.clusters) + 1))
    out, text = [], []
    for c in which:
        if not 1 <= c <= len(d.clusters):
            raise InputError(f"cluster {c} out of range 1..{len(d.clusters)}")
        m = engine.compose_cluster(d, c)
        ok = engine.block_check(m, d.clusters, c)
        entry = {"cluster": c, "members": list(d.clusters[c - 1]), "matrix": matrix_json(m), "block_check": ok}
        if d.labels is not None:
            entry["label"] = d.labels[c - 1]
        out.append(entry)
        text.append(f"cluster {c} {list(d.clusters[c - 1])} block_check={ok}\n" + matrix_table(m, d.clusters))
    return {"clusters": out}, "\n".join(text)


def cmd_infinity(cfg):
    d = _checked(load_morse(_single_input(cfg)))
    m = engine.monodromy_at_infinity(d)
    det = engine.int_det(m)
    return {"matrix": matrix_json(m), "determinant": det}, f"determinant {det}\n" + matrix_table(m, d.clusters)


def cmd_obstruct(cfg):
    if cfg.pair:
        plus, minus = (_checked(load_morse(p)) for p in cfg.pair)
        if len(plus.clusters) != len(minus.clusters):
            raise InputError("the two datasets have different cluster counts")
        pairs = [
            (engine.compose_cluster(plus, c), engine.compose_cluster(minus, c))
            for c in range(1, len(plus.clusters) + 1)
        ]
    else:
        try:
            pairs = obstruction.pairs_from_json(read_json(_single_input(cfg)))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed pairs file ({exc})") from None
    v = obstruction.equivalence_verdict(pairs)
    payload = v.to_json()
    lines = [f"verdict: {v.label}", f"dimension: {v.dimension}", f"det: {payload['det_poly']}"]
    for i, b in enumerate(v.basis, 1):
        lines.append(f"P_{i}\n" + matrix_table(b.to_json()).rstrip("\n"))
    if v.witness is not None:
        lines.append("witness\n" + matrix_table(v.witness.to_json()).rstrip("\n"))
    return payload, "\n".join(lines) + "\n"


def _load_poly(cfg) -> MPoly:
    if cfg.expr is not None:
        return MPoly.parse(cfg.expr, cfg.vars, cfg.sqrt)
    obj = read_json(_single_input(cfg))
    return MPoly.from_json(obj)


def cmd_disc(cfg):
    from fractions import Fraction

    f = _load_poly(cfg)
    if cfg.perturb:
        lam, a = (Fraction(v) for v in cfg.perturb)
        f = curves.perturb(f, lam, a)
    d = curves.discriminant_curve(f)
    reduced = curves.is_reduced_discriminant(f)
    payload = {
        "polynomial": str(f),
        "discriminant": d.to_json(),
        "deg_x": d.degree("x"),
        "deg_t": d.degree("t"),
        "reduced": reduced,
    }
    text = (
        f"f = {f}\nd_f(t,x) = {d}\ndeg_x = {payload['deg_x']}\ndeg_t = {payload['deg_t']}\n"
        f"reduced = {reduced}\n"
    )
    return payload, text


def cmd_family_check(cfg):
    res = curves.family_discriminant_identity()
    payload = {
        "holds": res.holds,
        "scalar": str(res.scalar) if res.scalar is not None else None,
        "computed": str(res.computed),
        "claimed": str(res.claimed),
    }
    text = f"holds: {res.holds}\nscalar: {payload['scalar']}\ncomputed: {res.computed}\nclaimed:  {res.claimed}\n"
    if not res.holds:
        raise CheckFailed((payload, text))
    return payload, text


HANDLERS = {
    "validate": cmd_validate,
    "vanish": cmd_vanish,
    "intersect": cmd_intersect,
    "plmats": cmd_plmats,
    "compose": cmd_compose,
    "infinity": cmd_infinity,
    "obstruct": cmd_obstruct,
    "disc": cmd_disc,
    "family-check": cmd_family_check,
}


def _emit(cfg: JobConfig, payload, text):
    body = dumps(payload) if cfg.format == "json" else text
    if cfg.output:
        Path(cfg.output).write_text(body)
    else:
        sys.stdout.write(body)


def run(cfg: JobConfig) -> int:
    if cfg.command not in HANDLERS:
        log.error("unknown command %s", cfg.command)
        return 2
    try:
        payload, text = HANDLERS[cfg.command](cfg)
    except CheckFailed as exc:
        p = exc.payload
        if isinstance(p, tuple):
            payload, text = p
        else:
            payload, text = p, "\n".join(f"error: {e}" for e in p.get("errors", [])) + "\n"
        _emit(cfg, payload, text)
        return 1
    except engine.ValidationError as exc:
        _emit(cfg, exc.report.to_json(), f"error: {exc}\n")
        return 1
    except (InputError, OSError, WordError, FiberError, PolyError, obstruction.ObstructionError) as exc:
        log.error("%s", exc)
        return 2
    _emit(cfg, payload, text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="discmethod", description="Homological monodromy from braid monodromy data.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("files", nargs="*", help="input file (bundled names such as fplus.json also work)")
    ap.add_argument("-i", "--input", action="append", default=[])
    ap.add_argument("-o", "--output")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--cluster", type=int, help="cluster index for compose (1-based)")
    ap.add_argument("--pair", nargs=2, metavar=("FILE_A", "FILE_B"),
                    help="obstruct: build the pairs from two Morse datasets, cluster by cluster")
    ap.add_argument("--expr", help="disc: polynomial expression instead of a JSON file")
    ap.add_argument("--vars", default="x,y", help="disc: variable names for --expr")
    ap.add_argument("--sqrt", type=int, help="disc: allow sqrt(d) in --expr")
    ap.add_argument("--perturb", nargs=2, metavar=("LAMBDA", "A"), help="disc: use f(x + LAMBDA*y, y) + A*x")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    cfg = JobConfig(
        command=args.command,
        inputs=list(args.files) + list(args.input),
        output=args.output,
        format=args.format,
        cluster=args.cluster,
        pair=tuple(args.pair) if args.pair else None,
        expr=args.expr,
        vars=tuple(v.strip() for v in args.vars.split(",")),
        sqrt=args.sqrt,
        perturb=tuple(args.perturb) if args.perturb else None,
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
