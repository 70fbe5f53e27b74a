"""Batch command-line surface.

Commands: compute, mul, coeffs, cohomology, ktheory, selftest.
Output is deterministic JSON by default (--pretty for aligned text).
Exit codes: 2 parse error, 3 unsupported algebra, 4 approximate kappa
under --strict, 1 selftest failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from pathlib import Path

from . import __version__
from .abgroups import FgAbGroup, INT, MOD2, iso_type, localized_ring
from .classify import (
    UnsupportedAlgebra,
    abstract_iso_candidates,
    abstract_iso_type,
    classification_group,
    coefficients,
    inverse,
    multiply,
    parse_algebra,
)
from .cohomology import cohomology
from .complexes import SimplicialComplex, skeleton
from .corpus import load_space
from .ktheory import connective_k, k5_localized, localize_ahss
from .models import AlgebraicModel


def group_json(G: FgAbGroup) -> dict:
    out = {"rank": G.free_rank, "torsion": list(G.torsion), "ring": G.ring.kind}
    if G.ring.kind == "Z_P":
        out["P"] = list(G.ring.primes)
    return out


def dumps(obj, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(obj, sort_keys=True, indent=2)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def ahss_json(res) -> dict:
    out = {
        "status": res.status,
        "pieces": [{"p": p, "group": group_json(g), "type": iso_type(g)}
                   for p, g in res.graded_pieces],
    }
    if res.assembled is not None:
        out["group"] = group_json(res.assembled)
        out["type"] = iso_type(res.assembled)
    if res.candidates is not None:
        out["candidates"] = [iso_type(g) for g in res.candidates]
    return out


def _load(path: str):
    try:
        return load_space(path)
    except (ValueError, FileNotFoundError, json.JSONDecodeError) as e:
        _fail(2, f"cannot load {path}: {e}")


def _fail(code: int, message: str):
    print(f"error: {message}", file=sys.stderr)
    raise SystemExit(code)


def _algebra(text: str):
    try:
        return parse_algebra(text)
    except UnsupportedAlgebra as e:
        _fail(3, str(e))


def _variant(args) -> str:
    if getattr(args, "bar", False) and getattr(args, "hat", False):
        _fail(2, "--bar and --hat are mutually exclusive")
    if getattr(args, "bar", False):
        return "bar"
    if getattr(args, "hat", False):
        return "hat"
    return "plain"


# ---------------------------------------------------------------------------
# compute
# ---------------------------------------------------------------------------

def compute_report(space, algebra, variant: str, verbose: bool = False) -> dict:
    G = classification_group(space, algebra, variant)
    report = {
        "space": getattr(space, "name", None) or "space",
        "algebra": str(algebra),
        "variant": variant,
        "components": {name: iso_type(g) for name, g in G.components.items()},
        "kappa_status": G.kappa_report.result.status if G.kappa_report else None,
        "partial": G.partial,
    }
    if G.kappa_report and G.kappa_report.localized:
        report["kappa_status"] = G.kappa_report.localized[1].status
    if not G.partial:
        cands = abstract_iso_candidates(G)
        report["abstract"] = cands[0]
        report["group"] = cands[0]
        if len(cands) > 1:
            report["abstract_candidates"] = cands
    if G.twisted:
        pairs = sorted({tuple(sorted(k)) for k in G.twist_table})
        report["twist"] = [{"pair": list(k), "value": list(G.twist_table[k])}
                           for k in pairs]
    if verbose and G.kappa_report:
        res = G.kappa_report.result
        report["kappa_detail"] = ahss_json(res)
    return report


def cmd_compute(args) -> int:
    algebra = _algebra(args.algebra)
    variant = _variant(args)
    cache_key = None
    if args.cache:
        try:
            raw = Path(args.path).read_bytes()
        except OSError as e:
            _fail(2, str(e))
        cache_key = hashlib.sha256(
            b"|".join([raw, str(algebra).encode(), variant.encode(),
                       __version__.encode(), b"compute"])).hexdigest()
        hit = _cache_get(args.cache, cache_key)
        if hit is not None:
            print(hit)
            return 0
    space = _load(args.path)
    report = compute_report(space, algebra, variant, verbose=args.verbose)
    if args.strict and report["kappa_status"] == "approximate":
        _fail(4, "kappa is only approximate (higher differentials could act)")
    text = dumps(report, args.pretty)
    if cache_key:
        _cache_put(args.cache, cache_key, text)
    print(text)
    return 0


def _cache_get(cache_dir: str, key: str):
    path = Path(cache_dir) / f"{key}.json"
    if path.exists():
        return path.read_text(encoding="utf-8").rstrip("\n")
    return None


def _cache_put(cache_dir: str, key: str, text: str) -> None:
    d = Path(cache_dir)
    d.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(text + "\n")
    os.replace(tmp, d / f"{key}.json")


# ---------------------------------------------------------------------------
# mul
# ---------------------------------------------------------------------------

def cmd_mul(args) -> int:
    algebra = _algebra(args.algebra)
    variant = _variant(args)
    space = _load(args.path)
    G = classification_group(space, algebra, variant)
    try:
        xs = json.loads(args.x)
        ys = json.loads(args.y)
        x = G.element({k: tuple(v) for k, v in xs.items()})
        y = G.element({k: tuple(v) for k, v in ys.items()})
    except (json.JSONDecodeError, ValueError, KeyError) as e:
        _fail(2, f"bad element: {e}")
    z = multiply(G, x, y) if not args.invert else multiply(G, x, inverse(G, y))
    print(dumps(z.to_dict(), args.pretty))
    return 0


# ---------------------------------------------------------------------------
# coeffs
# ---------------------------------------------------------------------------

def cmd_coeffs(args) -> int:
    algebra = _algebra(args.algebra)
    table = [coefficients(algebra, i) for i in range(args.max_i + 1)]
    print(dumps({"algebra": str(algebra), "coefficients": table}, args.pretty))
    return 0


# ---------------------------------------------------------------------------
# cohomology
# ---------------------------------------------------------------------------

def cmd_cohomology(args) -> int:
    space = _load(args.path)
    if args.primes:
        ring = localized_ring(tuple(int(p) for p in args.primes.split(",")))
    elif args.mod2:
        ring = MOD2
    else:
        ring = INT
    if isinstance(space, AlgebraicModel):
        if args.rel_skeleton is not None:
            _fail(2, "relative cohomology of a model is not available")
        if ring == MOD2:
            G = space.h_mod2(args.degree)
        elif ring.kind == "Z_P":
            G = space.h_localized(args.degree, ring.primes)
        else:
            G = space.h_int(args.degree)
    else:
        A = skeleton(space, args.rel_skeleton) if args.rel_skeleton is not None else None
        G = cohomology(space, A, args.degree, ring)
    print(dumps({"degree": args.degree, "group": group_json(G), "type": iso_type(G)},
                args.pretty))
    return 0


# ---------------------------------------------------------------------------
# ktheory
# ---------------------------------------------------------------------------

def cmd_ktheory(args) -> int:
    space = _load(args.path)
    rep = connective_k(space, args.i)
    res = rep.result
    if args.primes:
        primes = tuple(int(p) for p in args.primes.split(","))
        res = localize_ahss(res, primes)
    out = {"i": args.i, **ahss_json(res)}
    if args.strict and res.status == "approximate":
        _fail(4, "result is approximate (higher differentials could act)")
    print(dumps(out, args.pretty))
    return 0


# ---------------------------------------------------------------------------
# selftest
# ---------------------------------------------------------------------------

def cmd_selftest(args) -> int:
    from . import selftest
    try:
        failures = selftest.run(level=args.level, corpus_dir=args.corpus,
                                out=sys.stdout)
    except selftest.CorpusError as e:
        _fail(2, str(e))
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ssabundles",
                                 description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, variant=False):
        p.add_argument("--json", action="store_true", help="JSON output (default)")
        p.add_argument("--pretty", action="store_true", help="indented output")
        p.add_argument("--strict", action="store_true")
        p.add_argument("--verbose", action="store_true")
        p.add_argument("--cache", metavar="DIR")
        if variant:
            p.add_argument("--bar", action="store_true", help="identity-component variant")
            p.add_argument("--hat", action="store_true", help="graded variant")

    p = sub.add_parser("compute", help="classification group of (X, D)")
    p.add_argument("path")
    p.add_argument("algebra", help="C | Z | M{2,3} | Oinf | M{2,3}xOinf")
    common(p, variant=True)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("mul", help="multiply two elements")
    p.add_argument("path")
    p.add_argument("algebra")
    p.add_argument("x", help='element JSON, e.g. {"w":[1,0],"tau":[0]}')
    p.add_argument("y")
    p.add_argument("--invert", action="store_true", help="multiply x by y^{-1}")
    common(p, variant=True)
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("coeffs", help="coefficient table of the theory")
    p.add_argument("algebra")
    p.add_argument("max_i", type=int)
    common(p)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("cohomology", help="H^n of a complex or model")
    p.add_argument("path")
    p.add_argument("degree", type=int)
    p.add_argument("--mod2", action="store_true")
    p.add_argument("--primes", help="localize: comma-separated primes")
    p.add_argument("--rel-skeleton", type=int, help="relative to the k-skeleton")
    common(p)
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("ktheory", help="connective k^i report")
    p.add_argument("path")
    p.add_argument("i", type=int)
    p.add_argument("--primes")
    common(p)
    p.set_defaults(func=cmd_ktheory)

    p = sub.add_parser("selftest", help="run the invariant suites")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    p.add_argument("--corpus", metavar="DIR", help="override the corpus directory")
    common(p)
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UnsupportedAlgebra as e:
        _fail(3, str(e))
    except ValueError as e:
        _fail(2, str(e))


if __name__ == "__main__":
    raise SystemExit(main())
