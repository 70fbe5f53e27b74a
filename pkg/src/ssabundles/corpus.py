"""The shipped test corpus: triangulations and algebraic models.

Every acceptance check runs offline against these files.  The
triangulated products are frozen outputs of product_complex, and the
RP2/T2 models are frozen outputs of model_from_complex, so `rebuild`
can regenerate and compare everything bit for bit.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .abgroups import INT, MOD2
from .cohomology import (
    bockstein,
    cohomology,
    cup,
    generator_classes,
    reduce_mod2,
    sq2,
)
from .complexes import (
    SimplicialComplex,
    circle,
    dump_complex,
    load_complex,
    minimal_rp2,
    point,
    product_complex,
    rp3_from_quotient,
    sphere,
)
from .models import AlgebraicModel, cp_model, load_model, sq3_demo8_model

COMPLEX_NAMES = (
    "point", "s1", "s2", "s3", "s4", "s5", "s6",
    "rp2", "rp3", "t2", "t3", "rp2xs1", "rp2xrp2", "s1xs2",
)
MODEL_NAMES = ("cp2_model", "cp3_model", "rp2_model", "t2_model", "sq3demo8_model")
ALL_NAMES = COMPLEX_NAMES + MODEL_NAMES


def model_from_complex(X: SimplicialComplex, name: str) -> dict:
    """Freeze the cohomology groups and operations of a triangulation
    into the algebraic-model format."""
    dim = X.dimension
    H, H2, rho, beta, sq2t = {}, {}, {}, {}, {}
    for n in range(dim + 1):
        gi = cohomology(X, None, n, INT)
        g2 = cohomology(X, None, n, MOD2)
        if not gi.is_trivial():
            H[str(n)] = {"rank": gi.free_rank, "torsion": list(gi.torsion)}
        if not g2.is_trivial():
            H2[str(n)] = {"dim": g2.ngens}
        igens = generator_classes(X, None, n, INT)
        mgens = generator_classes(X, None, n, MOD2)
        if igens and not g2.is_trivial():
            rho[str(n)] = _columns([reduce_mod2(x).coords for x in igens])
        if mgens and n + 1 <= dim:
            col = [bockstein(x).coords for x in mgens]
            if any(any(c) for c in col):
                beta[str(n)] = _columns(col)
        if mgens and n >= 2 and n + 2 <= dim:
            col = [sq2(x).coords for x in mgens]
            if any(any(c) for c in col):
                sq2t[str(n)] = _columns(col)
    cups = []
    for p in range(1, dim):
        for q in range(p, dim - p + 1):
            gp = generator_classes(X, None, p, MOD2)
            gq = generator_classes(X, None, q, MOD2)
            if not gp or not gq or cohomology(X, None, p + q, MOD2).is_trivial():
                continue
            table = [[list(cup(a, b).coords) for b in gq] for a in gp]
            if any(any(any(c) for c in row) for row in table):
                cups.append({"deg": [p, q], "table": table})
    return {"name": name, "dim": dim, "H": H, "H2": H2, "rho": rho,
            "beta": beta, "sq2": sq2t, "cup": cups}


def _columns(cols):
    """Column list -> row-major matrix."""
    if not cols:
        return []
    nrows = len(cols[0])
    return [[int(c[i]) for c in cols] for i in range(nrows)]


def build_all() -> dict[str, str]:
    """Regenerate every corpus file's contents, keyed by file name."""
    t2 = product_complex(circle(), circle())
    spaces = {
        "point": point(),
        "s1": circle(),
        "s2": sphere(2), "s3": sphere(3), "s4": sphere(4),
        "s5": sphere(5), "s6": sphere(6),
        "rp2": minimal_rp2(),
        "rp3": rp3_from_quotient(),
        "t2": t2,
        "t3": product_complex(t2, circle()),
        "rp2xs1": product_complex(minimal_rp2(), circle()),
        "rp2xrp2": product_complex(minimal_rp2(), minimal_rp2()),
        "s1xs2": product_complex(circle(), sphere(2)),
    }
    out = {}
    for name, X in spaces.items():
        X.name = name
        out[f"{name}.json"] = dump_complex(X)
    models = {
        "cp2_model": cp_model(2),
        "cp3_model": cp_model(3),
        "rp2_model": model_from_complex(spaces["rp2"], "rp2_model"),
        "t2_model": model_from_complex(spaces["t2"], "t2_model"),
        "sq3demo8_model": sq3_demo8_model(),
    }
    for name, data in models.items():
        data["name"] = name
        out[f"{name}.json"] = json.dumps(data, sort_keys=True, separators=(",", ":"))
    return out


def write_corpus(directory: Path) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for fname, text in build_all().items():
        (directory / fname).write_text(text + "\n", encoding="utf-8")


def _read(name: str, directory=None) -> str:
    if directory is not None:
        path = Path(directory) / f"{name}.json"
        if not path.exists():
            raise FileNotFoundError(path)
        return path.read_text(encoding="utf-8")
    ref = resources.files("ssabundles") / "corpus" / f"{name}.json"
    return ref.read_text(encoding="utf-8")


def load(name: str, directory=None):
    """Load a corpus entry by name (triangulation or model)."""
    text = _read(name, directory)
    data = json.loads(text)
    if "H" in data:
        return load_model(text)
    return load_complex(text)


def load_space(path_or_name):
    """Load from an explicit path, or fall back to a corpus name."""
    p = Path(path_or_name)
    if p.exists():
        text = p.read_text(encoding="utf-8")
        data = json.loads(text)
        return load_model(text) if "H" in data else load_complex(text)
    return load(str(path_or_name))
