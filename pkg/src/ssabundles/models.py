"""Algebraic models: spaces given by cohomological data instead of a
triangulation.

A model records integral and mod-2 cohomology groups per degree, the
reduction rho, the Bockstein beta, Sq^2, and mod-2 cup tables on listed
generators, plus a dimension bound.  That is exactly the input the
K-theory assembly and the classification layer consume, so large spaces
(CP^3, suspensions) can skip triangulation.
"""

from __future__ import annotations

import json

from .abgroups import FgAbGroup, GroupHom, INT, MOD2, localize_with_map


class AlgebraicModel:
    def __init__(self, data: dict):
        if "H" not in data or "dim" not in data:
            raise ValueError("model parse error: needs 'H' and 'dim'")
        self.name = data.get("name")
        self.dimension = int(data["dim"])
        self._h = {}
        for key, spec in data["H"].items():
            n = int(key)
            self._h[n] = FgAbGroup(INT, int(spec.get("rank", 0)),
                                   tuple(spec.get("torsion", ())))
        self._h2 = {}
        for key, spec in data.get("H2", {}).items():
            n = int(key)
            d = spec["dim"] if "dim" in spec else len(spec.get("torsion", ()))
            self._h2[n] = FgAbGroup(MOD2, 0, (2,) * int(d))
        self._rho = {int(k): v for k, v in _matrix_table(data.get("rho", {})).items()}
        self._beta = {int(k): v for k, v in _matrix_table(data.get("beta", {})).items()}
        self._sq2 = {int(k): v for k, v in _matrix_table(data.get("sq2", {})).items()}
        self._cup = {}
        for entry in data.get("cup", ()):
            p, q = entry["deg"]
            self._cup[(int(p), int(q))] = entry["table"]
        self._validate()

    # -- groups -----------------------------------------------------------

    def h_int(self, n: int) -> FgAbGroup:
        if 0 <= n <= self.dimension:
            return self._h.get(n, FgAbGroup(INT, 0, ()))
        return FgAbGroup(INT, 0, ())

    def h_mod2(self, n: int) -> FgAbGroup:
        if 0 <= n <= self.dimension:
            return self._h2.get(n, FgAbGroup(MOD2, 0, ()))
        return FgAbGroup(MOD2, 0, ())

    def h_localized(self, n: int, primes) -> FgAbGroup:
        return localize_with_map(self.h_int(n), primes).group

    def cell_dims(self) -> list[int]:
        """Minimal CW estimate: a d-cell per H^d generator and a (d-1)-cell
        per torsion factor of H^d."""
        dims = {0}
        for n, G in self._h.items():
            if not G.is_trivial():
                dims.add(n)
            if G.torsion:
                dims.add(n - 1)
        return sorted(d for d in dims if 0 <= d <= self.dimension)

    # -- operations --------------------------------------------------------

    def _hom(self, table, n, source, target) -> GroupHom:
        mat = table.get(n)
        if mat is None or source.is_trivial() or target.is_trivial():
            return GroupHom.zero(source, target)
        return GroupHom(source, target, mat)

    def rho_hom(self, n: int) -> GroupHom:
        return self._hom(self._rho, n, self.h_int(n), self.h_mod2(n))

    def beta_hom(self, n: int) -> GroupHom:
        return self._hom(self._beta, n, self.h_mod2(n), self.h_int(n + 1))

    def sq2_hom(self, n: int) -> GroupHom:
        if n < 2:
            return GroupHom.zero(self.h_mod2(n), self.h_mod2(n + 2))
        return self._hom(self._sq2, n, self.h_mod2(n), self.h_mod2(n + 2))

    def sq3_hom(self, n: int) -> GroupHom:
        """beta . Sq^2 . rho on integral degree-n classes."""
        return self.beta_hom(n + 2).compose(self.sq2_hom(n)).compose(self.rho_hom(n))

    def cup_mod2(self, p: int, q: int, i: int, j: int):
        """Coordinates in H^{p+q}(Z/2) of (basis_i of H^p) cup (basis_j of H^q)."""
        table = self._cup.get((p, q))
        if table is not None:
            return self.h_mod2(p + q).reduce(table[i][j])
        table = self._cup.get((q, p))
        if table is not None:
            return self.h_mod2(p + q).reduce(table[j][i])
        return self.h_mod2(p + q).zero()

    # -- consistency --------------------------------------------------------

    def _validate(self):
        for n in range(self.dimension + 1):
            if self.h_int(n).ngens or self.h_mod2(n).ngens:
                h = self.beta_hom(n).compose(self.rho_hom(n))
                if not h.is_zero():
                    raise ValueError(f"model inconsistency: beta.rho != 0 in degree {n}")
        for n in (0, 1):
            if self._sq2.get(n):
                if any(any(r) for r in self._sq2[n]):
                    raise ValueError("model inconsistency: Sq^2 below degree 2")
        for (p, q), table in self._cup.items():
            if p != q:
                continue
            G = self.h_mod2(p + q)
            for i in range(len(table)):
                for j in range(len(table)):
                    if G.reduce(table[i][j]) != G.reduce(table[j][i]):
                        raise ValueError("model inconsistency: cup table not symmetric")


def _matrix_table(obj):
    """Accept {'n': matrix} dicts or degree-indexed lists."""
    if isinstance(obj, dict):
        return obj
    return {i: m for i, m in enumerate(obj) if m is not None}


def load_model(text: str) -> AlgebraicModel:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"model parse error: {e}") from e
    return AlgebraicModel(data)


def is_model_data(data: dict) -> bool:
    return isinstance(data, dict) and "H" in data


# ---------------------------------------------------------------------------
# stock models
# ---------------------------------------------------------------------------

def cp_model(n: int) -> dict:
    """Model of CP^n: Z in even degrees, cup structure of a truncated
    polynomial ring, Sq^2 given by cup squares."""
    H = {str(2 * k): {"rank": 1, "torsion": []} for k in range(n + 1)}
    H2 = {str(2 * k): {"dim": 1} for k in range(n + 1)}
    rho = {str(2 * k): [[1]] for k in range(n + 1)}
    # Sq^2 x^k = k * x^(k+1) mod 2 (Cartan from Sq^2 x = x^2 in degree 2)
    sq2 = {}
    for k in range(1, n):
        sq2[str(2 * k)] = [[k % 2]]
    cup = []
    for a in range(1, n):
        for b in range(a, n):
            if a + b <= n:
                cup.append({"deg": [2 * a, 2 * b], "table": [[[1]]]})
    return {
        "name": f"CP{n}",
        "dim": 2 * n,
        "H": H,
        "H2": H2,
        "rho": rho,
        "beta": {},
        "sq2": sq2,
        "cup": cup,
    }


def sq3_demo8_model() -> dict:
    """An 8-dimensional model with a nonzero integral Sq^3.

    Cohomology of (a suspension of) CP^2 with a mod-2 Moore cell on top:
    Z in degree 4, Z/2 in degree 7, Z in degree 8; Sq^2 on the mod-2
    reduction of the degree-4 generator hits degree 6, whose Bockstein
    generates the degree-7 torsion.
    """
    return {
        "name": "sq3demo8",
        "dim": 8,
        "H": {
            "0": {"rank": 1, "torsion": []},
            "4": {"rank": 1, "torsion": []},
            "7": {"rank": 0, "torsion": [2]},
            "8": {"rank": 1, "torsion": []},
        },
        "H2": {
            "0": {"dim": 1},
            "4": {"dim": 1},
            "6": {"dim": 1},
            "7": {"dim": 1},
            "8": {"dim": 1},
        },
        "rho": {"4": [[1]], "7": [[1]], "8": [[1]]},
        "beta": {"6": [[1]]},
        "sq2": {"4": [[1]]},
        "cup": [],
    }
