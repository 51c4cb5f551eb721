"""The shipped model corpus: the cubic contact example, the tangency
fixtures, and the diagonal models used throughout the test suite."""

from __future__ import annotations

import json
from typing import List

CUBIC_CONTACT = {
    "name": "cubic-contact",
    "description": "cubic-contact model with a degenerate Levi-null direction: "
    "contact order 4 but unbounded commutator and trace types",
    "n": 3,
    "rho": "2*Re(w) + (z2 + conj(z2) + z1*conj(z1))^2",
    "frame": [["1", "-conj(z1)"]],
    "a_contact": 4,
    "caps": {"bracket_cap": 8, "degree_cap": 3,
             "coeff_set": ["0", "1", "-1", "1i", "-1i"], "grid_scale": 1},
}

TANGENCY_NONPSH = {
    "name": "tangency-nonpsh",
    "description": "tangency solution with non-plurisubharmonic real part",
    "kind": "tangency",
    "A": "-z1*conj(z1)",
    "k": 3,
    "m": 4,
    "f": "z1*conj(z2) + 1/2*z1^2*conj(z1)^2",
}

# exponent convention fixed by symbolic residual: the coefficient is
# kappa * z1^(kappa-1) * conj(z1)^kappa (here kappa = 2, so k = 4, m = 8)
TANGENCY_REALZERO = {
    "name": "tangency-realzero",
    "description": "tangency solution with identically zero real part",
    "kind": "tangency",
    "A": "2*z1*conj(z1)^2",
    "k": 4,
    "m": 8,
    "f": "(0+1i)*(z2 + conj(z2) - z1^2*conj(z1)^2)^2",
}


def _diagonal(p: int, q: int) -> dict:
    return {
        "name": f"diag-{p}-{q}",
        "description": f"diagonal model (z1 z1bar)^{p} + (z2 z2bar)^{q}",
        "n": 3,
        "rho": f"-2*Re(w) + (z1*conj(z1))^{p} + (z2*conj(z2))^{q}",
        "a_contact": 2 * max(p, q),
        "caps": {"bracket_cap": 8, "degree_cap": 2,
                 "coeff_set": ["0", "1", "-1", "1i", "-1i"], "grid_scale": 1},
    }


def all_fixtures() -> List[dict]:
    out = [CUBIC_CONTACT, TANGENCY_NONPSH, TANGENCY_REALZERO]
    for p in (1, 2, 3):
        for q in (1, 2, 3):
            out.append(_diagonal(p, q))
    return out


def fixture_by_name(name: str) -> dict:
    if name.endswith(".json"):
        name = name[: -len(".json")]
    for fx in all_fixtures():
        if fx["name"] == name:
            return fx
    raise KeyError(f"no fixture named {name!r}")


def write_fixtures(directory: str) -> List[str]:
    import os

    paths = []
    os.makedirs(directory, exist_ok=True)
    for fx in all_fixtures():
        path = os.path.join(directory, fx["name"] + ".json")
        with open(path, "w") as fh:
            json.dump(fx, fh, sort_keys=True, indent=2)
            fh.write("\n")
        paths.append(path)
    return paths
