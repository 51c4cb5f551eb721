"""Complex Hessians, exact pointwise PSD tests and psh-based checkers.

Global plurisubharmonicity of a polynomial is expensive to decide exactly,
so this module works as a refutation engine: the Levi (Wirtinger Hessian)
matrix is evaluated at exact Gaussian-rational grid points and tested for
positive semidefiniteness through its principal minors.  A refuted point
certifies non-plurisubharmonicity; a clean sweep is only a
necessary-condition pass and is never treated as a proof.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .gaussian import GaussianRational, gr
from .linalg import det
from .poly import Poly, PolyRing


class PshError(ValueError):
    """Raised on inputs violating a checker's structural preconditions."""


@dataclass
class LeviMatrix:
    """Hermitian matrix of second Wirtinger derivatives d^2 p / dz_i dzbar_j."""

    variables: Tuple[int, ...]      # unbarred slots the matrix ranges over
    entries: Tuple[Tuple[Poly, ...], ...]

    @property
    def size(self) -> int:
        return len(self.variables)

    def evaluated(self, point: Sequence[GaussianRational]) -> List[List[GaussianRational]]:
        return [[e.eval(point) for e in row] for row in self.entries]


def levi_matrix(p: Poly) -> LeviMatrix:
    """Exact Wirtinger Hessian of a real polynomial, over the variables it uses."""
    if not p.is_real():
        raise PshError("Levi matrix is defined for real polynomials")
    ring = p.ring
    nv = ring.nv
    variables = tuple(
        i for i in range(nv) if p.involves(i) or p.involves(i, conjugate=True)
    )
    entries = tuple(
        tuple(p.dz(i).dzbar(j) for j in variables) for i in variables
    )
    return LeviMatrix(variables, entries)


def _is_psd(matrix: List[List[GaussianRational]]) -> bool:
    """Exact PSD test of a Hermitian matrix via all principal minors."""
    d = len(matrix)
    for size in range(1, d + 1):
        for subset in itertools.combinations(range(d), size):
            sub = [[matrix[i][j] for j in subset] for i in subset]
            value = det(sub)
            if not value.is_real():
                raise PshError("principal minor of a Hermitian matrix must be real")
            if value.re < 0:
                return False
    return True


def psd_at(p: Poly, point: Sequence[GaussianRational]) -> bool:
    """Exact positive-semidefiniteness of the Levi matrix at one point."""
    lm = levi_matrix(p)
    return _is_psd(lm.evaluated(point))


# the base coordinate values for grids; each densification level appends the
# nonzero values scaled by 2/3, exactly doubling the nonzero part of the set
# (the factor is chosen so no scaled value collides with an existing one)
_BASE_VALUES: Tuple[GaussianRational, ...] = (
    gr(0),
    gr(1),
    gr(-1),
    gr(0, 1),
    gr(0, -1),
    gr(Fraction(1, 2)),
    gr(Fraction(-1, 2)),
    gr(1, 1),
    gr(1, -1),
)


def grid_values(level: int = 0) -> Tuple[GaussianRational, ...]:
    values = list(_BASE_VALUES)
    scale = gr(Fraction(2, 3))
    for _ in range(level):
        values += [v * scale for v in values if not v.is_zero()]
    return tuple(values)


def default_grid(ring: PolyRing, level: int = 0) -> List[Tuple[GaussianRational, ...]]:
    """All points with coordinates in the level's value set, except the origin."""
    vals = grid_values(level)
    pts = []
    for combo in itertools.product(vals, repeat=ring.nv):
        if all(c.is_zero() for c in combo):
            continue
        pts.append(combo)
    return pts


@dataclass
class PshVerdict:
    passed: bool
    refuting_point: Optional[Tuple[GaussianRational, ...]] = None
    points_checked: int = 0

    def to_json_dict(self) -> dict:
        out = {"psd_on_grid": self.passed, "points_checked": self.points_checked}
        if self.refuting_point is not None:
            out["refuting_point"] = [str(c) for c in self.refuting_point]
        return out


def sampled_psh(p: Poly, grid: Sequence[Sequence[GaussianRational]]) -> PshVerdict:
    """PSD at every grid point: True is a filter pass, False a certified refutation."""
    if not p.is_real():
        raise PshError("plurisubharmonicity applies to real polynomials")
    lm = levi_matrix(p)
    count = 0
    for point in grid:
        count += 1
        if not _is_psd(lm.evaluated(point)):
            return PshVerdict(False, tuple(point), count)
    return PshVerdict(True, None, count)


# ---------------------------------------------------------------------------
# the four conclusion checkers

def monomial_obstruction(h: Poly) -> Poly:
    """h*h_{xi xibar} - h_xi * h_xibar for a homogeneous one-variable polynomial.

    The obstruction vanishes exactly on monomials: both directions are
    exercised by the brute-force suites, and the vanishing is the criterion
    used to recognize product normal forms.
    """
    ring = h.ring
    if ring.nv != 1:
        raise PshError("obstruction is defined for one complex variable")
    if not h.is_zero():
        degrees = {sum(k) for k in h.terms}
        if len(degrees) != 1:
            raise PshError("obstruction requires a homogeneous input")
    return h * h.dz(0).dzbar(0) - h.dz(0) * h.dzbar(0)


def is_monomial(h: Poly) -> bool:
    return len(h.terms) <= 1


@dataclass
class CheckResult:
    status: str            # "pass", "fail" or "not_applicable"
    reason: str = ""
    alpha: Optional[GaussianRational] = None
    refuting_point: Optional[Tuple[GaussianRational, ...]] = None

    def to_json_dict(self) -> dict:
        out = {"status": self.status}
        if self.reason:
            out["reason"] = self.reason
        if self.alpha is not None:
            out["alpha"] = str(self.alpha)
        if self.refuting_point is not None:
            out["refuting_point"] = [str(c) for c in self.refuting_point]
        return out


def bidegree_psh_check(h: Poly, bidegrees: Sequence[int]) -> CheckResult:
    """For fixed per-variable bidegrees k_l and h_{z1 zbar1} nonzero, a psh h
    must have every k_l even and a positive coefficient on prod |z_l|^{k_l}.

    Returns which conclusion breaks; a failing h is certified non-psh
    elsewhere (the grid refutation suites close the loop).
    """
    ring = h.ring
    nv = ring.nv
    if len(bidegrees) != nv:
        raise PshError(f"{len(bidegrees)} bidegrees for {nv} variables")
    if not h.is_real():
        raise PshError("bidegree check applies to real polynomials")
    for key in h.terms:
        for l in range(nv):
            if key[l] + key[nv + l] != bidegrees[l]:
                raise PshError(
                    f"monomial violates the bidegree structure in variable {ring.names[l]}"
                )
    if h.dz(0).dzbar(0).is_zero():
        return CheckResult("not_applicable", "h_{z1 zbar1} vanishes identically")
    for l, kl in enumerate(bidegrees):
        if kl % 2 != 0:
            return CheckResult("fail", f"bidegree {kl} of {ring.names[l]} is odd")
    key = tuple(k // 2 for k in bidegrees) + tuple(k // 2 for k in bidegrees)
    c = h.coeff(key)
    if not c.is_positive_real():
        return CheckResult("fail", f"central coefficient {c} is not a positive rational")
    return CheckResult("pass", alpha=c)


def holo_independence_check(f: Poly, k: int, weights=None, grid=None) -> CheckResult:
    """Conclusion check: a weighted homogeneous f holomorphic in z_1..z_k with
    psh real part and no holomorphic terms must be independent of z_1..z_k.

    The psh hypothesis is caller-asserted; weighted homogeneity is checked
    when a weight system is supplied.  On a failed conclusion the grid is
    scanned for a psh refutation so that a hypothesis violation is reported
    rather than swallowed.
    """
    ring = f.ring
    if k > ring.nv:
        raise PshError("more holomorphic variables than the ring has")
    if weights is not None and not f.is_zero():
        grades = {weights.weighted_degree(key) for key in f.terms}
        if len(grades) != 1:
            raise PshError("f is not weighted homogeneous for the given weights")
    for j in range(k):
        if f.involves(j, conjugate=True):
            return _escalate(f, f"not holomorphic in {ring.names[j]}", grid)
    bad = [j for j in range(k) if not f.dz(j).is_zero()]
    if not bad:
        return CheckResult("pass")
    return _escalate(f, f"f depends on {ring.names[bad[0]]}", grid)


def _escalate(f: Poly, reason: str, grid) -> CheckResult:
    if grid is None:
        grid = default_grid(f.ring)
    verdict = sampled_psh(f.real_part(), grid)
    if not verdict.passed:
        return CheckResult(
            "fail",
            reason + "; hypothesis refuted: Re f is not psh",
            refuting_point=verdict.refuting_point,
        )
    return CheckResult("fail", reason + "; escalated: no grid refutation found")


def product_form_check(
    b: Poly, f: Poly, g: Poly, k: int, m: int, grid=None
) -> CheckResult:
    """Conclusion check for F = B f + z1^k g with psh nonzero real part.

    B(z1, z1bar) homogeneous of degree k without pure powers, f and g in
    (z2, z2bar) homogeneous of degree m: the conclusion is that k and m are
    even and Re F = alpha |z1|^k |z2|^m with alpha > 0.
    """
    ring = b.ring
    if ring.nv < 2:
        raise PshError("product form lives in two complex variables")
    if b.is_zero() or f.is_zero():
        raise PshError("B and f must be nonzero")
    for p, deg, name in ((b, k, "B"), (f, m, "f"), (g, m, "g")):
        for key in p.terms:
            if sum(key) != deg:
                raise PshError(f"{name} is not homogeneous of degree {deg}")
    if b.involves(1) or b.involves(1, conjugate=True):
        raise PshError("B must depend on z1 only")
    for p, name in ((f, "f"), (g, "g")):
        if p.involves(0) or p.involves(0, conjugate=True):
            raise PshError(f"{name} must depend on z2 only")
    if not b.holomorphic_part().is_zero() or not b.antiholomorphic_part().is_zero():
        raise PshError("B must vanish on z1bar = 0 and on z1 = 0")
    F = b * f + (ring.var(0) ** k) * g
    re_f = F.real_part()
    if k % 2 != 0 or m % 2 != 0:
        return _escalate(re_f, f"degrees ({k}, {m}) are not both even", grid)
    key = [0] * (2 * ring.nv)
    key[0] = key[ring.nv] = k // 2
    key[1] = key[ring.nv + 1] = m // 2
    alpha = re_f.coeff(tuple(key))
    product = ring.monomial(tuple(key), alpha)
    if not alpha.is_positive_real():
        return _escalate(re_f, f"candidate coefficient {alpha} is not positive", grid)
    if re_f != product:
        return _escalate(re_f, "Re F is not a multiple of |z1|^k |z2|^m", grid)
    return CheckResult("pass", alpha=alpha)
