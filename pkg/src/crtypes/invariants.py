"""Contact order, commutator length and Levi-trace invariants.

The three suprema are approached by bounded enumeration: holomorphic
immersions with coefficients from a finite set for the contact order,
right-nested commutator words over the frame generators for the vector-field
length, derivative words applied to the Levi trace for the trace length.
Reported values are therefore certified lower bounds with explicit
witnesses; infinite values are never claimed, they surface as ">cap".

Also here: the weight assignment (1, ..., 1, k = l0+1, m), the weighted
truncation of frames and models, the vanishing checks for bracket pairings
and trace derivatives of truncated data, and the bracket-span dimension at
the origin.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .gaussian import GaussianRational, gr
from .linalg import rank
from .poly import (
    INFINITE,
    Poly,
    PolyError,
    PolyRing,
    WeightSystem,
    parameter_ring,
)
from .vfield import Hypersurface, VectorField, lie_bracket, pair_with_drho
from .normalize import Frame, l0_of, model_weights, NormalizeError


class JetOrderError(ValueError):
    """Frame jet certificate too short for the requested enumeration depth."""


class WeightAssignmentError(ValueError):
    """The weight hypotheses (k < m <= contact order) fail on this input."""


@dataclass
class TypeReport:
    """Result of one bounded invariant computation.

    value is None when every enumerated object stayed degenerate, in which
    case the honest report is ">cap"; a finite value is reproduced by
    re-evaluating the recorded witness.
    """

    kind: str                     # "contact", "vector_field" or "levi"
    value: Optional[int]
    cap: int
    witness: str = ""
    jet_order_used: object = INFINITE

    def display(self) -> str:
        return str(self.value) if self.value is not None else f">{self.cap}"

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "value": self.display(),
            "cap": self.cap,
            "witness": self.witness,
        }


# ---------------------------------------------------------------------------
# contact order

class HoloImmersion:
    """A germ of a holomorphic immersion (C^s, 0) -> (C^n, 0), polynomial components."""

    __slots__ = ("components", "ring", "s")

    def __init__(self, components: Sequence[Poly]):
        if not components:
            raise PolyError("immersion needs at least one component")
        ring = components[0].ring
        for c in components:
            if c.ring != ring:
                raise PolyError("immersion components in different parameter rings")
            if not c.holomorphic_part() == c:
                raise PolyError("immersion components must be holomorphic")
            if not c.constant_term().is_zero():
                raise PolyError("immersion must map 0 to 0")
        self.components = tuple(components)
        self.ring = ring
        self.s = ring.nv
        jac = []
        for c in self.components:
            key_base = [0] * (2 * self.s)
            row = []
            for j in range(self.s):
                key = list(key_base)
                key[j] = 1
                row.append(c.coeff(tuple(key)))
            jac.append(row)
        if rank(jac) != self.s:
            raise PolyError("not an immersion: Jacobian rank at 0 is deficient")

    def __repr__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def order_of_contact(m: Hypersurface, phi: HoloImmersion):
    """Vanishing order at 0 of rho composed with the immersion; INFINITE if zero."""
    if len(phi.components) != m.ring.nv:
        raise PolyError(
            f"immersion has {len(phi.components)} components, expected {m.ring.nv}"
        )
    mapping = {i: phi.components[i] for i in range(m.ring.nv)}
    return m.rho.substitute(mapping).vanishing_order()


def _compose_truncated(rho: Poly, images: Sequence[Poly], target: PolyRing,
                       max_degree: int) -> Poly:
    """[rho(phi)] with all parts of degree > max_degree dropped."""
    full_images = list(images) + [c.conj() for c in images]
    orders = [img.vanishing_order() for img in full_images]
    cache: Dict[Tuple[int, int], Poly] = {}

    def power(slot: int, e: int) -> Poly:
        got = cache.get((slot, e))
        if got is None:
            if e == 1:
                got = full_images[slot]
            else:
                got = power(slot, e - 1).mul_truncated(full_images[slot], max_degree)
            cache[(slot, e)] = got
        return got

    total = target.zero()
    for key, c in rho.terms.items():
        low = 0
        for slot, e in enumerate(key):
            if e:
                o = orders[slot]
                if o is INFINITE:
                    low = INFINITE
                    break
                low += e * o
        if low > max_degree:
            continue
        factor = target.const(c)
        for slot, e in enumerate(key):
            if e:
                factor = factor.mul_truncated(power(slot, e), max_degree)
                if factor.is_zero():
                    break
        total = total + factor
    return total


def _monomials(ring: PolyRing, degree: int) -> List[Tuple[int, ...]]:
    """Holomorphic exponent vectors of the given total degree, deterministic order."""
    nv = ring.nv
    out = []
    for combo in itertools.combinations_with_replacement(range(nv), degree):
        key = [0] * (2 * nv)
        for i in combo:
            key[i] += 1
        out.append(tuple(key))
    return sorted(out)


def contact_search(
    m: Hypersurface,
    s: int,
    degree_cap: int,
    coeff_set: Sequence[GaussianRational],
) -> TypeReport:
    """Max contact order over immersions with small polynomial components.

    One component per parameter is pinned to t_j + higher-order terms (over
    every choice of the pinned coordinate subset), removing linear
    reparametrizations; the remaining coefficients range over coeff_set up
    to degree degree_cap.  The search walks coefficient levels degree by
    degree: once the composed defining function is nonzero at some degree,
    that degree is the exact contact order of every completion, so whole
    subtrees collapse to a single report.
    """
    if not 1 <= s <= m.n - 1:
        raise PolyError(f"submanifold dimension {s} out of range for n = {m.n}")
    if not coeff_set:
        raise PolyError("empty coefficient set")
    n_comp = m.ring.nv
    param = parameter_ring(s)
    mons = {d: _monomials(param, d) for d in range(1, degree_cap + 1)}
    rho = m.rho
    max_finite_order = rho.degree() * degree_cap

    best: List[object] = [0, None]  # order, witness components

    def record(order, comps):
        if order is INFINITE:
            if best[0] is not INFINITE:
                best[0] = INFINITE
                best[1] = tuple(comps)
            return
        if best[0] is INFINITE:
            return
        if order > best[0]:
            best[0] = order
            best[1] = tuple(comps)

    def visit(level: int, comps: List[Poly], pinned: Sequence[int]):
        trunc = _compose_truncated(rho, comps, param, level)
        order = trunc.vanishing_order()
        if order <= level:
            record(order, comps)
            return
        if level == degree_cap:
            mapping = {i: comps[i] for i in range(n_comp)}
            full = rho.substitute(mapping)
            record(full.vanishing_order(), comps)
            return
        nxt = level + 1
        slots = [(ci, key) for ci in range(n_comp) for key in mons[nxt]]
        for assignment in itertools.product(coeff_set, repeat=len(slots)):
            extended = list(comps)
            for (ci, key), c in zip(slots, assignment):
                if not c.is_zero():
                    extended[ci] = extended[ci] + param.monomial(key, c)
            visit(nxt, extended, pinned)

    for pinned in itertools.combinations(range(n_comp), s):
        base = [param.zero()] * n_comp
        for j, ci in enumerate(pinned):
            base[ci] = param.var(j)
        free = [ci for ci in range(n_comp) if ci not in pinned]
        slots = [(ci, key) for ci in free for key in mons[1]]
        for assignment in itertools.product(coeff_set, repeat=len(slots)):
            comps = list(base)
            for (ci, key), c in zip(slots, assignment):
                if not c.is_zero():
                    comps[ci] = comps[ci] + param.monomial(key, c)
            visit(1, comps, pinned)

    if best[0] is INFINITE:
        witness = "(" + ",".join(str(c) for c in best[1]) + ")"
        return TypeReport("contact", None, max_finite_order, witness)
    witness = "(" + ",".join(str(c) for c in best[1]) + ")" if best[1] else ""
    if best[1] is not None:
        # the reported value must be reproduced by its witness
        if order_of_contact(m, HoloImmersion(list(best[1]))) != best[0]:
            raise PolyError("contact witness failed re-evaluation")
    return TypeReport("contact", int(best[0]), max_finite_order, witness)


# ---------------------------------------------------------------------------
# commutator and Levi-trace types

def _generators(frame: Frame) -> List[Tuple[str, VectorField]]:
    gens = []
    for j, s in enumerate(frame.fields(), start=1):
        gens.append((f"S{j}", s))
        gens.append((f"S{j}b", s.conj_field()))
    return gens


def _check_jet(frame: Frame, cap: int) -> object:
    jet = min(f.jet_order for f in frame.fields())
    if jet is INFINITE:
        return INFINITE
    maxdeg = max(
        (a.degree() for row in frame.matrix for a in row if not a.is_zero()),
        default=0,
    )
    if jet < cap + maxdeg:
        raise JetOrderError(
            f"jet order {jet} insufficient for cap {cap} with coefficient degree {maxdeg}"
        )
    return jet


def commutator_type(m: Hypersurface, frame: Frame, cap: int) -> TypeReport:
    """Least nested-commutator length whose pairing with d rho is nonzero at 0.

    Enumerates right-nested words over the frame generators and their
    conjugates; length-1 words pair to zero by tangency.  Returns the first
    nonzero length with its word, or ">cap".
    """
    jet = _check_jet(frame, cap)
    gens = _generators(frame)
    level: List[Tuple[str, VectorField]] = list(gens)
    for length in range(2, cap + 1):
        nxt = []
        for gname, g in gens:
            for wname, wfield in level:
                bracket = lie_bracket(g, wfield)
                name = f"[{gname},{wname}]"
                nxt.append((name, bracket))
                if not pair_with_drho(bracket, m).constant_term().is_zero():
                    return TypeReport("vector_field", length, cap, name, jet)
        level = nxt
    return TypeReport("vector_field", None, cap, "", jet)


def evaluate_bracket_word(m: Hypersurface, frame: Frame, word: str) -> GaussianRational:
    """Re-evaluate a serialized bracket word: its pairing with d rho at 0.

    Words use the witness syntax, e.g. "[S1b,[S1,S1b]]"; bare generator
    names denote the frame fields and their conjugates.
    """
    gens = dict(_generators(frame))

    def parse(text: str) -> VectorField:
        text = text.strip()
        if not text.startswith("["):
            try:
                return gens[text]
            except KeyError:
                raise PolyError(f"unknown generator {text!r}") from None
        if not text.endswith("]"):
            raise PolyError(f"unbalanced bracket word {text!r}")
        inner = text[1:-1]
        depth = 0
        for i, ch in enumerate(inner):
            if ch == "[":
                depth += 1
            elif ch == "]":
                depth -= 1
            elif ch == "," and depth == 0:
                return lie_bracket(parse(inner[:i]), parse(inner[i + 1:]))
        raise PolyError(f"malformed bracket word {text!r}")

    return pair_with_drho(parse(word), m).constant_term()


def levi_trace(m: Hypersurface, frame: Frame) -> Poly:
    """Sum over the frame of <[S_j, conj S_j], d rho>, a real polynomial."""
    total = m.ring.zero()
    for s in frame.fields():
        total = total + pair_with_drho(lie_bracket(s, s.conj_field()), m)
    if min(f.jet_order for f in frame.fields()) is INFINITE and not total.is_real():
        raise NormalizeError("Levi trace of an exact frame must be real")
    return total


def levi_type(m: Hypersurface, frame: Frame, cap: int) -> TypeReport:
    """Least l such that some (l-2)-fold derivative of the Levi trace is nonzero at 0."""
    jet = _check_jet(frame, cap)
    gens = _generators(frame)
    trace = levi_trace(m, frame)
    level: List[Tuple[str, Poly]] = [("tr", trace)]
    for length in range(2, cap + 1):
        for name, p in level:
            if not p.constant_term().is_zero():
                return TypeReport("levi", length, cap, name, jet)
        level = [
            (f"{gname}({wname})", g.apply(p))
            for gname, g in gens
            for wname, p in level
        ]
    return TypeReport("levi", None, cap, "", jet)


# ---------------------------------------------------------------------------
# weights and truncation

def assign_weights(m: Hypersurface, frame: Frame, a_contact: int) -> WeightSystem:
    """Weights (1, ..., 1, k = l0 + 1, m_weight) for a normalized frame.

    Checks the two structural inequalities k < m_weight and
    m_weight <= a_contact; violations are reported, never patched.
    """
    l0 = l0_of(frame, a_contact)
    k, mw, weights = model_weights(m, l0)
    if k >= mw:
        raise WeightAssignmentError(
            f"weight of z_(n-1) is k = {k} but the model has weighted order {mw}; "
            "k < m must hold"
        )
    if mw > a_contact:
        raise WeightAssignmentError(
            f"weighted order {mw} exceeds the contact order bound {a_contact}"
        )
    return weights


def truncated_model(m: Hypersurface, weights: WeightSystem) -> Hypersurface:
    """Keep -2 Re w plus the weighted-homogeneous part of lowest weight."""
    ring = m.ring
    mw = weights.weights[-1]
    chi_m = m.chi_rigid().weighted_part(mw, weights)
    w, wb = ring.var("w"), ring.conj_var("w")
    return Hypersurface(m.n, -(w + wb) + chi_m)


def truncate_frame(frame: Frame, weights: WeightSystem) -> Frame:
    """The weighted-degree -1 part of each frame field, over the truncated model.

    The matrix keeps the identity block and replaces the last column by its
    weighted-homogeneous part of degree k - 1; building the fields over the
    truncated model reproduces the truncated d/dw coefficients exactly.
    """
    m0 = truncated_model(frame.m, weights)
    ring = m0.ring
    k = weights.weights[-2]
    rows = []
    for j, row in enumerate(frame.matrix):
        new_row = []
        for h in range(ring.nv - 1):
            if h < ring.nv - 2:
                new_row.append(ring.one() if h == j else ring.zero())
            else:
                new_row.append(row[h].weighted_part(k - 1, weights))
        rows.append(new_row)
    return Frame(m0, rows)


# ---------------------------------------------------------------------------
# vanishing checks on truncated data

@dataclass
class VanishingReport:
    passed: bool
    cap: int
    failing_word: str = ""
    failing_value: str = ""

    def to_json_dict(self) -> dict:
        out = {"passed": self.passed, "cap": self.cap}
        if not self.passed:
            out["failing_word"] = self.failing_word
            out["failing_value"] = self.failing_value
        return out


def bracket_pairing_vanishing(m0: Hypersurface, frame0: Frame, cap: int) -> VanishingReport:
    """Check <word, d rho>(0) = 0 for every nested bracket word of length <= cap."""
    gens = _generators(frame0)
    level = list(gens)
    for name, f in level:
        val = pair_with_drho(f, m0).constant_term()
        if not val.is_zero():
            return VanishingReport(False, cap, name, str(val))
    for length in range(2, cap + 1):
        nxt = []
        for gname, g in gens:
            for wname, wfield in level:
                bracket = lie_bracket(g, wfield)
                name = f"[{gname},{wname}]"
                nxt.append((name, bracket))
                val = pair_with_drho(bracket, m0).constant_term()
                if not val.is_zero():
                    return VanishingReport(False, cap, name, str(val))
        level = nxt
    return VanishingReport(True, cap)


def levi_trace_vanishing(m0: Hypersurface, frame0: Frame, cap: int) -> VanishingReport:
    """Check every (l-2)-fold trace derivative vanishes at 0 for l <= cap."""
    gens = _generators(frame0)
    trace = levi_trace(m0, frame0)
    level: List[Tuple[str, Poly]] = [("tr", trace)]
    for length in range(2, cap + 1):
        for name, p in level:
            val = p.constant_term()
            if not val.is_zero():
                return VanishingReport(False, cap, name, str(val))
        level = [
            (f"{gname}({wname})", g.apply(p))
            for gname, g in gens
            for wname, p in level
        ]
    return VanishingReport(True, cap)


def bracket_span_dim(frame0: Frame, cap: int) -> int:
    """Real dimension at 0 of the span of Re/Im of bracket words of length <= cap."""
    ring = frame0.m.ring
    nv = ring.nv
    gens = _generators(frame0)
    vectors: List[List[GaussianRational]] = []

    def add_field(f: VectorField):
        v = f.eval_at_zero()
        conj_v = f.conj_field().eval_at_zero()
        re = [(a + b) * gr(Fraction(1, 2)) for a, b in zip(v, conj_v)]
        im = [(a - b) / gr(0, 2) for a, b in zip(v, conj_v)]
        for real_field in (re, im):
            # a real field is determined by its unbarred half u: encode as
            # (Re u_0, Im u_0, ..., Re u_{nv-1}, Im u_{nv-1})
            row: List[GaussianRational] = []
            for i in range(nv):
                row.append(gr(real_field[i].re))
                row.append(gr(real_field[i].im))
            vectors.append(row)

    level = list(gens)
    for _, f in level:
        add_field(f)
    for length in range(2, cap + 1):
        nxt = []
        for gname, g in gens:
            for wname, wfield in level:
                bracket = lie_bracket(g, wfield)
                nxt.append((f"[{gname},{wname}]", bracket))
                add_field(bracket)
        level = nxt
    return rank(vectors)


# ---------------------------------------------------------------------------
# bundle sweep

@dataclass
class SweepReport:
    vector_field: TypeReport
    levi: TypeReport
    frames_tried: int

    def to_json_dict(self) -> dict:
        return {
            "frames_tried": self.frames_tried,
            "vector_field": self.vector_field.to_json_dict(),
            "levi": self.levi.to_json_dict(),
        }


def _sweep_frames(m: Hypersurface, degree_cap: int,
                  coeff_set: Sequence[GaussianRational]) -> Iterable[Tuple[Frame, str]]:
    """Identity-block frames with free last column over the z variables.

    Row operations by unit function matrices do not change the spanned
    subbundle, so sweeping the reduced family loses no bundles relative to
    enumerating full matrices with the same degree and coefficient budget.
    """
    ring = m.ring
    nz = ring.nv - 1
    mons: List[Tuple[int, ...]] = []
    for d in range(1, degree_cap + 1):
        for combo in itertools.combinations_with_replacement(range(2 * ring.nv), d):
            if any(c in (nz, 2 * ring.nv - 1) for c in combo):
                continue  # no w or conj(w) in sweep coefficients
            key = [0] * (2 * ring.nv)
            for i in combo:
                key[i] += 1
            mons.append(tuple(key))
    mons = sorted(set(mons), key=lambda k: (sum(k), k))
    s = m.n - 2
    per_entry = list(itertools.product(coeff_set, repeat=len(mons)))
    for columns in itertools.product(per_entry, repeat=s):
        rows = []
        desc = []
        for j in range(s):
            row = [ring.one() if h == j else ring.zero() for h in range(ring.nv - 1)]
            last = ring.zero()
            for key, c in zip(mons, columns[j]):
                if not c.is_zero():
                    last = last + ring.monomial(key, c)
            row[-1] = last
            rows.append(row)
            desc.append(str(last))
        yield Frame(m, rows), "[" + "; ".join(desc) + "]"


def type_sweep(
    m: Hypersurface,
    s: int,
    frame_degree_cap: int,
    coeff_set: Sequence[GaussianRational],
    cap: int,
) -> SweepReport:
    """Max commutator and Levi types over the enumerated frame family.

    A frame reporting ">cap" dominates every finite value; the certified
    lower bounds for the two suprema are the maxima found, with witnesses.
    """
    if s != m.n - 2:
        raise PolyError("the sweep enumerates (n-2)-dimensional subbundles")
    best_t = TypeReport("vector_field", 0, cap)
    best_c = TypeReport("levi", 0, cap)
    count = 0
    for frame, desc in _sweep_frames(m, frame_degree_cap, coeff_set):
        count += 1
        t = commutator_type(m, frame, cap)
        c = levi_type(m, frame, cap)
        if _report_beats(t, best_t):
            best_t = TypeReport("vector_field", t.value, cap, f"{desc} via {t.witness}")
        if _report_beats(c, best_c):
            best_c = TypeReport("levi", c.value, cap, f"{desc} via {c.witness}")
    return SweepReport(best_t, best_c, count)


def _report_beats(new: TypeReport, old: TypeReport) -> bool:
    if new.value is None:
        return old.value is not None
    if old.value is None:
        return False
    return new.value > old.value
