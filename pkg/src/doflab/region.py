"""DoF regions as quality-parameterized polytopes.

Two encodings, both exact:

* halfspace-defined -- an explicit inequality list with polynomial
  coefficients in the quality exponent ``a`` (the 3-user, 2-antenna
  region ships 10 printed inequalities plus nonnegativity);
* hull-defined -- a named vertex list, membership decided by an exact
  rational feasibility LP (the 3-user, 3-antenna region is published as
  vertices only, so no facet list is invented for it).

The published 3-user/3-antenna vertex table contains an evident
transcription slip (two C vertices printed with identical coordinates).
Both readings are available: the default "symmetry_corrected" set
completes the symmetric pattern; "verbatim" keeps the printed
coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .alphapoly import PolyAlpha, as_fraction, format_fraction
from .dofcalc import SchemeSpec, dof_at


class DimensionMismatch(Exception):
    """A membership query used the wrong number of coordinates."""


_GRID_11 = tuple(Fraction(k, 10) for k in range(11))


@dataclass(frozen=True)
class HalfSpace:
    """Inequality a(alpha) . d <= b(alpha)."""

    a: Tuple[PolyAlpha, ...]
    b: PolyAlpha

    def holds(self, point: Sequence[Fraction], alpha: Fraction) -> bool:
        lhs = sum((c.at(alpha) * x for c, x in zip(self.a, point)), Fraction(0))
        return lhs <= self.b.at(alpha)

    def slack(self, point: Sequence[Fraction], alpha: Fraction) -> Fraction:
        lhs = sum((c.at(alpha) * x for c, x in zip(self.a, point)), Fraction(0))
        return self.b.at(alpha) - lhs

    def to_doc(self) -> dict:
        return {"a": [c.to_doc() for c in self.a], "b": self.b.to_doc()}


@dataclass(frozen=True)
class DofRegion:
    K: int
    mode: str  # "halfspace_defined" | "hull_defined"
    halfspaces: Tuple[HalfSpace, ...]
    named_vertices: Dict[str, Tuple[PolyAlpha, ...]]
    name: str = ""

    def __post_init__(self):
        for hs in self.halfspaces:
            if len(hs.a) != self.K:
                raise ValueError("halfspace dimension mismatch")
        for label, v in self.named_vertices.items():
            if len(v) != self.K:
                raise ValueError(f"vertex {label} has wrong dimension")
        if self.mode == "halfspace_defined":
            for label, v in self.named_vertices.items():
                for a in _GRID_11:
                    point = [c.at(a) for c in v]
                    bad = [hs for hs in self.halfspaces if not hs.holds(point, a)]
                    if bad:
                        raise ValueError(
                            f"vertex {label} violates a halfspace at a={a}"
                        )

    def vertex_at(self, label: str, alpha) -> List[Fraction]:
        a = as_fraction(alpha)
        return [c.at(a) for c in self.named_vertices[label]]

    def to_doc(self) -> dict:
        return {
            "name": self.name,
            "K": self.K,
            "mode": self.mode,
            "halfspaces": [hs.to_doc() for hs in self.halfspaces],
            "vertices": {
                label: [c.to_doc() for c in v]
                for label, v in sorted(self.named_vertices.items())
            },
        }


def contains(region: DofRegion, point: Sequence, quality) -> bool:
    """Exact membership of a rational point at a rational quality."""
    alpha = as_fraction(getattr(quality, "alpha", quality))
    pt = [as_fraction(x) for x in point]
    if len(pt) != region.K:
        raise DimensionMismatch(f"point has {len(pt)} coords, region needs {region.K}")
    if region.mode == "halfspace_defined":
        return all(hs.holds(pt, alpha) for hs in region.halfspaces)
    verts = [
        [c.at(alpha) for c in v] for v in region.named_vertices.values()
    ]
    return _in_convex_hull(pt, verts)


# ---------------------------------------------------------------------------
# Exact rational feasibility LP (phase-1 simplex, Bland's rule)
# ---------------------------------------------------------------------------


def _in_convex_hull(point: List[Fraction], vertices: List[List[Fraction]]) -> bool:
    """Is `point` a convex combination of `vertices`?  Exact arithmetic."""
    m = len(point) + 1
    columns = [v + [Fraction(1)] for v in vertices]
    rhs = list(point) + [Fraction(1)]
    return _lp_feasible(columns, rhs)


def _lp_feasible(columns: List[List[Fraction]], rhs: List[Fraction]) -> bool:
    """Does {x >= 0 : A x = rhs} have a solution?  A's columns are given.

    Phase-1 simplex over Fractions: minimize the sum of artificial
    variables with Bland's anti-cycling rule; feasible iff the optimum
    is exactly zero.
    """
    m = len(rhs)
    n = len(columns)
    rows = [[columns[j][i] for j in range(n)] for i in range(m)]
    b = list(rhs)
    for i in range(m):
        if b[i] < 0:
            b[i] = -b[i]
            rows[i] = [-x for x in rows[i]]

    zero, one = Fraction(0), Fraction(1)
    tableau = [
        rows[i] + [one if k == i else zero for k in range(m)] + [b[i]]
        for i in range(m)
    ]
    basis = list(range(n, n + m))
    cost = [zero] * n + [one] * m
    total = n + m

    while True:
        entering = -1
        for j in range(total):
            reduced = cost[j] - sum(cost[basis[i]] * tableau[i][j] for i in range(m))
            if reduced < 0:
                entering = j
                break
        if entering < 0:
            break
        leaving = -1
        best: Optional[Fraction] = None
        for i in range(m):
            coef = tableau[i][entering]
            if coef > 0:
                ratio = tableau[i][-1] / coef
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leaving]
                ):
                    best = ratio
                    leaving = i
        if leaving < 0:
            raise ArithmeticError("phase-1 objective cannot be unbounded")
        pivot = tableau[leaving][entering]
        tableau[leaving] = [x / pivot for x in tableau[leaving]]
        for i in range(m):
            if i != leaving and tableau[i][entering] != 0:
                f = tableau[i][entering]
                tableau[i] = [
                    x - f * y for x, y in zip(tableau[i], tableau[leaving])
                ]
        basis[leaving] = entering

    optimum = sum(cost[basis[i]] * tableau[i][-1] for i in range(m))
    return optimum == 0


# ---------------------------------------------------------------------------
# The two shipped regions
# ---------------------------------------------------------------------------


def _p(c0, c1=0, c2=0) -> PolyAlpha:
    return PolyAlpha((Fraction(c0), Fraction(c1), Fraction(c2)))


def region_theorem3() -> DofRegion:
    """3 users, 2 antennas: halfspace-defined region.

    Ten printed inequalities (per-user caps, three weight-2 cuts, three
    quality-weighted cuts, a sum cap) plus implicit nonnegativity.
    """
    K = 3
    hs: List[HalfSpace] = []
    zero, one = _p(0), _p(1)

    for i in range(K):  # d_i >= 0
        a = [zero] * K
        a[i] = _p(-1)
        hs.append(HalfSpace(tuple(a), zero))
    for i in range(K):  # d_i <= 1
        a = [zero] * K
        a[i] = one
        hs.append(HalfSpace(tuple(a), one))
    for i in range(K):  # 2 d_i + d_j + d_k <= 2 + a
        a = [one] * K
        a[i] = _p(2)
        hs.append(HalfSpace(tuple(a), _p(2, 1)))
    for i in range(K):  # 2 d_i + 3(1+a) others <= (2+a)(3+a)
        a = [_p(3, 3)] * K
        a[i] = _p(2)
        hs.append(HalfSpace(tuple(a), _p(6, 5, 1)))
    hs.append(HalfSpace((one, one, one), _p(2)))  # sum cap

    third = _p(Fraction(2, 3), Fraction(1, 3))  # (2+a)/3
    sixth = _p(Fraction(1, 2), Fraction(1, 6))  # (3+a)/6
    vertices = {
        "C1_prime": (third, third, zero),
        "C2_prime": (zero, third, third),
        "C3_prime": (third, zero, third),
        "M_prime": (sixth, sixth, sixth),
    }
    return DofRegion(
        K=K,
        mode="halfspace_defined",
        halfspaces=tuple(hs),
        named_vertices=vertices,
        name="theorem3",
    )


def region_theorem1(vertex_set: str = "symmetry_corrected") -> DofRegion:
    """3 users, 3 antennas: hull-defined region over the named vertices.

    Only the vertex table is published for this region, so membership is
    decided against the convex hull rather than an invented facet list.
    """
    if vertex_set not in ("symmetry_corrected", "verbatim"):
        raise ValueError("vertex_set must be 'symmetry_corrected' or 'verbatim'")
    zero, one = _p(0), _p(1)
    al = _p(0, 1)
    m = _p(Fraction(6, 11), Fraction(5, 11))
    third = _p(Fraction(2, 3), Fraction(1, 3))

    vertices: Dict[str, Tuple[PolyAlpha, ...]] = {
        "O": (zero, zero, zero),
        "E1": (one, zero, zero),
        "E2": (zero, one, zero),
        "E3": (zero, zero, one),
        "M": (m, m, m),
        "D1": (al, al, one),
        "D2": (al, one, al),
        "D3": (one, al, al),
        "C2": (zero, third, third),
        "C3": (third, zero, third),
    }
    if vertex_set == "symmetry_corrected":
        vertices["C1"] = (third, third, zero)
    else:
        vertices["C1"] = (third, zero, third)  # printed duplicate of C3
    return DofRegion(
        K=3,
        mode="hull_defined",
        halfspaces=(),
        named_vertices=vertices,
        name=f"theorem1[{vertex_set}]",
    )


# ---------------------------------------------------------------------------
# Scheme-vs-region cross checking and exports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CrossCheckRow:
    alpha: Fraction
    point: Tuple[Fraction, ...]
    inside: bool
    matching_vertices: Tuple[str, ...]


@dataclass(frozen=True)
class CrossCheckReport:
    scheme: str
    region: str
    rows: Tuple[CrossCheckRow, ...]

    @property
    def all_inside(self) -> bool:
        return all(r.inside for r in self.rows)

    def matched_everywhere(self) -> Optional[str]:
        """The vertex the scheme hits at every grid point, if any.

        Vertices may coincide at isolated qualities (several merge at
        a = 1), so intersect the per-point label sets.
        """
        common = set(self.rows[0].matching_vertices) if self.rows else set()
        for r in self.rows[1:]:
            common &= set(r.matching_vertices)
        return min(common) if common else None

    def __str__(self) -> str:
        ok = "inside" if self.all_inside else "OUTSIDE"
        vertex = self.matched_everywhere()
        tail = f", matches vertex {vertex}" if vertex else ""
        return f"{self.scheme} vs {self.region}: {ok}{tail}"


def achievability_cross_check(
    scheme: SchemeSpec,
    region: DofRegion,
    alpha_grid: Iterable = _GRID_11,
) -> CrossCheckReport:
    """Evaluate the scheme's exact DoF on a quality grid against a region."""
    if scheme.K != region.K:
        raise DimensionMismatch("scheme and region disagree on the user count")
    rows = []
    for alpha in alpha_grid:
        a = as_fraction(alpha)
        point = tuple(dof_at(scheme, a))
        inside = contains(region, point, a)
        matches = tuple(
            label
            for label, v in sorted(region.named_vertices.items())
            if tuple(c.at(a) for c in v) == point
        )
        rows.append(
            CrossCheckRow(alpha=a, point=point, inside=inside, matching_vertices=matches)
        )
    return CrossCheckReport(scheme=scheme.name, region=region.name, rows=tuple(rows))


def vertex_table(region: DofRegion, alphas: Iterable) -> List[dict]:
    """Vertex coordinates evaluated on a quality grid (plot-ready)."""
    out = []
    for alpha in alphas:
        a = as_fraction(alpha)
        for label in sorted(region.named_vertices):
            out.append(
                {
                    "vertex": label,
                    "alpha": format_fraction(a),
                    "coords": [format_fraction(x) for x in region.vertex_at(label, a)],
                }
            )
    return out
