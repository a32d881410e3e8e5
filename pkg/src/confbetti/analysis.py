"""Betti tables, cohomological dimension and the closed-form bounds.

All Betti numbers are ranks over Q of the bigraded chain model, computed
with exact arithmetic.  The reported cohomological dimension is the top
degree carrying nonzero rational cohomology; it is always a lower bound for
the integral quantity and agrees with it exactly under the hypotheses of the
arithmetic-progression formulas (codimension-one rank n >= 1 for open
inputs, n >= 2 and k >= 3 for closed ones), where it is pinched against the
connectivity upper bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .algebra import CohomologyAlgebra, validate_algebra
from .complexes import assemble_matrices, build_generators, enumerate_basis
from .linalg import betti_from_ranks, rank


class InvalidAlgebraError(ValueError):
    """The input algebra failed validation; carries the offending report."""

    def __init__(self, report):
        self.report = report
        super().__init__("invalid algebra:\n" + str(report))


THEOREM_IDS = ("T1", "T2", "T3", "T4", "Kallel", "C51", "C52")


@dataclass
class BettiTable:
    """Betti numbers of one configuration space slice k.

    `betti` holds only the nonzero entries; `slice_dims` keeps the dimension
    of every (degree, weight) piece of the complex that produced the table,
    so the Euler characteristic identity can be checked against it.
    """

    k: int
    reduced: bool
    betti: dict[int, int]
    slice_dims: dict[tuple[int, int], int]
    coefficients: str = "rational"

    @property
    def chdim_rational(self) -> int:
        # -1 stands in for "no cohomology at all", unreachable for valid
        # presets since the degree-0 class always survives.
        return max(self.betti, default=-1)

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * b for i, b in self.betti.items())

    def complex_euler_characteristic(self) -> int:
        return sum((-1) ** i * d for (i, _w), d in self.slice_dims.items())


@dataclass
class TheoremVerdict:
    theorem: str
    k: int
    applicable: bool
    predicted: int | None
    computed: int | None
    status: str  # "confirmed" | "violated" | "not-applicable"
    detail: str = ""


def _require_valid(a: CohomologyAlgebra):
    report = validate_algebra(a)
    if not report.ok:
        raise InvalidAlgebraError(report)


def betti_table(
    a: CohomologyAlgebra,
    k: int,
    reduced: bool = False,
    direction: str = "auto",
    max_monomials: int | None = None,
    validated: bool = False,
) -> BettiTable:
    """Betti numbers of the chain model at k points.

    For closed algebras the cohomological differential is used (and the
    result is independent of `reduced`); for open ones the homological one.
    `direction="homological"` forces the homological differential on a
    closed algebra, which must give the same table (duality).
    """
    if not validated:
        _require_valid(a)
    if k < 0:
        raise ValueError("k must be nonnegative")
    if reduced and not (a.closed and k >= 2):
        raise ValueError("reduced tables need a closed algebra and k >= 2")
    gens = build_generators(a)
    basis = enumerate_basis(gens, k, reduced=reduced, max_monomials=max_monomials)
    mats = assemble_matrices(a, basis, direction=direction)
    ranks = {key: rank(mat) for key, mat in mats.items()}

    dims = basis.dims_by_degree()
    rank_out = {}
    for (deg, _w), r in ranks.items():
        rank_out[deg] = rank_out.get(deg, 0) + r
    if direction == "homological" or (direction == "auto" and not a.closed):
        rank_in = {deg: rank_out.get(deg + 1, 0) for deg in dims}
    else:
        rank_in = {deg: rank_out.get(deg - 1, 0) for deg in dims}
    betti = {}
    for deg in sorted(dims):
        b = betti_from_ranks(dims[deg], rank_out.get(deg, 0), rank_in.get(deg, 0))
        if b:
            betti[deg] = b
    slice_dims = {key: len(monos) for key, monos in basis.slices.items()}
    return BettiTable(k=k, reduced=basis.reduced, betti=betti, slice_dims=slice_dims)


def chdim(a: CohomologyAlgebra, k: int, max_monomials: int | None = None) -> int:
    """Top degree with nonzero rational cohomology at k points."""
    reduced = a.closed and k >= 2
    return betti_table(a, k, reduced=reduced, max_monomials=max_monomials).chdim_rational


def predicted_chdim(a: CohomologyAlgebra, k: int) -> int | None:
    """(d-1)k for open inputs with n >= 1 and k >= 1; (d-1)k + 1 for closed
    inputs with n >= 2 and k >= 3; None when the hypotheses fail."""
    n = a.codim_one_rank
    if not a.closed and n >= 1 and k >= 1:
        return (a.d - 1) * k
    if a.closed and n >= 2 and k >= 3:
        return (a.d - 1) * k + 1
    return None


def integral_chdim_certified(a: CohomologyAlgebra, k: int) -> bool:
    """True when the rational chdim provably equals the integral one."""
    return predicted_chdim(a, k) is not None


def lower_bound_rank(n: int, k: int, closed: bool) -> int:
    """Binomial lower bound for the rank of the top cohomology group.

    open   (n >= 1, k >= 2):  C(k/2+n-1, n-1)          k even
                              n*C((k-1)/2+n-1, n-1)    k odd
    closed (n >= 2, k >= 3):  n*C(k/2+n-2, n-1) - C(k/2+n-1, n-1)  k even
                              C((k-1)/2+n-1, n-1)                  k odd
    """
    if closed:
        if n < 2 or k < 3:
            raise ValueError("closed bound needs n >= 2 and k >= 3")
        if k % 2 == 0:
            return n * comb(k // 2 + n - 2, n - 1) - comb(k // 2 + n - 1, n - 1)
        return comb((k - 1) // 2 + n - 1, n - 1)
    if n < 1 or k < 2:
        raise ValueError("open bound needs n >= 1 and k >= 2")
    if k % 2 == 0:
        return comb(k // 2 + n - 1, n - 1)
    return n * comb((k - 1) // 2 + n - 1, n - 1)


def kallel_upper_bound(d: int, k: int, r: int, boundary_or_u_nonempty: bool) -> int:
    """Connectivity upper bound for the cohomological dimension:
    (d-1)k - r + 1 in the closed case, (d-1)k - r otherwise."""
    if k < 2:
        raise ValueError("the upper bound needs k >= 2")
    if r < 0:
        raise ValueError("connectivity must be nonnegative")
    base = (d - 1) * k - r
    return base if boundary_or_u_nonempty else base + 1


def ordered_lower_bound(a: CohomologyAlgebra, k: int) -> int | None:
    """Lower bound for the cohomological dimension of the ordered
    configuration space, via the transfer isomorphism onto the symmetric
    invariants; same hypotheses as `predicted_chdim`."""
    return predicted_chdim(a, k)


def verify_theorems(
    a: CohomologyAlgebra, k_max: int, max_monomials: int | None = None
) -> list[TheoremVerdict]:
    """Cross-check every closed-form statement against the computed tables
    for k = 1..k_max.  Emits one verdict per (k, theorem id), including the
    not-applicable ones, so nothing is silently skipped."""
    _require_valid(a)
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    n = a.codim_one_rank
    d = a.d
    verdicts = []
    for k in range(1, k_max + 1):
        table = betti_table(
            a, k, reduced=a.closed and k >= 2, max_monomials=max_monomials, validated=True
        )
        ch = table.chdim_rational
        for tid in THEOREM_IDS:
            verdicts.append(_verdict(tid, a, k, n, d, table, ch))
    return verdicts


def _verdict(tid, a, k, n, d, table, ch) -> TheoremVerdict:
    def out(applicable, predicted=None, computed=None, holds=False, detail=""):
        if not applicable:
            return TheoremVerdict(tid, k, False, predicted, computed, "not-applicable", detail)
        status = "confirmed" if holds else "violated"
        return TheoremVerdict(tid, k, True, predicted, computed, status, detail)

    if tid == "T1":
        if a.closed or n < 1 or k < 1:
            return out(False)
        pred = (d - 1) * k
        return out(True, pred, ch, ch == pred, "chdim == (d-1)k")
    if tid == "T2":
        if not a.closed or n < 2 or k < 3:
            return out(False)
        pred = (d - 1) * k + 1
        return out(True, pred, ch, ch == pred, "chdim == (d-1)k+1")
    if tid == "T3":
        if a.closed or n < 1 or k < 2:
            return out(False)
        bound = lower_bound_rank(n, k, closed=False)
        top = table.betti.get((d - 1) * k, 0)
        return out(True, bound, top, top >= bound, "top Betti >= binomial bound")
    if tid == "T4":
        if not a.closed or n < 2 or k < 3:
            return out(False)
        bound = lower_bound_rank(n, k, closed=True)
        top = table.betti.get((d - 1) * k + 1, 0)
        return out(True, bound, top, top >= bound, "top Betti >= binomial bound")
    if tid == "Kallel":
        if a.connectivity is None or k < 2:
            return out(False)
        bound = kallel_upper_bound(d, k, a.connectivity, boundary_or_u_nonempty=not a.closed)
        return out(True, bound, ch, ch <= bound, "chdim <= connectivity bound")
    if tid == "C51":
        if a.closed or n < 1 or k < 1:
            return out(False)
        bound = (d - 1) * k
        return out(True, bound, ch, ch >= bound, "ordered-space bound certified via transfer")
    if tid == "C52":
        if not a.closed or n < 2 or k < 3:
            return out(False)
        bound = (d - 1) * k + 1
        return out(True, bound, ch, ch >= bound, "ordered-space bound certified via transfer")
    raise ValueError(f"unknown theorem id {tid}")
