"""Bigraded chain model for unordered configuration spaces of even-dimensional
orientable manifolds.

From a ring presentation A (full cohomology if closed, compactly supported
cohomology if open, ambient dimension d even) two graded spaces are built:

    V: one generator per basis class of A, in degree d - p   (length 1, weight 0)
    W: one generator per basis class of A, in degree 2d-1 - p (length 2, weight 1)

where p is the degree of the source class.  The piece of weight w at k points
is Sym^{k-2w}(V) (x) Sym^w(W); Sym is polynomial on even generators and
exterior on odd ones.  Two differentials act on the monomial basis:

  * homological, bidegree (-1, +1): contracts a pair of V factors into the
    W expansion of the product of their source classes;
  * cohomological, bidegree (+1, -1), closed algebras only: replaces a W
    factor by the transposed-comultiplication expansion in Sym^2(V),
    extended as a graded derivation.

Sign convention (fixed here and relied on by the tests): monomials are kept
in a canonical sorted generator order, every extraction/insertion of factors
contributes the Koszul sign of the transpositions of odd factors it crosses,
and the pair contraction itself is sign-free,

    v_a . v_b  |->  w(a cup b)        (factors in canonical order).

The degree-shift sign usually attached to the contraction lives in the
desuspended bracket, not here; this choice is the one dual to the plain
transposed comultiplication (so D(w) = 2 v v_d on codimension-one duals) and
it is pinned down by the nilpotency, bidegree and duality test suites.

For closed algebras the monomials divisible by v_d^2 or by w_{2d-1} span an
acyclic subcomplex for k >= 2; dropping them (the "reduced" basis) leaves the
cohomology unchanged and shrinks every slice.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .algebra import CohomologyAlgebra, comultiplication
from .linalg import RationalMatrix


class BasisLimitError(RuntimeError):
    """Raised when a basis enumeration exceeds the configured safety cap."""


class AssemblyError(RuntimeError):
    """A differential produced a monomial missing from the expected slice."""


class ReductionNotice(UserWarning):
    """Reduction requested where it is the identity (open algebras)."""


@dataclass(frozen=True)
class Generator:
    kind: str  # "v" | "w"
    degree: int
    source: int  # basis index in the algebra
    name: str

    @property
    def parity(self) -> int:
        return self.degree % 2


@dataclass(frozen=True, order=True, slots=True)
class Monomial:
    """Exponent vectors over the canonical v/w generator lists."""

    v: tuple[int, ...]
    w: tuple[int, ...]


class ChainVector(dict):
    """Sparse rational combination of monomials; zero coefficients are
    removed eagerly."""

    def add(self, mono: Monomial, coeff: Fraction):
        total = self.get(mono, Fraction(0)) + coeff
        if total:
            self[mono] = total
        else:
            self.pop(mono, None)


def _names(prefix, degree_source_pairs):
    by_degree: dict[int, list[int]] = {}
    for deg, _src in degree_source_pairs:
        by_degree.setdefault(deg, []).append(_src)
    names = []
    for deg, src in degree_source_pairs:
        peers = by_degree[deg]
        if len(peers) == 1:
            names.append(f"{prefix}{deg}")
        else:
            names.append(f"{prefix}{deg}_{peers.index(src) + 1}")
    return names


class GeneratorSet:
    """Canonically ordered v/w generators derived from an algebra.

    Generators are sorted by (degree, source index); all sign bookkeeping is
    done relative to this order.  Each generator gets a global id: v's first,
    then w's, so flattened monomial words are ascending id sequences.
    """

    def __init__(self, a: CohomologyAlgebra):
        self.d = a.d
        self.closed = a.closed
        v_order = sorted(range(len(a.basis)), key=lambda i: (a.d - a.degree(i), i))
        w_order = sorted(range(len(a.basis)), key=lambda i: (2 * a.d - 1 - a.degree(i), i))
        v_pairs = [(a.d - a.degree(i), i) for i in v_order]
        w_pairs = [(2 * a.d - 1 - a.degree(i), i) for i in w_order]
        self.v_gens = tuple(
            Generator("v", deg, src, nm)
            for (deg, src), nm in zip(v_pairs, _names("v", v_pairs))
        )
        self.w_gens = tuple(
            Generator("w", deg, src, nm)
            for (deg, src), nm in zip(w_pairs, _names("w", w_pairs))
        )
        self.nv = len(self.v_gens)
        self.nw = len(self.w_gens)
        gens = self.v_gens + self.w_gens
        self.degrees = tuple(g.degree for g in gens)
        self.parities = tuple(g.parity for g in gens)
        self.sources = tuple(g.source for g in gens)
        self._v_gid_of_source = {g.source: i for i, g in enumerate(self.v_gens)}
        self._w_gid_of_source = {g.source: self.nv + i for i, g in enumerate(self.w_gens)}
        # distinguished generators of a closed algebra: v_d from the unit
        # (degree d) and the top-degree w from the unit (degree 2d-1)
        self.vd_index = None
        self.w_top_index = None
        if self.closed:
            for i, g in enumerate(self.v_gens):
                if g.degree == self.d and a.degree(g.source) == 0:
                    self.vd_index = i
            for i, g in enumerate(self.w_gens):
                if g.degree == 2 * self.d - 1:
                    self.w_top_index = i

    # -- monomial helpers ----------------------------------------------------

    def degree_of(self, m: Monomial) -> int:
        return sum(e * g.degree for e, g in zip(m.v, self.v_gens)) + sum(
            e * g.degree for e, g in zip(m.w, self.w_gens)
        )

    def weight_of(self, m: Monomial) -> int:
        return sum(m.w)

    def length_of(self, m: Monomial) -> int:
        return sum(m.v) + 2 * sum(m.w)

    def word_of(self, m: Monomial) -> list[int]:
        word = []
        for gid, e in enumerate(m.v):
            word.extend([gid] * e)
        for j, e in enumerate(m.w):
            word.extend([self.nv + j] * e)
        return word

    def monomial_of(self, sorted_word) -> Monomial:
        v = [0] * self.nv
        w = [0] * self.nw
        for gid in sorted_word:
            if gid < self.nv:
                v[gid] += 1
            else:
                w[gid - self.nv] += 1
        return Monomial(tuple(v), tuple(w))

    def format(self, m: Monomial) -> str:
        parts = []
        for gid, e in enumerate(m.v):
            if e:
                parts.append(self.v_gens[gid].name + (f"^{e}" if e > 1 else ""))
        for j, e in enumerate(m.w):
            if e:
                parts.append(self.w_gens[j].name + (f"^{e}" if e > 1 else ""))
        return "*".join(parts) if parts else "1"

    def is_filtered(self, m: Monomial) -> bool:
        """True when the monomial lies in the acyclic subcomplex dropped by
        the reduction (divisible by v_d^2 or by the top w)."""
        if not self.closed:
            return False
        if self.vd_index is not None and m.v[self.vd_index] >= 2:
            return True
        if self.w_top_index is not None and m.w[self.w_top_index] >= 1:
            return True
        return False

    def normalize_word(self, word) -> tuple[int, tuple | None]:
        """Koszul sign for sorting `word` into canonical order; (0, None)
        when an odd generator repeats."""
        sign = 1
        arr = list(word)
        par = self.parities
        for i in range(1, len(arr)):
            j = i
            while j > 0 and arr[j - 1] > arr[j]:
                if par[arr[j - 1]] and par[arr[j]]:
                    sign = -sign
                arr[j - 1], arr[j] = arr[j], arr[j - 1]
                j -= 1
        for x, y in zip(arr, arr[1:]):
            if x == y and par[x]:
                return 0, None
        return sign, tuple(arr)


def build_generators(a: CohomologyAlgebra) -> GeneratorSet:
    """One v generator in degree d - p and one w generator in degree
    2d-1 - p per basis class of degree p."""
    return GeneratorSet(a)


def _sym_exponents(parities, total):
    """Exponent tuples over the given parity pattern summing to `total`;
    odd positions are capped at exponent 1.  Lexicographic order."""
    n = len(parities)

    def rec(pos, remaining):
        if pos == n:
            if remaining == 0:
                yield ()
            return
        cap = 1 if parities[pos] else remaining
        for e in range(0, min(cap, remaining) + 1):
            for tail in rec(pos + 1, remaining - e):
                yield (e,) + tail

    yield from rec(0, total)


class BigradedBasis:
    """Monomial bases of the weight-graded pieces at a fixed number of
    points, keyed by (total degree, weight)."""

    def __init__(self, gens: GeneratorSet, k: int, reduced: bool, slices):
        self.gens = gens
        self.k = k
        self.reduced = reduced
        self.slices: dict[tuple[int, int], list[Monomial]] = dict(sorted(slices.items()))
        self._index: dict[tuple[int, int], dict[Monomial, int]] = {}

    def index_of(self, key) -> dict[Monomial, int]:
        if key not in self._index:
            self._index[key] = {m: i for i, m in enumerate(self.slices.get(key, []))}
        return self._index[key]

    def total_monomials(self) -> int:
        return sum(len(v) for v in self.slices.values())

    def dims_by_degree(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (i, _w), monos in self.slices.items():
            out[i] = out.get(i, 0) + len(monos)
        return out


def enumerate_basis(
    gens: GeneratorSet, k: int, reduced: bool = False, max_monomials: int | None = None
) -> BigradedBasis:
    """All monomials of length k, sliced by (total degree, weight).

    Weight w ranges over 0..floor(k/2); a weight-w monomial has k-2w V
    factors and w W factors.  With `reduced` (closed algebras, k >= 2) the
    monomials divisible by v_d^2 or containing the top w are omitted.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if reduced:
        if not gens.closed:
            warnings.warn(
                "reduction is the identity on open algebras", ReductionNotice, stacklevel=2
            )
            reduced = False
        elif k < 2:
            raise ValueError("the reduced basis requires k >= 2")

    wdeg = tuple(g.degree for g in gens.w_gens)
    vdeg = tuple(g.degree for g in gens.v_gens)
    wpar = tuple(g.parity for g in gens.w_gens)
    vpar = tuple(g.parity for g in gens.v_gens)
    slices: dict[tuple[int, int], list[Monomial]] = {}
    count = 0
    for omega in range(0, k // 2 + 1):
        for wexp in _sym_exponents(wpar, omega):
            if reduced and gens.w_top_index is not None and wexp[gens.w_top_index]:
                continue
            wdegree = sum(e * dg for e, dg in zip(wexp, wdeg))
            for vexp in _sym_exponents(vpar, k - 2 * omega):
                if reduced and gens.vd_index is not None and vexp[gens.vd_index] >= 2:
                    continue
                count += 1
                if max_monomials is not None and count > max_monomials:
                    raise BasisLimitError(
                        f"basis at k={k} exceeds the cap of {max_monomials} monomials"
                    )
                degree = wdegree + sum(e * dg for e, dg in zip(vexp, vdeg))
                slices.setdefault((degree, omega), []).append(Monomial(vexp, wexp))
    for monos in slices.values():
        monos.sort()
    return BigradedBasis(gens, k, reduced, slices)


def reduce_complex(basis: BigradedBasis) -> BigradedBasis:
    """Drop the acyclic subcomplex spanned by multiples of v_d^2 and of the
    top w.  Identity (with a notice) on open algebras."""
    gens = basis.gens
    if not gens.closed:
        warnings.warn(
            "reduction is the identity on open algebras", ReductionNotice, stacklevel=2
        )
        return basis
    if basis.k < 2:
        raise ValueError("reduction requires k >= 2")
    slices = {}
    for key, monos in basis.slices.items():
        kept = [m for m in monos if not gens.is_filtered(m)]
        if kept:
            slices[key] = kept
    return BigradedBasis(gens, basis.k, True, slices)


# -- differentials -----------------------------------------------------------


def differential_open(a: CohomologyAlgebra, gens: GeneratorSet, m: Monomial) -> ChainVector:
    """Homological differential: sum over unordered pairs of V factors,
    contracting each pair to the W expansion of the product of the source
    classes, with the Koszul sign of extracting the two factors.  Bidegree
    (-1, +1); vanishes on single V generators and on all W generators."""
    out = ChainVector()
    word = gens.word_of(m)
    par = gens.parities
    pre = [0]
    for g in word:
        pre.append(pre[-1] + par[g])
    nv = gens.nv
    length = len(word)
    for i in range(length):
        gi = word[i]
        if gi >= nv:
            break
        for j in range(i + 1, length):
            gj = word[j]
            if gj >= nv:
                break
            expansion = a.product(gens.sources[gi], gens.sources[gj])
            if not expansion:
                continue
            crossings = par[gi] * pre[i] + par[gj] * (pre[j] - par[gi])
            ext_sign = -1 if crossings % 2 else 1
            rest = word[:i] + word[i + 1 : j] + word[j + 1 :]
            for cls, coeff in expansion.items():
                wg = gens._w_gid_of_source[cls]
                sign, sorted_word = gens.normalize_word([wg] + rest)
                if sign:
                    out.add(gens.monomial_of(sorted_word), ext_sign * sign * coeff)
    return out


def differential_closed(a: CohomologyAlgebra, gens: GeneratorSet, m: Monomial) -> ChainVector:
    """Cohomological differential (closed algebras): graded derivation that
    kills V and sends each W factor to its comultiplication expansion in
    Sym^2(V).  Bidegree (+1, -1)."""
    if not a.closed:
        raise ValueError("the cohomological differential needs a closed algebra")
    out = ChainVector()
    word = gens.word_of(m)
    par = gens.parities
    nv = gens.nv
    seen_parity = 0
    for t, g in enumerate(word):
        if g < nv:
            seen_parity += par[g]
            continue
        lead_sign = -1 if seen_parity % 2 else 1
        src = gens.sources[g]
        for (x, y), coeff in comultiplication(a, a.degree(src), src):
            vx = gens._v_gid_of_source[x]
            vy = gens._v_gid_of_source[y]
            sign, sorted_word = gens.normalize_word(word[:t] + [vx, vy] + word[t + 1 :])
            if sign:
                out.add(gens.monomial_of(sorted_word), lead_sign * sign * coeff)
        seen_parity += par[g]
    return out


def assemble_matrices(
    a: CohomologyAlgebra, basis: BigradedBasis, direction: str = "auto"
) -> dict[tuple[int, int], RationalMatrix]:
    """Matrix of the differential out of every slice, rows indexed by the
    target slice and columns by the source slice.

    direction: "auto" picks cohomological for closed algebras and
    homological for open ones; the homological differential may also be
    requested on a full closed basis (used by the duality checks)."""
    if direction == "auto":
        direction = "cohomological" if a.closed else "homological"
    if direction == "cohomological":
        if not a.closed:
            raise ValueError("cohomological differential requires a closed algebra")
        diff, shift = differential_closed, (1, -1)
    elif direction == "homological":
        if basis.reduced:
            raise ValueError("the homological differential is not defined on the reduced basis")
        diff, shift = differential_open, (-1, 1)
    else:
        raise ValueError(f"unknown direction {direction!r}")

    gens = basis.gens
    mats = {}
    for (deg, omega), monos in basis.slices.items():
        tkey = (deg + shift[0], omega + shift[1])
        index = basis.index_of(tkey)
        entries = {}
        for col, m in enumerate(monos):
            for tm, coeff in diff(a, gens, m).items():
                row = index.get(tm)
                if row is None:
                    if basis.reduced and gens.is_filtered(tm):
                        continue
                    raise AssemblyError(
                        f"image monomial {gens.format(tm)} missing from slice {tkey}"
                    )
                entries[(row, col)] = coeff
        mats[(deg, omega)] = RationalMatrix(
            len(basis.slices.get(tkey, [])), len(monos), entries
        )
    return mats
