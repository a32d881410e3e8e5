"""Shared test machinery: randomized valid algebras and small utilities.

Random algebras must be associative and graded-commutative by construction,
so they are produced only through operations that preserve those laws:

  * open algebras: monomial-ideal quotients of truncated free
    graded-commutative algebras (optionally restricted to the non-unital
    positive-degree part), then randomly rescaled;
  * closed algebras: shipped closed presets and their tensor products, with
    basis permutations and diagonal rescalings (unit kept at 1).
"""

from __future__ import annotations

import random
from fractions import Fraction

from confbetti import (
    BasisClass,
    CohomologyAlgebra,
    get_preset,
    tensor_product,
    validate_algebra,
)

PRESET_KEYS = [
    "r2",
    "torus",
    "genus:2",
    "genus:1-punctured",
    "genus:2-punctured",
    "sphere-even:2",
    "sphere-even:4",
    "sphere-even:2-punctured",
    "cp:2",
    "cp:3",
]

OPEN_KEYS = [k for k in PRESET_KEYS if not get_preset(k).closed]
CLOSED_KEYS = [k for k in PRESET_KEYS if get_preset(k).closed]

SCALES = [Fraction(x) for x in (1, -1, 2, -2, 3)] + [Fraction(1, 2), Fraction(-1, 3)]


def manifold_betti(key: str) -> dict[int, int]:
    """Rational Betti numbers of the underlying manifold of a preset."""
    return {
        "r2": {0: 1},
        "torus": {0: 1, 1: 2, 2: 1},
        "genus:2": {0: 1, 1: 4, 2: 1},
        "genus:1-punctured": {0: 1, 1: 2},
        "genus:2-punctured": {0: 1, 1: 4},
        "sphere-even:2": {0: 1, 2: 1},
        "sphere-even:4": {0: 1, 4: 1},
        "sphere-even:2-punctured": {0: 1},
        "cp:2": {0: 1, 2: 1, 4: 1},
        "cp:3": {0: 1, 2: 1, 4: 1, 6: 1},
    }[key]


# -- mutations (used by the validation property tests) -----------------------


def clone_with(a, *, basis=None, products=None):
    return CohomologyAlgebra(
        name=a.name + "'",
        d=a.d,
        closed=a.closed,
        basis=basis if basis is not None else a.basis,
        products=products if products is not None else {
            key: dict(row) for key, row in a.product_items()
        },
        connectivity=a.connectivity,
    )


def sign_flip_mutations(a):
    """Flip one off-diagonal structure constant at a time; the graded
    commutativity partner makes each such flip invalid.  (Flipping a diagonal
    entry like x*x can produce a genuinely valid algebra, so those are not
    mutated.)"""
    for (i, j), row in a.product_items():
        if i == j:
            continue
        for k in row:
            products = {key: dict(r) for key, r in a.product_items()}
            products[(i, j)][k] = -products[(i, j)][k]
            yield f"flip {a.basis[i].name}*{a.basis[j].name}@{a.basis[k].name}", clone_with(
                a, products=products
            )


def degree_bump_mutations(a):
    """Push one basis class out of the degree range [0, d]."""
    for i, b in enumerate(a.basis):
        basis = list(a.basis)
        basis[i] = BasisClass(b.name, a.d + 1)
        yield f"degree {b.name} -> {a.d + 1}", clone_with(a, basis=basis)


# -- random open algebras -----------------------------------------------------


def _free_monomials(gen_degrees, d):
    """Exponent tuples of the free graded-commutative algebra truncated to
    total degree <= d (odd generators capped at exponent 1)."""
    out = []

    def rec(pos, acc, deg):
        if pos == len(gen_degrees):
            out.append(tuple(acc))
            return
        step = gen_degrees[pos]
        cap = 1 if step % 2 else (d - deg) // step
        for e in range(cap + 1):
            if deg + e * step <= d:
                rec(pos + 1, acc + [e], deg + e * step)

    rec(0, [], 0)
    return out


def _merge_sign(word1, word2, parities):
    """Koszul sign for merging two sorted generator words into one sorted
    word; 0 when an odd generator repeats."""
    sign = 1
    merged = sorted(word1 + word2)
    for x, y in zip(merged, merged[1:]):
        if x == y and parities[x]:
            return 0, merged
    # count odd-odd inversions between the two halves
    for i in word1:
        if not parities[i]:
            continue
        for j in word2:
            if parities[j] and j < i:
                sign = -sign
    return sign, merged


def random_open_algebra(rng: random.Random, max_dim=6) -> CohomologyAlgebra:
    d = rng.choice([2, 4])
    ngen = rng.randint(1, 3)
    gen_degrees = sorted(rng.randint(1, d) for _ in range(ngen))
    parities = [dg % 2 for dg in gen_degrees]
    monos = _free_monomials(gen_degrees, d)
    if rng.random() < 0.7:
        monos = [m for m in monos if any(m)]  # non-unital positive part

    def divides(m1, m2):
        return all(e1 <= e2 for e1, e2 in zip(m1, m2))

    kept = list(monos)
    while True:
        maximal = [
            m
            for m in kept
            if any(m) and not any(m2 != m and divides(m, m2) for m2 in kept)
        ]
        if len(kept) > max_dim and maximal:
            kept.remove(rng.choice(maximal))
        elif maximal and len(kept) > 1 and rng.random() < 0.25:
            kept.remove(rng.choice(maximal))
        else:
            break
    kept.sort(key=lambda m: (sum(e * dg for e, dg in zip(m, gen_degrees)), m))

    def word(m):
        w = []
        for gid, e in enumerate(m):
            w.extend([gid] * e)
        return w

    index = {m: i for i, m in enumerate(kept)}
    degrees = [sum(e * dg for e, dg in zip(m, gen_degrees)) for m in kept]
    basis = [BasisClass(f"m{i}", degrees[i]) for i in range(len(kept))]
    products = {}
    for i, m1 in enumerate(kept):
        for j, m2 in enumerate(kept):
            target = tuple(e1 + e2 for e1, e2 in zip(m1, m2))
            if sum(e * dg for e, dg in zip(target, gen_degrees)) > d:
                continue
            sign, _ = _merge_sign(word(m1), word(m2), parities)
            if sign and target in index:
                products[(i, j)] = {index[target]: Fraction(sign)}
    a = CohomologyAlgebra(
        name=f"random-open-{ngen}g-d{d}", d=d, closed=False, basis=basis, products=products
    )
    return rescale(a, rng)


# -- random closed algebras ----------------------------------------------------


def rescale(a: CohomologyAlgebra, rng: random.Random) -> CohomologyAlgebra:
    """b_i -> s_i b_i with the unit (if any) fixed; structure constants pick
    up s_i s_j / s_k, which preserves every algebra law."""
    unit = a.unit_index if a.closed else None
    scales = [
        Fraction(1) if i == unit else rng.choice(SCALES) for i in range(len(a.basis))
    ]
    products = {}
    for (i, j), row in a.product_items():
        products[(i, j)] = {
            k: c * scales[i] * scales[j] / scales[k] for k, c in row.items()
        }
    return clone_with(a, products=products)


def permute(a: CohomologyAlgebra, rng: random.Random) -> CohomologyAlgebra:
    order = list(range(len(a.basis)))
    rng.shuffle(order)
    pos = {old: new for new, old in enumerate(order)}
    basis = [a.basis[old] for old in order]
    products = {}
    for (i, j), row in a.product_items():
        products[(pos[i], pos[j])] = {pos[k]: c for k, c in row.items()}
    return clone_with(a, basis=basis, products=products)


def random_closed_algebra(rng: random.Random, max_dim=6) -> CohomologyAlgebra:
    pool = ["sphere-even:2", "sphere-even:4", "cp:2", "torus", "genus:2", "cp:3"]
    a = get_preset(rng.choice(pool))
    if rng.random() < 0.5 and len(a.basis) ** 2 <= max_dim:
        a = tensor_product(a, get_preset(rng.choice(["sphere-even:2", "sphere-even:4"])))
    if len(a.basis) > max_dim:
        a = get_preset("torus")
    return rescale(permute(a, rng), rng)


def random_algebras(count: int, seed: int = 20260810):
    """Deterministic stream of validated random algebras, mixed open/closed."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        a = (
            random_open_algebra(rng)
            if rng.random() < 0.6
            else random_closed_algebra(rng)
        )
        report = validate_algebra(a)
        assert report.ok, f"random algebra generator produced an invalid algebra:\n{report}"
        out.append(a)
    return out
