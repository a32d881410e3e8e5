"""Built-in cohomology ring presets.

Every preset is validated at construction time.  Connectivity values are
shipped as data with a provenance note; they only feed the connectivity
upper bound, and conservative (smaller) values keep the bound valid.

Keys:
    r2                        H_c of the plane: one degree-2 class, zero products
    sphere-even:D             closed even sphere S^D (unit + top class)
    sphere-even:D-punctured   H_c of S^D minus a point (same ring as r2 for D=2)
    cp:M                      complex projective space, truncated polynomial ring
    torus, genus:G            closed orientable surface with the symplectic
                              intersection form a_i b_i = T
    genus:G-punctured         H_c of the once-punctured surface: no degree-0
                              class, same symplectic pairing
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import BasisClass, CohomologyAlgebra, validate_algebra

ONE = Fraction(1)


@dataclass(frozen=True)
class PresetEntry:
    key: str
    algebra: CohomologyAlgebra
    notes: str


def _sphere(d: int) -> CohomologyAlgebra:
    return CohomologyAlgebra(
        name=f"sphere-even:{d}",
        d=d,
        closed=True,
        basis=[BasisClass("1", 0), BasisClass("x", d)],
        products={},
        connectivity=1,
    )


def _sphere_punctured(d: int) -> CohomologyAlgebra:
    # H_c of R^d: a single compactly supported class on top, all products zero.
    return CohomologyAlgebra(
        name=f"sphere-even:{d}-punctured",
        d=d,
        closed=False,
        basis=[BasisClass("x", d)],
        products={},
        connectivity=1,
    )


def _cp(m: int) -> CohomologyAlgebra:
    basis = [BasisClass("1", 0)] + [
        BasisClass("x" if j == 1 else f"x^{j}", 2 * j) for j in range(1, m + 1)
    ]
    products = {}
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            if i + j <= m:
                products[(i, j)] = {i + j: ONE}
    return CohomologyAlgebra(
        name=f"cp:{m}", d=2 * m, closed=True, basis=basis, products=products, connectivity=1
    )


def _surface_products(g: int, offset: int, top: int):
    # a_i b_i = T, b_i a_i = -T; every other product of degree-1 classes is 0.
    products = {}
    for i in range(g):
        ai = offset + 2 * i
        bi = ai + 1
        products[(ai, bi)] = {top: ONE}
        products[(bi, ai)] = {top: -ONE}
    return products


def _genus(g: int) -> CohomologyAlgebra:
    basis = [BasisClass("1", 0)]
    for i in range(1, g + 1):
        basis += [BasisClass(f"a{i}", 1), BasisClass(f"b{i}", 1)]
    basis.append(BasisClass("T", 2))
    top = len(basis) - 1
    return CohomologyAlgebra(
        name="torus" if g == 1 else f"genus:{g}",
        d=2,
        closed=True,
        basis=basis,
        products=_surface_products(g, 1, top),
        connectivity=0,
    )


def _genus_punctured(g: int) -> CohomologyAlgebra:
    basis = []
    for i in range(1, g + 1):
        basis += [BasisClass(f"a{i}", 1), BasisClass(f"b{i}", 1)]
    basis.append(BasisClass("T", 2))
    top = len(basis) - 1
    return CohomologyAlgebra(
        name=f"genus:{g}-punctured",
        d=2,
        closed=False,
        basis=basis,
        products=_surface_products(g, 0, top),
        connectivity=0,
    )


def _point() -> CohomologyAlgebra:
    return CohomologyAlgebra(
        name="point", d=0, closed=True, basis=[BasisClass("1", 0)], products={}
    )


_NOTES = {
    "r2": "H_c of the plane; r=1 from the one-point compactification (a sphere).",
    "sphere-even": "closed even sphere; shipped r=1 (true connectivity is d-1, smaller r keeps the bound valid).",
    "sphere-even-punctured": "H_c of the punctured even sphere = R^d; r=1 from the quotient sphere.",
    "cp": "truncated polynomial ring on a degree-2 class; r=1 (simply connected).",
    "genus": "closed orientable surface, symplectic intersection form; r=0 (nontrivial fundamental group).",
    "genus-punctured": "H_c of the once-punctured surface: degree 0 vanishes, pairing unchanged; r=0.",
    "point": "single point; only useful as a tensor unit.",
}


def _build(key: str) -> PresetEntry:
    if key == "r2":
        alg = _sphere_punctured(2)
        alg.name = "r2"
        return PresetEntry(key, alg, _NOTES["r2"])
    if key == "point":
        return PresetEntry(key, _point(), _NOTES["point"])
    if key == "torus":
        return PresetEntry(key, _genus(1), _NOTES["genus"])
    if key.startswith("sphere-even:"):
        spec = key.split(":", 1)[1]
        punctured = spec.endswith("-punctured")
        if punctured:
            spec = spec[: -len("-punctured")]
        d = _positive_even(spec, key)
        if punctured:
            return PresetEntry(key, _sphere_punctured(d), _NOTES["sphere-even-punctured"])
        return PresetEntry(key, _sphere(d), _NOTES["sphere-even"])
    if key.startswith("cp:"):
        m = _positive_int(key.split(":", 1)[1], key)
        return PresetEntry(key, _cp(m), _NOTES["cp"])
    if key.startswith("genus:"):
        spec = key.split(":", 1)[1]
        punctured = spec.endswith("-punctured")
        if punctured:
            spec = spec[: -len("-punctured")]
        g = _positive_int(spec, key)
        if punctured:
            return PresetEntry(key, _genus_punctured(g), _NOTES["genus-punctured"])
        return PresetEntry(key, _genus(g), _NOTES["genus"])
    raise KeyError(
        f"unknown preset {key!r}; available: {', '.join(preset_keys())} "
        "(plus the parametric families sphere-even:D[-punctured], cp:M, genus:G[-punctured])"
    )


def _positive_int(text: str, key: str) -> int:
    try:
        value = int(text)
    except ValueError:
        value = 0
    if value < 1:
        raise KeyError(f"bad parameter in preset key {key!r}")
    return value


def _positive_even(text: str, key: str) -> int:
    value = _positive_int(text, key)
    if value % 2:
        raise KeyError(f"preset {key!r} needs an even dimension")
    return value


def get_entry(key: str) -> PresetEntry:
    entry = _build(key)
    report = validate_algebra(entry.algebra)
    if not report.ok:
        raise RuntimeError(f"preset {key} failed validation:\n{report}")
    return entry


def get_preset(key: str) -> CohomologyAlgebra:
    return get_entry(key).algebra


def preset_keys() -> list[str]:
    """Canonical shipped list; the parametric families accept other values."""
    return [
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
