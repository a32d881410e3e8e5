import json
import random
from fractions import Fraction

import pytest

from confbetti import (
    BasisClass,
    CohomologyAlgebra,
    RingFormatError,
    algebra_from_dict,
    algebra_to_dict,
    comultiplication,
    dump_ring,
    get_preset,
    load_ring,
    tensor_product,
    validate_algebra,
)
from helpers import (
    PRESET_KEYS,
    degree_bump_mutations,
    random_algebras,
    sign_flip_mutations,
)


def broken_torus(sign):
    """Torus presentation with c[b][a][T] = sign instead of -1."""
    return CohomologyAlgebra(
        name="torus-broken",
        d=2,
        closed=True,
        basis=[BasisClass("1", 0), BasisClass("a", 1), BasisClass("b", 1), BasisClass("T", 2)],
        products={(1, 2): {3: Fraction(1)}, (2, 1): {3: Fraction(sign)}},
    )


def test_sphere_preset_validates_clean():
    report = validate_algebra(get_preset("sphere-even:2"))
    assert report.ok and not report.issues


def test_wrong_symmetry_sign_is_commutativity_error():
    report = validate_algebra(broken_torus(+1))
    assert not report.ok
    assert any(i.check == "graded-commutativity" for i in report.errors)
    assert validate_algebra(broken_torus(-1)).ok


def test_two_top_classes_is_pairing_error():
    a = CohomologyAlgebra(
        name="bad-top",
        d=2,
        closed=True,
        basis=[BasisClass("1", 0), BasisClass("x", 2), BasisClass("y", 2)],
        products={},
    )
    report = validate_algebra(a)
    assert any(i.check.startswith("poincare-pairing") for i in report.errors)


def test_degenerate_pairing_detected():
    # two degree-1 classes pairing to zero cannot satisfy duality
    a = CohomologyAlgebra(
        name="degenerate",
        d=2,
        closed=True,
        basis=[BasisClass("1", 0), BasisClass("a", 1), BasisClass("b", 1), BasisClass("T", 2)],
        products={},
    )
    report = validate_algebra(a)
    assert any(i.check == "poincare-pairing" for i in report.errors)


def test_broken_associativity_names_the_triple():
    # e*e = u with a unit whose action on e is redefined inconsistently
    a = CohomologyAlgebra(
        name="nonassoc",
        d=4,
        closed=False,
        basis=[BasisClass("x", 2), BasisClass("y", 2), BasisClass("t", 4)],
        products={
            (0, 0): {2: Fraction(1)},
            (0, 1): {2: Fraction(1)},
            (1, 0): {2: Fraction(1)},
            (1, 1): {2: Fraction(-1)},
        },
    )
    report = validate_algebra(a)
    assert report.ok  # degree-4 products of degree-2 classes never recombine

    b = CohomologyAlgebra(
        name="nonassoc2",
        d=4,
        closed=False,
        basis=[BasisClass("e", 0), BasisClass("x", 2), BasisClass("t", 4)],
        products={
            (0, 0): {0: Fraction(1)},
            (0, 1): {1: Fraction(2)},  # e*x = 2x but e*e = e: (ee)x != e(ex)
            (1, 0): {1: Fraction(2)},
            (1, 1): {2: Fraction(1)},
        },
    )
    report = validate_algebra(b)
    errors = [i for i in report.errors if i.check == "associativity"]
    assert errors
    assert "e" in errors[0].message and "x" in errors[0].message


def test_open_top_dimension_warning_not_error():
    a = CohomologyAlgebra(
        name="no-top", d=2, closed=False, basis=[BasisClass("a", 1)], products={}
    )
    report = validate_algebra(a)
    assert report.ok
    assert any(i.check == "top-class" for i in report.warnings)


def test_odd_dimension_rejected():
    a = CohomologyAlgebra(name="odd", d=3, closed=False, basis=[BasisClass("x", 2)], products={})
    assert any(i.check == "dimension" for i in validate_algebra(a).errors)


@pytest.mark.parametrize("key", PRESET_KEYS)
def test_presets_validate_clean(key):
    assert validate_algebra(get_preset(key)).ok


@pytest.mark.parametrize("key", PRESET_KEYS)
def test_mutations_break_validation(key):
    a = get_preset(key)
    for label, mutant in sign_flip_mutations(a):
        assert not validate_algebra(mutant).ok, f"{key}: {label} slipped through"
    for label, mutant in degree_bump_mutations(a):
        assert not validate_algebra(mutant).ok, f"{key}: {label} slipped through"


def test_mutations_break_random_algebras():
    for a in random_algebras(12, seed=4):
        for label, mutant in sign_flip_mutations(a):
            assert not validate_algebra(mutant).ok, f"{a.name}: {label}"
        for label, mutant in degree_bump_mutations(a):
            assert not validate_algebra(mutant).ok, f"{a.name}: {label}"


# -- comultiplication ---------------------------------------------------------


def test_comultiplication_sphere():
    a = get_preset("sphere-even:2")
    # fundamental-class dual: 1 ox x + x ox 1
    assert comultiplication(a, 2, 1) == [((0, 1), Fraction(1)), ((1, 0), Fraction(1))]
    # point-class dual: 1 ox 1
    assert comultiplication(a, 0, 0) == [((0, 0), Fraction(1))]


def test_comultiplication_torus_degree_one():
    a = get_preset("torus")  # basis 1, a1, b1, T
    assert comultiplication(a, 1, 1) == [((0, 1), Fraction(1)), ((1, 0), Fraction(1))]


def test_comultiplication_requires_closed():
    with pytest.raises(ValueError):
        comultiplication(get_preset("r2"), 2, 0)


def test_comultiplication_degree_mismatch_rejected():
    with pytest.raises(ValueError):
        comultiplication(get_preset("sphere-even:2"), 0, 1)


@pytest.mark.parametrize("key", [k for k in PRESET_KEYS if get_preset(k).closed])
def test_comultiplication_graded_symmetry(key):
    a = get_preset(key)
    for c in range(len(a.basis)):
        pairs = dict(comultiplication(a, a.degree(c), c))
        for (i, j), coeff in pairs.items():
            sign = -1 if (a.degree(i) * a.degree(j)) % 2 else 1
            assert pairs.get((j, i)) == sign * coeff


# -- tensor products ----------------------------------------------------------


def test_tensor_sphere_sphere_kunneth_profile():
    t = tensor_product(get_preset("sphere-even:2"), get_preset("sphere-even:2"))
    assert validate_algebra(t).ok
    profile = [t.dim_in_degree(p) for p in range(5)]
    assert profile == [1, 0, 2, 0, 1]


def test_tensor_with_point_is_identity():
    a = get_preset("torus")
    t = tensor_product(a, get_preset("point"))
    assert validate_algebra(t).ok
    assert [b.degree for b in t.basis] == [b.degree for b in a.basis]
    for (i, j), row in a.product_items():
        assert t.product(i, j) == row


def test_tensor_torus_torus():
    t = tensor_product(get_preset("torus"), get_preset("torus"))
    assert len(t.basis) == 16 and t.d == 4
    assert validate_algebra(t).ok


def test_tensor_rejects_mixed_and_odd():
    with pytest.raises(ValueError):
        tensor_product(get_preset("torus"), get_preset("r2"))


def test_tensor_of_open_algebras_is_valid():
    t = tensor_product(get_preset("genus:1-punctured"), get_preset("genus:1-punctured"))
    assert t.d == 4 and not t.closed
    assert validate_algebra(t).ok


def test_random_tensor_products_validate():
    rng = random.Random(99)
    closed = [get_preset(k) for k in ("sphere-even:2", "sphere-even:4", "cp:2", "torus")]
    for _ in range(10):
        a, b = rng.choice(closed), rng.choice(closed)
        assert validate_algebra(tensor_product(a, b)).ok


# -- ring files ----------------------------------------------------------------


def test_ring_file_round_trip(tmp_path):
    for key in PRESET_KEYS:
        a = get_preset(key)
        path = tmp_path / "ring.json"
        path.write_text(dump_ring(a))
        b = load_ring(path)
        assert [bc.name for bc in b.basis] == [bc.name for bc in a.basis]
        assert [bc.degree for bc in b.basis] == [bc.degree for bc in a.basis]
        assert (b.name, b.d, b.closed, b.connectivity) == (a.name, a.d, a.closed, a.connectivity)
        assert dict(b.product_items()) == dict(a.product_items())
        assert validate_algebra(b).ok


def test_rational_coefficients_parse_exactly():
    data = {
        "name": "half",
        "dimension": 2,
        "closed": False,
        "basis": [{"name": "a", "degree": 1}, {"name": "b", "degree": 1}, {"name": "T", "degree": 2}],
        "products": [
            {"left": "a", "right": "b", "result": [{"coeff": "1/2", "basis": "T"}]},
            {"left": "b", "right": "a", "result": [{"coeff": "-1/2", "basis": "T"}]},
        ],
    }
    a = algebra_from_dict(data)
    assert a.product(0, 1) == {2: Fraction(1, 2)}
    assert validate_algebra(a).ok
    round_tripped = algebra_to_dict(a)
    assert round_tripped["products"][0]["result"][0]["coeff"] == "1/2"


@pytest.mark.parametrize(
    "mangle",
    [
        lambda d: d.pop("basis"),
        lambda d: d.update(dimension="2"),
        lambda d: d.update(closed="yes"),
        lambda d: d["products"][0]["result"][0].update(coeff=0.5),
        lambda d: d["products"][0].update(left="missing"),
        lambda d: d["basis"].append({"name": "a", "degree": 1}),
    ],
)
def test_malformed_ring_files_rejected(mangle):
    data = json.loads(dump_ring(get_preset("genus:1-punctured")))
    mangle(data)
    with pytest.raises(RingFormatError):
        algebra_from_dict(data)


def test_unreadable_file_raises_format_error(tmp_path):
    with pytest.raises(RingFormatError):
        load_ring(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(RingFormatError):
        load_ring(bad)


def test_unit_autofill_keeps_files_small():
    text = dump_ring(get_preset("torus"))
    data = json.loads(text)
    assert all(p["left"] != "1" and p["right"] != "1" for p in data["products"])
    a = algebra_from_dict(data)
    assert a.product(0, 3) == {3: Fraction(1)}  # 1*T = T restored
