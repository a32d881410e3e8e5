"""Finite presentations of graded-commutative cohomology rings over Q.

A `CohomologyAlgebra` is either the full cohomology ring of a closed
orientable even-dimensional manifold, or the compactly supported cohomology
ring of an open one (possibly non-unital).  Products are stored as exact
rational structure constants on a chosen homogeneous basis; everything
downstream (generators, differentials, Betti numbers) is derived from this
table alone.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .linalg import RationalMatrix, rank


class RingFormatError(ValueError):
    """Raised for unreadable or malformed ring-description files."""


@dataclass(frozen=True)
class BasisClass:
    name: str
    degree: int


@dataclass(frozen=True)
class ValidationIssue:
    severity: str  # "error" | "warning"
    check: str
    message: str


@dataclass
class ValidationReport:
    issues: list[ValidationIssue]

    @property
    def errors(self) -> list[ValidationIssue]:
        return [i for i in self.issues if i.severity == "error"]

    @property
    def warnings(self) -> list[ValidationIssue]:
        return [i for i in self.issues if i.severity == "warning"]

    @property
    def ok(self) -> bool:
        return not self.errors

    def __str__(self) -> str:
        if not self.issues:
            return "valid: no issues"
        return "\n".join(f"{i.severity}[{i.check}]: {i.message}" for i in self.issues)


class CohomologyAlgebra:
    """Graded-commutative Q-algebra given by basis classes and a product table.

    `products[(i, j)]` maps a basis index k to the rational coefficient of
    basis[k] in basis[i] * basis[j]; absent entries are zero.  For closed
    algebras the unit's products are auto-filled so presentations only need
    to list the interesting part of the multiplication.
    """

    def __init__(self, name, d, closed, basis, products, connectivity=None):
        self.name = str(name)
        self.d = int(d)
        self.closed = bool(closed)
        self.connectivity = None if connectivity is None else int(connectivity)
        self.basis = tuple(
            b if isinstance(b, BasisClass) else BasisClass(str(b[0]), int(b[1]))
            for b in basis
        )
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), expansion in products.items():
            row = {}
            for k, coeff in expansion.items():
                coeff = Fraction(coeff)
                if coeff:
                    row[int(k)] = coeff
            if row:
                table[(int(i), int(j))] = row
        self._products = table
        if self.closed:
            self._autofill_unit()

    def _autofill_unit(self):
        units = [i for i, b in enumerate(self.basis) if b.degree == 0]
        if len(units) != 1:
            return
        u = units[0]
        for i in range(len(self.basis)):
            self._products.setdefault((u, i), {i: Fraction(1)})
            self._products.setdefault((i, u), {i: Fraction(1)})

    # -- accessors ---------------------------------------------------------

    def product(self, i: int, j: int) -> dict[int, Fraction]:
        return self._products.get((i, j), {})

    def product_items(self):
        for (i, j), row in sorted(self._products.items()):
            yield (i, j), row

    def degree(self, i: int) -> int:
        return self.basis[i].degree

    def classes_in_degree(self, p: int) -> list[int]:
        return [i for i, b in enumerate(self.basis) if b.degree == p]

    def dim_in_degree(self, p: int) -> int:
        return len(self.classes_in_degree(p))

    @property
    def codim_one_rank(self) -> int:
        """n = dim of the degree d-1 component, the quantity the arithmetic
        and rank theorems condition on."""
        return self.dim_in_degree(self.d - 1)

    @property
    def unit_index(self) -> int | None:
        units = self.classes_in_degree(0)
        return units[0] if len(units) == 1 else None

    def __repr__(self):
        kind = "closed" if self.closed else "open"
        return f"CohomologyAlgebra({self.name!r}, d={self.d}, {kind}, dim={len(self.basis)})"


def validate_algebra(a: CohomologyAlgebra) -> ValidationReport:
    """Check every structural invariant; errors make the algebra unusable,
    warnings flag likely modelling mistakes that are not hard violations."""
    issues: list[ValidationIssue] = []

    def err(check, msg):
        issues.append(ValidationIssue("error", check, msg))

    def warn(check, msg):
        issues.append(ValidationIssue("warning", check, msg))

    n = len(a.basis)
    if a.d < 0 or a.d % 2 != 0:
        err("dimension", f"ambient dimension d={a.d} must be a nonnegative even integer")
    if a.connectivity is not None and a.connectivity < 0:
        err("connectivity", f"connectivity r={a.connectivity} must be >= 0")
    if n == 0:
        err("basis", "empty basis")

    names = [b.name for b in a.basis]
    if len(set(names)) != n:
        dupes = sorted({x for x in names if names.count(x) > 1})
        err("name-uniqueness", f"duplicate basis names: {', '.join(dupes)}")
    for i, b in enumerate(a.basis):
        if not (0 <= b.degree <= a.d):
            err("degree-range", f"class {b.name} has degree {b.degree} outside [0, {a.d}]")

    for (i, j), row in a.product_items():
        if not (0 <= i < n and 0 <= j < n):
            err("product-index", f"product entry ({i},{j}) references a missing class")
            continue
        for k in row:
            if not (0 <= k < n):
                err("product-index", f"product ({i},{j}) expands over missing class {k}")
            elif a.degree(k) != a.degree(i) + a.degree(j):
                err(
                    "degree-additivity",
                    f"{a.basis[i].name}*{a.basis[j].name} has a component in degree "
                    f"{a.degree(k)} != {a.degree(i)} + {a.degree(j)}",
                )
    if any(i.check == "product-index" for i in issues):
        return ValidationReport(issues)

    for i in range(n):
        for j in range(i, n):
            sign = -1 if (a.degree(i) * a.degree(j)) % 2 else 1
            left = a.product(i, j)
            right = a.product(j, i)
            keys = set(left) | set(right)
            for k in keys:
                if left.get(k, Fraction(0)) != sign * right.get(k, Fraction(0)):
                    err(
                        "graded-commutativity",
                        f"{a.basis[i].name}*{a.basis[j].name} != "
                        f"{'-' if sign < 0 else ''}{a.basis[j].name}*{a.basis[i].name} "
                        f"on {a.basis[k].name}",
                    )

    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs: dict[int, Fraction] = {}
                for m, c in a.product(i, j).items():
                    for t, c2 in a.product(m, k).items():
                        lhs[t] = lhs.get(t, Fraction(0)) + c * c2
                rhs: dict[int, Fraction] = {}
                for m, c in a.product(j, k).items():
                    for t, c2 in a.product(i, m).items():
                        rhs[t] = rhs.get(t, Fraction(0)) + c * c2
                if {t: c for t, c in lhs.items() if c} != {t: c for t, c in rhs.items() if c}:
                    err(
                        "associativity",
                        f"({a.basis[i].name}*{a.basis[j].name})*{a.basis[k].name} != "
                        f"{a.basis[i].name}*({a.basis[j].name}*{a.basis[k].name})",
                    )

    if a.closed:
        units = a.classes_in_degree(0)
        if len(units) != 1:
            err("unit", f"closed algebra needs exactly one degree-0 class, found {len(units)}")
        else:
            u = units[0]
            for i in range(n):
                if a.product(u, i) != {i: Fraction(1)} or a.product(i, u) != {i: Fraction(1)}:
                    err("unit", f"degree-0 class {a.basis[u].name} does not act as identity on {a.basis[i].name}")
        tops = a.classes_in_degree(a.d)
        if len(tops) != 1:
            err(
                "poincare-pairing/top-class",
                f"closed orientable algebra needs exactly one degree-{a.d} class, found {len(tops)}",
            )
        elif len(units) == 1:
            top = tops[0]
            for p in range(0, a.d // 2 + 1):
                lo = a.classes_in_degree(p)
                hi = a.classes_in_degree(a.d - p)
                if len(lo) != len(hi):
                    err(
                        "poincare-pairing",
                        f"dim A^{p} = {len(lo)} != dim A^{a.d - p} = {len(hi)}",
                    )
                    continue
                if not lo:
                    continue
                pairing = RationalMatrix(
                    len(lo),
                    len(hi),
                    {
                        (r, c): a.product(x, y).get(top, Fraction(0))
                        for r, x in enumerate(lo)
                        for c, y in enumerate(hi)
                    },
                )
                if rank(pairing) != len(lo):
                    err(
                        "poincare-pairing",
                        f"pairing A^{p} x A^{a.d - p} -> A^{a.d} is degenerate",
                    )
    else:
        if a.dim_in_degree(a.d) != 1:
            warn(
                "top-class",
                f"open algebra has dim A^{a.d} = {a.dim_in_degree(a.d)}; "
                "an orientable connected manifold would give 1",
            )
        if a.dim_in_degree(0) > 1:
            warn("connectedness", f"dim A^0 = {a.dim_in_degree(0)} suggests a disconnected manifold")

    return ValidationReport(issues)


def comultiplication(a: CohomologyAlgebra, q: int, c: int):
    """Expansion of the dual of basis class `c` (of degree q) under the
    comultiplication transposed from the product table.

    Returns [((i, j), coeff)] over all ordered pairs with deg_i + deg_j = q
    and a nonzero coefficient of basis[c] in basis[i] * basis[j].  No Koszul
    sign is inserted at transposition; this is the convention that yields
    D(w) = 2 v v_d on codimension-one duals.
    """
    if not a.closed:
        raise ValueError("comultiplication is defined for closed algebras only")
    if a.degree(c) != q:
        raise ValueError(f"class {a.basis[c].name} has degree {a.degree(c)}, not {q}")
    out = []
    nb = len(a.basis)
    for i in range(nb):
        di = a.degree(i)
        if di > q:
            continue
        for j in range(nb):
            if a.degree(j) != q - di:
                continue
            coeff = a.product(i, j).get(c)
            if coeff:
                out.append(((i, j), coeff))
    return out


def tensor_product(a: CohomologyAlgebra, b: CohomologyAlgebra) -> CohomologyAlgebra:
    """Kunneth product ring with Koszul-signed structure constants.

    (x1 ox y1)(x2 ox y2) = (-1)^{deg(y1) deg(x2)} (x1 x2) ox (y1 y2).
    """
    if a.closed != b.closed:
        raise ValueError("cannot tensor a closed algebra with an open one")
    if (a.d + b.d) % 2:
        raise ValueError("tensor product would have odd ambient dimension")
    na, nb = len(a.basis), len(b.basis)

    def idx(i, j):
        return i * nb + j

    basis = [
        BasisClass(f"{x.name}|{y.name}", x.degree + y.degree)
        for x in a.basis
        for y in b.basis
    ]
    products: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i1 in range(na):
        for j1 in range(nb):
            for i2 in range(na):
                for j2 in range(nb):
                    pa = a.product(i1, i2)
                    if not pa:
                        continue
                    pb = b.product(j1, j2)
                    if not pb:
                        continue
                    sign = -1 if (b.degree(j1) * a.degree(i2)) % 2 else 1
                    row: dict[int, Fraction] = {}
                    for ka, ca in pa.items():
                        for kb, cb in pb.items():
                            row[idx(ka, kb)] = sign * ca * cb
                    products[(idx(i1, j1), idx(i2, j2))] = row
    conn = None
    if a.connectivity is not None and b.connectivity is not None:
        conn = min(a.connectivity, b.connectivity)
    return CohomologyAlgebra(
        name=f"{a.name} x {b.name}",
        d=a.d + b.d,
        closed=a.closed,
        basis=basis,
        products=products,
        connectivity=conn,
    )


# -- ring-description files -------------------------------------------------


def _parse_coeff(raw) -> Fraction:
    if isinstance(raw, bool) or isinstance(raw, float):
        raise RingFormatError(f"coefficient {raw!r} must be an integer or 'p/q' string")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str):
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise RingFormatError(f"bad rational coefficient {raw!r}") from exc
    raise RingFormatError(f"coefficient {raw!r} must be an integer or 'p/q' string")


def _format_coeff(c: Fraction):
    return int(c) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def algebra_from_dict(data: dict) -> CohomologyAlgebra:
    if not isinstance(data, dict):
        raise RingFormatError("ring description must be a JSON object")
    try:
        name = data["name"]
        d = data["dimension"]
        closed = data["closed"]
        basis_raw = data["basis"]
    except KeyError as exc:
        raise RingFormatError(f"missing required field {exc.args[0]!r}") from exc
    if not isinstance(d, int) or isinstance(d, bool):
        raise RingFormatError("'dimension' must be an integer")
    if not isinstance(closed, bool):
        raise RingFormatError("'closed' must be a boolean")
    conn = data.get("connectivity")
    if conn is not None and (not isinstance(conn, int) or isinstance(conn, bool)):
        raise RingFormatError("'connectivity' must be an integer when present")
    if not isinstance(basis_raw, list):
        raise RingFormatError("'basis' must be an array")
    basis = []
    for entry in basis_raw:
        try:
            basis.append(BasisClass(str(entry["name"]), int(entry["degree"])))
        except (TypeError, KeyError) as exc:
            raise RingFormatError(f"bad basis entry {entry!r}") from exc
    index = {b.name: i for i, b in enumerate(basis)}
    if len(index) != len(basis):
        raise RingFormatError("duplicate basis class names")
    products: dict[tuple[int, int], dict[int, Fraction]] = {}
    for entry in data.get("products", []):
        try:
            left = index[entry["left"]]
            right = index[entry["right"]]
            result = entry["result"]
        except (TypeError, KeyError) as exc:
            raise RingFormatError(f"bad product entry {entry!r}") from exc
        row: dict[int, Fraction] = {}
        for term in result:
            try:
                target = index[term["basis"]]
            except (TypeError, KeyError) as exc:
                raise RingFormatError(f"bad product term {term!r}") from exc
            row[target] = row.get(target, Fraction(0)) + _parse_coeff(term["coeff"])
        products[(left, right)] = row
    return CohomologyAlgebra(
        name=name, d=d, closed=closed, basis=basis, products=products, connectivity=conn
    )


def algebra_to_dict(a: CohomologyAlgebra) -> dict:
    """Inverse of `algebra_from_dict`; unit rows of closed algebras are
    omitted because loading auto-fills them."""
    u = a.unit_index if a.closed else None
    products = []
    for (i, j), row in a.product_items():
        if u is not None and (i == u or j == u):
            continue
        products.append(
            {
                "left": a.basis[i].name,
                "right": a.basis[j].name,
                "result": [
                    {"coeff": _format_coeff(row[k]), "basis": a.basis[k].name}
                    for k in sorted(row)
                ],
            }
        )
    data = {
        "name": a.name,
        "dimension": a.d,
        "closed": a.closed,
    }
    if a.connectivity is not None:
        data["connectivity"] = a.connectivity
    data["basis"] = [{"name": b.name, "degree": b.degree} for b in a.basis]
    data["products"] = products
    return data


def load_ring(path) -> CohomologyAlgebra:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise RingFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise RingFormatError(f"{path} is not valid JSON: {exc}") from exc
    return algebra_from_dict(data)


def dump_ring(a: CohomologyAlgebra) -> str:
    return json.dumps(algebra_to_dict(a), indent=2) + "\n"
