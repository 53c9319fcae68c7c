"""The JSON algebra-file format: parsing, validation, and canonical emission.

A file carries the structure table (sparse mode products with rationals as
strings, "p/q" or "p"), and optional sections: a grading, a cocycle table, a
group action, the associative source data, a module, an operator set, and an
R-map descriptor.  Omitted entries are zero; every name must resolve against
the declared basis.  Emission is canonical: keys sorted, entries ordered by
(u, v, n), no floats anywhere, so identical inputs produce identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .algebra import AlgebraStructure
from .construct import (
    AssocAlgebraData,
    CocycleData,
    GradedTag,
    GroupActionData,
    RMap,
    rmap_cross_abelian,
    rmap_from_commutator,
    rmap_identity,
    rmap_tensor_swap,
)
from .errors import ParseError, ValidationError
from .linalg import Mat, Vec
from .modules import ModuleStructure
from .operators import VertexOperator

FORMAT_VERSION = 1


def parse_rational(s) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise ParseError(f"rational values must be strings or integers, got {s!r}")
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {s!r}: {exc}") from None


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _vec_from_sparse(data: dict, names: tuple[str, ...], what: str) -> Vec:
    out = [Fraction(0)] * len(names)
    for name, val in data.items():
        if name not in names:
            raise ValidationError(f"{what}: unknown basis name {name!r}")
        out[names.index(name)] = parse_rational(val)
    return tuple(out)


def _sparse_from_vec(v: Vec, names: tuple[str, ...]) -> dict:
    return {names[i]: format_rational(c) for i, c in enumerate(v) if c != 0}


def _mat_from_rows(rows, what: str) -> Mat:
    try:
        return tuple(tuple(parse_rational(x) for x in row) for row in rows)
    except TypeError:
        raise ParseError(f"{what}: expected a matrix of rational strings") from None


def _rows_from_mat(m: Mat) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in m]


@dataclass
class AlgebraBundle:
    """A parsed file: the structure plus whatever optional sections it carried."""

    alg: AlgebraStructure
    grading: GradedTag | None = None
    cocycle: CocycleData | None = None
    group: GroupActionData | None = None
    group_base_basis: tuple[str, ...] | None = None
    assoc: AssocAlgebraData | None = None
    module: ModuleStructure | None = None
    operator_names: list[str] | None = None
    operators: list[VertexOperator] | None = None
    rmap_spec: dict | None = None
    name: str = ""

    def resolve_rmap(self) -> RMap | None:
        """Instantiate the R-map named by the file, if any."""
        spec = self.rmap_spec
        if spec is None:
            return None
        kind = spec.get("kind")
        if kind == "identity":
            return rmap_identity(self.alg.dim)
        if kind == "cocycle-commutator":
            if self.grading is None or self.cocycle is None:
                raise ValidationError("cocycle-commutator R-map needs grading + cocycle")
            return rmap_from_commutator(self.alg, self.grading, self.cocycle)
        if kind == "tensor-swap":
            left, right = int(spec["left_dim"]), int(spec["right_dim"])
            if left * right != self.alg.dim:
                raise ValidationError("tensor-swap factor dimensions do not multiply up")
            return rmap_tensor_swap(left, right)
        if kind == "cross-abelian":
            if self.group is None or self.group_base_basis is None:
                raise ValidationError("cross-abelian R-map needs the group section")
            # only the base dimension and the action matrices enter the map
            shell = _BareSpace(len(self.group_base_basis))
            return rmap_cross_abelian(shell, self.group)
        raise ValidationError(f"unknown R-map kind {kind!r}")


class _BareSpace:
    """Duck-typed stand-in exposing dim/unit for R-map construction."""

    def __init__(self, dim: int):
        self.dim = dim

    def unit(self, i: int):
        return tuple(Fraction(1) if j == i else Fraction(0) for j in range(self.dim))


# ---------------------------------------------------------------------------
# parsing


def parse_algebra_data(data: dict, name: str = "") -> AlgebraBundle:
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")
    version = data.get("format_version")
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {version!r}")
    try:
        basis = tuple(str(x) for x in data["basis"])
        vacuum_name = data["vacuum"]
    except KeyError as exc:
        raise ParseError(f"missing required field {exc}") from None
    if len(set(basis)) != len(basis):
        raise ParseError("duplicate basis names")
    if "dim" in data and int(data["dim"]) != len(basis):
        raise ParseError("declared dim disagrees with the basis length")
    if vacuum_name not in basis:
        raise ValidationError(f"vacuum {vacuum_name!r} is not a basis name")
    index = {nm: i for i, nm in enumerate(basis)}

    y_data: dict[tuple[int, int], dict[int, Vec]] = {}
    for entry in data.get("entries", []):
        try:
            u, v, n = entry["u"], entry["v"], int(entry["n"])
            result = entry["result"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad entry {entry!r}: {exc}") from None
        if u not in index or v not in index:
            raise ValidationError(f"entry references unknown basis name: {entry!r}")
        vec = _vec_from_sparse(result, basis, f"entry ({u},{v},{n})")
        y_data.setdefault((index[u], index[v]), {})[n] = vec

    variant = data.get("variant", "strong")
    if variant not in ("strong", "weak"):
        raise ParseError(f"unknown associativity variant {variant!r}")
    alg = AlgebraStructure(
        basis=basis, vacuum=index[vacuum_name], y_data=y_data, assoc_variant=variant
    )
    bundle = AlgebraBundle(alg=alg, name=name or data.get("name", ""))

    if "grading" in data:
        g = data["grading"]
        orders = tuple(int(x) for x in g["orders"])
        try:
            degrees = tuple(tuple(int(x) for x in g["degrees"][nm]) for nm in basis)
        except KeyError as exc:
            raise ValidationError(f"grading misses a degree for {exc}") from None
        bundle.grading = GradedTag(orders=orders, degrees=degrees)

    if "cocycle" in data:
        if bundle.grading is None:
            raise ValidationError("a cocycle table needs a grading section")
        table = {}
        for key, val in data["cocycle"]["table"].items():
            try:
                left, right = key.split("|")
                gtup = tuple(int(x) for x in left.split(","))
                htup = tuple(int(x) for x in right.split(","))
            except ValueError:
                raise ParseError(f"bad cocycle key {key!r}") from None
            table[(gtup, htup)] = parse_rational(val)
        bundle.cocycle = CocycleData(grading=bundle.grading, table=table)

    if "group" in data:
        g = data["group"]
        elements = tuple(str(x) for x in g["elements"])
        el_index = {nm: i for i, nm in enumerate(elements)}
        table = {}
        rows = g["table"]
        for i, row in enumerate(rows):
            for j, val in enumerate(row):
                table[(i, j)] = el_index[val]
        action = {
            el_index[nm]: _mat_from_rows(mat_rows, f"action of {nm}")
            for nm, mat_rows in g["action"].items()
        }
        bundle.group = GroupActionData(elements=elements, table=table, action=action)
        if "base_basis" in g:
            bundle.group_base_basis = tuple(str(x) for x in g["base_basis"])

    if "assoc" in data:
        a = data["assoc"]
        a_basis = tuple(str(x) for x in a["basis"])
        table = {}
        for i, row in enumerate(a["table"]):
            for j, cell in enumerate(row):
                table[(i, j)] = _vec_from_sparse(cell, a_basis, f"assoc ({i},{j})")
        bundle.assoc = AssocAlgebraData(
            basis=a_basis,
            table=table,
            identity=a_basis.index(a["identity"]),
            derivation=_mat_from_rows(a["derivation"], "derivation"),
        )

    if "module" in data:
        m = data["module"]
        w_basis = tuple(str(x) for x in m["basis"])
        w_index = {nm: i for i, nm in enumerate(w_basis)}
        action: dict[tuple[int, int], dict[int, Vec]] = {}
        for entry in m.get("entries", []):
            v, w, n = entry["v"], entry["w"], int(entry["n"])
            if v not in index or w not in w_index:
                raise ValidationError(f"module entry references unknown name: {entry!r}")
            vec = _vec_from_sparse(entry["result"], w_basis, f"module ({v},{w},{n})")
            action.setdefault((index[v], w_index[w]), {})[n] = vec
        bundle.module = ModuleStructure(basis=w_basis, action=action)

    if "operators" in data:
        o = data["operators"]
        if "from_basis" in o:
            bundle.operator_names = [str(x) for x in o["from_basis"]]
            for nm in bundle.operator_names:
                if nm not in index:
                    raise ValidationError(f"operators.from_basis names unknown {nm!r}")
        else:
            space = tuple(str(x) for x in o["space"])
            ops = []
            for spec in o["ops"]:
                modes = {
                    int(n): _mat_from_rows(rows, f"operator {spec.get('name')}")
                    for n, rows in spec["modes"].items()
                }
                for m_ in modes.values():
                    if len(m_) != len(space) or any(len(r) != len(space) for r in m_):
                        raise ValidationError("operator matrix shape mismatch")
                ops.append(
                    VertexOperator(len(space), modes, name=str(spec.get("name", "")))
                )
            bundle.operators = ops

    if "rmap" in data:
        bundle.rmap_spec = dict(data["rmap"])

    return bundle


def parse_algebra_file(path: str | Path) -> AlgebraBundle:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    return parse_algebra_data(data, name=path.stem)


# ---------------------------------------------------------------------------
# emission


def algebra_to_data(alg: AlgebraStructure, sections: dict | None = None) -> dict:
    entries = []
    for (i, j), modes in sorted(alg.y_data.items()):
        for n, vec in sorted(modes.items()):
            entries.append(
                {
                    "u": alg.basis[i],
                    "v": alg.basis[j],
                    "n": n,
                    "result": _sparse_from_vec(vec, alg.basis),
                }
            )
    data = {
        "format_version": FORMAT_VERSION,
        "basis": list(alg.basis),
        "dim": alg.dim,
        "vacuum": alg.basis[alg.vacuum],
        "variant": alg.assoc_variant,
        "entries": entries,
    }
    data.update(sections or {})
    return data


def grading_section(grading: GradedTag, basis: tuple[str, ...]) -> dict:
    return {
        "orders": list(grading.orders),
        "degrees": {nm: list(deg) for nm, deg in zip(basis, grading.degrees)},
    }


def cocycle_section(cocycle: CocycleData) -> dict:
    table = {}
    for (g, h), val in sorted(cocycle.table.items()):
        key = ",".join(str(x) for x in g) + "|" + ",".join(str(x) for x in h)
        table[key] = format_rational(val)
    return {"table": table}


def group_section(act: GroupActionData, base_basis: tuple[str, ...]) -> dict:
    n = len(act.elements)
    return {
        "elements": list(act.elements),
        "table": [[act.elements[act.table[(i, j)]] for j in range(n)] for i in range(n)],
        "action": {act.elements[g]: _rows_from_mat(m) for g, m in sorted(act.action.items())},
        "base_basis": list(base_basis),
    }


def module_section(mod: ModuleStructure, alg: AlgebraStructure) -> dict:
    entries = []
    for (i, j), modes in sorted(mod.action.items()):
        for n, vec in sorted(modes.items()):
            entries.append(
                {
                    "v": alg.basis[i],
                    "w": mod.basis[j],
                    "n": n,
                    "result": _sparse_from_vec(vec, mod.basis),
                }
            )
    return {"basis": list(mod.basis), "entries": entries}


def operators_section(ops: list[VertexOperator], space: tuple[str, ...]) -> dict:
    out = []
    for op in ops:
        if not op.polynomial:
            raise ValidationError("only polynomial-mode operators can be serialized")
        out.append(
            {
                "name": op.name,
                "modes": {str(n): _rows_from_mat(m) for n, m in sorted(op.modes.items())},
            }
        )
    return {"space": list(space), "ops": out}


def canonical_json(data) -> bytes:
    return (json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n").encode()


def write_algebra_file(path: str | Path, data: dict) -> None:
    Path(path).write_bytes(
        (json.dumps(data, sort_keys=True, indent=1) + "\n").encode()
    )
