"""Module structures over a vertex structure and their checkers.

A ModuleStructure carries the action modes v_n w for algebra basis vectors v
and module basis vectors w.  The checkers verify the module axioms (identity
action, truncation, weak associativity in both the per-triple and the
uniform variants), the derivative property of the translation operator,
locality transfer between an algebra and a faithful module, and bounded
compatibility of multi-operator products.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import AlgebraStructure, d_operator
from .construct import _MatrixBasis, matrix_algebra, tensor_product
from .errors import MalformedStructure
from .linalg import (
    SpanBasis,
    Vec,
    is_zero_vec,
    mat_vec,
    rank,
    unit_vec,
    vec_add,
    vec_scale,
    zero_vec,
)
from .report import FAIL, FOUND, INCONCLUSIVE, PASS, REFUTED, CheckReport, OrderSearch, Witness
from .series import Window, from_terms, mul, power_expand, subst_with_power, window_equal

ModeMap = dict[int, Vec]


@dataclass
class ModuleStructure:
    """Finite module basis and action modes (e_i)_n w_j, finitely supported."""

    basis: tuple[str, ...]
    action: dict[tuple[int, int], ModeMap]  # (algebra idx, module idx) -> {n: vec}
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.basis = tuple(self.basis)
        if not self.basis:
            raise MalformedStructure("empty module basis")
        dim = len(self.basis)
        clean: dict[tuple[int, int], ModeMap] = {}
        for (i, j), modes in self.action.items():
            if not (0 <= j < dim):
                raise MalformedStructure(f"module index {j} out of range")
            entry: ModeMap = {}
            for n, v in modes.items():
                if len(v) != dim:
                    raise MalformedStructure(f"module vector length mismatch at ({i},{j})")
                v = tuple(Fraction(x) for x in v)
                if not is_zero_vec(v):
                    entry[int(n)] = v
            if entry:
                clean[(i, j)] = entry
        self.action = clean

    @property
    def dim(self) -> int:
        return len(self.basis)

    def unit(self, j: int) -> Vec:
        return unit_vec(self.dim, j)

    def apply_mode(self, u: Vec, n: int, w: Vec) -> Vec:
        out = zero_vec(self.dim)
        for i, cu in enumerate(u):
            if cu == 0:
                continue
            for j, cw in enumerate(w):
                if cw == 0:
                    continue
                img = self.action.get((i, j), {}).get(n)
                if img is not None:
                    out = vec_add(out, vec_scale(cu * cw, img))
        return out

    def mode_map(self, u: Vec, w: Vec) -> ModeMap:
        out: ModeMap = {}
        for i, cu in enumerate(u):
            if cu == 0:
                continue
            for j, cw in enumerate(w):
                if cw == 0:
                    continue
                for n, img in self.action.get((i, j), {}).items():
                    s = vec_scale(cu * cw, img)
                    out[n] = vec_add(out[n], s) if n in out else s
        return {n: v for n, v in out.items() if not is_zero_vec(v)}

    def exp_radius(self) -> int:
        r = 1
        for modes in self.action.values():
            for n in modes:
                r = max(r, abs(-n - 1))
        return r


def adjoint_module(alg: AlgebraStructure) -> ModuleStructure:
    """The algebra acting on itself by its own mode products."""
    action = {key: dict(modes) for key, modes in alg.y_data.items()}
    return ModuleStructure(
        basis=alg.basis, action=action, meta={"source": "adjoint"}
    )


# ---------------------------------------------------------------------------
# module axiom checks


def _module_window(alg: AlgebraStructure, mod: ModuleStructure, nvars: int, margin: int = 4) -> Window:
    r = max(alg.exp_radius(), mod.exp_radius())
    return Window.symmetric(nvars, 3 * r + margin)


def module_product_series(
    alg: AlgebraStructure,
    mod: ModuleStructure,
    u: Vec,
    v: Vec,
    w: Vec,
    vars: tuple[str, str],
    window: Window,
):
    """Y_W(u, x_first) Y_W(v, x_second) w."""
    terms: dict[tuple[int, int], Vec] = {}
    for n2, inner in mod.mode_map(v, w).items():
        for n1, outer in mod.mode_map(u, inner).items():
            e = (-n1 - 1, -n2 - 1)
            terms[e] = vec_add(terms[e], outer) if e in terms else outer
    return from_terms(vars, terms, window)


def module_iterate_series(
    alg: AlgebraStructure,
    mod: ModuleStructure,
    u: Vec,
    v: Vec,
    w: Vec,
    vars: tuple[str, str],
    window: Window,
):
    """Y_W(Y(u, x_first) v, x_second) w, the inner product taken in the algebra."""
    terms: dict[tuple[int, int], Vec] = {}
    for n0, uv in alg.mode_map(u, v).items():
        for n2, out in mod.mode_map(uv, w).items():
            e = (-n0 - 1, -n2 - 1)
            terms[e] = vec_add(terms[e], out) if e in terms else out
    return from_terms(vars, terms, window)


def module_assoc_triple(
    alg: AlgebraStructure,
    mod: ModuleStructure,
    u: Vec,
    v: Vec,
    w: Vec,
    bound: int,
    names: tuple,
) -> OrderSearch:
    for l in range(bound + 1):
        window2 = _module_window(alg, mod, 2, margin=4 + 2 * l)
        a = module_product_series(alg, mod, u, v, w, ("x1", "x2"), window2)
        lhs = subst_with_power(a, "x1", "x0", "x2", l, window2)
        c = module_iterate_series(alg, mod, u, v, w, ("x0", "x2"), window2)
        rhs = mul(power_expand(l, "x0", "x2", window2, 1, 1), c, window2)
        verdict = window_equal(lhs, rhs)
        if verdict.matched:
            return OrderSearch(FOUND, order=l, bound=bound, exact=verdict.exact)
        if lhs.complete and rhs.complete:
            return OrderSearch(
                REFUTED,
                bound=bound,
                witness=Witness(names, verdict.witness, verdict.lhs, verdict.rhs),
            )
    return OrderSearch(INCONCLUSIVE, bound=bound)


def check_module(
    alg: AlgebraStructure,
    mod: ModuleStructure,
    bound: int | None = None,
) -> CheckReport:
    """Identity action, derivative property, and module weak associativity.

    The per-triple variant is always verified.  When the algebra is tagged
    with the uniform associativity variant, the report additionally records
    the uniform order per (u, w) pair (the maximum over middle arguments,
    which at finite dimension always exists when every triple has one).
    """
    report = CheckReport("module-axioms")
    bound = alg.default_bound() if bound is None else bound
    dim_w = mod.dim
    # identity action
    for j in range(dim_w):
        modes = mod.action.get((alg.vacuum, j), {})
        expect = {n: v for n, v in modes.items()}
        if expect.get(-1) != mod.unit(j) or any(n != -1 for n in expect):
            report.fail(
                Witness(
                    ("vacuum-action", mod.basis[j]),
                    None,
                    expect,
                    {-1: mod.unit(j)},
                )
            )
    # derivative property: Y_W(Dv, x) = d/dx Y_W(v, x)
    d_mat = d_operator(alg)
    for i in range(alg.dim):
        dv = mat_vec(d_mat, alg.unit(i))
        for j in range(dim_w):
            lhs = mod.mode_map(dv, mod.unit(j))
            base = mod.mode_map(alg.unit(i), mod.unit(j))
            rhs: ModeMap = {}
            for n, w in base.items():
                if -n - 1 != 0:
                    rhs[n + 1] = vec_add(
                        rhs.get(n + 1, zero_vec(dim_w)), vec_scale(Fraction(-n - 1), w)
                    )
            for n in sorted(set(lhs) | set(rhs)):
                a = lhs.get(n, zero_vec(dim_w))
                b = rhs.get(n, zero_vec(dim_w))
                if a != b:
                    report.fail(
                        Witness(("d-derivative", alg.basis[i], mod.basis[j]), (n,), a, b)
                    )
    # weak associativity, per triple; collect uniform orders on the way
    uniform: dict[tuple[int, int], int] = {}
    for u_idx in range(alg.dim):
        for w_idx in range(dim_w):
            worst = 0
            ok = True
            for v_idx in range(alg.dim):
                search = module_assoc_triple(
                    alg,
                    mod,
                    alg.unit(u_idx),
                    alg.unit(v_idx),
                    mod.unit(w_idx),
                    bound,
                    (alg.basis[u_idx], alg.basis[v_idx], mod.basis[w_idx]),
                )
                if not search.found:
                    ok = False
                    report.verdict = FAIL if search.status == REFUTED else report.verdict
                    if search.witness:
                        report.witnesses.append(search.witness)
                    if search.status == INCONCLUSIVE and report.verdict == PASS:
                        report.verdict = INCONCLUSIVE
                    break
                report.exact = report.exact and search.exact
                worst = max(worst, search.order)
            if ok:
                uniform[(u_idx, w_idx)] = worst
    if uniform:
        report.found_orders["max_assoc_order"] = max(uniform.values())
        report.notes.append(
            "uniform variant orders recorded per (u, w): max over middle arguments"
        )
    return report


# ---------------------------------------------------------------------------
# derived modules


def wn_module(
    alg: AlgebraStructure, mod: ModuleStructure, n: int
) -> tuple[AlgebraStructure, ModuleStructure]:
    """Column modules over the matrix structure: returns (M(n,alg), W^n)."""
    mat_alg = matrix_algebra(alg, n)
    mb = _MatrixBasis(n)
    dim_w = mod.dim
    basis = tuple(f"{w}#c{c+1}" for w in mod.basis for c in range(n))

    def pack(j: int, c: int) -> int:
        return j * n + c

    action: dict[tuple[int, int], ModeMap] = {}
    for (i, j), modes in mod.action.items():
        for mi in range(mb.dim):
            entries = mb.entries(mi)  # the matrix part of basis vector v*M
            for c in range(n):
                out_modes: ModeMap = {}
                for nn, w in modes.items():
                    out = [Fraction(0)] * (dim_w * n)
                    hit = False
                    for (r, cc), val in entries.items():
                        if cc == c:
                            for wj, cwj in enumerate(w):
                                if cwj != 0:
                                    out[pack(wj, r)] += val * cwj
                                    hit = True
                    if hit:
                        out_modes[nn] = tuple(out)
                if out_modes:
                    action[(i * mb.dim + mi, pack(j, c))] = out_modes
    return mat_alg, ModuleStructure(
        basis=basis, action=action, meta={"source": "column-module", "n": n}
    )


def tensor_module(
    algs: list[AlgebraStructure], mods: list[ModuleStructure]
) -> tuple[AlgebraStructure, ModuleStructure]:
    """Tensor module over the tensor product structure (pairwise fold)."""
    if len(algs) != len(mods) or not algs:
        raise MalformedStructure("need one module per tensor factor")
    alg_out = tensor_product(algs)
    mod_out = mods[0]
    cur_alg = algs[0]
    for nxt_alg, nxt_mod in zip(algs[1:], mods[1:]):
        mod_out = _tensor_module_pair(cur_alg, mod_out, nxt_alg, nxt_mod)
        cur_alg = tensor_product([cur_alg, nxt_alg])
    return alg_out, mod_out


def _tensor_module_pair(
    alg_a: AlgebraStructure,
    mod_a: ModuleStructure,
    alg_b: AlgebraStructure,
    mod_b: ModuleStructure,
) -> ModuleStructure:
    basis = tuple(f"{x}*{y}" for x in mod_a.basis for y in mod_b.basis)
    da, db = mod_a.dim, mod_b.dim

    def packw(ja: int, jb: int) -> int:
        return ja * db + jb

    action: dict[tuple[int, int], ModeMap] = {}
    for (ia, ja), modes_a in mod_a.action.items():
        for (ib, jb), modes_b in mod_b.action.items():
            out_modes: ModeMap = {}
            for na, va in modes_a.items():
                for nb, vb in modes_b.items():
                    nn = na + nb + 1
                    out = [Fraction(0)] * (da * db)
                    for ra, ca in enumerate(va):
                        if ca == 0:
                            continue
                        for rb, cb in enumerate(vb):
                            if cb != 0:
                                out[packw(ra, rb)] += ca * cb
                    wt = tuple(out)
                    out_modes[nn] = (
                        vec_add(out_modes[nn], wt) if nn in out_modes else wt
                    )
            out_modes = {n: v for n, v in out_modes.items() if not is_zero_vec(v)}
            if out_modes:
                action[(ia * alg_b.dim + ib, packw(ja, jb))] = out_modes
    return ModuleStructure(basis=basis, action=action, meta={"source": "tensor-module"})


def check_embedded_actions_commute(
    alg_a: AlgebraStructure,
    alg_b: AlgebraStructure,
    mod: ModuleStructure,
) -> CheckReport:
    """On a tensor module, u (x) 1 and 1 (x) v must commute exactly."""
    report = CheckReport("embedded-actions-commute")
    dim = alg_a.dim * alg_b.dim

    def emb_a(i: int) -> Vec:
        return unit_vec(dim, i * alg_b.dim + alg_b.vacuum)

    def emb_b(i: int) -> Vec:
        return unit_vec(dim, alg_a.vacuum * alg_b.dim + i)

    for i in range(alg_a.dim):
        for j in range(alg_b.dim):
            for w_idx in range(mod.dim):
                w = mod.unit(w_idx)
                ab: dict[tuple[int, int], Vec] = {}
                for n2, inner in mod.mode_map(emb_b(j), w).items():
                    for n1, outer in mod.mode_map(emb_a(i), inner).items():
                        e = (n1, n2)
                        ab[e] = vec_add(ab[e], outer) if e in ab else outer
                ba: dict[tuple[int, int], Vec] = {}
                for n1, inner in mod.mode_map(emb_a(i), w).items():
                    for n2, outer in mod.mode_map(emb_b(j), inner).items():
                        e = (n1, n2)
                        ba[e] = vec_add(ba[e], outer) if e in ba else outer
                for e in sorted(set(ab) | set(ba)):
                    lhs = ab.get(e, zero_vec(mod.dim))
                    rhs = ba.get(e, zero_vec(mod.dim))
                    if lhs != rhs:
                        report.fail(
                            Witness(
                                (alg_a.basis[i], alg_b.basis[j], mod.basis[w_idx]),
                                e,
                                lhs,
                                rhs,
                            )
                        )
    return report


# ---------------------------------------------------------------------------
# faithfulness and locality transfer


def is_faithful(alg: AlgebraStructure, mod: ModuleStructure) -> bool:
    """Exact rank test of the action map v -> (all modes of Y_W(v))."""
    exps = sorted({n for modes in mod.action.values() for n in modes})
    rows = []
    for i in range(alg.dim):
        row: list[Fraction] = []
        for j in range(mod.dim):
            modes = mod.action.get((i, j), {})
            for n in exps:
                row.extend(modes.get(n, zero_vec(mod.dim)))
        rows.append(tuple(row))
    return rank(rows) == alg.dim


def check_locality_transfer(
    alg: AlgebraStructure,
    mod: ModuleStructure,
    u_idx: int,
    v_idx: int,
    q: Fraction,
    bound: int | None = None,
) -> CheckReport:
    """Algebra locality carries to modules; faithful modules carry it back."""
    from .algebra import find_locality_k

    report = CheckReport(f"locality-transfer[{alg.basis[u_idx]},{alg.basis[v_idx]}]")
    bound = alg.default_bound() if bound is None else bound
    q = Fraction(q)
    alg_loc = find_locality_k(alg, u_idx, v_idx, q, bound)
    u, v = alg.unit(u_idx), alg.unit(v_idx)
    # module-side relation at order zero (Laurent data collapses every order)
    mod_holds = True
    witness = None
    for w_idx in range(mod.dim):
        w = mod.unit(w_idx)
        lhs: dict[tuple[int, int], Vec] = {}
        for n2, inner in mod.mode_map(v, w).items():
            for n1, outer in mod.mode_map(u, inner).items():
                e = (-n1 - 1, -n2 - 1)
                lhs[e] = vec_add(lhs[e], outer) if e in lhs else outer
        rhs: dict[tuple[int, int], Vec] = {}
        for n1, inner in mod.mode_map(u, w).items():
            for n2, outer in mod.mode_map(v, inner).items():
                e = (-n1 - 1, -n2 - 1)
                rhs[e] = vec_add(rhs[e], outer) if e in rhs else outer
        for e in sorted(set(lhs) | set(rhs)):
            a = lhs.get(e, zero_vec(mod.dim))
            b = vec_scale(q, rhs.get(e, zero_vec(mod.dim)))
            if a != b:
                mod_holds = False
                witness = Witness(
                    (alg.basis[u_idx], alg.basis[v_idx], mod.basis[w_idx]), e, a, b
                )
                break
        if not mod_holds:
            break
    faithful = is_faithful(alg, mod)
    report.found_orders["faithful"] = int(faithful)
    if alg_loc.found:
        report.found_orders["algebra_k"] = alg_loc.order
        if not mod_holds:
            report.fail(witness)
    if faithful and mod_holds and not alg_loc.found:
        report.fail(
            Witness(
                (alg.basis[u_idx], alg.basis[v_idx]),
                None,
                "module relation holds",
                "algebra relation should follow on a faithful module",
            )
        )
    if mod_holds:
        report.found_orders["module_k"] = 0
    report.notes.append(
        "agree" if (alg_loc.found == mod_holds or not faithful) else "disagree"
    )
    return report


def check_product_compatibility(
    alg: AlgebraStructure,
    mod: ModuleStructure,
    vs: list[int],
    bound: int | None = None,
) -> OrderSearch:
    """Least k with the (x_i - x_j)^k-damped operator product lower-truncated.

    Finitely supported action data makes every multiple product a Laurent
    polynomial, so the certification succeeds at k = 0; the search still
    materializes the product to certify the claim rather than assuming it.
    """
    bound = alg.default_bound() if bound is None else bound
    r = len(vs)
    if r == 0:
        return OrderSearch(FOUND, order=0, bound=bound)
    for w_idx in range(mod.dim):
        layers = [mod.unit(w_idx)]
        # apply Y_W(v_r) ... Y_W(v_1) front to back, tracking joint exponents
        states: dict[tuple[int, ...], Vec] = {(): mod.unit(w_idx)}
        for v_idx in reversed(vs):
            nxt: dict[tuple[int, ...], Vec] = {}
            for exps, vecw in states.items():
                for n, img in mod.mode_map(alg.unit(v_idx), vecw).items():
                    key = (-n - 1,) + exps
                    nxt[key] = vec_add(nxt[key], img) if key in nxt else img
            states = nxt
        # finite state dictionary == membership in W((x_1, ..., x_r))
        if any(len(e) != r for e in states):
            return OrderSearch(INCONCLUSIVE, bound=bound)
    return OrderSearch(FOUND, order=0, bound=bound, exact=True)


# ---------------------------------------------------------------------------
# generation


def generate_submodule(
    alg: AlgebraStructure, mod: ModuleStructure, start: Vec
) -> list[Vec]:
    """Span saturation of one vector under every algebra mode."""
    span = SpanBasis([start])
    modes = sorted({n for mm in mod.action.values() for n in mm})
    changed = True
    rounds = 0
    while changed:
        changed = False
        rounds += 1
        if rounds > mod.dim + 1:
            break
        for i in range(alg.dim):
            for b in list(span.rows):
                for n in modes:
                    w = mod.apply_mode(alg.unit(i), n, b)
                    if not is_zero_vec(w) and span.add(w):
                        changed = True
    return list(span.rows)


def generating_basis_vectors(alg: AlgebraStructure, mod: ModuleStructure) -> list[bool]:
    """Whether each module basis vector generates the whole module."""
    return [
        len(generate_submodule(alg, mod, mod.unit(j))) == mod.dim
        for j in range(mod.dim)
    ]
