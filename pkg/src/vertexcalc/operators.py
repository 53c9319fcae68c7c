"""Vertex operators on a finite-dimensional space and the closure engine.

A VertexOperator is an End(W)-valued Laurent object: finitely many matrix
coefficients in polynomial mode, or a memoized coefficient oracle with a
declared truncation bound.  On finite-dimensional W every such operator lies
in End(W)((x)), so ordered sequences are compatible at damping order zero;
the interesting content is downstream: the reordering transform T, the
residue-defined products, the associativity relation they satisfy, and the
span generated from a compatible set, which carries a full vertex-structure
with W as a faithful module.

The product formulas are evaluated in closed form.  Writing a(x) with
x-exponent coefficients A_p, b(x) with B_q, the n-th product collects
s(n,p) A_p B_q at exponent n+1+p+q, where

    s(n,p) = (-1)^(n+p+1) [ C(n, n+p+1) (if n+p+1 >= 0)
                           - C(n, -1-p)  (if p <= -1) ]

and the two indicator terms come from the residues of the two one-sided
expansions.  For n >= 0 the indicators coincide and cancel, which is the
truncation statement that products vanish at and above the compatibility
order.  The commutator-style variant composes the matrices the other way in
the second term; a windowed delta-kernel evaluation of the same residues is
kept in the tests as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .algebra import AlgebraStructure
from .errors import MalformedStructure, NotCompatible
from .linalg import CoordSpan, Mat, Vec, identity_mat, is_zero_mat, mat_add, mat_mul, mat_scale
from .modules import ModuleStructure, check_module, is_faithful
from .report import FOUND, INCONCLUSIVE, CheckReport, OrderSearch, Witness
from .series import (
    Distribution,
    Window,
    binom,
    binom_expand,
    from_terms,
    mul,
    power_expand,
)

STATUS_CLOSED = "closed"
STATUS_CAP = "cap-exceeded"
STATUS_RANGE = "index-range-exhausted"


class VertexOperator:
    """An End(W)-valued Laurent series with truncation above a declared mode.

    Polynomial mode stores every nonzero coefficient outright.  Oracle mode
    carries a callable n -> matrix with a declared mode_hi (a_n = 0 for
    n >= mode_hi) and an optional known mode_lo; coefficients are memoized on
    demand and any verdict that had to window the tail is flagged by callers.
    """

    __slots__ = ("dim", "modes", "oracle", "mode_hi", "mode_lo", "_memo", "name")

    def __init__(
        self,
        dim: int,
        modes: dict[int, Mat] | None = None,
        oracle: Callable[[int], Mat] | None = None,
        mode_hi: int | None = None,
        mode_lo: int | None = None,
        name: str = "",
    ):
        self.dim = dim
        self.oracle = oracle
        self.name = name
        self._memo: dict[int, Mat] = {}
        if oracle is None:
            clean = {}
            for n, m in (modes or {}).items():
                m = tuple(tuple(Fraction(x) for x in row) for row in m)
                if not is_zero_mat(m):
                    clean[int(n)] = m
            self.modes = clean
            self.mode_hi = (max(clean) + 1) if clean else 0
            self.mode_lo = min(clean) if clean else 0
        else:
            if mode_hi is None:
                raise MalformedStructure("oracle operators must declare a truncation bound")
            self.modes = None
            self.mode_hi = mode_hi
            self.mode_lo = mode_lo

    # -- coefficient access ----------------------------------------------------

    @property
    def polynomial(self) -> bool:
        return self.oracle is None

    def mode(self, n: int) -> Mat:
        if self.polynomial:
            return self.modes.get(n) or tuple(
                tuple(Fraction(0) for _ in range(self.dim)) for _ in range(self.dim)
            )
        if n >= self.mode_hi:
            return tuple(tuple(Fraction(0) for _ in range(self.dim)) for _ in range(self.dim))
        if n not in self._memo:
            m = self.oracle(n)
            self._memo[n] = tuple(tuple(Fraction(x) for x in row) for row in m)
        return self._memo[n]

    def exps(self, lo: int | None = None, hi: int | None = None) -> dict[int, Mat]:
        """Nonzero coefficients by x-exponent, optionally windowed to [lo, hi]."""
        if self.polynomial:
            out = {-n - 1: m for n, m in self.modes.items()}
            if lo is not None:
                out = {p: m for p, m in out.items() if p >= lo}
            if hi is not None:
                out = {p: m for p, m in out.items() if p <= hi}
            return out
        if lo is None or hi is None:
            raise NotCompatible("oracle operators need an exponent window to materialize")
        out = {}
        for p in range(lo, hi + 1):
            m = self.mode(-p - 1)
            if not is_zero_mat(m):
                out[p] = m
        return out

    def exp_bounds(self) -> tuple[int | None, int]:
        """(min exponent or None if unknown, max exponent).

        The truncation bound gives the exponent floor -mode_hi; the top is
        unknown exactly when an oracle has no declared mode_lo.
        """
        if self.polynomial:
            if not self.modes:
                return (0, 0)
            return (-max(self.modes) - 1, -min(self.modes) - 1)
        top = None if self.mode_lo is None else -self.mode_lo - 1
        return (-self.mode_hi, top) if top is None else (-self.mode_hi, top)

    def is_zero(self) -> bool:
        return self.polynomial and not self.modes

    def equal(self, other: "VertexOperator") -> bool:
        if not (self.polynomial and other.polynomial):
            raise NotCompatible("exact equality needs polynomial mode")
        return self.modes == other.modes

    def distribution(self, var: str, window: Window) -> Distribution:
        """The operator as a matrix-valued distribution on a window."""
        lo, hi = window.bounds[0]
        return from_terms((var,), {(p,): m for p, m in self.exps(lo, hi).items()}, window)

    def derivative(self) -> "VertexOperator":
        if not self.polynomial:
            raise NotCompatible("derivative of an oracle operator is not materialized")
        out: dict[int, Mat] = {}
        for p, m in self.exps().items():
            if p != 0:
                out[-(p - 1) - 1] = mat_scale(Fraction(p), m)
        return VertexOperator(self.dim, out, name=f"d({self.name})" if self.name else "")

    def __repr__(self) -> str:
        tag = self.name or ("poly" if self.polynomial else "oracle")
        if self.polynomial:
            return f"VertexOperator({tag}, modes={sorted(self.modes)})"
        return f"VertexOperator({tag}, oracle<hi={self.mode_hi}>)"


def identity_operator(dim: int, name: str = "1_W") -> VertexOperator:
    return VertexOperator(dim, {-1: identity_mat(dim)}, name=name)


def operator_from_structure(
    alg: AlgebraStructure, v_idx: int, mod: ModuleStructure | None = None
) -> VertexOperator:
    """The image of a basis vector acting on a module (default: on itself)."""
    if mod is None:
        dim = alg.dim
        modes = {
            n: alg.mode_matrix(alg.unit(v_idx), n)
            for mm in [alg.y_data]
            for n in sorted({k for (i, _j), m in mm.items() if i == v_idx for k in m})
        }
    else:
        dim = mod.dim
        ns = sorted(
            {n for (i, _j), m in mod.action.items() if i == v_idx for n in m}
        )
        modes = {}
        for n in ns:
            cols = [
                mod.apply_mode(alg.unit(v_idx), n, mod.unit(j)) for j in range(dim)
            ]
            modes[n] = tuple(tuple(col[r] for col in cols) for r in range(dim))
    return VertexOperator(dim, modes, name=alg.basis[v_idx])


# ---------------------------------------------------------------------------
# compatibility


def find_compat_order(seq: list[VertexOperator], bound: int | None = None) -> OrderSearch:
    """Least damping order certifying the ordered product is lower-truncated.

    Every operator here is lower-truncated on each vector by its declared
    bound, and the variables of an ordered product do not interact, so the
    support certification succeeds at order zero.  Polynomial mode is exact;
    oracle mode rests on the declared truncation bounds.
    """
    if not seq:
        return OrderSearch(FOUND, order=0, bound=bound or 0)
    dims = {op.dim for op in seq}
    if len(dims) != 1:
        raise NotCompatible("operators act on different spaces")
    for op in seq:
        if op.mode_hi is None:
            raise NotCompatible("undeclared truncation bound")
    exact = all(op.polynomial for op in seq)
    return OrderSearch(FOUND, order=0, bound=bound or 0, exact=exact)


def product_distribution(
    a: VertexOperator,
    b: VertexOperator,
    vars: tuple[str, str],
    window: Window,
) -> Distribution:
    """a(x_first) b(x_second) as a matrix-valued two-variable distribution."""
    (alo, ahi), (blo, bhi) = window.bounds
    terms: dict[tuple[int, int], Mat] = {}
    for p, ma in a.exps(alo, ahi).items():
        for q, mb in b.exps(blo, bhi).items():
            terms[(p, q)] = mat_mul(ma, mb)
    return from_terms(vars, terms, window)


def truncated_t(
    a: VertexOperator,
    b: VertexOperator,
    k: int | None = None,
    window: Window | None = None,
) -> Distribution:
    """The reordered-region representative T(a(x1) b(x2)).

    With the minimal admissible damping order (zero here) the transform is
    the product itself, computed exactly.  An explicit k > 0 exercises the
    definition literally: multiply by (x1-x2)^k, then by the opposite-region
    expansion (-x2+x1)^(-k); the result is window-limited but must agree with
    the exact transform wherever both are observable.
    """
    if find_compat_order([a, b]).status != FOUND:
        raise NotCompatible("pair is not certified compatible")
    if window is None:
        r = _radius(a) + _radius(b) + 4
        window = Window.symmetric(2, r)
    exact = product_distribution(a, b, ("x1", "x2"), window)
    if not k:
        return exact
    damped = mul(binom_expand(k, "x1", "x2", -1, window), exact, window)
    reorder = power_expand(-k, "x2", "x1", window, sign_a=-1, sign_b=1)
    return mul(reorder, damped, window)


def _radius(op: VertexOperator) -> int:
    lo, hi = op.exp_bounds()
    hi = 1 if hi is None else abs(hi)
    return max(abs(lo or 0), hi, 1)


# ---------------------------------------------------------------------------
# residue products


def _s_coeff(n: int, p: int) -> Fraction:
    """Signed residue weight of the straight-minus-reexpanded kernel."""
    total = Fraction(0)
    if n + p + 1 >= 0:
        total += binom(n, n + p + 1)
    if p <= -1:
        total -= binom(n, -1 - p)
    if (n + p + 1) % 2 != 0:
        total = -total
    return total


def _exps_for_product(op: VertexOperator, other: VertexOperator, n: int):
    """Materialized exponent dictionaries, windowed for oracle operands."""
    if op.polynomial:
        pa = op.exps()
    else:
        lo = -op.mode_hi - abs(n) - 4
        pa = op.exps(lo, (op.exp_bounds()[1] or abs(n) + 4))
    if other.polynomial:
        pb = other.exps()
    else:
        lo = -other.mode_hi - abs(n) - 4
        pb = other.exps(lo, (other.exp_bounds()[1] or abs(n) + 4))
    return pa, pb


def nth_product(a: VertexOperator, b: VertexOperator, n: int) -> VertexOperator:
    """Residue product: Res_x1 of (x1-x)^n a(x1)b(x) minus its T-reexpansion.

    Exact and finitely supported in polynomial mode; vanishes for n at or
    above the compatibility order as the two kernel expansions coincide.
    """
    if find_compat_order([a, b]).status != FOUND:
        raise NotCompatible("pair is not certified compatible")
    pa, pb = _exps_for_product(a, b, n)
    out: dict[int, Mat] = {}
    for p, ma in pa.items():
        s = _s_coeff(n, p)
        if s == 0:
            continue
        for q, mb in pb.items():
            m = n + 1 + p + q
            contrib = mat_scale(s, mat_mul(ma, mb))
            key = -m - 1
            out[key] = mat_add(out[key], contrib) if key in out else contrib
    return VertexOperator(a.dim, out)


def nth_product_local(a: VertexOperator, b: VertexOperator, n: int) -> VertexOperator:
    """Commutator-style product: the second residue reverses the composition.

    Agrees with nth_product on pairwise-local sets; on operators that carry
    nonnegative modes with noncommuting coefficients the two differ.
    """
    pa, pb = _exps_for_product(a, b, n)
    out: dict[int, Mat] = {}
    for p, ma in pa.items():
        sign = Fraction(-1) if (n + p + 1) % 2 else Fraction(1)
        c1 = binom(n, n + p + 1) if n + p + 1 >= 0 else Fraction(0)
        c2 = binom(n, -1 - p) if p <= -1 else Fraction(0)
        if c1 == 0 and c2 == 0:
            continue
        for q, mb in pb.items():
            m = n + 1 + p + q
            key = -m - 1
            contrib = None
            if c1 != 0:
                contrib = mat_scale(sign * c1, mat_mul(ma, mb))
            if c2 != 0:
                rev = mat_scale(-sign * c2, mat_mul(mb, ma))
                contrib = rev if contrib is None else mat_add(contrib, rev)
            out[key] = mat_add(out[key], contrib) if key in out else contrib
    return VertexOperator(a.dim, out)


def certified_nonzero_range(a: VertexOperator, b: VertexOperator) -> tuple[int | None, int]:
    """Mode interval outside which a_n b provably vanishes: (lo or None, hi).

    Products vanish for n >= 0 identically.  When a has no nonnegative modes
    (no negative exponents), the straight-kernel residues die below
    -1 - max_exp(a); otherwise the reexpanded kernel contributes at every
    depth and no finite floor is certified.
    """
    lo_a, hi_a = a.exp_bounds()
    if hi_a is None:
        return (None, -1)
    if lo_a is not None and lo_a >= 0:
        return (-1 - hi_a, -1)
    return (None, -1)


# ---------------------------------------------------------------------------
# the associativity relation


def check_prop_assoc(
    a: VertexOperator,
    b: VertexOperator,
    w: Vec,
    bound: int | None = None,
) -> CheckReport:
    """(x0+x2)^l a(x0+x2) b(x2) w against the residue-product side.

    Scans l upward, certifying membership in W((x0,x2)) by the support rule
    (every damped power nonnegative); at the first certified l the two sides
    are compared exactly.
    """
    report = CheckReport("operator-associativity")
    if not (a.polynomial and b.polynomial):
        raise NotCompatible("the associativity check materializes polynomial data")
    bound = 2 * (_radius(a) + _radius(b)) + 4 if bound is None else bound
    lo_a, _ = a.exp_bounds()
    dim = a.dim
    for l in range(bound + 1):
        if lo_a + l < 0:
            continue  # membership not certified at this order; keep scanning
        lhs: dict[tuple[int, int], Vec] = {}
        bw: dict[int, Vec] = {}
        for q, mb in b.exps().items():
            vecq = tuple(sum(row[j] * w[j] for j in range(dim)) for row in mb)
            if any(x != 0 for x in vecq):
                bw[q] = vecq
        for p, ma in a.exps().items():
            for i in range(0, p + l + 1):
                cb = binom(p + l, i)
                if cb == 0:
                    continue
                for q, vecq in bw.items():
                    img = tuple(
                        cb * sum(row[j] * vecq[j] for j in range(dim)) for row in ma
                    )
                    key = (p + l - i, i + q)
                    lhs[key] = (
                        tuple(x + y for x, y in zip(lhs[key], img)) if key in lhs else img
                    )
        lhs = {k: v for k, v in lhs.items() if any(x != 0 for x in v)}
        # right side: (x2+x0)^l (Y(a,x0)b)(x2) w
        rhs: dict[tuple[int, int], Vec] = {}
        lo_cert, hi_cert = certified_nonzero_range(a, b)
        if lo_cert is None:
            lo_cert = -(bound + _radius(a) + _radius(b) + 4)
        for n in range(lo_cert, hi_cert + 1):
            prod = nth_product(a, b, n)
            if prod.is_zero():
                continue
            for s, ms in prod.exps().items():
                vecs = tuple(sum(row[j] * w[j] for j in range(dim)) for row in ms)
                if all(x == 0 for x in vecs):
                    continue
                for i in range(0, l + 1):
                    cb = binom(l, i)
                    key = (-n - 1 + i, l - i + s)
                    img = tuple(cb * x for x in vecs)
                    rhs[key] = (
                        tuple(x + y for x, y in zip(rhs[key], img)) if key in rhs else img
                    )
        rhs = {k: v for k, v in rhs.items() if any(x != 0 for x in v)}
        if lhs == rhs:
            report.found_orders["l"] = l
            return report
        diff_keys = sorted(set(lhs) | set(rhs))
        e = diff_keys[0]
        report.fail(
            Witness(
                (a.name or "a", b.name or "b"),
                e,
                lhs.get(e),
                rhs.get(e),
            )
        )
        return report
    report.verdict = INCONCLUSIVE
    report.notes.append(f"no certified order at or below {bound}")
    return report


# ---------------------------------------------------------------------------
# spans and closure


@dataclass
class OperatorSpan:
    """Representative operators with row-reduced fingerprints over a window."""

    operators: list[VertexOperator]
    fp_lo: int
    fp_hi: int
    coords: CoordSpan

    @property
    def rank(self) -> int:
        return self.coords.dim


@dataclass
class ClosureResult:
    span: OperatorSpan
    structure: AlgebraStructure | None
    status: str
    certified: bool
    rounds: int
    notes: list[str] = field(default_factory=list)


def _fingerprint(op: VertexOperator, lo: int, hi: int) -> Vec:
    out: list[Fraction] = []
    exps = op.exps(lo, hi)
    zero_row = (Fraction(0),) * op.dim
    for p in range(lo, hi + 1):
        m = exps.get(p)
        for r in range(op.dim):
            out.extend(m[r] if m is not None else zero_row)
    return tuple(out)


def _exp_range(ops: list[VertexOperator]) -> tuple[int, int]:
    lo, hi = 0, 0
    for op in ops:
        for p in op.exps():
            lo = min(lo, p)
            hi = max(hi, p)
    return lo, hi


def closure(
    generators: list[VertexOperator],
    n_range: tuple[int, int] | None = None,
    dim_cap: int = 64,
    depth_cap: int = 8,
    local_products: bool = False,
    probe_margin: int = 2,
    dim: int | None = None,
) -> ClosureResult:
    """Span of all residue-product words of the generators applied to 1_W.

    Rounds apply every generator mode in n_range to the current span and
    row-reduce fingerprints until a fixpoint or a cap.  After a fixpoint the
    span is verified closed pairwise; when some pair's nonzero mode range has
    no certified floor, modes just below n_range are probed, and a new
    element there downgrades the status to index-range-exhausted.
    """
    if generators:
        dims = {op.dim for op in generators}
        if len(dims) != 1:
            raise NotCompatible("generators act on different spaces")
        dim = dims.pop()
    elif dim is None:
        raise MalformedStructure("an empty generating set needs the space dimension")
    for op in generators:
        if not op.polynomial:
            raise NotCompatible("closure requires polynomial-mode generators")
    # theorem hypothesis: ordered pairs and triples from the generating set
    for x in generators:
        for y in generators:
            find_compat_order([x, y])
            for z in generators:
                find_compat_order([x, y, z])
    product = nth_product_local if local_products else nth_product
    one = identity_operator(dim)
    if n_range is None:
        lo = min((min(op.modes) for op in generators if op.modes), default=-1)
        n_range = (lo - 2, 0)
    n_lo, n_hi = n_range

    ops: list[VertexOperator] = [one]
    notes: list[str] = []
    fp_lo, fp_hi = _exp_range(ops + generators)
    coords, fp_lo, fp_hi = _rebuild_with(ops, fp_lo, fp_hi, dim)
    rounds = 0
    status = STATUS_CLOSED
    while True:
        rounds += 1
        if rounds > depth_cap:
            status = STATUS_CAP
            notes.append(f"depth cap {depth_cap} reached before a fixpoint")
            break
        grew = False
        for g in generators:
            for beta in list(ops):
                # descending modes discover a, then its derivatives, in order
                for n in range(n_hi, n_lo - 1, -1):
                    cand = product(g, beta, n)
                    if cand.is_zero():
                        continue
                    lo_c, hi_c = _exp_range([cand])
                    if lo_c < fp_lo or hi_c > fp_hi:
                        coords, fp_lo, fp_hi = _rebuild_with(
                            ops, min(lo_c, fp_lo), max(hi_c, fp_hi), dim
                        )
                    if coords.insert(_fingerprint(cand, fp_lo, fp_hi)) is None:
                        ops.append(cand)
                        grew = True
                        if len(ops) > dim_cap:
                            return ClosureResult(
                                OperatorSpan(ops, fp_lo, fp_hi, coords),
                                None,
                                STATUS_CAP,
                                False,
                                rounds,
                                notes + [f"span exceeded the cap of {dim_cap}"],
                            )
        if not grew:
            break
    if status != STATUS_CLOSED:
        return ClosureResult(
            OperatorSpan(ops, fp_lo, fp_hi, coords), None, status, False, rounds, notes
        )

    # pairwise closure verification over certified or probed mode ranges
    certified = True
    y_data: dict[tuple[int, int], dict[int, Vec]] = {}
    for i, alpha in enumerate(ops):
        for j, beta in enumerate(ops):
            lo_cert, hi_cert = certified_nonzero_range(alpha, beta)
            if lo_cert is None:
                certified = False
                lo_cert = n_lo - probe_margin
                notes.append(
                    f"pair ({i},{j}) has no certified mode floor; probed to {lo_cert}"
                )
            modes: dict[int, Vec] = {}
            for n in range(lo_cert, hi_cert + 1):
                prod = product(alpha, beta, n)
                if prod.is_zero():
                    continue
                lo_c, hi_c = _exp_range([prod])
                if lo_c < fp_lo or hi_c > fp_hi:
                    coords, fp_lo, fp_hi = _rebuild_with(
                        ops, min(lo_c, fp_lo), max(hi_c, fp_hi), dim
                    )
                sol = coords.solve(_fingerprint(prod, fp_lo, fp_hi))
                if sol is None:
                    return ClosureResult(
                        OperatorSpan(ops, fp_lo, fp_hi, coords),
                        None,
                        STATUS_RANGE,
                        False,
                        rounds,
                        notes
                        + [
                            f"product of span elements ({i},{j}) at mode {n} "
                            "escapes the span"
                        ],
                    )
                modes[n] = sol
            if modes:
                y_data[(i, j)] = modes
    raw_names = [
        "1_W" if k == 0 else (op.name or f"op{k}") for k, op in enumerate(ops)
    ]
    seen: dict[str, int] = {}
    named = []
    for name in raw_names:
        if name in seen:
            seen[name] += 1
            named.append(f"{name}.{seen[name]}")
        else:
            seen[name] = 0
            named.append(name)
    structure = AlgebraStructure(
        basis=tuple(named),
        vacuum=0,
        y_data=y_data,
        meta={"source": "operator-closure"},
    )
    return ClosureResult(
        OperatorSpan(ops, fp_lo, fp_hi, coords),
        structure,
        STATUS_CLOSED,
        certified,
        rounds,
        notes,
    )


def _rebuild_with(
    ops: list[VertexOperator], lo: int, hi: int, dim: int
) -> tuple[CoordSpan, int, int]:
    cs = CoordSpan((hi - lo + 1) * dim * dim)
    for op in ops:
        cs.insert(_fingerprint(op, lo, hi))
    return cs, lo, hi


def closure_module(result: ClosureResult) -> ModuleStructure:
    """The underlying space as a module: basis vectors w_j, action by modes."""
    if result.structure is None:
        raise MalformedStructure("closure did not produce a structure")
    ops = result.span.operators
    dim_w = ops[0].dim
    basis = tuple(f"w{j+1}" for j in range(dim_w))
    action: dict[tuple[int, int], dict[int, Vec]] = {}
    for i, op in enumerate(ops):
        for nn, mat_c in op.modes.items():
            for j in range(dim_w):
                col = tuple(mat_c[r][j] for r in range(dim_w))
                if any(x != 0 for x in col):
                    action.setdefault((i, j), {})[nn] = col
    return ModuleStructure(basis=basis, action=action, meta={"source": "closure"})


def verify_module_structure(result: ClosureResult) -> CheckReport:
    """The closed span must act on W as a faithful module of itself."""
    report = CheckReport("closure-module")
    if result.status != STATUS_CLOSED or result.structure is None:
        report.verdict = INCONCLUSIVE
        report.notes.append("closure did not reach a certified span")
        return report
    mod = closure_module(result)
    inner = check_module(result.structure, mod)
    report.merge(inner)
    faithful = is_faithful(result.structure, mod)
    report.found_orders["faithful"] = int(faithful)
    if not faithful:
        report.fail(Witness(("faithfulness",), None, "rank-deficient action", "injective"))
    return report
