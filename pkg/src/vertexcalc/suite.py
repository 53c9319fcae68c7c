"""Suite orchestration and report emission.

Records come in two kinds.  Checks assert an identity and can fail the run;
classifications report a computed fact (local vs nonlocal, which vectors
generate, closure status) and never affect the exit code.  The JSON emission
is canonical and timing-free, so identical inputs and options give identical
bytes; the text emission is a readable table of the same records.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    check_creation_exponential,
    check_d_bracket,
    check_jacobi,
    check_skew_symmetry,
    find_locality_k,
    find_weak_assoc_l,
    validate_structure,
    weak_assoc_triple,
)
from .construct import check_jacobi_like
from .errors import ValidationError
from .fileio import AlgebraBundle, algebra_to_data, canonical_json
from .modules import (
    adjoint_module,
    check_locality_transfer,
    check_module,
    check_product_compatibility,
    generating_basis_vectors,
    is_faithful,
)
from .operators import closure, operator_from_structure, verify_module_structure
from .report import FAIL, INCONCLUSIVE, PASS, CheckReport

SUITES = ("axioms", "locality", "jacobi", "skew", "modules", "jacobi-like", "closure", "all")

CHECK = "check"
CLASSIFICATION = "classification"


@dataclass
class SuiteOptions:
    bound: int | None = None
    window: int | None = None
    q: str = "1"
    dim_cap: int = 64
    depth_cap: int = 8
    n_range: tuple[int, int] | None = None
    local_products: bool = False
    max_witnesses: int = 3

    def as_dict(self) -> dict:
        return {
            "bound": self.bound,
            "window": self.window,
            "q": self.q,
            "dim_cap": self.dim_cap,
            "depth_cap": self.depth_cap,
            "n_range": list(self.n_range) if self.n_range else None,
            "local_products": self.local_products,
        }


@dataclass
class SuiteRecord:
    id: str
    identity: str
    kind: str
    verdict: str
    exact: bool = True
    orders: dict = field(default_factory=dict)
    witnesses: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "identity": self.identity,
            "kind": self.kind,
            "verdict": self.verdict,
            "exact": self.exact,
            "orders": {k: v for k, v in sorted(self.orders.items())},
            "witnesses": list(self.witnesses),
            "notes": list(self.notes),
        }


@dataclass
class SuiteReport:
    target: str
    suite: str
    options: dict
    records: list[SuiteRecord] = field(default_factory=list)
    embedded: dict = field(default_factory=dict)

    def add(self, record: SuiteRecord) -> None:
        self.records.append(record)

    def add_check(self, rid: str, identity: str, rep: CheckReport, limit: int = 3) -> None:
        self.add(
            SuiteRecord(
                id=rid,
                identity=identity,
                kind=CHECK,
                verdict=rep.verdict,
                exact=rep.exact,
                orders=dict(rep.found_orders),
                witnesses=[w.describe() for w in rep.witnesses[:limit]],
                notes=list(rep.notes),
            )
        )

    @property
    def summary(self) -> dict:
        checks = [r for r in self.records if r.kind == CHECK]
        return {
            "records": len(self.records),
            "checks": len(checks),
            "failures": sum(1 for r in checks if r.verdict == FAIL),
            "inconclusive": sum(1 for r in checks if r.verdict == INCONCLUSIVE),
        }

    @property
    def exit_code(self) -> int:
        return 1 if self.summary["failures"] else 0

    def as_dict(self) -> dict:
        return {
            "target": self.target,
            "suite": self.suite,
            "options": self.options,
            "records": [r.as_dict() for r in self.records],
            "summary": self.summary,
            "embedded": self.embedded,
        }


def _resolve_q(bundle: AlgebraBundle, options: SuiteOptions, i: int, j: int) -> Fraction:
    if options.q == "from-cocycle":
        if bundle.grading is None or bundle.cocycle is None:
            raise ValidationError("--q from-cocycle needs grading and cocycle sections")
        return bundle.cocycle.commutator(
            bundle.grading.degrees[i], bundle.grading.degrees[j]
        )
    return Fraction(options.q)


# ---------------------------------------------------------------------------
# individual suites


def _suite_axioms(bundle: AlgebraBundle, options: SuiteOptions, report: SuiteReport):
    alg = bundle.alg
    report.add_check("axioms/structure", "truncation, vacuum, creation", validate_structure(alg))
    report.add_check(
        "axioms/translation-bracket",
        "translation commutator and derivative",
        check_d_bracket(alg),
    )
    report.add_check(
        "axioms/creation-exponential",
        "state from vacuum via the translation exponential",
        check_creation_exponential(alg),
    )
    bound = options.bound
    if alg.assoc_variant == "strong":
        worst = 0
        verdict = PASS
        exact = True
        witnesses = []
        for u in range(alg.dim):
            for w in range(alg.dim):
                search = find_weak_assoc_l(alg, u, w, bound)
                if not search.found:
                    verdict = FAIL if search.status == "refuted" else INCONCLUSIVE
                    if search.witness:
                        witnesses.append(search.witness.describe())
                else:
                    worst = max(worst, search.order)
                    exact = exact and search.exact
        report.add(
            SuiteRecord(
                id="axioms/weak-associativity",
                identity="uniform weak associativity",
                kind=CHECK,
                verdict=verdict,
                exact=exact,
                orders={"max_l": worst},
                witnesses=witnesses[: options.max_witnesses],
                notes=["variant: uniform over middle arguments"],
            )
        )
    else:
        worst = 0
        verdict = PASS
        witnesses = []
        for u in range(alg.dim):
            for v in range(alg.dim):
                for w in range(alg.dim):
                    search = weak_assoc_triple(alg, u, v, w, bound)
                    if not search.found:
                        verdict = FAIL if search.status == "refuted" else INCONCLUSIVE
                        if search.witness:
                            witnesses.append(search.witness.describe())
                    else:
                        worst = max(worst, search.order)
        report.add(
            SuiteRecord(
                id="axioms/weak-associativity",
                identity="three-argument weak associativity",
                kind=CHECK,
                verdict=verdict,
                orders={"max_l": worst},
                witnesses=witnesses[: options.max_witnesses],
                notes=["variant: per-triple (the construction only guarantees this)"],
            )
        )


def _suite_locality(bundle: AlgebraBundle, options: SuiteOptions, report: SuiteReport):
    alg = bundle.alg
    nonlocal_pairs = 0
    for i in range(alg.dim):
        for j in range(alg.dim):
            q = _resolve_q(bundle, options, i, j)
            search = find_locality_k(alg, i, j, q, options.bound)
            if search.found:
                verdict = f"local(k={search.order})"
            elif search.status == "refuted":
                verdict = "nonlocal"
                nonlocal_pairs += 1
            else:
                verdict = "inconclusive"
            report.add(
                SuiteRecord(
                    id=f"locality/{alg.basis[i]},{alg.basis[j]}",
                    identity="damped commutation of operator pairs",
                    kind=CLASSIFICATION,
                    verdict=verdict,
                    orders={"q": str(q)},
                    witnesses=[search.witness.describe()] if search.witness else [],
                )
            )
    report.add(
        SuiteRecord(
            id="locality/summary",
            identity="damped commutation of operator pairs",
            kind=CLASSIFICATION,
            verdict="nonlocal" if nonlocal_pairs else "local",
            orders={"nonlocal_pairs": nonlocal_pairs},
        )
    )


def _suite_skew(bundle: AlgebraBundle, options: SuiteOptions, report: SuiteReport):
    alg = bundle.alg
    for i in range(alg.dim):
        for j in range(alg.dim):
            q = _resolve_q(bundle, options, i, j)
            skew = check_skew_symmetry(alg, i, j, q, options.bound)
            loc = find_locality_k(alg, i, j, q, options.bound)
            report.add(
                SuiteRecord(
                    id=f"skew/{alg.basis[i]},{alg.basis[j]}",
                    identity="skew-symmetry with truncation",
                    kind=CLASSIFICATION,
                    verdict="holds" if skew.passed else "fails",
                    exact=skew.exact,
                    orders=dict(skew.found_orders),
                )
            )
            agree = skew.passed == loc.found
            report.add(
                SuiteRecord(
                    id=f"skew/equivalence/{alg.basis[i]},{alg.basis[j]}",
                    identity="locality equivalent to skew-symmetry with truncation",
                    kind=CHECK,
                    verdict=PASS if agree else FAIL,
                    witnesses=[]
                    if agree
                    else [f"skew={skew.passed} locality={loc.found}"],
                )
            )


def _window3(options: SuiteOptions):
    from .series import Window

    return Window.symmetric(3, options.window) if options.window else None


def _suite_jacobi(bundle: AlgebraBundle, options: SuiteOptions, report: SuiteReport):
    alg = bundle.alg
    for i in range(alg.dim):
        for j in range(alg.dim):
            q = _resolve_q(bundle, options, i, j)
            rep = check_jacobi(alg, i, j, q, window=_window3(options), bound=options.bound)
            agree = rep.found_orders.get("lemma_equivalence", 0) == 1
            report.add(
                SuiteRecord(
                    id=f"jacobi/{alg.basis[i]},{alg.basis[j]}",
                    identity="q-Jacobi identity",
                    kind=CLASSIFICATION,
                    verdict="holds" if rep.passed else "fails",
                    exact=rep.exact,
                    orders={"q": str(q)},
                    witnesses=[w.describe() for w in rep.witnesses[: options.max_witnesses]],
                )
            )
            report.add(
                SuiteRecord(
                    id=f"jacobi/round-trip/{alg.basis[i]},{alg.basis[j]}",
                    identity="Jacobi equivalent to locality plus associativity",
                    kind=CHECK,
                    verdict=PASS if agree else FAIL,
                    witnesses=[]
                    if agree
                    else [w.describe() for w in rep.witnesses[: options.max_witnesses]],
                )
            )


def _suite_jacobi_like(bundle: AlgebraBundle, options: SuiteOptions, report: SuiteReport):
    rmap = bundle.resolve_rmap()
    if rmap is None:
        report.add(
            SuiteRecord(
                id="jacobi-like/skipped",
                identity="Jacobi-like identity with an R-map",
                kind=CLASSIFICATION,
                verdict="no R-map declared",
            )
        )
        return
    rep = check_jacobi_like(
        bundle.alg, rmap, window=_window3(options), bound=options.bound
    )
    report.add_check(
        "jacobi-like/identity",
        "Jacobi-like identity with an R-map",
        rep,
        options.max_witnesses,
    )


def _suite_modules(bundle: AlgebraBundle, options: SuiteOptions, report: SuiteReport):
    alg = bundle.alg
    mod = bundle.module or adjoint_module(alg)
    source = "file" if bundle.module is not None else "adjoint"
    rep = check_module(alg, mod, options.bound)
    rep.notes.append(f"module source: {source}")
    report.add_check("modules/axioms", "module axioms with derivative property", rep)
    faithful = is_faithful(alg, mod)
    report.add(
        SuiteRecord(
            id="modules/faithful",
            identity="injectivity of the action map",
            kind=CLASSIFICATION,
            verdict="faithful" if faithful else "unfaithful",
        )
    )
    transfer_fail = []
    for i in range(alg.dim):
        for j in range(alg.dim):
            q = _resolve_q(bundle, options, i, j)
            t = check_locality_transfer(alg, mod, i, j, q, options.bound)
            if not t.passed:
                transfer_fail.extend(w.describe() for w in t.witnesses)
    report.add(
        SuiteRecord(
            id="modules/locality-transfer",
            identity="locality transfers to modules and back on faithful ones",
            kind=CHECK,
            verdict=FAIL if transfer_fail else PASS,
            witnesses=transfer_fail[: options.max_witnesses],
        )
    )
    compat_bad = 0
    for i in range(alg.dim):
        for j in range(alg.dim):
            if not check_product_compatibility(alg, mod, [i, j], options.bound).found:
                compat_bad += 1
    report.add(
        SuiteRecord(
            id="modules/product-compatibility",
            identity="damped multi-products stay lower-truncated",
            kind=CHECK,
            verdict=FAIL if compat_bad else PASS,
            orders={"pairs_failing": compat_bad},
        )
    )
    gens = generating_basis_vectors(alg, mod)
    report.add(
        SuiteRecord(
            id="modules/generation",
            identity="which basis vectors generate the module",
            kind=CLASSIFICATION,
            verdict=",".join(
                mod.basis[k] for k, g in enumerate(gens) if g
            )
            or "none",
            orders={"generators": sum(gens), "dim": mod.dim},
        )
    )


def _suite_closure(bundle: AlgebraBundle, options: SuiteOptions, report: SuiteReport):
    alg = bundle.alg
    if bundle.operators is not None:
        gens = bundle.operators
    elif bundle.operator_names is not None:
        gens = [
            operator_from_structure(alg, alg.basis_index(nm), bundle.module)
            for nm in bundle.operator_names
        ]
    else:
        report.add(
            SuiteRecord(
                id="closure/skipped",
                identity="span generated by compatible operators",
                kind=CLASSIFICATION,
                verdict="no operator set declared",
            )
        )
        return
    result = closure(
        gens,
        n_range=options.n_range,
        dim_cap=options.dim_cap,
        depth_cap=options.depth_cap,
        local_products=options.local_products,
        dim=gens[0].dim if gens else (bundle.module.dim if bundle.module else alg.dim),
    )
    report.add(
        SuiteRecord(
            id="closure/status",
            identity="span generated by compatible operators",
            kind=CLASSIFICATION,
            verdict=result.status,
            exact=result.certified,
            orders={"rank": result.span.rank, "rounds": result.rounds},
            notes=list(result.notes),
        )
    )
    if result.status != "closed":
        return
    st = result.structure
    report.add_check(
        "closure/structure-axioms", "closed span satisfies the axioms", validate_structure(st)
    )
    worst = 0
    verdict = PASS
    for u in range(st.dim):
        for w in range(st.dim):
            search = find_weak_assoc_l(st, u, w, options.bound)
            if not search.found:
                verdict = FAIL
            else:
                worst = max(worst, search.order)
    report.add(
        SuiteRecord(
            id="closure/weak-associativity",
            identity="uniform weak associativity of the closed span",
            kind=CHECK,
            verdict=verdict,
            orders={"max_l": worst},
        )
    )
    report.add_check(
        "closure/module",
        "the underlying space is a faithful module of the span",
        verify_module_structure(result),
    )
    report.embedded["closure_algebra"] = algebra_to_data(st)


_RUNNERS = {
    "axioms": _suite_axioms,
    "locality": _suite_locality,
    "skew": _suite_skew,
    "jacobi": _suite_jacobi,
    "jacobi-like": _suite_jacobi_like,
    "modules": _suite_modules,
    "closure": _suite_closure,
}


def run_suite(
    bundle: AlgebraBundle, suite: str = "all", options: SuiteOptions | None = None
) -> SuiteReport:
    if suite not in SUITES:
        raise ValidationError(f"unknown suite {suite!r}; choose from {SUITES}")
    options = options or SuiteOptions()
    report = SuiteReport(target=bundle.name, suite=suite, options=options.as_dict())
    names = (
        ["axioms", "locality", "skew", "jacobi", "jacobi-like", "modules", "closure"]
        if suite == "all"
        else [suite]
    )
    for name in names:
        _RUNNERS[name](bundle, options, report)
    return report


# ---------------------------------------------------------------------------
# emission


def emit_report(report: SuiteReport, format: str = "text") -> bytes:
    if format == "json":
        return canonical_json(report.as_dict())
    if format != "text":
        raise ValidationError(f"unknown format {format!r}")
    lines = [f"target: {report.target}   suite: {report.suite}"]
    for rec in report.records:
        tag = "" if rec.exact else "  [window-sound]"
        orders = (
            "  " + ", ".join(f"{k}={v}" for k, v in sorted(rec.orders.items()))
            if rec.orders
            else ""
        )
        lines.append(f"  {rec.kind:14s} {rec.id:44s} {rec.verdict}{orders}{tag}")
        for w in rec.witnesses:
            lines.append(f"      witness: {w}")
        for note in rec.notes:
            lines.append(f"      note: {note}")
    s = report.summary
    lines.append(
        f"summary: {s['checks']} checks, {s['failures']} failures, "
        f"{s['inconclusive']} inconclusive, {s['records']} records"
    )
    return ("\n".join(lines) + "\n").encode()
