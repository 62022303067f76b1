"""Randomized verification suites over a seeded corpus of ``(A, L)`` instances.

Every check compares two independently computed quantities (or tests an
identity that must hold) and records a :class:`PropertyResult`. A failure
always carries the offending residual as witness.

Suites:

``representations``  every alternative formula agrees with the definition
``thm31``            relations between the five indices
``thm32``            structural identities plus the eleven Drazin formulas
``thm4``             every characterization holds for the BDD inverse and
                     fails for perturbed candidates
``thm5``             ``W1``/``W2`` invariants, rank-equation uniqueness,
                     submatrix, projector/Moore-Penrose and restriction forms
``lemmas``           block-Drazin closed forms and the bordered rank identity
``solver``           constrained and restricted systems, Cramer's rule and the
                     minimum ``P``-norm certificate
"""

from __future__ import annotations

import hashlib
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources

from .bdd import (
    AX_PROJ,
    XA_PROJ,
    BddContext,
    auto_select_submatrix,
    bdd_all_representations,
    build_context,
    characterize,
    condition_holds,
    index_equivalences,
    projector_mp_representations,
    rank_equation_representation,
    restriction_representation,
    submatrix_representation,
)
from .errors import JordanBasisUnavailable, RankAmbiguityError
from .geninv import (
    bordered_rank_check,
    drazin,
    drazin_block_triangular,
    drazin_column_bordered,
    drazin_orthogonal_sum_check,
    drazin_product_check,
)
from .io import dumps_matrix, parse_matrix
from .matrix import EXACT, Matrix, block
from .report import SKIPPED, PropertyResult, VerificationReport, check
from .scalar import GaussianRational
from .solver import (
    PNorm,
    core_nilpotent_basis,
    cramer_min_p_norm,
    jordan_basis,
    min_p_norm_certify,
    solve_constrained,
    solve_restricted,
)
from .subspace import Subspace

__all__ = [
    "Instance",
    "SUITES",
    "CLI_SUITES",
    "random_instance",
    "corpus",
    "reference_instances",
    "reference_matrix",
    "run_instance",
    "run_corpus",
]

SUITES = ("representations", "thm31", "thm32", "thm4", "thm5", "lemmas", "solver")
CLI_SUITES = ("thm31", "thm32", "thm4", "thm5", "lemmas", "solver", "all")
FAMILIES = ("dense", "nilpotent", "triangular", "low-rank")
SUBSPACE_KINDS = ("coordinate", "rational", "complex")


@dataclass(frozen=True)
class Instance:
    a: Matrix
    l: Subspace
    label: str
    seed: int | None = None
    family: str | None = None
    subspace_kind: str | None = None

    def descriptor(self) -> dict:
        def digest(m: Matrix) -> str:
            return hashlib.sha256(dumps_matrix(m).encode()).hexdigest()[:16]

        out = {"label": self.label, "n": self.a.nrows, "dim_L": self.l.dim,
               "A_sha256": digest(self.a), "L_sha256": digest(self.l.basis)}
        if self.seed is not None:
            out["seed"] = self.seed
        if self.family:
            out["family"] = self.family
            out["subspace"] = self.subspace_kind
        return out

    def on_backend(self, backend: str, tol: float) -> tuple[Matrix, Subspace]:
        if backend == EXACT:
            return self.a, self.l
        return self.a.to_f64(tol), Subspace(self.l.basis.to_f64(tol))


# --- corpus -------------------------------------------------------------------------

def _entry(rng: random.Random) -> int:
    return rng.randint(-3, 3)


def _random_matrix(rng: random.Random, n: int, family: str) -> Matrix:
    if family == "dense":
        rows = [[_entry(rng) for _ in range(n)] for _ in range(n)]
    elif family == "nilpotent":
        rows = [[_entry(rng) if j > i else 0 for j in range(n)] for i in range(n)]
    elif family == "triangular":
        rows = [[_entry(rng) if j > i else (rng.choice((0, 0, 1, -1, 2)) if j == i else 0)
                 for j in range(n)] for i in range(n)]
    else:
        r = rng.randint(1, max(1, n - 1))
        base = [[_entry(rng) for _ in range(n)] for _ in range(r)]
        rows = [list(base[i]) if i < r else [rng.choice((1, -1)) * v for v in rng.choice(base)]
                for i in range(n)]
        rng.shuffle(rows)
    return Matrix(rows, ncols=n)


def _random_subspace(rng: random.Random, n: int, kind: str) -> Subspace:
    d = rng.randint(0, n)
    if kind == "coordinate":
        return Subspace.coordinate(n, rng.sample(range(1, n + 1), d))
    if kind == "rational":
        cols = [[_entry(rng) for _ in range(d)] for _ in range(n)]
    else:
        cols = [[GaussianRational.make(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(d)]
                for _ in range(n)]
    return Subspace(Matrix(cols, ncols=d))


def random_instance(seed: int, i: int) -> Instance:
    """Instance ``i`` of the corpus for ``seed``; independent of every other instance."""
    rng = random.Random(f"corpus:{seed}:{i}")
    n = rng.randint(2, 6)
    family = FAMILIES[i % len(FAMILIES)]
    kind = SUBSPACE_KINDS[(i // len(FAMILIES)) % len(SUBSPACE_KINDS)]
    return Instance(_random_matrix(rng, n, family), _random_subspace(rng, n, kind),
                    f"random[{seed}:{i}]", seed, family, kind)


def corpus(seed: int, count: int) -> list[Instance]:
    return [random_instance(seed, i) for i in range(count)]


def reference_matrix(name: str) -> Matrix:
    """Bundled fixture ``name`` (for example ``"counterexample_A"``)."""
    path = resources.files("ginv") / "data" / f"{name}.json"
    with resources.as_file(path) as p:
        return parse_matrix(p)


def reference_instances() -> list[Instance]:
    """The two worked instances bundled with the package and the ``A = I`` index witness."""
    out = [Instance(reference_matrix(f"{stem}_A"), Subspace(reference_matrix(f"{stem}_L")), stem)
           for stem in ("counterexample", "submatrix")]
    out.append(Instance(Matrix.identity(3), Subspace.coordinate(3, [1, 2]), "identity-proper-L"))
    return out


# --- individual checks ----------------------------------------------------------------

def _rank_one_update(rng: random.Random, n: int, complex_entries: bool, backend: str, tol: float) -> Matrix:
    """A nonzero rational rank-one matrix ``u v^T``."""
    def vec():
        while True:
            if complex_entries:
                vals = [GaussianRational.make(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(n)]
            else:
                vals = [rng.randint(-3, 3) for _ in range(n)]
            if any(vals):
                return Matrix.column(vals, backend=backend, tol=tol)

    return vec() @ vec().T


def _is_complex(ctx: BddContext) -> bool:
    return ctx.a.is_exact and any(
        isinstance(v, GaussianRational) for m in (ctx.a, ctx.p_l) for row in m.tolist() for v in row)


def check_drazin_forms(ctx: BddContext) -> list[PropertyResult]:
    return [check(f"Drazin formula: {name}", m == ctx.x, m - ctx.x) for name, m in bdd_all_representations(ctx)]


def check_other_forms(ctx: BddContext) -> list[PropertyResult]:
    """Projector/Moore-Penrose products, restriction to S and the submatrix product."""
    x = ctx.x
    forms = projector_mp_representations(ctx)
    forms.append(("restriction to S", restriction_representation(ctx)))
    results = [check(f"representation: {name}", m == x, m - x) for name, m in forms]
    if ctx.a.rank() >= 1:
        alpha, beta = auto_select_submatrix(ctx)
        y = submatrix_representation(ctx, alpha, beta)
        results.append(check(f"representation: submatrix alpha={alpha} beta={beta}", y == x, y - x))
    else:
        results.append(PropertyResult("representation: submatrix", SKIPPED, detail="rank(A) = 0"))
    return results


def check_representations(ctx: BddContext) -> list[PropertyResult]:
    return check_drazin_forms(ctx) + check_other_forms(ctx)


def check_thm31(ctx: BddContext) -> list[PropertyResult]:
    return index_equivalences(ctx.a, ctx.l).results


def check_thm32(ctx: BddContext) -> list[PropertyResult]:
    from .bdd import property_suite_thm32

    results = list(property_suite_thm32(ctx).results)
    results.append(check("BDD inverse is an outer inverse: XAX = X",
                         ctx.x @ ctx.a @ ctx.x == ctx.x, ctx.x @ ctx.a @ ctx.x - ctx.x))
    return results + check_drazin_forms(ctx)


def check_thm4(ctx: BddContext, seed: int = 0, perturbations: int = 3,
               candidate: Matrix | None = None) -> list[PropertyResult]:
    """Without a candidate: all verdicts hold for the BDD inverse and fail for perturbations.

    With a candidate: report each criterion's raw verdict for it, plus the two
    projector equations and whether it equals the BDD inverse.
    """
    if candidate is not None:
        if candidate.backend != ctx.a.backend:
            candidate = candidate.to_exact() if ctx.a.is_exact else candidate.to_f64(ctx.a.tol)
        results = []
        for cond, target in ((AX_PROJ, ctx.ax_target), (XA_PROJ, ctx.xa_target)):
            prod = ctx.a @ candidate if cond == AX_PROJ else candidate @ ctx.a
            results.append(check(f"candidate: {cond}", condition_holds(ctx, candidate, cond),
                                 prod - target))
        for v in characterize(ctx, candidate):
            results.append(check(f"candidate: {v.criterion}", v.holds, v.witness,
                                 None if v.holds else f"fails {', '.join(v.failed_conditions)}"))
        results.append(check("candidate equals the BDD inverse", candidate == ctx.x, candidate - ctx.x))
        return results
    results = [check(f"holds for BDD inverse: {v.criterion}", v.holds, v.witness,
                     None if v.holds else f"fails {', '.join(v.failed_conditions)}")
               for v in characterize(ctx, ctx.x)]
    rng = random.Random(f"thm4:{seed}")
    cplx = _is_complex(ctx)
    for j in range(perturbations):
        y = ctx.x + _rank_one_update(rng, ctx.n, cplx, ctx.a.backend, ctx.a.tol)
        wrongly_true = [v.criterion for v in characterize(ctx, y) if v.holds]
        results.append(check(f"perturbation {j} falsifies every criterion", not wrongly_true, y - ctx.x,
                             f"still holds: {wrongly_true}" if wrongly_true else None))
    return results


def check_thm5(ctx: BddContext, seed: int = 0, perturbations: int = 50) -> list[PropertyResult]:
    a, x, eye = ctx.a, ctx.x, ctx.a.eye()
    m, r = ctx.core_index, ctx.n - ctx.s.dim
    results = []
    for name, w, power in (("W1", ctx.w1, ctx.pl_a.power(m + 1)), ("W2", ctx.w2, ctx.a_pl.power(m + 1))):
        zero = w.zeros_like()
        results.append(check(f"{name} idempotent", w @ w == w, w @ w - w))
        results.append(check(f"{name} annihilates the (m+1)-th power on the right", w @ power == zero, w @ power))
        results.append(check(f"{name} annihilates the (m+1)-th power on the left", power @ w == zero, power @ w))
        results.append(check(f"rank {name} = n - dim S", w.rank() == r, w, f"rank {w.rank()} != {r}"))
    results.append(check("I - W1 = XA", eye - ctx.w1 == x @ a, eye - ctx.w1 - x @ a))
    results.append(check("I - W2 = AX", eye - ctx.w2 == a @ x, eye - ctx.w2 - a @ x))
    results.append(check("rank equation holds for the BDD inverse", rank_equation_representation(ctx, x), x))
    rng = random.Random(f"thm5:{seed}")
    cplx = _is_complex(ctx)
    spurious = None
    for _ in range(perturbations):
        y = x + _rank_one_update(rng, ctx.n, cplx, a.backend, a.tol)
        if rank_equation_representation(ctx, y):
            spurious = y
            break
    results.append(check(f"rank equation rejects {perturbations} perturbations", spurious is None,
                         spurious if spurious is not None else x))
    return results + check_other_forms(ctx)


def _blocks(a: Matrix, p: int) -> tuple[Matrix, Matrix, Matrix, Matrix]:
    n = a.nrows
    top, bot = range(p), range(p, n)
    return a.take(top, top), a.take(top, bot), a.take(bot, top), a.take(bot, bot)


def check_lemmas(ctx: BddContext, seed: int = 0) -> list[PropertyResult]:
    a, n = ctx.a, ctx.n
    rng = random.Random(f"lemmas:{seed}")
    results = []
    p = rng.randint(1, n - 1) if n > 1 else 1
    a11, a12, a21, a22 = _blocks(a, p)
    if n > 1:
        zero21 = a.zeros_like(n - p, p)
        upper = block([[a11, a12], [zero21, a22]])
        got = drazin_block_triangular(a11, a12, a22, "upper")
        want = drazin(upper).d_inverse
        results.append(check("block upper-triangular Drazin formula", got == want, got - want))
        lower = block([[a22, zero21.zeros_like(n - p, p)], [a12, a11]])
        got = drazin_block_triangular(a11, a12, a22, "lower")
        want = drazin(lower).d_inverse
        results.append(check("block lower-triangular Drazin formula", got == want, got - want))
        bordered = block([[a11, a.zeros_like(p, n - p)], [a21, a.zeros_like(n - p, n - p)]])
        got = drazin_column_bordered(a11, a21)
        want = drazin(bordered).d_inverse
        results.append(check("column-bordered Drazin formula", got == want, got - want))
    results.append(check("Drazin of orthogonal sum (PL A PL) + PLperp",
                         drazin_orthogonal_sum_check(ctx.core, ctx.p_perp), ctx.core))
    results.append(check("Drazin product identity for (PL, A PL)",
                         drazin_product_check(ctx.p_l, ctx.a_pl), ctx.a_pl))
    # (NM)^2 squares the conditioning of a random factor; on f64, redraw factors whose
    # products land in the rank-ambiguity band instead of judging the identity on them
    for attempt in range(5):
        other = Matrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)], ncols=n,
                       backend=a.backend, tol=a.tol)
        try:
            same = drazin_product_check(a, other)
            break
        except RankAmbiguityError:
            if attempt == 4:
                raise
    results.append(check("Drazin product identity for (A, random)", same, other))
    d = Matrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)], ncols=n, backend=a.backend, tol=a.tol)
    e = Matrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)], ncols=n, backend=a.backend, tol=a.tol)
    results.append(check("bordered rank identity, random blocks", bordered_rank_check(a, other, d, e), other))
    results.append(check("bordered rank identity, [[A, AX], [XA, X]]",
                         bordered_rank_check(a, ctx.x, ctx.x, ctx.x), ctx.x))
    return results


def _certificate_basis(ctx: BddContext, exact_core: Matrix) -> tuple[str, PNorm]:
    """Jordan basis of the core when its spectrum is rational, else the core-nilpotent basis."""
    try:
        kind, pn = "Jordan basis", jordan_basis(exact_core)
    except JordanBasisUnavailable:
        kind, pn = "core-nilpotent basis", core_nilpotent_basis(exact_core)
    if ctx.a.is_exact:
        return kind, pn
    return kind, PNorm(pn.p.to_f64(ctx.a.tol), pn.p_inv.to_f64(ctx.a.tol))


def check_solver(ctx: BddContext, seed: int = 0, samples: int = 100, family_samples: int = 20,
                 exact_core: Matrix | None = None) -> list[PropertyResult]:
    a, n = ctx.a, ctx.n
    backend, tol = a.backend, a.tol
    rng = random.Random(f"solver:{seed}")
    cplx = _is_complex(ctx)

    def rand_vec():
        if cplx:
            vals = [GaussianRational.make(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(n)]
        else:
            vals = [rng.randint(-3, 3) for _ in range(n)]
        return Matrix.column(vals, backend=backend, tol=tol)

    results = []
    b = ctx.core.power(ctx.core_index) @ rand_vec()
    sol = solve_constrained(ctx, b)
    results.append(check("x_min lies in S", ctx.s.contains(sol.x_min), sol.x_min))
    bad = None
    for _ in range(family_samples):
        xz = sol.member(rand_vec())
        res = ctx.pl_a @ xz - b
        if not res.is_zero():
            bad = res
            break
    results.append(check("every family member solves PL A x = b", bad is None, bad))
    xc = cramer_min_p_norm(ctx, b)
    results.append(check("Cramer's rule reproduces x_min", xc == sol.x_min, xc - sol.x_min))
    core_exact = exact_core if exact_core is not None else ctx.core
    kind, pn = _certificate_basis(ctx, core_exact)
    cert = min_p_norm_certify(ctx, b, pn, samples, seed)
    results.append(check(f"minimum P-norm certificate ({kind}) over {samples} samples", cert.ok,
                         sol.x_min, f"{cert.violations} violations"))
    mk = (ctx.a_pl + ctx.p_perp).power(ctx.k)
    beta = mk @ rand_vec()
    rs = solve_restricted(ctx, beta)
    bad = None
    for j in range(family_samples + 1):
        xr, yr = (rs.x_particular, rs.y_particular) if j == 0 else rs.member(rand_vec())
        residual = a @ xr + yr - beta
        if not residual.is_zero() or ctx.p_l @ xr != xr or not (ctx.p_l @ yr).is_zero():
            bad = residual
            break
    results.append(check("restricted system: A x + y = beta, x in L, y in L^perp", bad is None,
                         bad if bad is not None else beta))
    ru = solve_restricted(ctx, beta, in_range_constraint=True)
    same = ru.x_particular == rs.x_particular and ru.y_particular == rs.y_particular
    results.append(check("restricted system: uniqueness branch returns the particular pair", same,
                         ru.x_particular - rs.x_particular))
    return results


# --- driver --------------------------------------------------------------------------

def run_instance(inst: Instance, suites=SUITES, backend: str = EXACT, tol: float = 1e-10,
                 seed: int = 0, samples: int = 100, candidate: Matrix | None = None) -> VerificationReport:
    """Run ``suites`` on one instance and return its report."""
    a, l = inst.on_backend(backend, tol)
    report = VerificationReport(dict(inst.descriptor(), backend=backend))
    ctx = build_context(a, l, verify=False)
    exact_core = None
    if backend != EXACT:
        p = inst.l.projector
        exact_core = p @ inst.a @ p
    for name in suites:
        if name == "representations":
            res = check_representations(ctx)
        elif name == "thm31":
            res = check_thm31(ctx)
        elif name == "thm32":
            res = check_thm32(ctx)
        elif name == "thm4":
            res = check_thm4(ctx, seed, candidate=candidate)
        elif name == "thm5":
            res = check_thm5(ctx, seed)
        elif name == "lemmas":
            res = check_lemmas(ctx, seed)
        elif name == "solver":
            res = check_solver(ctx, seed, samples, exact_core=exact_core)
        else:
            raise ValueError(f"unknown suite {name!r}")
        report.extend(PropertyResult(f"{name}/{r.id}", r.status, r.witness, r.detail) for r in res)
    return report


def _run_one(args) -> VerificationReport:
    inst, suites, backend, tol, seed, samples = args
    try:
        return run_instance(inst, suites, backend, tol, seed, samples)
    except RankAmbiguityError as exc:
        raise RankAmbiguityError(f"{inst.label}: {exc}", exc.value) from exc


def run_corpus(instances, suites=SUITES, backend: str = EXACT, tol: float = 1e-10, seed: int = 0,
               samples: int = 100, parallel: int | bool = False) -> list[VerificationReport]:
    """Run the suites on every instance; ``parallel`` uses a process pool (``True`` = all cores)."""
    jobs = [(inst, tuple(suites), backend, tol, seed, samples) for inst in instances]
    if not parallel:
        return [_run_one(j) for j in jobs]
    workers = None if parallel is True else int(parallel)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_one, jobs, chunksize=4))


def merge_reports(reports: list[VerificationReport], instance: dict) -> VerificationReport:
    """Single report whose entries are prefixed with their instance label."""
    out = VerificationReport(dict(instance, instances=[r.instance for r in reports]))
    for r in reports:
        out.merge(r, prefix=f"[{r.instance.get('label', '?')}] ")
    return out

