"""Named verification jobs and their report lines.

Every job is a pure function of its :class:`VerificationJob` parameters, so
the serialised parameter line reproduces the report byte for byte.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

from sympy.ntheory import primerange

from .arithmetic import DIVISIBILITY, divisibility_report, residue_equivalence
from .congruence import (
    lemma34_check,
    mazur_search,
    min_window,
    prop33_check,
    Witness,
    znz_multiplicities,
)
from .cyclic_trace import M23_ORDERS, F_g, Q_M23, constants, f_g
from .ingest import default_curves, load_basis, parse_curves
from .modforms import F2, He_series, appendix_GN, eisenstein_E2, E2N, sigmaN_series
from .qseries import EtaQuotientSpec, eta_expand, series_D
from .voa import (
    VOAConfig,
    W_trace_residual,
    brute_ext_trace,
    brute_sym_trace,
    clifford_trace,
    eta_closed_forms,
    heisenberg_trace,
    iter_shapes,
)

JOB_NAMES = (
    "dmz",
    "m23-integrality",
    "prop32",
    "prop33",
    "lemma34",
    "thm35",
    "cor41",
    "residue",
    "voa-lemmas",
    "voa-theorem",
)
PRIME_LEVELS = tuple(primerange(2, 98))
VOA_ORACLE_LEVELS = (2, 3, 5)
VOA_THEOREM_LEVELS = (2, 3, 5, 7, 11, 13)
CUSP_CHOICES = ("searched", "appendix")
# the four levels whose integrality is stated separately, labelled (a)-(d)
M23_STATEMENTS = {11: "a", 14: "b", 15: "c", 23: "d"}

# job -> (default bound, default levels)
DEFAULTS: dict[str, tuple[int, tuple[int, ...]]] = {
    "dmz": (100, ()),
    "m23-integrality": (500, M23_ORDERS),
    "prop32": (0, PRIME_LEVELS),
    "prop33": (0, PRIME_LEVELS),
    "lemma34": (200, PRIME_LEVELS),
    "thm35": (200, PRIME_LEVELS),
    "cor41": (2000, tuple(sorted(DIVISIBILITY))),
    "residue": (2000, (11,)),
    "voa-lemmas": (25, VOA_ORACLE_LEVELS),
    "voa-theorem": (200, VOA_THEOREM_LEVELS),
}


class JobInputError(ValueError):
    """Bad job parameters (unknown job, level outside the job's range, ...)."""


@dataclass(frozen=True)
class VerificationJob:
    """``bound`` is the top q-exponent checked (a prime bound for cor41/residue).

    A bound of 0 for prop32/prop33 means the window ``2(N+1)`` per level.
    """

    name: str
    levels: tuple[int, ...] = ()
    bound: Optional[int] = None
    basis_dir: Optional[str] = None
    curves: Optional[str] = None
    cusp: str = "searched"

    def __post_init__(self):
        if self.name not in JOB_NAMES:
            raise JobInputError(f"unknown job {self.name!r}; expected one of {', '.join(JOB_NAMES)}")
        if self.cusp not in CUSP_CHOICES:
            raise JobInputError(f"unknown cusp choice {self.cusp!r}")
        bound, levels = DEFAULTS[self.name]
        if self.bound is None:
            object.__setattr__(self, "bound", bound)
        if not self.levels:
            object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "levels", tuple(sorted(set(self.levels))))
        if self.bound < 0:
            raise JobInputError("bound must be non-negative")

    def param_line(self) -> str:
        parts = [f"job={self.name}", f"bound={self.bound}", "levels=" + ",".join(map(str, self.levels))]
        if self.name == "prop33":
            parts.append(f"cusp={self.cusp}")
        if self.basis_dir:
            parts.append(f"basis_dir={self.basis_dir}")
        if self.curves:
            parts.append(f"curves={self.curves}")
        return " ".join(parts)

    @classmethod
    def from_param_line(cls, line: str) -> "VerificationJob":
        kv = dict(tok.split("=", 1) for tok in line.split())
        levels = tuple(int(x) for x in kv.get("levels", "").split(",") if x)
        return cls(
            kv["job"],
            levels,
            int(kv["bound"]) if "bound" in kv else None,
            kv.get("basis_dir"),
            kv.get("curves"),
            kv.get("cusp", "searched"),
        )


@dataclass(frozen=True)
class ReportLine:
    job: str
    target: str
    ok: bool
    witness: str = ""

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"

    def text(self) -> str:
        return f"{self.job} {self.target}: {self.status}" + (f" ({self.witness})" if self.witness else "")

    def tsv(self) -> str:
        return "\t".join((self.job, self.target, self.status, self.witness or "-"))


TSV_HEADER = "job\ttarget\tstatus\twitness"


def _line(job, target, w, detail=None) -> ReportLine:
    if w:
        return ReportLine(job, target, True, detail or "")
    where = f"first failure at q^{w.exponent}" if w.exponent is not None else "failed"
    return ReportLine(job, target, False, f"{where}: {w.detail}" if w.detail else where)


@lru_cache(maxsize=None)
def searched_cusp_form(N: int, basis_dir: Optional[str], window: int):
    """``G = -g`` for the ingested basis, cached per (level, basis, window)."""
    basis = load_basis(N, basis_dir, min_bound=window - 1)
    return mazur_search(N, basis, window)


def search_window(N: int, bound: int) -> int:
    return max(bound + 1 if bound else 2 * (N + 1), min_window(N))


def _need_prime(job, levels):
    bad = [N for N in levels if N not in PRIME_LEVELS]
    if bad:
        raise JobInputError(f"{job} needs prime levels <= 97, got {bad}")


# -- job bodies --------------------------------------------------------------


def _dmz(job: VerificationJob) -> list[ReportLine]:
    B = job.bound + 1
    lhs = eisenstein_E2(B) * -2 + F2(B) * 48
    He = He_series(B)
    rhs = He * eta_expand({1: 3}, B)
    out = [_line(job.name, f"bound={job.bound}", _exact(lhs, rhs))]
    got = [He.coeff(Fraction(-1, 8)), He.coeff(Fraction(7, 8)), He.coeff(Fraction(15, 8))]
    ok = got == [-2, 90, 462]
    out.append(ReportLine(job.name, "He-leading", ok, "" if ok else f"got {', '.join(map(str, got))}"))
    return out


def _exact(a, b) -> Witness:
    d = a - b
    for e, c in zip(d.exponents(), d.coeffs):
        if c:
            return Witness(False, e, f"difference {c}")
    return Witness(True, checked=d.order)


def _m23(job: VerificationJob) -> list[ReportLine]:
    bad = [N for N in job.levels if N not in M23_ORDERS]
    if bad:
        raise JobInputError(f"{bad} are not orders of elements of M23")
    out = []
    for N in job.levels:
        s = Q_M23(N, job.bound + 1)
        w = Witness(True)
        for e, c in zip(s.exponents(), s.coeffs):
            if c.denominator != 1:
                w = Witness(False, e, f"coefficient {c}")
                break
        item = M23_STATEMENTS.get(N)
        out.append(_line(job.name, f"N={N}" + (f" statement-{item}" if item else ""), w))
    return out


def _prop32(job: VerificationJob) -> list[ReportLine]:
    _need_prime(job.name, job.levels)
    out = []
    for N in job.levels:
        win = search_window(N, job.bound)
        g, _ = searched_cusp_form(N, job.basis_dir, win)
        n = constants(N).n_N
        sig = sigmaN_series(N, win)
        w = Witness(True)
        for m in range(1, win):
            if (g.coeff(m) - sig.coeff(m)) % n:
                w = Witness(False, m, f"c_g={g.coeff(m)} sigma_N={sig.coeff(m)} mod {n}")
                break
        out.append(_line(job.name, f"N={N}", w, f"window {win} mod {n}"))
    return out


def _prop33(job: VerificationJob) -> list[ReportLine]:
    if job.cusp == "searched":
        _need_prime(job.name, job.levels)
    out = []
    for N in job.levels:
        win = search_window(N, job.bound)
        if job.cusp == "appendix":
            G = appendix_GN(N, win)
        else:
            G = searched_cusp_form(N, job.basis_dir, win)[1]
        out.append(_line(job.name, f"N={N} cusp={job.cusp}", prop33_check(N, G, win), f"window {win}"))
    if job.cusp == "searched" and 11 in job.levels:
        # the appendix G_11 is a different normalisation and must not satisfy the congruence
        w = prop33_check(11, appendix_GN(11, 24), 24)
        ok = not w and w.exponent == 1
        out.append(ReportLine(job.name, "N=11 appendix-control", ok, f"appendix form fails at q^{w.exponent}"))
    return out


def _lemma34(job: VerificationJob) -> list[ReportLine]:
    _need_prime(job.name, job.levels)
    out = []
    for N in job.levels:
        G = searched_cusp_form(N, job.basis_dir, search_window(N, 0))[1]
        out.append(_line(job.name, f"N={N}", lemma34_check(N, G, job.bound + 1)))
    return out


def _thm35(job: VerificationJob) -> list[ReportLine]:
    _need_prime(job.name, job.levels)
    B = job.bound + 1
    out = []
    for N in job.levels:
        G = searched_cusp_form(N, job.basis_dir, search_window(N, 0))[1]
        pairs = {
            "f": (f_g(N, True, None, B), f_g(N, False, G, B)),
            "F": (F_g(N, True, B), F_g(N, False, B)),
        }
        for tag, (fe, fo) in pairs.items():
            try:
                table = znz_multiplicities(N, fe, fo, B)
            except ArithmeticError as exc:
                out.append(ReportLine(job.name, f"N={N} {tag}", False, str(exc)))
                continue
            ident, other = table.reconstruct()
            recon = ident == fe.integer_coeffs()[:B] and other == fo.integer_coeffs()[:B]
            cyclo = table.reconstruct_cyclotomic(1) == other if N <= 13 else True
            ok = recon and cyclo
            out.append(ReportLine(job.name, f"N={N} {tag}", ok, "" if ok else "reconstruction mismatch"))
            if N == 2 and tag == "f":
                spot = table.rows[1][:2] == (8, 16)
                out.append(ReportLine(job.name, "N=2 m0(1),m1(1)", spot, "" if spot else f"got {table.rows[1][:2]}"))
    return out


def _cor41(job: VerificationJob) -> list[ReportLine]:
    curves = {c.level: c for c in parse_curves(job.curves or default_curves())}
    direct = {11: {11: 11}, 14: {2: 4, 7: 7}, 15: {3: 5, 5: 5}}
    coeffs = {14: {2: -1, 7: 1}, 15: {3: -1, 5: 1}}
    out = []
    for N in job.levels:
        if N not in DIVISIBILITY:
            raise JobInputError(f"cor41 covers levels {sorted(DIVISIBILITY)}, got {N}")
        rep = divisibility_report(N, job.bound, curves.get(N))
        fail = next((c for c in rep.checked if not c.ok), None)
        witness = f"p={fail.p}: {fail.line()}" if fail else f"{len(rep.checked)} good primes"
        out.append(ReportLine(job.name, f"N={N} d={rep.divisor}", fail is None, witness))
        if N in curves:
            pts = sum(1 for c in rep.checked if c.point_count is not None)
            out.append(ReportLine(job.name, f"N={N} curve={curves[N].label}", fail is None and pts > 0, f"{pts} point counts"))
        exp = direct[N]
        ok = rep.excluded == exp
        out.append(ReportLine(job.name, f"N={N} bad-primes", ok, " ".join(f"#J({p})={v}" for p, v in sorted(rep.excluded.items()))))
        if N in coeffs:
            G = appendix_GN(N, max(coeffs[N]) + 1)
            got = {p: int(G.coeff(p)) for p in coeffs[N]}
            ok = got == coeffs[N]
            out.append(ReportLine(job.name, f"N={N} c(p)", ok, " ".join(f"c({p})={v}" for p, v in sorted(got.items()))))
    return out


def _residue(job: VerificationJob) -> list[ReportLine]:
    if job.levels != (11,):
        raise JobInputError("the residue job is stated for level 11 only")
    w = residue_equivalence(job.bound)
    if w:
        return [ReportLine(job.name, f"N=11 p<{job.bound}", True, f"{w.checked} primes")]
    return [ReportLine(job.name, f"N=11 p<{job.bound}", False, f"first failure at p={w.exponent}: {w.detail}")]


def reference_eta_quotients(N: int) -> dict[str, EtaQuotientSpec]:
    """The closed forms of the factor traces, written out independently of the shapes."""
    if N == 2:
        h, hg, c, cg, u = {1: -24}, {1: 8, 2: -16}, {1: 32}, {2: 16}, {1: -8}
    elif N == 3:
        h, hg, c, cg, u = {1: -24}, {1: 3, 3: -9}, {1: 27}, {3: 9}, {1: -3}
    else:
        h, hg, c, cg, u = {1: 1 - N * N}, {1: 1, N: -N}, {1: N * N}, {N: N}, {1: -1}
    names = ("heisenberg_e", "heisenberg_g", "clifford_e", "clifford_g", "U")
    return {k: EtaQuotientSpec.of(v) for k, v in zip(names, (h, hg, c, cg, u))}


def _voa_lemmas(job: VerificationJob) -> list[ReportLine]:
    _need_prime(job.name, job.levels)
    deg = job.bound
    out = []
    for N in job.levels:
        got, want = eta_closed_forms(N), reference_eta_quotients(N)
        bad = [k for k in want if got[k] != want[k]]
        out.append(ReportLine(job.name, f"N={N} closed-forms", not bad, ", ".join(f"{k}={got[k]}" for k in bad)))
        cfg = VOAConfig.for_prime(N)
        ell = Fraction(cfg.heisenberg_dim, 24)
        for tag, shape, cycles in iter_shapes(N):
            h = heisenberg_trace(shape, deg + 1)
            out.append(_line(job.name, f"N={N} {tag} sym-oracle", _exact(brute_sym_trace(shape, deg), h)))
            c = clifford_trace(cfg.clifford_factors, cycles, deg + 1)
            out.append(_line(job.name, f"N={N} {tag} ext-oracle", _exact(brute_ext_trace(cycles, deg), c)))
            E = eisenstein_E2(deg + 1) if tag == "e" else E2N(N, deg + 1)
            out.append(_line(job.name, f"N={N} {tag} log-derivative", _exact(series_D(h), h * E * -ell)))
    return out


def _voa_theorem(job: VerificationJob) -> list[ReportLine]:
    _need_prime(job.name, job.levels)
    out = []
    for N in job.levels:
        for tag, ident in (("e", True), ("g", False)):
            r = W_trace_residual(N, ident, job.bound + 1)
            e = r.valuation()
            w = Witness(True) if e is None else Witness(False, e, f"residual {r.coeff(e)}")
            out.append(_line(job.name, f"N={N} {tag}", w))
    return out


RUNNERS: dict[str, Callable[[VerificationJob], list[ReportLine]]] = {
    "dmz": _dmz,
    "m23-integrality": _m23,
    "prop32": _prop32,
    "prop33": _prop33,
    "lemma34": _lemma34,
    "thm35": _thm35,
    "cor41": _cor41,
    "residue": _residue,
    "voa-lemmas": _voa_lemmas,
    "voa-theorem": _voa_theorem,
}


def run_job(job: VerificationJob) -> list[ReportLine]:
    """Run one job; arithmetic failures inside a module become failed lines.

    Input problems (missing files, malformed data, bad parameters) propagate
    so the caller can distinguish them from verification failures.
    """
    try:
        return RUNNERS[job.name](job)
    except (ArithmeticError, AssertionError) as exc:
        return [ReportLine(job.name, "error", False, f"{type(exc).__name__}: {exc}")]


@dataclass
class SuiteReport:
    jobs: list[VerificationJob] = field(default_factory=list)
    lines: list[ReportLine] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(l.ok for l in self.lines)


def default_suite(basis_dir: Optional[str] = None, curves: Optional[str] = None) -> list[VerificationJob]:
    return [VerificationJob(name, basis_dir=basis_dir, curves=curves) for name in JOB_NAMES]


def run_suite(jobs: list[VerificationJob]) -> SuiteReport:
    """Run jobs in canonical job order; lines keep each job's own deterministic order."""
    order = {n: i for i, n in enumerate(JOB_NAMES)}
    ordered = sorted(jobs, key=lambda j: (order[j.name], j.param_line()))
    rep = SuiteReport(ordered)
    for j in ordered:
        rep.lines.extend(run_job(j))
    return rep


def with_overrides(job: VerificationJob, **kw) -> VerificationJob:
    return replace(job, **{k: v for k, v in kw.items() if v is not None})
