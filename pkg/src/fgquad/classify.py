"""Top-level existence classifier with certified verdicts.

Verdict precedence: abelianization obstruction, explicit table branch,
second-derived-equation decider, pattern witness, Wicks search, undetermined.
Non-existence certificates name the closed branch or the violated
augmentation condition; existence certificates are substitution-verified
witness pairs; undetermined verdicts carry the trace of what was tried.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Optional

from .derived import analyze_v, second_decide
from .errors import BudgetExceeded
from .surface import project
from .tables import TableReport, degree_two_witness, instantiate_witness, table_branch
from .tables import verify_tables as _verify_tables
from .words import (
    BasisTag,
    EquationSpec,
    Word,
    change_basis,
    comm,
    parse_word,
    relator_in,
    sgn,
    solution_is_faithful,
    square_root,
    verify_solution,
)

Outcome = Literal["exists", "not_exists", "undetermined"]
Reason = Literal[
    "abelian_obstruction",
    "table_branch",
    "second_derived_unsolvable",
    "wicks_exhaustive",
]


@dataclass(frozen=True)
class Budgets:
    wicks_len: int = 64
    enum_bound: int = 8
    l_window_override: Optional[int] = None

    def __post_init__(self) -> None:
        if self.wicks_len <= 0 or self.enum_bound <= 0:
            raise ValueError("budgets must be positive")


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    branch: str
    witness: Optional[tuple[Word, Word]] = None
    verified: bool = False
    reason: Optional[Reason] = None
    certificate: Optional[str] = None
    trace: dict = field(default_factory=dict)


def _to_input_frame(
    spec: EquationSpec, x: Word, y: Word
) -> tuple[Word, Word]:
    """Convert an adapted-frame pair to the frame the caller asked for."""
    if spec.frame == "adapted_xy":
        return x, y
    if spec.delta == 1:
        z1, z2 = x, y
    else:
        z1, z2 = x * y, y.inv()
    classic = BasisTag.classic(spec.epsilon)
    return change_basis(z1, classic), change_basis(z2, classic)


def _exists(spec: EquationSpec, v: Word, x_ad: Word, y_ad: Word, branch: str, trace: dict | None = None) -> Verdict:
    first, second = _to_input_frame(spec, x_ad, y_ad)
    result = verify_solution(spec, v, first, second)
    in_class = solution_is_faithful(spec, first, second) == (spec.solution_class == "faithful")
    if not (result.holds and in_class):
        raise AssertionError(f"unverified witness for branch {branch}")
    return Verdict("exists", branch, (first, second), True, trace=trace or {})


def pattern_witness(spec: EquationSpec, v: Word) -> Optional[tuple[Word, Word]]:
    """Syntactic witness families for the mixed cases (adapted frame).

    Matches v against the explicitly solved shapes: perfect squares and even
    powers, (alpha*beta)-powers, relator powers, relator times a beta-power,
    and the single explicit beta^2-conjugate row.  Every hit is verified by
    substitution before being returned.
    """
    basis = v.basis
    rel = relator_in(basis)
    one = Word.identity(basis)
    g_a = Word.gen(basis, "a")
    g_b = Word.gen(basis, "b")
    faithful = spec.solution_class == "faithful"

    def ok(pair: Optional[tuple[Word, Word]]) -> Optional[tuple[Word, Word]]:
        if pair is None:
            return None
        res = verify_solution(spec, v, *pair)
        in_class = solution_is_faithful(spec, *pair) == faithful
        if res.holds and in_class and res.x_in_n:
            return pair
        return None

    candidates: list[tuple[Word, Word]] = []
    # v a relator power (the right-hand side collapses): witness (1, u)
    if _exact_power_of(v, rel) is not None:
        for u in (g_b, g_a, g_a * g_b):
            candidates.append((one, u))
    # v = u^2
    u = square_root(v)
    if u is not None:
        candidates.append((comm(u * u * rel.inv(), u.inv()), u.inv()))
        candidates.append((comm(u, rel.inv()), rel.inv() * u * rel))
        # v = u^{2k} with orientation-reversing u
        root, e = _primitive_root(v)
        for j in range(1, e + 1):
            if e % (2 * j):
                continue
            uu = root**j
            if sgn(uu) != -1:
                continue
            k = e // (2 * j)
            candidates.append((uu ** (2 * k) * (uu * rel) ** (-2 * k), rel.inv() * uu.inv()))
    if spec.epsilon == -1:
        # v = (alpha beta)^{2n}
        ab = g_a * g_b
        n = _exact_power_of(v, ab * ab)
        if n is not None:
            candidates.append((comm(v, g_b), g_b))
        # v = B beta^{2n}
        w = rel.inv() * v
        if len(w.syls) <= 1 and all(g == 1 and e % 2 == 0 for g, e in w.syls):
            n = w.syls[0][1] // 2 if w.syls else 0
            aba = g_a * g_b * g_a
            candidates.append(
                (aba ** (2 * n) * g_b ** (-2 * n), g_b ** (2 * n) * aba ** (1 - 2 * n))
            )
        # v = beta^2 B_alpha
        if v == parse_word("b b conj(a)", basis):
            candidates.append(
                (
                    parse_word("conj(b b a) conj(b b)^-1 conj(b b a)^-1 conj(b b a a B)^-1", basis),
                    parse_word("R^-2 conj(a)^-1 a^2 B", basis),
                )
            )
    for pair in candidates:
        hit = ok(pair)
        if hit is not None:
            return hit
    return None


def _exact_power_of(v: Word, base: Word) -> Optional[int]:
    if v.is_identity:
        return 0
    if base.is_identity or len(v) % len(base):
        return None
    n = len(v) // len(base)
    for k in (n, -n):
        if base**k == v:
            return k
    return None


def _primitive_root(v: Word) -> tuple[Word, int]:
    """Largest e with v == root**e."""
    from .words import cyclic_reduce, word_from_letters

    core, t = cyclic_reduce(v)
    letters = list(core.letters())
    m = len(letters)
    for e in range(m, 1, -1):
        if m % e:
            continue
        step = m // e
        chunk = letters[:step]
        if all(letters[i * step : (i + 1) * step] == chunk for i in range(e)):
            return t * word_from_letters(v.basis, chunk) * t.inv(), e
    return v, 1


def classify(spec: EquationSpec, v: Word, budgets: Budgets = Budgets()) -> Verdict:
    """Decide whether the family member has a solution of the requested class."""
    adapted = BasisTag.adapted(spec.epsilon)
    v_ad = v if v.basis == adapted else change_basis(v, adapted)
    spec_ad = EquationSpec(spec.delta, spec.epsilon, spec.theta, spec.solution_class, "adapted_xy")
    vbar = project(v_ad)
    branch = table_branch(spec_ad, vbar, sgn(v_ad))
    if branch.kind == "abelian":
        return Verdict(
            "not_exists",
            branch.row,
            reason="abelian_obstruction",
            certificate="right-hand side has nonzero exponent sums",
        )
    if branch.kind == "not_exists":
        return Verdict("not_exists", branch.row, reason="table_branch")
    if branch.kind == "exists":
        assert branch.witness is not None
        x_ad, y_ad = instantiate_witness(branch.witness, v_ad)
        return _exists(spec, v, x_ad, y_ad, branch.row)
    if branch.kind == "degree_two":
        classic = BasisTag.classic(spec.epsilon)
        v_classic = change_basis(v_ad, classic)
        spec_z = EquationSpec(spec.delta, spec.epsilon, spec.theta, spec.solution_class, "original_z")
        pair = degree_two_witness(spec_z, v_classic)
        if pair is not None:
            res = verify_solution(spec_z, v_classic, *pair)
            if res.holds and res.faithful:
                if spec.frame == "original_z":
                    return Verdict("exists", branch.row, pair, True)
                x_ad = change_basis(pair[0] if spec.delta == 1 else pair[0] * pair[1], adapted)
                y_ad = change_basis(pair[1] if spec.delta == 1 else pair[1].inv(), adapted)
                return _exists(spec, v, x_ad, y_ad, branch.row)
        return Verdict(
            "undetermined",
            branch.row,
            trace={"note": "faithful query outside the degree-zero classification"},
        )
    # mixed case
    data = analyze_v(spec_ad, v_ad)
    decision = second_decide(data.case, data.V, budgets.l_window_override)
    trace = {"case": data.case.label(), "second_derived": decision.trace}
    if not decision.solvable:
        return Verdict(
            "not_exists",
            branch.row,
            reason="second_derived_unsolvable",
            certificate=decision.certificate,
            trace=trace,
        )
    trace["second_derived_solvable"] = {"ell": decision.ell, "L": decision.L}
    pair = pattern_witness(spec_ad, v_ad)
    if pair is not None:
        return _exists(spec, v, pair[0], pair[1], branch.row, trace)
    from .wicks import wicks_search

    try:
        report = wicks_search(spec_ad, v_ad, budgets.wicks_len)
    except BudgetExceeded as exc:
        trace["wicks"] = str(exc)
        trace["budgets"] = {"wicks_len": budgets.wicks_len, "enum_bound": budgets.enum_bound}
        return Verdict("undetermined", branch.row, trace=trace)
    wanted = spec.solution_class == "faithful"
    for (x_ad, y_ad), faithful in report.solutions:
        if faithful == wanted:
            return _exists(spec, v, x_ad, y_ad, branch.row, trace)
    trace["wicks"] = {"solutions": len(report.solutions), "exhaustive": report.exhaustive}
    return Verdict(
        "not_exists",
        branch.row,
        reason="wicks_exhaustive",
        certificate="exhaustive canonical-solution analysis found no solution of the class",
        trace=trace,
    )


def verify_tables() -> TableReport:
    return _verify_tables()
