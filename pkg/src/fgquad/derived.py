"""First and second derived equations for the four mixed parameter families.

A mixed family is one of:

* ``eq2_nf``  -- delta=+1, eps=-1, non-faithful, vbar = beta^{2n};
* ``eq3_nf``  -- delta=-1, eps=+1, non-faithful, vbar = alpha^{2m} beta^{2n};
* ``eq4_f``   -- delta=-1, eps=-1, faithful,     vbar = beta^{2n};
* ``eq4_nf``  -- delta=-1, eps=-1, non-faithful, vbar = alpha^{2m} beta^{4n};

with theta = -1 throughout.  The first derived equation
``(1 - delta*ybar) * xtilde = 1 + theta*vbar`` lives in the group ring; its
solutions are enumerated together with representative words.  Solvability of
the second derived equation (in the quotient Q) is decided exactly, by orbit
augmentations for the squares families and by a finite translation-parameter
search for the beta-power families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Optional

from .errors import CaseMismatch, NotMixedCase
from .groupring import (
    RingElement,
    alt_geom_ratio,
    geom_ratio,
    q_n,
)
from .orbits import HatAbs, HatL, Tilde, TildeL, augment, odd_part, same_orbit
from .quotient import p_q, q_divisible_by_two
from .surface import PiElement, project
from .tables import table_branch
from .words import BasisTag, EquationSpec, Word, change_basis, conj, relator, sgn

CaseKind = Literal["eq2_nf", "eq3_nf", "eq4_f", "eq4_nf"]

_CASE_PARAMS: dict[CaseKind, tuple[int, int, str]] = {
    "eq2_nf": (1, -1, "nonfaithful"),
    "eq3_nf": (-1, 1, "nonfaithful"),
    "eq4_f": (-1, -1, "faithful"),
    "eq4_nf": (-1, -1, "nonfaithful"),
}


@dataclass(frozen=True)
class MixedCase:
    kind: CaseKind
    n: int
    m: int = 0

    @property
    def delta(self) -> int:
        return _CASE_PARAMS[self.kind][0]

    @property
    def epsilon(self) -> int:
        return _CASE_PARAMS[self.kind][1]

    @property
    def theta(self) -> int:
        return -1

    @property
    def solution_class(self) -> str:
        return _CASE_PARAMS[self.kind][2]

    @property
    def has_two_params(self) -> bool:
        return self.kind in ("eq3_nf", "eq4_nf")

    @property
    def d(self) -> int:
        if not self.has_two_params or (self.m == 0 and self.n == 0):
            raise CaseMismatch("gcd parameter only exists for two-parameter cases")
        return math.gcd(self.m, self.n)

    @property
    def c_word(self) -> Word:
        d = self.d
        basis = BasisTag.adapted(self.epsilon)
        beta_exp = self.n // d if self.kind == "eq3_nf" else 2 * self.n // d
        return Word.from_syllables(basis, [(0, self.m // d), (1, beta_exp)])

    @property
    def c_bar(self) -> PiElement:
        return project(self.c_word)

    @property
    def vbar(self) -> PiElement:
        if self.kind in ("eq2_nf", "eq4_f"):
            return PiElement(-1, 0, 2 * self.n)
        if self.kind == "eq3_nf":
            return PiElement(1, 2 * self.m, 2 * self.n)
        return PiElement(-1, 2 * self.m, 4 * self.n)

    @property
    def v0_word(self) -> Word:
        basis = BasisTag.adapted(self.epsilon)
        if self.kind in ("eq2_nf", "eq4_f"):
            return Word.from_syllables(basis, [(1, 2 * self.n)])
        if self.m == 0 and self.n == 0:
            return Word.identity(basis)
        return self.c_word ** (2 * self.d)

    def label(self) -> str:
        bits = f"n={self.n}" if not self.has_two_params else f"m={self.m}, n={self.n}"
        return f"{self.kind}({bits})"


@dataclass(frozen=True)
class ConjData:
    v: Word
    vbar: PiElement
    case: MixedCase
    v0: Word
    V: RingElement


def _case_kind_for(spec: EquationSpec) -> Optional[CaseKind]:
    key = (spec.delta, spec.epsilon, spec.theta, spec.solution_class)
    for kind, (delta, eps, cls) in _CASE_PARAMS.items():
        if key == (delta, eps, -1, cls):
            return kind
    return None


def analyze_v(spec: EquationSpec, v: Word) -> ConjData:
    """Decompose v = v0 * (product of relator conjugates) for a mixed case."""
    v_adapted = change_basis(v, BasisTag.adapted(spec.epsilon))
    vbar = project(v_adapted)
    kind = _case_kind_for(spec)
    branch = table_branch(spec, vbar, sgn(v_adapted))
    if kind is None or branch.kind != "mixed":
        raise NotMixedCase(
            f"parameters fall in branch {branch.row} ({branch.kind}), not a mixed case",
            branch=branch.row,
        )
    if kind in ("eq2_nf", "eq4_f"):
        case = MixedCase(kind, n=vbar.s // 2)
    elif kind == "eq3_nf":
        case = MixedCase(kind, n=vbar.s // 2, m=vbar.r // 2)
    else:
        case = MixedCase(kind, n=vbar.s // 4, m=vbar.r // 2)
    v0 = case.v0_word
    return ConjData(v_adapted, vbar, case, v0, q_n(v0.inv() * v_adapted))


# ---------------------------------------------------------------------------
# First derived equation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FirstSolution:
    L: Optional[int]
    ell: int
    xtilde: RingElement
    ybar: PiElement
    x_word: Word
    y_word: Word


def _divisors(n: int, bound: int, odd_only: bool) -> list[int]:
    if n == 0:
        vals = range(1, bound + 1)
    else:
        vals = [k for k in range(1, abs(n) + 1) if abs(n) % k == 0]
    out: list[int] = []
    for k in vals:
        if odd_only and k % 2 == 0:
            continue
        out.extend((k, -k))
    return out


def _check_first(case: MixedCase, sol: FirstSolution) -> FirstSolution:
    eps = case.epsilon
    one = RingElement.one(eps)
    lhs = (one - RingElement.monomial(sol.ybar, case.delta)) * sol.xtilde
    rhs = one - RingElement.monomial(case.vbar)
    if lhs != rhs:
        raise CaseMismatch(f"first derived equation fails for {sol}")
    if q_n(sol.x_word) != sol.xtilde or project(sol.y_word) != sol.ybar:
        raise CaseMismatch(f"representative words fail for {sol}")
    return sol


def _conj_product(eps: int, factors: list[tuple[Word, int]]) -> Word:
    rel = relator(eps)
    out = Word.identity(rel.basis)
    for u, power in factors:
        out = out * conj(u, rel) ** power
    return out


def _geom_rep_word(eps: int, c: Word, n: int, ell: int) -> Word:
    """Representative with image (1 - cbar^{2n}) / (1 - cbar^ell)."""
    if n == 0:
        return Word.identity(c.basis)
    if n * ell > 0:
        exps = [2 * n - j * ell for j in range(1, 2 * n // ell)] + [0]
        return _conj_product(eps, [(c**e, 1) for e in exps])
    exps = [2 * n + j * ell for j in range(0, -2 * n // ell)]
    return _conj_product(eps, [(c**e, -1) for e in exps])


def _alt_rep_word(eps: int, c: Word, D: int, ell: int) -> Word:
    """Representative with image (1 - cbar^{2D}) / (1 + cbar^ell)."""
    if D == 0:
        return Word.identity(c.basis)
    factors: list[tuple[Word, int]] = []
    if D * ell > 0:
        factors.extend((c ** (2 * D - 2 * j * ell), 1) for j in range(1, D // ell))
        factors.append((Word.identity(c.basis), 1))
        factors.extend((c ** ((2 * j - 1) * ell), -1) for j in range(1, D // ell + 1))
    else:
        factors.extend((c ** (2 * D + 2 * j * ell), -1) for j in range(0, -D // ell))
        factors.extend((c ** (-(2 * j - 1) * ell), 1) for j in range(1, -D // ell + 1))
    return _conj_product(eps, factors)


def first_solutions(case: MixedCase, vbar: PiElement, bound: int) -> list[FirstSolution]:
    """Enumerate the solution family of the first derived equation.

    For the beta-power cases the family is indexed by all translation
    exponents |L| <= bound and odd divisors ell of n (any odd |ell| <= bound
    when n == 0); for the two-parameter cases by divisors of gcd(m, n).  Every
    entry is checked against the equation and its representative words.
    """
    if vbar != case.vbar:
        raise CaseMismatch("projection does not match the case parameters")
    eps = case.epsilon
    basis = BasisTag.adapted(eps)
    out: list[FirstSolution] = []
    if case.kind in ("eq2_nf", "eq4_f"):
        n = case.n
        for L in range(-bound, bound + 1):
            c_l = Word.from_syllables(basis, [(1, 1), (0, -L)])
            c_l_bar = project(c_l)
            for ell in _divisors(n, bound, odd_only=True):
                ybar = c_l_bar**ell
                if case.kind == "eq2_nf":
                    xtilde = geom_ratio(c_l_bar, 2 * n, ell) if n else RingElement.zero(eps)
                    x_word = _geom_rep_word(eps, c_l, n, ell)
                else:
                    xtilde = alt_geom_ratio(c_l_bar, 2 * n, ell) if n else RingElement.zero(eps)
                    x_word = _alt_rep_word(eps, c_l, n, ell)
                out.append(
                    _check_first(
                        case,
                        FirstSolution(L, ell, xtilde, ybar, x_word, c_l**ell),
                    )
                )
        return out
    if case.m == 0 and case.n == 0:
        for L in range(-bound, bound + 1):
            for ell in range(-bound, bound + 1):
                beta_exp = ell if case.kind == "eq3_nf" else 2 * ell
                y_word = Word.from_syllables(basis, [(0, L), (1, beta_exp)])
                out.append(
                    _check_first(
                        case,
                        FirstSolution(
                            L,
                            ell,
                            RingElement.zero(eps),
                            project(y_word),
                            Word.identity(basis),
                            y_word,
                        ),
                    )
                )
        return out
    d = case.d
    c = case.c_word
    c_bar = case.c_bar
    for ell in _divisors(d, bound, odd_only=False):
        out.append(
            _check_first(
                case,
                FirstSolution(
                    None,
                    ell,
                    alt_geom_ratio(c_bar, 2 * d, ell),
                    c_bar**ell,
                    _alt_rep_word(eps, c, d, ell),
                    c**ell,
                ),
            )
        )
    return out


def rank1_check(vbar: PiElement, ybar: PiElement, delta: int, theta: int) -> Optional[int]:
    """Find k with vbar == ybar**k and theta * delta**k == -1, if any."""

    def sign_ok(k: int) -> bool:
        d_pow = -1 if (delta == -1 and k % 2) else 1
        return theta * d_pow == -1

    candidates: list[int]
    if ybar.s != 0:
        if vbar.s % ybar.s:
            return None
        candidates = [vbar.s // ybar.s]
    elif ybar.r != 0:
        if vbar.s != 0 or vbar.r % ybar.r:
            return None
        candidates = [vbar.r // ybar.r]
    else:
        if not vbar.is_identity:
            return None
        candidates = [0, 1]
    for k in candidates:
        if ybar**k == vbar and sign_ok(k):
            return k
    return None


# ---------------------------------------------------------------------------
# Second derived equation: solvability decider
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DecideResult:
    solvable: bool
    ell: Optional[int] = None
    L: Optional[int] = None
    certificate: Optional[str] = None
    trace: dict = field(default_factory=dict)


def _window_values(value: int, modulus: int, lo: int, hi: int) -> list[int]:
    """All w with lo < w < hi (hi exclusive) and w == value (mod modulus)."""
    start = value % modulus
    out = []
    w = start - modulus * ((start - lo - 1) // modulus + 1)
    while w < hi:
        if lo < w:
            out.append(w)
        w += modulus
    return out


def _squares_decide(case: MixedCase, v_elt: RingElement) -> DecideResult:
    """Theorem for the two-parameter families with vbar != 1."""
    trace: dict = {"case": case.label(), "branch": "hat_orbit_parity"}
    v2 = v_elt.reduce_mod2()
    u = case.c_bar ** case.d
    action = HatAbs(u)
    identity = PiElement.identity(case.epsilon)
    reps: list[PiElement] = []
    for g in v2.support():
        if not any(same_orbit(action, rep, g) for rep in reps):
            reps.append(g)
    trace["orbits"] = len(reps)
    for rep in reps:
        if same_orbit(action, rep, identity):
            continue
        if augment(action, v2, rep):
            cert = f"orbit of ({rep.r},{rep.s}) has odd augmentation"
            return DecideResult(False, certificate=cert, trace=trace)
    return DecideResult(True, ell=case.d, trace=trace)


def _chain_candidates(n: int, ell: int, v_elt: RingElement) -> set[PiElement]:
    """Restricted-window elements whose chain orbits can meet the support."""
    two_n = 2 * abs(n)
    steps = abs(n) // ell
    out: set[PiElement] = set()
    for x in v_elt.support():
        for base in (x, x.inv()):
            for r2 in range(steps):
                target = base.s - 2 * ell * r2
                for s_val in _window_values(target, two_n, -ell, ell):
                    if s_val % 2:
                        continue
                    if base.r > 0 or (base.r == 0 and 0 < s_val):
                        out.add(PiElement(-1, base.r, s_val))
                for s_val in _window_values(target, two_n, 0, ell + 1):
                    if s_val % 2 == 1:
                        out.add(PiElement(-1, base.r, s_val))
    return out


def _pair_candidates(n: int, ell: int, L: int, v_elt: RingElement, modulus: int) -> set[PiElement]:
    """Elements (m, 2k), m >= 0, 0 < 2k < ell, whose pair orbits can meet supp."""
    out: set[PiElement] = set()
    for x in v_elt.support():
        ms = {abs(x.r), L - x.r, x.r - L, L + x.r, -L - x.r}
        s_targets = (x.s, -x.s, x.s - ell, -x.s - ell)
        for target in s_targets:
            for s_val in _window_values(target, modulus, 0, ell):
                if s_val % 2:
                    continue
                for m_val in ms:
                    if m_val >= 0:
                        out.add(PiElement(-1, m_val, s_val))
    return out


def _beta_decide(
    case: MixedCase, v_elt: RingElement, window_override: Optional[int]
) -> DecideResult:
    """Translation-parameter search for the beta-power families, n != 0."""
    n = case.n
    ell, _, _ = odd_part(n)
    vd = v_elt if case.kind == "eq2_nf" else v_elt.reduce_mod2()
    r_alpha = max((abs(g.r) for g in vd.support()), default=0)
    bound = 2 * r_alpha + abs(n) + 2
    if window_override is not None:
        bound = max(bound, window_override)
    window = sorted(range(-bound, bound + 2), key=lambda L: (abs(L), L))
    trace: dict = {
        "case": case.label(),
        "branch": "translation_search",
        "ell": ell,
        "window": [-bound, bound + 1],
    }
    tilde = Tilde(n)
    if n % 2 == 0:
        steps = abs(n) // ell
        for g in sorted(_chain_candidates(n, ell, vd), key=lambda p: (p.s, p.r)):
            base_val = augment(tilde, vd, g)
            for r2 in range(1, steps):
                h = PiElement(-1, g.r, g.s + 2 * ell * r2)
                if augment(tilde, vd, h) != base_val:
                    cert = (
                        f"chain condition fails at ({g.r},{g.s}) with shift {r2}"
                    )
                    return DecideResult(False, certificate=cert, trace=trace)
        # beyond the window every parameter acts like the appended stabilized
        # representative, so the search below is exhaustive
        candidates = window + [bound + 2]
        trace["stabilized_L"] = bound + 2
        for L in candidates:
            action = TildeL(n, L)
            u_l = PiElement(-1, L, ell)
            ok = True
            for g in _pair_candidates(n, ell, L, vd, 2 * abs(n)):
                if augment(action, vd, g) != augment(action, vd, u_l * g):
                    ok = False
                    break
            if ok:
                trace["L"] = L
                return DecideResult(True, ell=ell, L=L, trace=trace)
        trace["window_exhausted"] = True
        return DecideResult(
            False,
            certificate="no translation parameter satisfies the pair conditions",
            trace=trace,
        )
    for L in window:
        action = HatL(n, L)
        ok = True
        for g in _pair_candidates(n, ell, L, vd, 2 * ell):
            if augment(action, vd, g) != 0:
                ok = False
                break
        if ok:
            p_l = L - 1 if L >= 1 else -L
            m_top = max(p_l, r_alpha + abs(L)) + 2
            for m_val in range(1, m_top + 1):
                expected = 1 if 0 < m_val <= p_l else 0
                if augment(action, vd, PiElement(-1, m_val, 0)) % 2 != expected:
                    ok = False
                    break
        if ok:
            trace["L"] = L
            return DecideResult(True, ell=ell, L=L, trace=trace)
    trace["window_exhausted"] = True
    return DecideResult(
        False,
        certificate="no translation parameter satisfies the augmentation conditions",
        trace=trace,
    )


def second_decide(
    case: MixedCase, v_elt: RingElement, L_window_override: Optional[int] = None
) -> DecideResult:
    """Decide solvability of the second derived equation for the case."""
    if v_elt.epsilon != case.epsilon or v_elt.mod != 0:
        raise CaseMismatch("ring element does not match the case")
    if case.has_two_params:
        if case.m == 0 and case.n == 0:
            q2 = p_q(v_elt.reduce_mod2())
            trace = {"case": case.label(), "branch": "mod2_projection"}
            if q2.is_zero:
                return DecideResult(True, trace=trace)
            return DecideResult(False, certificate=f"p_Q'(V') = {q2} != 0", trace=trace)
        return _squares_decide(case, v_elt)
    if case.n == 0:
        qv = p_q(v_elt)
        trace = {"case": case.label(), "branch": "degenerate_projection"}
        if case.kind == "eq2_nf":
            if qv.is_zero:
                return DecideResult(True, trace=trace)
            return DecideResult(False, certificate=f"p_Q(V) = {qv} != 0", trace=trace)
        if q_divisible_by_two(qv):
            return DecideResult(True, trace=trace)
        return DecideResult(False, certificate=f"p_Q(V) = {qv} is not divisible by 2", trace=trace)
    return _beta_decide(case, v_elt, L_window_override)
