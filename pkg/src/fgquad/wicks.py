"""Brute-force existence oracle based on quadratic Wicks forms.

A cyclically reduced word is a commutator iff some cyclic shift matches
``a b c a^-1 b^-1 c^-1`` (or the degenerate ``d e d^-1 e^-1``), and a product
of two squares iff some shift matches ``a b c b a c^-1`` or ``a a b c c b^-1``.
Every positional match yields a canonical solution pair which is conjugated
back to the original equation and substitution-verified.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

from .errors import BudgetExceeded, ExtractionFailed
from .words import (
    BasisTag,
    EquationSpec,
    Word,
    comm,
    cyclic_reduce,
    equation_rhs,
    parse_word,
    solution_is_faithful,
    square_root,
    verify_solution,
    word_from_letters,
)

FormName = Literal[
    "orientable_abc",
    "orientable_de",
    "nonorientable_abcbac",
    "nonorientable_aabcc",
]

Kind = Literal["commutator", "two_squares"]

# segment layout per form: (part name, inverted?)
_FORM_LAYOUT: dict[FormName, tuple[tuple[str, bool], ...]] = {
    "orientable_abc": (("a", False), ("b", False), ("c", False), ("a", True), ("b", True), ("c", True)),
    "orientable_de": (("d", False), ("e", False), ("d", True), ("e", True)),
    "nonorientable_abcbac": (("a", False), ("b", False), ("c", False), ("b", False), ("a", False), ("c", True)),
    "nonorientable_aabcc": (("a", False), ("a", False), ("b", False), ("c", False), ("c", False), ("b", True)),
}

_KIND_FORMS: dict[Kind, tuple[FormName, ...]] = {
    "commutator": ("orientable_abc", "orientable_de"),
    "two_squares": ("nonorientable_abcbac", "nonorientable_aabcc"),
}


@dataclass(frozen=True)
class WicksMatch:
    shift: int
    form: FormName
    parts: dict[str, Word]
    u_prefix: Word  # cyclic-shift prefix U_i with W = U_i V_i, W_i = V_i U_i
    t: Word  # cyclic-reduction conjugator of the original right-hand side
    core: Word

    def part_names(self) -> list[str]:
        return sorted(self.parts)


def _inv_letters(letters: list[tuple[int, int]]) -> list[tuple[int, int]]:
    return [(g, -e) for g, e in reversed(letters)]


def _enumerate_lengths(n_parts: int, total: int, allow_empty: bool) -> list[tuple[int, ...]]:
    lo = 0 if allow_empty else 1
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], remaining: int, slots: int) -> None:
        if slots == 1:
            if remaining >= lo:
                out.append(prefix + (remaining,))
            return
        for v in range(lo, remaining - lo * (slots - 1) + 1):
            rec(prefix + (v,), remaining - v, slots - 1)

    rec((), total, n_parts)
    return out


def _try_layout(
    basis: BasisTag,
    letters: list[tuple[int, int]],
    form: FormName,
    lengths: dict[str, int],
) -> Optional[dict[str, Word]]:
    layout = _FORM_LAYOUT[form]
    pos = 0
    segments: dict[str, list[tuple[int, int]]] = {}
    for name, inverted in layout:
        seg = letters[pos : pos + lengths[name]]
        pos += lengths[name]
        if inverted:
            seg = _inv_letters(seg)
        if name in segments:
            if segments[name] != seg:
                return None
        else:
            segments[name] = seg
    if pos != len(letters):
        return None
    return {name: word_from_letters(basis, seg) for name, seg in segments.items()}


def wicks_decompositions(
    w: Word, kind: Kind, allow_empty: bool = False
) -> list[WicksMatch]:
    """All positional matches of the quadratic forms over all cyclic shifts.

    ``w`` must be cyclically reduced; parts are nonempty unless
    ``allow_empty`` is set.
    """
    letters = list(w.letters())
    n = len(letters)
    out: list[WicksMatch] = []
    seen: set[tuple] = set()
    if n == 0 or n % 2:
        return out
    for shift in range(n):
        rotated = letters[shift:] + letters[:shift]
        u_prefix = word_from_letters(w.basis, letters[:shift])
        for form in _KIND_FORMS[kind]:
            part_names = sorted({name for name, _ in _FORM_LAYOUT[form]})
            for combo in _enumerate_lengths(len(part_names), n // 2, allow_empty):
                lengths = dict(zip(part_names, combo))
                parts = _try_layout(w.basis, rotated, form, lengths)
                if parts is None:
                    continue
                key = (shift, form, tuple(str(parts[name]) for name in part_names))
                if key in seen:
                    continue
                seen.add(key)
                out.append(
                    WicksMatch(shift, form, parts, u_prefix, Word.identity(w.basis), w)
                )
    out.sort(key=lambda m: (m.shift, m.form, tuple(str(m.parts[k]) for k in sorted(m.parts))))
    return out


def _canonical_pair(match: WicksMatch) -> tuple[Word, Word]:
    p = match.parts
    if match.form == "orientable_abc":
        return p["a"] * p["b"], p["c"] * p["b"]
    if match.form == "orientable_de":
        return p["d"], p["e"]
    if match.form == "nonorientable_aabcc":
        return p["a"], p["b"] * p["c"] * p["b"].inv()
    return p["a"] * p["b"] * p["c"] * p["a"].inv(), p["a"] * p["c"].inv()


def extract_solution(match: WicksMatch) -> tuple[Word, Word]:
    """Canonical solution of the matched form, conjugated back to the source.

    The returned pair satisfies Q(x, y) == t * core * t^-1 for the quadratic
    word of the form's kind; failure to verify signals a matcher bug.
    """
    x0, y0 = _canonical_pair(match)
    g = match.t * match.u_prefix
    x, y = g * x0 * g.inv(), g * y0 * g.inv()
    target = match.t * match.core * match.t.inv()
    if match.form.startswith("orientable"):
        ok = comm(x, y) == target
    else:
        ok = x * x * y * y == target
    if not ok:
        raise ExtractionFailed(f"form {match.form} at shift {match.shift}")
    return x, y


@dataclass(frozen=True)
class WicksReport:
    solutions: list[tuple[tuple[Word, Word], bool]]
    exhaustive: bool
    matches: list[WicksMatch]


def rhs_word(spec: EquationSpec, v: Word) -> Word:
    """The reduced right-hand side v * R^theta * v^-1 * R in the frame basis."""
    return equation_rhs(spec, v)


def _trivial_candidates(spec: EquationSpec, basis: BasisTag) -> list[tuple[Word, Word]]:
    one = Word.identity(basis)
    g_a = Word.gen(basis, "a")
    g_b = Word.gen(basis, "b")
    if spec.delta == 1:
        return [(one, one), (one, g_a), (one, g_b)]
    return [(one, one), (g_a, g_a.inv()), (g_b, g_b.inv())]


def _frame_pair(spec: EquationSpec, z1: Word, z2: Word) -> tuple[Word, Word]:
    """Convert a z-unknown pair to the frame the spec's equation uses."""
    if spec.delta == 1 or spec.frame == "original_z":
        return z1, z2
    return z1 * z2, z2.inv()


def wicks_search(
    spec: EquationSpec, v: Word, wicks_len: int = 64, allow_empty: bool = False
) -> WicksReport:
    """Enumerate solutions of the equation via Wicks decompositions.

    Solutions are labelled faithful per the orientation characters of the
    z-unknowns.  With ``exhaustive=True`` and no solution of a class found,
    the run is evidence of non-existence for that class, in the sense of the
    canonical-solution analysis.
    """
    rhs = rhs_word(spec, v)
    core, t = cyclic_reduce(rhs)
    if len(core) > wicks_len:
        raise BudgetExceeded(f"cyclic right-hand side length {len(core)} > {wicks_len}")
    kind: Kind = "commutator" if spec.delta == 1 else "two_squares"
    solutions: list[tuple[tuple[Word, Word], bool]] = []
    seen: set[tuple[str, str]] = set()

    def consider(x: Word, y: Word, from_match: bool = False) -> None:
        key = (str(x), str(y))
        if key in seen:
            return
        result = verify_solution(spec, v, x, y)
        if not result.holds:
            if from_match:
                raise ExtractionFailed(f"extracted pair failed re-verification: {x}, {y}")
            return
        seen.add(key)
        solutions.append(((x, y), solution_is_faithful(spec, x, y)))

    if core.is_identity:
        for z1, z2 in _trivial_candidates(spec, spec.basis):
            consider(*_frame_pair(spec, z1, z2))
        return WicksReport(solutions, True, [])
    # solutions are gathered with empty parts admitted (degenerate forms);
    # the reported match list keeps the nonempty convention unless asked
    all_matches = wicks_decompositions(core, kind, allow_empty=True)
    if allow_empty:
        matches = all_matches
    else:
        matches = [m for m in all_matches if all(not p.is_identity for p in m.parts.values())]
    for match in all_matches:
        match = WicksMatch(match.shift, match.form, match.parts, match.u_prefix, t, core)
        z1, z2 = extract_solution(match)
        consider(*_frame_pair(spec, z1, z2), from_match=True)
    if spec.delta == -1:
        root = square_root(rhs)
        if root is not None:
            consider(*_frame_pair(spec, root, Word.identity(spec.basis)))
            consider(*_frame_pair(spec, Word.identity(spec.basis), root))
    return WicksReport(solutions, True, matches)


def _self_check() -> None:
    """Verify the hand-derived extraction pairs on a rank-3 free subgroup."""
    basis = BasisTag.classic(1)
    sub = {
        "a": parse_word("a a", basis),
        "b": parse_word("a b", basis),
        "c": parse_word("b A", basis),
    }
    a, b, c = sub["a"], sub["b"], sub["c"]
    # abcbac^-1 == (abca^-1)^2 (ac^-1)^2
    lhs = a * b * c * b * a * c.inv()
    x = a * b * c * a.inv()
    y = a * c.inv()
    if x * x * y * y != lhs:
        raise ExtractionFailed("nonorientable abcbac extraction identity")
    # a^2 b c^2 b^-1 == a^2 (b c b^-1)^2
    lhs = a * a * b * c * c * b.inv()
    y = b * c * b.inv()
    if a * a * y * y != lhs:
        raise ExtractionFailed("nonorientable aabcc extraction identity")
    # abca^-1b^-1c^-1 == [ab, cb]
    lhs = a * b * c * a.inv() * b.inv() * c.inv()
    if comm(a * b, c * b) != lhs:
        raise ExtractionFailed("orientable abc extraction identity")


_self_check()
