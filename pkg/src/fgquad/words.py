"""Free group F2: reduced words, parsing, and the quadratic-equation frames.

Words are stored as runs of syllables ``(generator, exponent)`` so that the
large powers appearing in table fixtures stay cheap.  Generator 0 prints as
``a``/``A`` and generator 1 as ``b``/``B``; in the adapted basis they stand
for the generators usually written alpha and beta.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Literal, Optional

from .errors import BasisMismatch, WordSyntaxError

Kind = Literal["classic", "adapted"]

_GEN_CHARS = "ab"
_INV_CHARS = "AB"


@dataclass(frozen=True)
class BasisTag:
    """Which pair of free generators a word is written in, plus the sign.

    For ``epsilon == +1`` the classic and adapted bases coincide; for
    ``epsilon == -1`` they are related by a = alpha*beta, b = beta**-1.
    """

    kind: Kind
    epsilon: int

    def __post_init__(self) -> None:
        if self.epsilon not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        if self.kind not in ("classic", "adapted"):
            raise ValueError("kind must be 'classic' or 'adapted'")

    @staticmethod
    def classic(epsilon: int) -> "BasisTag":
        return BasisTag("classic", epsilon)

    @staticmethod
    def adapted(epsilon: int) -> "BasisTag":
        return BasisTag("adapted", epsilon)


def _reduce(syllables: list[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    """Merge adjacent runs of the same generator, cascading cancellations."""
    out: list[tuple[int, int]] = []
    for gen, exp in syllables:
        if exp == 0:
            continue
        while out and out[-1][0] == gen:
            exp += out.pop()[1]
            if exp == 0:
                break
        if exp != 0:
            out.append((gen, exp))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A freely reduced word in the rank-2 free group."""

    basis: BasisTag
    syls: tuple[tuple[int, int], ...]

    @staticmethod
    def identity(basis: BasisTag) -> "Word":
        return Word(basis, ())

    @staticmethod
    def gen(basis: BasisTag, name: str, exp: int = 1) -> "Word":
        idx = _GEN_CHARS.index(name)
        return Word(basis, ((idx, exp),) if exp else ())

    @staticmethod
    def from_syllables(basis: BasisTag, syllables: list[tuple[int, int]]) -> "Word":
        return Word(basis, _reduce(syllables))

    def _check(self, other: "Word") -> None:
        if self.basis != other.basis:
            raise BasisMismatch(f"{self.basis} vs {other.basis}")

    def __mul__(self, other: "Word") -> "Word":
        self._check(other)
        return Word(self.basis, _reduce(list(self.syls) + list(other.syls)))

    def inv(self) -> "Word":
        return Word(self.basis, tuple((g, -e) for g, e in reversed(self.syls)))

    def __pow__(self, k: int) -> "Word":
        if k == 0:
            return Word.identity(self.basis)
        base = self if k > 0 else self.inv()
        out = Word.identity(self.basis)
        for _ in range(abs(k)):
            out = out * base
        return out

    @property
    def is_identity(self) -> bool:
        return not self.syls

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syls)

    def letters(self) -> Iterator[tuple[int, int]]:
        """Yield ``(generator, +1/-1)`` letter by letter."""
        for gen, exp in self.syls:
            step = 1 if exp > 0 else -1
            for _ in range(abs(exp)):
                yield gen, step

    def __str__(self) -> str:
        if not self.syls:
            return "1"
        parts = []
        for gen, exp in self.syls:
            ch = _GEN_CHARS[gen]
            if exp == 1:
                parts.append(ch)
            elif exp == -1:
                parts.append(_INV_CHARS[gen])
            else:
                parts.append(f"{ch}^{exp}")
        return " ".join(parts)


def mul(w1: Word, w2: Word) -> Word:
    return w1 * w2


def inv(w: Word) -> Word:
    return w.inv()


def pow_(w: Word, k: int) -> Word:
    return w**k


def conj(u: Word, w: Word) -> Word:
    """u * w * u**-1."""
    return u * w * u.inv()


def comm(u: Word, w: Word) -> Word:
    """The commutator u * w * u**-1 * w**-1."""
    return u * w * u.inv() * w.inv()


def word_from_letters(basis: BasisTag, letters: list[tuple[int, int]]) -> Word:
    return Word.from_syllables(basis, [(g, e) for g, e in letters])


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Split ``w = t * core * t**-1`` with ``core`` cyclically reduced."""
    syls = list(w.syls)
    t_parts: list[tuple[int, int]] = []
    while len(syls) >= 2:
        g1, e1 = syls[0]
        g2, e2 = syls[-1]
        if g1 != g2 or (e1 > 0) == (e2 > 0):
            break
        c = min(abs(e1), abs(e2))
        step = 1 if e1 > 0 else -1
        t_parts.append((g1, step * c))
        syls[0] = (g1, e1 - step * c)
        syls[-1] = (g2, e2 + step * c)
        if syls[-1][1] == 0:
            syls.pop()
        if syls and syls[0][1] == 0:
            syls.pop(0)
    core = Word.from_syllables(w.basis, syls)
    t = Word.from_syllables(w.basis, t_parts)
    return core, t


def square_root(w: Word) -> Optional[Word]:
    """Return ``s`` with ``s*s == w`` if one exists."""
    core, t = cyclic_reduce(w)
    letters = list(core.letters())
    if len(letters) % 2:
        return None
    half = len(letters) // 2
    if letters[:half] != letters[half:]:
        return None
    root = word_from_letters(w.basis, letters[:half])
    return t * root * t.inv()


def sgn(w: Word) -> int:
    """Orientation character: every classic generator maps to epsilon."""
    eps = w.basis.epsilon
    if eps == 1:
        return 1
    if w.basis.kind == "classic":
        return -1 if len(w) % 2 else 1
    exp_b = sum(e for g, e in w.syls if g == 1)
    return -1 if exp_b % 2 else 1


def change_basis(w: Word, target: BasisTag) -> Word:
    """Rewrite ``w`` in the other basis (a = alpha*beta, b = beta**-1)."""
    if w.basis.epsilon != target.epsilon:
        raise BasisMismatch("cannot change basis across epsilon")
    if w.basis.kind == target.kind:
        return w
    if w.basis.epsilon == 1:
        return Word(target, w.syls)
    # epsilon == -1: the substitution is an involution up to inverses:
    # classic->adapted: a -> alpha*beta, b -> beta**-1
    # adapted->classic: alpha -> a*b,   beta -> b**-1
    images = {
        0: Word.from_syllables(target, [(0, 1), (1, 1)]),
        1: Word.from_syllables(target, [(1, -1)]),
    }
    out = Word.identity(target)
    for gen, exp in w.syls:
        out = out * images[gen] ** exp
    return out


def relator(epsilon: int) -> Word:
    """The adapted-basis relator alpha*beta*alpha**-epsilon*beta**-1."""
    basis = BasisTag.adapted(epsilon)
    return Word.from_syllables(basis, [(0, 1), (1, 1), (0, -epsilon), (1, -1)])


def relator_in(basis: BasisTag) -> Word:
    """The relator written in ``basis`` ([a,b] or a^2 b^2 classically)."""
    if basis.kind == "adapted":
        return relator(basis.epsilon)
    if basis.epsilon == 1:
        return Word.from_syllables(basis, [(0, 1), (1, 1), (0, -1), (1, -1)])
    return Word.from_syllables(basis, [(0, 2), (1, 2)])


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, basis: BasisTag) -> None:
        self.text = text
        self.basis = basis
        self.pos = 0

    def error(self, message: str) -> WordSyntaxError:
        return WordSyntaxError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def parse_int(self) -> int:
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        if not self.peek().isdigit():
            raise self.error("expected integer")
        while self.peek().isdigit():
            self.pos += 1
        return int(self.text[start : self.pos])

    def parse_word(self, stop: str = "") -> Word:
        out = Word.identity(self.basis)
        while True:
            self.skip_ws()
            ch = self.peek()
            if not ch or ch in stop:
                return out
            out = out * self.parse_term()

    def parse_term(self) -> Word:
        atom = self.parse_atom()
        self.skip_ws()
        if self.peek() == "^":
            self.pos += 1
            self.skip_ws()
            return atom ** self.parse_int()
        return atom

    def parse_atom(self) -> Word:
        ch = self.peek()
        if self.text.startswith("conj(", self.pos):
            self.pos += len("conj(")
            inner = self.parse_word(stop=")")
            self.expect(")")
            return conj(inner, relator_in(self.basis))
        if ch == "1":
            self.pos += 1
            return Word.identity(self.basis)
        if ch in _GEN_CHARS:
            self.pos += 1
            return Word.gen(self.basis, ch, 1)
        if ch in _INV_CHARS:
            self.pos += 1
            return Word.gen(self.basis, ch.lower(), -1)
        if ch == "R":
            self.pos += 1
            return relator_in(self.basis)
        if ch == "(":
            self.pos += 1
            inner = self.parse_word(stop=")")
            self.expect(")")
            return inner
        if ch == "[":
            self.pos += 1
            left = self.parse_word(stop=",")
            self.expect(",")
            right = self.parse_word(stop="]")
            self.expect("]")
            return comm(left, right)
        raise self.error(f"unexpected character {ch!r}" if ch else "unexpected end of input")


def parse_word(text: str, basis: BasisTag) -> Word:
    """Parse the word grammar; ``R`` is the relator and ``conj(w)`` is w R w**-1."""
    parser = _Parser(text, basis)
    word = parser.parse_word()
    parser.skip_ws()
    if parser.pos != len(text):
        raise parser.error(f"unexpected character {parser.peek()!r}")
    return word


# ---------------------------------------------------------------------------
# Equation frames
# ---------------------------------------------------------------------------

SolutionClass = Literal["faithful", "nonfaithful"]
Frame = Literal["original_z", "adapted_xy"]


@dataclass(frozen=True)
class EquationSpec:
    """Parameters of the quadratic equation family.

    ``original_z`` means the equation Q_delta(z1, z2) = v R^theta v^-1 R in the
    classic basis; ``adapted_xy`` means x y x^-delta y^-1 = v B^theta v^-1 B in
    the adapted basis.
    """

    delta: int
    epsilon: int
    theta: int
    solution_class: SolutionClass = "nonfaithful"
    frame: Frame = "adapted_xy"

    def __post_init__(self) -> None:
        for name in ("delta", "epsilon", "theta"):
            if getattr(self, name) not in (1, -1):
                raise ValueError(f"{name} must be +1 or -1")

    @property
    def basis(self) -> BasisTag:
        if self.frame == "original_z":
            return BasisTag.classic(self.epsilon)
        return BasisTag.adapted(self.epsilon)


def equation_lhs(spec: EquationSpec, first: Word, second: Word) -> Word:
    if spec.frame == "original_z":
        if spec.delta == 1:
            return comm(first, second)
        return first * first * second * second
    return first * second * first ** (-spec.delta) * second.inv()


def equation_rhs(spec: EquationSpec, v: Word) -> Word:
    rel = relator_in(spec.basis)
    return v * rel**spec.theta * v.inv() * rel


def solution_is_faithful(spec: EquationSpec, first: Word, second: Word) -> bool:
    """True when every z-unknown has orientation character delta."""
    if spec.frame == "original_z":
        return sgn(first) == spec.delta and sgn(second) == spec.delta
    # equivalent in the adapted frame: w(x) = +1 and w(y) = delta
    return sgn(first) == 1 and sgn(second) == spec.delta


@dataclass(frozen=True)
class VerifyResult:
    holds: bool
    faithful: bool
    x_in_n: bool
    x_in_n_applicable: bool


def verify_solution(spec: EquationSpec, v: Word, first: Word, second: Word) -> VerifyResult:
    """Substitute a candidate pair and check the equation in the spec's frame."""
    basis = spec.basis
    for w in (v, first, second):
        if w.basis != basis:
            raise BasisMismatch(f"expected words in {basis}")
    holds = equation_lhs(spec, first, second) == equation_rhs(spec, v)
    if spec.frame == "original_z":
        faithful = sgn(first) == spec.delta and sgn(second) == spec.delta
        return VerifyResult(holds, faithful, False, False)
    faithful = sgn(second) == spec.delta
    from .surface import project  # local import to avoid a cycle

    x_in_n = project(first).is_identity
    return VerifyResult(holds, faithful, x_in_n, True)
