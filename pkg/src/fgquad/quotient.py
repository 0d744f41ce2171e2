"""The quotient of Z[pi - {1}] by the relations g + g**-1, and its mod-2 version.

Classes are stored on canonical orbit representatives: the representative of
{g, g**-1} is the one with s > 0, or with s == 0 and r > 0.  Inversion negates
s (and negates r when s == 0), so exactly one of the two qualifies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import DomainMismatch, EpsilonMismatch
from .groupring import RingElement, _norm_coeff
from .surface import PiElement, project
from .words import Word


def is_representative(g: PiElement) -> bool:
    return g.s > 0 or (g.s == 0 and g.r > 0)


def representative(g: PiElement) -> tuple[PiElement, int]:
    """Return (representative, sign) with g == sign-side of the class."""
    if is_representative(g):
        return g, 1
    return g.inv(), -1


@dataclass(frozen=True)
class QElement:
    epsilon: int
    mod: int = 0
    terms: Mapping[PiElement, int] = field(default_factory=dict)

    @staticmethod
    def make(epsilon: int, items: Iterable[tuple[PiElement, int]], mod: int = 0) -> "QElement":
        acc: dict[PiElement, int] = {}
        for g, c in items:
            if g.epsilon != epsilon:
                raise EpsilonMismatch("term epsilon differs from element epsilon")
            if g.is_identity:
                continue
            rep, sign = representative(g)
            if mod == 2:
                sign = 1
            acc[rep] = acc.get(rep, 0) + sign * c
        cleaned = {g: _norm_coeff(c, mod) for g, c in acc.items()}
        return QElement(epsilon, mod, {g: c for g, c in cleaned.items() if c})

    @staticmethod
    def zero(epsilon: int, mod: int = 0) -> "QElement":
        return QElement(epsilon, mod, {})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, g: PiElement) -> int:
        rep, sign = representative(g)
        if self.mod == 2:
            sign = 1
        return sign * self.terms.get(rep, 0)

    def add(self, other: "QElement") -> "QElement":
        if self.epsilon != other.epsilon:
            raise EpsilonMismatch("mixed epsilon")
        if self.mod != other.mod:
            raise DomainMismatch("mixed coefficient domains")
        return QElement.make(
            self.epsilon, list(self.terms.items()) + list(other.terms.items()), self.mod
        )

    def __add__(self, other: "QElement") -> "QElement":
        return self.add(other)

    def neg(self) -> "QElement":
        return QElement.make(self.epsilon, [(g, -c) for g, c in self.terms.items()], self.mod)

    def __sub__(self, other: "QElement") -> "QElement":
        return self.add(other.neg())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QElement):
            return NotImplemented
        return (
            self.epsilon == other.epsilon
            and self.mod == other.mod
            and dict(self.terms) == dict(other.terms)
        )

    def __hash__(self) -> int:
        return hash((self.epsilon, self.mod, frozenset(self.terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        inner = ", ".join(f"({g.r},{g.s}): {c}" for g, c in sorted(
            self.terms.items(), key=lambda item: (item[0].s, item[0].r)
        ))
        return "{" + inner + "}"


def p_q(p: RingElement) -> QElement:
    """Project a ring element: drop the identity, fold g onto g**-1."""
    return QElement.make(p.epsilon, p.terms.items(), p.mod)


def q_nf_commutator(
    left: Iterable[tuple[Word, int]], right: Iterable[tuple[Word, int]]
) -> QElement:
    """Image in Q of the commutator of two products of relator conjugates.

    [prod_i (u_i R u_i^-1)^{n_i}, prod_j (v_j R v_j^-1)^{m_j}] maps to the
    class of sum_{i,j} n_i m_j * class(u_i)^-1 class(v_j).
    """
    lefts = [(project(u), n) for u, n in left]
    rights = [(project(v), m) for v, m in right]
    if not lefts or not rights:
        eps = (lefts or rights)[0][0].epsilon if (lefts or rights) else 1
        return QElement.zero(eps)
    eps = lefts[0][0].epsilon
    items = [
        (ubar.inv() * vbar, n * m)
        for ubar, n in lefts
        for vbar, m in rights
    ]
    return QElement.make(eps, items)


def q_divisible_by_two(x: QElement) -> bool:
    if x.mod != 0:
        raise DomainMismatch("divisibility test needs integer coefficients")
    return all(c % 2 == 0 for c in x.terms.values())
