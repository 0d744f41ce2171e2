"""The quotients of F2 by the relator: torus (eps=+1) and Klein bottle (eps=-1).

Every element has a unique canonical form alpha^r * beta^s, stored as the
integer pair ``(r, s)``.  The product rule is twisted by the sign
``sigma(s) = epsilon**s``; all Klein-bottle identities follow from it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EpsilonMismatch
from .words import BasisTag, Word, change_basis


@dataclass(frozen=True, order=True)
class PiElement:
    epsilon: int
    r: int
    s: int

    def __post_init__(self) -> None:
        if self.epsilon not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")

    @staticmethod
    def identity(epsilon: int) -> "PiElement":
        return PiElement(epsilon, 0, 0)

    @staticmethod
    def alpha(epsilon: int, k: int = 1) -> "PiElement":
        return PiElement(epsilon, k, 0)

    @staticmethod
    def beta(epsilon: int, k: int = 1) -> "PiElement":
        return PiElement(epsilon, 0, k)

    def _sigma(self, s: int) -> int:
        return -1 if (self.epsilon == -1 and s % 2) else 1

    def _check(self, other: "PiElement") -> None:
        if self.epsilon != other.epsilon:
            raise EpsilonMismatch(f"{self.epsilon} vs {other.epsilon}")

    def mul(self, other: "PiElement") -> "PiElement":
        self._check(other)
        return PiElement(self.epsilon, self.r + self._sigma(self.s) * other.r, self.s + other.s)

    def __mul__(self, other: "PiElement") -> "PiElement":
        return self.mul(other)

    def inv(self) -> "PiElement":
        return PiElement(self.epsilon, -self._sigma(self.s) * self.r, -self.s)

    def pow(self, k: int) -> "PiElement":
        if k < 0:
            return self.inv().pow(-k)
        result = PiElement.identity(self.epsilon)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __pow__(self, k: int) -> "PiElement":
        return self.pow(k)

    @property
    def is_identity(self) -> bool:
        return self.r == 0 and self.s == 0

    def w_eps(self) -> int:
        """Orientation character epsilon**s."""
        return -1 if (self.epsilon == -1 and self.s % 2) else 1

    @property
    def p_alpha(self) -> int:
        return self.r

    @property
    def p_beta(self) -> int:
        return self.s

    def divisible_by_two(self) -> bool:
        if self.epsilon != 1:
            raise EpsilonMismatch("divisibility test is for the torus quotient")
        return self.r % 2 == 0 and self.s % 2 == 0

    def __str__(self) -> str:
        return f"({self.r},{self.s})"


def project(w: Word) -> PiElement:
    """Project a word to the quotient (classic words are converted first)."""
    if w.basis.kind != "adapted":
        w = change_basis(w, BasisTag.adapted(w.basis.epsilon))
    out = PiElement.identity(w.basis.epsilon)
    for gen, exp in w.syls:
        step = PiElement(w.basis.epsilon, exp, 0) if gen == 0 else PiElement(w.basis.epsilon, 0, exp)
        out = out * step
    return out


def pi_mul(x: PiElement, y: PiElement) -> PiElement:
    return x * y


def pi_inv(x: PiElement) -> PiElement:
    return x.inv()


def pi_pow(x: PiElement, k: int) -> PiElement:
    return x**k


def w_eps(x: PiElement) -> int:
    return x.w_eps()


def apply_phi(L: int, x: PiElement) -> PiElement:
    """The automorphism power sending alpha -> alpha, beta -> beta*alpha^L.

    In canonical coordinates: (r, s) -> (r - L*(s mod 2), s), Klein bottle only.
    """
    if x.epsilon != -1:
        raise EpsilonMismatch("phi is an automorphism of the Klein bottle group")
    return PiElement(-1, x.r - L * (x.s % 2), x.s)
