"""Sparse group rings Z[pi] and Z2[pi] with the twisted product.

Includes the geometric-series expansions used throughout, the Fox
differential calculus on adapted words, exact division by the alpha-column
of the relator's Jacobian, and the resulting projection of the relator
subgroup onto (Z[pi], +).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import DomainMismatch, EpsilonMismatch, NotDivisible, NotInKernel
from .surface import PiElement, project
from .words import BasisTag, Word, change_basis


def _norm_coeff(c: int, mod: int) -> int:
    return c % 2 if mod == 2 else c


@dataclass(frozen=True)
class RingElement:
    """Finite formal sum over the quotient group; no zero coefficients stored."""

    epsilon: int
    mod: int = 0  # 0 = integer coefficients, 2 = mod-2 coefficients
    terms: Mapping[PiElement, int] = field(default_factory=dict)

    @staticmethod
    def make(epsilon: int, items: Iterable[tuple[PiElement, int]], mod: int = 0) -> "RingElement":
        acc: dict[PiElement, int] = {}
        for g, c in items:
            if g.epsilon != epsilon:
                raise EpsilonMismatch("term epsilon differs from element epsilon")
            acc[g] = acc.get(g, 0) + c
        cleaned = {g: _norm_coeff(c, mod) for g, c in acc.items()}
        return RingElement(epsilon, mod, {g: c for g, c in cleaned.items() if c})

    @staticmethod
    def zero(epsilon: int, mod: int = 0) -> "RingElement":
        return RingElement(epsilon, mod, {})

    @staticmethod
    def monomial(g: PiElement, coeff: int = 1, mod: int = 0) -> "RingElement":
        return RingElement.make(g.epsilon, [(g, coeff)], mod)

    @staticmethod
    def one(epsilon: int, mod: int = 0) -> "RingElement":
        return RingElement.monomial(PiElement.identity(epsilon), 1, mod)

    def _check(self, other: "RingElement") -> None:
        if self.epsilon != other.epsilon:
            raise EpsilonMismatch("mixed epsilon in ring operation")
        if self.mod != other.mod:
            raise DomainMismatch("mixed coefficient domains")

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, g: PiElement) -> int:
        return self.terms.get(g, 0)

    def support(self) -> list[PiElement]:
        return sorted(self.terms, key=lambda g: (g.s, g.r))

    def add(self, other: "RingElement") -> "RingElement":
        self._check(other)
        items = list(self.terms.items()) + list(other.terms.items())
        return RingElement.make(self.epsilon, items, self.mod)

    def __add__(self, other: "RingElement") -> "RingElement":
        return self.add(other)

    def neg(self) -> "RingElement":
        return RingElement.make(self.epsilon, [(g, -c) for g, c in self.terms.items()], self.mod)

    def __neg__(self) -> "RingElement":
        return self.neg()

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self.add(other.neg())

    def scalar_mul(self, k: int) -> "RingElement":
        return RingElement.make(self.epsilon, [(g, k * c) for g, c in self.terms.items()], self.mod)

    def mul(self, other: "RingElement") -> "RingElement":
        self._check(other)
        items = [
            (g * h, c * d)
            for g, c in self.terms.items()
            for h, d in other.terms.items()
        ]
        return RingElement.make(self.epsilon, items, self.mod)

    def __mul__(self, other: "RingElement") -> "RingElement":
        return self.mul(other)

    def translate(self, g: PiElement) -> "RingElement":
        """Left multiplication by the group element ``g``."""
        return RingElement.make(
            self.epsilon, [(g * h, c) for h, c in self.terms.items()], self.mod
        )

    def augmentation(self) -> int:
        return _norm_coeff(sum(self.terms.values()), self.mod)

    def reduce_mod2(self) -> "RingElement":
        return RingElement.make(self.epsilon, self.terms.items(), mod=2)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingElement):
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


def translate(g: PiElement, p: RingElement) -> RingElement:
    return p.translate(g)


def one_minus_pow(x: PiElement, k: int, mod: int = 0) -> RingElement:
    """The element 1 - x**k."""
    return RingElement.make(
        x.epsilon, [(PiElement.identity(x.epsilon), 1), (x**k, -1)], mod
    )


def geom_ratio(x: PiElement, a: int, b: int) -> RingElement:
    """(1 - x**a) / (1 - x**b) expanded as a finite geometric sum.

    Requires b | a, and x of infinite order unless a == 0.  The result is
    post-verified by multiplying back.
    """
    if b == 0 or a % b:
        raise NotDivisible(f"{b} does not divide {a}")
    if a == 0:
        return RingElement.zero(x.epsilon)
    if x.is_identity:
        raise NotDivisible("ratio base must not be the identity")
    m = a // b
    if m >= 0:
        items = [(x ** (j * b), 1) for j in range(m)]
    else:
        items = [(x ** (a + (j - 1) * b), -1) for j in range(1, -m + 1)]
    result = RingElement.make(x.epsilon, items)
    if result * one_minus_pow(x, b) != one_minus_pow(x, a):
        raise NotDivisible("geometric expansion failed verification")
    return result


def alt_geom_ratio(x: PiElement, two_d: int, ell: int) -> RingElement:
    """(1 - x**two_d) / (1 + x**ell) as the alternating two-branch sum."""
    if ell == 0 or two_d % 2 or (two_d // 2) % ell:
        raise NotDivisible(f"{ell} does not divide {two_d}/2")
    if two_d == 0:
        return RingElement.zero(x.epsilon)
    if x.is_identity:
        raise NotDivisible("ratio base must not be the identity")
    m = two_d // ell
    if m > 0:
        items = [(x ** (j * ell), 1 if j % 2 == 0 else -1) for j in range(m)]
    else:
        items = [(x ** (-j * ell), 1 if j % 2 else -1) for j in range(1, -m + 1)]
    result = RingElement.make(x.epsilon, items)
    check = RingElement.make(
        x.epsilon, [(PiElement.identity(x.epsilon), 1), (x**ell, 1)]
    )
    if result * check != one_minus_pow(x, two_d):
        raise NotDivisible("alternating expansion failed verification")
    return result


# ---------------------------------------------------------------------------
# Fox calculus and the projection of N onto (Z[pi], +)
# ---------------------------------------------------------------------------


def fox_derivative(w: Word, gen: str) -> RingElement:
    """The quotient-projected free derivative of ``w`` by generator 'a' or 'b'."""
    if w.basis.kind != "adapted":
        w = change_basis(w, BasisTag.adapted(w.basis.epsilon))
    eps = w.basis.epsilon
    idx = 0 if gen == "a" else 1
    items: list[tuple[PiElement, int]] = []
    prefix = PiElement.identity(eps)
    for g, e in w.syls:
        base = PiElement(eps, 1, 0) if g == 0 else PiElement(eps, 0, 1)
        if g == idx:
            if e > 0:
                items.extend((prefix * base**j, 1) for j in range(e))
            else:
                items.extend((prefix * base**(-j), -1) for j in range(1, -e + 1))
        prefix = prefix * base**e
    return RingElement.make(eps, items)


def relator_jacobian_alpha(epsilon: int) -> RingElement:
    """Projected derivative of the relator by alpha: 1 - beta (torus) or 1 + alpha*beta."""
    one = PiElement.identity(epsilon)
    if epsilon == 1:
        return RingElement.make(1, [(one, 1), (PiElement.beta(1), -1)])
    return RingElement.make(-1, [(one, 1), (PiElement(-1, 1, 1), 1)])


def relator_jacobian_beta(epsilon: int) -> RingElement:
    """Projected derivative of the relator by beta: alpha - 1 for both signs."""
    return RingElement.make(
        epsilon,
        [(PiElement.alpha(epsilon), 1), (PiElement.identity(epsilon), -1)],
    )


def exact_divide(p: RingElement, d: RingElement) -> RingElement:
    """Solve lam * d == p exactly, for d the alpha-column Jacobian element.

    Elements are peeled row by row in the beta-degree grading; the top row of
    the product is contributed by a single row of ``lam``, so the quotient is
    recovered top-down and the remainder must vanish.
    """
    if p.mod != 0:
        raise DomainMismatch("exact division works over integer coefficients")
    eps = p.epsilon
    if d != relator_jacobian_alpha(eps):
        raise NotDivisible("divisor must be the alpha-column Jacobian element")
    if p.is_zero:
        return RingElement.zero(eps)
    s_min = min(g.s for g in p.terms)
    lam_items: list[tuple[PiElement, int]] = []
    current = p
    while not current.is_zero:
        s_top = max(g.s for g in current.terms)
        if s_top < s_min + 1:
            raise NotDivisible("nonzero remainder in exact division")
        row = [(g, c) for g, c in current.terms.items() if g.s == s_top]
        if eps == 1:
            lam_row = [(PiElement(1, g.r, s_top - 1), -c) for g, c in row]
        else:
            sigma = -1 if (s_top - 1) % 2 else 1
            lam_row = [(PiElement(-1, g.r - sigma, s_top - 1), c) for g, c in row]
        lam_items.extend(lam_row)
        current = current - RingElement.make(eps, lam_row) * d
    return RingElement.make(eps, lam_items)


def q_n(w: Word) -> RingElement:
    """Image of a relator-subgroup element in (Z[pi], +).

    A product of conjugates prod_i (u_i R u_i^-1)^{n_i} maps to
    sum_i n_i * class(u_i).  Computed via Fox calculus plus exact division,
    with the beta-column identity as a built-in consistency check.
    """
    if not project(w).is_identity:
        raise NotInKernel("word does not project to the identity")
    eps = w.basis.epsilon
    try:
        lam = exact_divide(fox_derivative(w, "a"), relator_jacobian_alpha(eps))
    except NotDivisible as exc:  # pragma: no cover - guarded by the projection test
        raise NotInKernel(str(exc)) from exc
    if lam * relator_jacobian_beta(eps) != fox_derivative(w, "b"):
        raise NotInKernel("beta-column consistency check failed")
    return lam


def conjugate_power_product(
    epsilon: int, factors: Iterable[tuple[Word, int]]
) -> Word:
    """Build prod_i (u_i R u_i^-1)^{n_i} in the adapted basis."""
    from .words import conj, relator

    rel = relator(epsilon)
    out = Word.identity(rel.basis)
    for u, n in factors:
        out = out * conj(u, rel) ** n
    return out
