"""Words, presentations, Fuchsian signatures and epimorphisms onto finite groups."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Sequence

from fixlocus.errors import BadParameters, IndexOutOfRange, NonIntegralGenus
from fixlocus.perm import (
    FiniteGroup,
    Permutation,
    element_order,
    subgroup_generated,
)

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

Kind = Literal["fuchsian-signature", "general"]
Orientation = Literal["preserving", "reversing", "unspecified"]


def _reduce(letters) -> tuple[tuple[int, int], ...]:
    stack: list[tuple[int, int]] = []
    for gen, exp in letters:
        gen, exp = int(gen), int(exp)
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            merged = stack[-1][1] + exp
            stack.pop()
            if merged:
                stack.append((gen, merged))
        else:
            stack.append((gen, exp))
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """A word in abstract generators, stored as ``(generator index, exponent)`` pairs.

    Words are kept freely reduced: adjacent letters on the same generator are
    merged and zero exponents dropped.  The empty word is the identity.
    """

    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce(self.letters))

    @classmethod
    def generator(cls, index: int, exponent: int = 1) -> Word:
        return cls(((index, exponent),))

    def __mul__(self, other: Word) -> Word:
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.letters + other.letters)

    def inverse(self) -> Word:
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, exponent: int) -> Word:
        base = self if exponent >= 0 else self.inverse()
        return Word(base.letters * abs(exponent))

    def __len__(self) -> int:
        return len(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def generators(self) -> set[int]:
        return {g for g, _ in self.letters}


def commutator(u: Word, v: Word) -> Word:
    """``[u, v] = u v u^-1 v^-1``."""
    return u * v * u.inverse() * v.inverse()


@dataclass(frozen=True)
class Presentation:
    generator_names: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        names = tuple(self.generator_names)
        object.__setattr__(self, "generator_names", names)
        object.__setattr__(self, "relators", tuple(self.relators))
        if len(set(names)) != len(names):
            raise BadParameters(f"duplicate generator names in {names}")
        for name in names:
            if not _IDENT.match(name):
                raise BadParameters(f"invalid generator name {name!r}")
        for rel in self.relators:
            self.check_word(rel)

    @property
    def rank(self) -> int:
        return len(self.generator_names)

    def check_word(self, w: Word) -> None:
        for g, _ in w.letters:
            if not 0 <= g < self.rank:
                raise IndexOutOfRange(f"generator index {g} outside 0..{self.rank - 1}")

    def generator_index(self, name: str) -> int:
        try:
            return self.generator_names.index(name)
        except ValueError:
            raise IndexOutOfRange(f"no generator named {name!r}") from None


@dataclass(frozen=True)
class FuchsianSignature:
    orbit_genus: int
    periods: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "periods", tuple(int(m) for m in self.periods))
        if self.orbit_genus < 0:
            raise BadParameters("orbit genus must be non-negative")
        if any(m < 2 for m in self.periods):
            raise BadParameters(f"periods must be >= 2, got {self.periods}")

    def __str__(self) -> str:
        return f"({self.orbit_genus}; {', '.join(map(str, self.periods))})"

    def area(self) -> Fraction:
        """Normalized area ``2h - 2 + sum(1 - 1/m_i)``; positive exactly for hyperbolic signatures."""
        return 2 * self.orbit_genus - 2 + sum((1 - Fraction(1, m) for m in self.periods), Fraction(0))

    def is_hyperbolic(self) -> bool:
        return self.area() > 0


def signature_to_presentation(sig: FuchsianSignature) -> Presentation:
    """Canonical presentation: ``x_i^{m_i}`` and ``x_1...x_r [a_1,b_1]...[a_h,b_h]``."""
    r, h = len(sig.periods), sig.orbit_genus
    names = [f"x{i + 1}" for i in range(r)]
    for j in range(h):
        names += [f"a{j + 1}", f"b{j + 1}"]
    relators = [Word.generator(i, m) for i, m in enumerate(sig.periods)]
    long_relation = Word()
    for i in range(r):
        long_relation = long_relation * Word.generator(i)
    for j in range(h):
        a, b = Word.generator(r + 2 * j), Word.generator(r + 2 * j + 1)
        long_relation = long_relation * commutator(a, b)
    if not long_relation.is_identity():
        relators.append(long_relation)
    return Presentation(tuple(names), tuple(relators))


def riemann_hurwitz_genus(sig: FuchsianSignature, group_order: int) -> int:
    """Genus ``g`` with ``2g - 2 = |G| (2h - 2 + sum(1 - 1/m_i))``."""
    if group_order < 1:
        raise BadParameters("group order must be positive")
    euler = group_order * sig.area()
    if euler.denominator != 1 or euler.numerator % 2 or euler < -2:
        raise NonIntegralGenus(f"2g-2 = {euler} is not an even integer >= -2")
    return int(euler) // 2 + 1


@dataclass(frozen=True)
class EcsEntry:
    """One member of an elliptic complete system: ``kappa_i`` as a word, its order and image."""

    index: int
    order: int
    word: Word
    image: Permutation
    orientation: Orientation = "unspecified"

    def __post_init__(self):
        if self.index < 1:
            raise BadParameters("e.c.s. indices are 1-based")
        if self.order < 1:
            raise BadParameters("e.c.s. orders must be positive")
        if self.orientation not in ("preserving", "reversing", "unspecified"):
            raise BadParameters(f"unknown orientation {self.orientation!r}")


def evaluate_in(images: Sequence[Permutation], w: Word, degree: int) -> Permutation:
    """Multiply out ``w`` left to right with ``images[i]`` for generator ``i``."""
    result = Permutation.identity(degree)
    for g, e in w.letters:
        if not 0 <= g < len(images):
            raise IndexOutOfRange(f"generator index {g} outside 0..{len(images) - 1}")
        result = result * images[g] ** e
    return result


@dataclass(frozen=True)
class EpimorphismInstance:
    """``theta: K -> G`` given by generator images, with its e.c.s. data."""

    presentation: Presentation
    target: FiniteGroup
    images: tuple[Permutation, ...]
    ecs: tuple[EcsEntry, ...]
    kind: Kind = "general"
    signature: FuchsianSignature | None = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        object.__setattr__(self, "ecs", tuple(self.ecs))
        if len(self.images) != self.presentation.rank:
            raise BadParameters(
                f"{len(self.images)} images for {self.presentation.rank} generators")
        for p in self.images:
            self.target.index(p)
        if self.kind not in ("fuchsian-signature", "general"):
            raise BadParameters(f"unknown instance kind {self.kind!r}")
        if self.kind == "fuchsian-signature" and self.signature is None:
            raise BadParameters("a fuchsian-signature instance needs its signature")
        indices = [e.index for e in self.ecs]
        if indices != list(range(1, len(indices) + 1)):
            raise BadParameters(f"e.c.s. indices must be 1..r in order, got {indices}")
        for entry in self.ecs:
            self.presentation.check_word(entry.word)
            if evaluate_word(self, entry.word) != entry.image:
                raise BadParameters(f"e.c.s. entry {entry.index}: image does not match its word")

    def ecs_entry(self, index: int) -> EcsEntry:
        if not 1 <= index <= len(self.ecs):
            raise IndexOutOfRange(f"no e.c.s. entry {index}")
        return self.ecs[index - 1]


def evaluate_word(epi: EpimorphismInstance, w: Word) -> Permutation:
    return evaluate_in(epi.images, w, epi.target.degree)


def make_ecs(presentation: Presentation, images: Sequence[Permutation], degree: int,
             entries: Sequence[tuple[Word, int]] | Sequence[tuple[Word, int, Orientation]]
             ) -> tuple[EcsEntry, ...]:
    out = []
    for i, entry in enumerate(entries, start=1):
        word, order = entry[0], entry[1]
        orientation = entry[2] if len(entry) > 2 else "unspecified"
        presentation.check_word(word)
        out.append(EcsEntry(i, order, word, evaluate_in(images, word, degree), orientation))
    return tuple(out)


def fuchsian_instance(sig: FuchsianSignature, target: FiniteGroup,
                      images: Sequence[Permutation]) -> EpimorphismInstance:
    """Instance for the canonical presentation of ``sig``; e.c.s. = the elliptic generators."""
    pres = signature_to_presentation(sig)
    images = tuple(images)
    ecs = make_ecs(pres, images, target.degree,
                   [(Word.generator(i), m, "preserving") for i, m in enumerate(sig.periods)])
    return EpimorphismInstance(pres, target, images, ecs, "fuchsian-signature", sig)


TRUSTED_ECS = "e.c.s. data is trusted input (maximality and non-conjugacy in K are not checked)"
NECESSARY_ONLY = ("order preservation on the supplied e.c.s. images is necessary, "
                  "not sufficient, for a torsion-free kernel")


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of :func:`validate_epimorphism`.

    ``failed_check`` and ``message`` describe the first failure in check order;
    ``violations`` lists ``(check, message)`` for every check that failed.
    """

    passed: bool
    failed_check: str | None = None
    message: str = ""
    notes: tuple[str, ...] = ()
    violations: tuple[tuple[str, str], ...] = ()

    def __bool__(self) -> bool:
        return self.passed


def _relator_violation(epi: EpimorphismInstance) -> str | None:
    for k, rel in enumerate(epi.presentation.relators, start=1):
        if not evaluate_word(epi, rel).is_identity():
            return f"relator {k} does not map to the identity"
    return None


def _surjectivity_violation(epi: EpimorphismInstance) -> str | None:
    generated = subgroup_generated(epi.target, epi.images)
    if generated.order != epi.target.order:
        return (f"images generate a subgroup of order {generated.order}, "
                f"target has order {epi.target.order}")
    return None


def _order_violation(epi: EpimorphismInstance) -> str | None:
    for entry in epi.ecs:
        actual = element_order(epi.target, entry.image)
        if actual != entry.order:
            return f"e.c.s. entry {entry.index}: image has order {actual}, expected {entry.order}"
    return None


_CHECKS = (("relators", _relator_violation), ("surjectivity", _surjectivity_violation),
           ("order check", _order_violation))


def validate_epimorphism(epi: EpimorphismInstance) -> ValidationReport:
    """Check relators, surjectivity and exact order preservation on the e.c.s.

    Failures are reported, not raised.  All three checks always run.
    """
    notes = [TRUSTED_ECS]
    if epi.kind == "general":
        notes.append(NECESSARY_ONLY)
    violations = []
    for name, check in _CHECKS:
        message = check(epi)
        if message is not None:
            violations.append((name, message))
    if not violations:
        return ValidationReport(True, None, "ok", tuple(notes))
    first, message = violations[0]
    return ValidationReport(False, first, message, tuple(notes), tuple(violations))
