"""Fixed points of automorphisms of Riemann surfaces.

Three routes:

* :func:`macbeath_count` evaluates ``|N_G<g>| * sum 1/m_i`` over the cone
  points whose stabilizer image contains a conjugate of ``g``;
* :func:`fiber_oracle_count` counts, independently, the cosets of
  ``G / <theta(x_i)>`` fixed by left multiplication with ``g``.  The fiber of the
  branched cover over the i-th cone point is exactly that coset space, and
  fixed points over distinct cone points are distinct, so summing the fibers
  gives the fixed-point count with no normalizer or conjugacy computation;
* :func:`oval_count` sums centralizer indices for a symmetry.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from fixlocus.errors import (
    BadParameters,
    CentralizerImageNotContained,
    KindMismatch,
    NonIntegralFiber,
    NonIntegralResult,
    NotInvolution,
    TrivialElement,
)
from fixlocus.perm import (
    ElementLike,
    FiniteGroup,
    Permutation,
    are_conjugate,
    centralizer,
    element_order,
    is_conjugate_to_power,
    normalizer_of_cyclic,
    powers,
    subgroup_generated,
)
from fixlocus.words import EpimorphismInstance, Word, evaluate_word


@dataclass(frozen=True)
class FixCount2D:
    element: Permutation
    contributing_indices: tuple[int, ...]
    count: int


@dataclass(frozen=True)
class ReflectionClassData:
    """A canonical reflection ``c_i`` (by its image) and words generating ``C(K, c_i)``.

    ``reflection_word`` is kept when the reflection was given as a word in ``K``.
    """

    reflection_image: Permutation
    centralizer_words: tuple[Word, ...]
    reflection_word: Word | None = None

    def __post_init__(self):
        object.__setattr__(self, "centralizer_words", tuple(self.centralizer_words))
        if self.reflection_image.order() > 2:
            raise BadParameters(f"reflection image {self.reflection_image} has order > 2")


def _nontrivial(G: FiniteGroup, g: ElementLike) -> int:
    idx = G.index(g)
    if idx == 0:
        raise TrivialElement("the identity fixes everything; pass a non-trivial element")
    return idx


def _require_fuchsian(epi: EpimorphismInstance) -> None:
    if epi.kind != "fuchsian-signature":
        raise KindMismatch("this count needs a fuchsian-signature instance")


def macbeath_count(epi: EpimorphismInstance, g: ElementLike) -> FixCount2D:
    _require_fuchsian(epi)
    G = epi.target
    idx = _nontrivial(G, g)
    contributing = tuple(e.index for e in epi.ecs if is_conjugate_to_power(G, idx, e.image))
    total = normalizer_of_cyclic(G, idx).order * sum(
        (Fraction(1, epi.ecs_entry(i).order) for i in contributing), Fraction(0))
    if total.denominator != 1:
        raise NonIntegralResult(
            f"fixed-point count {total} is not an integer; the epimorphism is not smooth")
    return FixCount2D(G.element(idx), contributing, int(total))


def _left_coset_labels(G: FiniteGroup, h: int) -> np.ndarray:
    """``labels[w]`` is the least element index of the left coset ``w<h>``."""
    key = ("left_cosets", h)
    labels = G.memo.get(key)
    if labels is None:
        table = G._table
        labels = np.arange(G.order)
        for p in powers(G, h)[1:]:
            # row w * h^k is h^k[w[x]]
            labels = np.minimum(labels, G.indices_of(G._table[p][table]))
        labels.setflags(write=False)
        G.memo[key] = labels
    return labels


def fiber_oracle_count(epi: EpimorphismInstance, g: ElementLike) -> int:
    _require_fuchsian(epi)
    G = epi.target
    idx = _nontrivial(G, g)
    # row g * w is w[g[x]]
    left = G.indices_of(G._table[:, G._table[idx]])
    total = 0
    for entry in epi.ecs:
        labels = _left_coset_labels(G, G.index(entry.image))
        fixed_elements = int(np.count_nonzero(labels[left] == labels))
        fixed, rest = divmod(fixed_elements, entry.order)
        if rest:
            raise NonIntegralFiber(
                f"fiber over cone point {entry.index}: {fixed_elements} elements do not split "
                f"into cosets of size {entry.order}")
        total += fixed
    return total


def oval_count(epi: EpimorphismInstance, sigma: ElementLike,
               classes: list[ReflectionClassData]) -> int:
    """Number of ovals of the symmetry ``sigma``.

    Sums ``[C(G, theta(c_i)) : theta(C(K, c_i))]`` over the classes whose
    reflection image is conjugate to ``sigma`` in ``G``.
    """
    G = epi.target
    s = G.index(sigma)
    if element_order(G, s) != 2:
        raise NotInvolution(f"{G.element(s)} is not an involution")
    total = 0
    for cls in classes:
        c = G.index(cls.reflection_image)
        if not are_conjugate(G, s, c):
            continue
        c_perm = G.element(c)
        images = [evaluate_word(epi, w) for w in cls.centralizer_words]
        for w, x in zip(cls.centralizer_words, images):
            if x * c_perm != c_perm * x:
                raise CentralizerImageNotContained(
                    f"centralizer word {w.letters} maps to {x}, which does not commute with {c_perm}")
        total += centralizer(G, c).order // subgroup_generated(G, images).order
    return total
