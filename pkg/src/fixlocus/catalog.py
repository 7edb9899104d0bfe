"""Prefilled instances for the two worked 3-dimensional examples.

* Generalized Fermat 3-manifolds of type ``(m, k)``: ``G = Z_m^k``, each
  generator image ``a_i`` fixes ``m^(k-1)`` components.
* An extended Schottky group of rank 5: ``K = Z_2 * Z_2 * Z_2`` onto
  ``Z_2^3``, each ``a_i`` fixes 4 components.

Both ``K`` are infinite; only presentations are stored.  The normalizer words
``N_K<x_i> = <x_i>`` are taken from the construction of these examples and
are not recomputed here.  A non-trivial power of an elliptic ``x_i`` has the
same fixed geodesic as ``x_i``, hence the same stabilizer, so the same words
serve every power order ``d | m``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from fixlocus.counting import MergeSpec, NormalizerImageSpec, component_count
from fixlocus.errors import BadParameters, CapExceeded
from fixlocus.groups import abelian_group, block_cycles
from fixlocus.perm import Permutation, group_cap
from fixlocus.words import EpimorphismInstance, Presentation, Word, make_ecs

NORMALIZER_SOURCE = "normalizer words N_K<kappa_i> = <kappa_i> are part of the example's construction"


@dataclass(frozen=True)
class CatalogInstance:
    name: str
    epi: EpimorphismInstance
    specs: tuple[NormalizerImageSpec, ...]
    merge: MergeSpec
    # element name -> expected number of components
    expected: dict[str, int] = field(hash=False)
    # group generator names, in the order of epi.target.generators
    group_names: tuple[str, ...] = ()

    def element(self, name: str) -> Permutation:
        return self.epi.target.generators[self.group_names.index(name)]

    def bundle(self):
        from fixlocus.parser import InstanceBundle

        return InstanceBundle(self.epi, self.specs, self.merge, (), self.group_names)

    def check(self) -> dict[str, int]:
        """Recompute every expected count; returns name -> computed count."""
        return {name: component_count(self.epi, self.element(name), self.merge, self.specs).count
                for name in self.expected}


def _x(i: int) -> Word:
    return Word.generator(i)


def fermat_presentation(m: int, k: int) -> Presentation:
    """``x_i^m`` and ``[x_i, x_{i+1}^-1] = [x_{i+1}, x_{i+2}^-1]`` with indices mod k.

    The second family is written as ``x_i x_{i+1}^-1 x_i^-1 x_{i+1}`` times the
    inverse of the right-hand side.
    """
    names = tuple(f"x{i + 1}" for i in range(k))
    relators = [_x(i) ** m for i in range(k)]
    for i in range(k):
        j, l = (i + 1) % k, (i + 2) % k
        lhs = _x(i) * _x(j).inverse() * _x(i).inverse() * _x(j)
        rhs = _x(j) * _x(l).inverse() * _x(j).inverse() * _x(l)
        relators.append(lhs * rhs.inverse())
    return Presentation(names, tuple(relators))


def fermat_instance(m: int, k: int) -> CatalogInstance:
    if m < 3 or k < 3:
        raise BadParameters(f"generalized Fermat pairs need m, k >= 3, got m={m}, k={k}")
    if m ** k > group_cap():
        raise CapExceeded(f"|Z_{m}^{k}| = {m ** k} exceeds the group-order cap {group_cap()}")
    G = abelian_group([m] * k)
    images = tuple(block_cycles([m] * k))
    pres = fermat_presentation(m, k)
    ecs = make_ecs(pres, images, G.degree, [(_x(i), m, "preserving") for i in range(k)])
    epi = EpimorphismInstance(pres, G, images, ecs, "general")
    specs = tuple(NormalizerImageSpec(i + 1, d, generator_words=(_x(i),))
                  for i in range(k) for d in range(2, m + 1) if m % d == 0)
    names = tuple(f"a{i + 1}" for i in range(k))
    return CatalogInstance(f"fermat-{m}-{k}", epi, specs, MergeSpec.discrete(),
                           {n: m ** (k - 1) for n in names}, names)


def schottky_instance() -> CatalogInstance:
    G = abelian_group([2, 2, 2])
    images = tuple(block_cycles([2, 2, 2]))
    pres = Presentation(("k1", "k2", "k3"), tuple(_x(i) ** 2 for i in range(3)))
    ecs = make_ecs(pres, images, G.degree, [(_x(i), 2, "reversing") for i in range(3)])
    epi = EpimorphismInstance(pres, G, images, ecs, "general")
    specs = tuple(NormalizerImageSpec(i + 1, 2, generator_words=(_x(i),)) for i in range(3))
    names = ("a1", "a2", "a3")
    return CatalogInstance("schottky", epi, specs, MergeSpec.discrete(),
                           {n: 4 for n in names}, names)
