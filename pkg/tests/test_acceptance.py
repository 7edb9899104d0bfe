"""Acceptance criteria, one test per criterion.

Each test records a ``PASS``/``FAIL`` line; the lines are printed in the
pytest terminal summary, or directly when this file is run as a script.
"""

from __future__ import annotations

import subprocess
import sys
import time
from pathlib import Path

import pytest

from fixlocus.catalog import fermat_instance, schottky_instance
from fixlocus.corpus import fuchsian_corpus, random_corpus
from fixlocus.counting import (
    MergeSpec,
    NormalizerImageSpec,
    component_count,
    component_upper_bound,
    elliptic_specs,
    resolve_n,
)
from fixlocus.counting2d import fiber_oracle_count, macbeath_count
from fixlocus.errors import DivisibilityViolation
from fixlocus.groups import cyclic_group
from fixlocus.parser import parse_instance, parse_word, render_instance, render_word
from fixlocus.perm import element_order, normalizer_of_cyclic
from fixlocus.words import FuchsianSignature, Word, fuchsian_instance, validate_epimorphism

DATA = Path(__file__).resolve().parent.parent / "src" / "fixlocus" / "data"
FIXTURES = sorted(p for p in DATA.glob("*.fix") if p.stem != "broken_order")

RESULTS: dict[int, str] = {}


def record(number: int, title: str, ok: bool, detail: str) -> None:
    RESULTS[number] = f"{'PASS' if ok else 'FAIL'} criterion {number} ({title}): {detail}"
    assert ok, RESULTS[number]


_CACHE: dict[str, list] = {}


def corpus_items():
    if "corpus" not in _CACHE:
        _CACHE["corpus"] = fuchsian_corpus()
        _CACHE["random"] = random_corpus(50, seed=1)
    return _CACHE["corpus"], _CACHE["random"]


def hyperelliptic(g: int):
    Z2 = cyclic_group(2)
    return fuchsian_instance(FuchsianSignature(0, (2,) * (2 * g + 2)), Z2, [Z2.generators[0]] * (2 * g + 2))


def torus():
    Z3 = cyclic_group(3)
    return fuchsian_instance(FuchsianSignature(0, (3, 3, 3)), Z3, [Z3.generators[0]] * 3)


def catalog_instances():
    out = [fermat_instance(m, k) for m in (3, 4, 5) for k in (3, 4) if m ** k <= 100_000]
    return out + [schottky_instance()]


def test_criterion_1_fermat():
    start = time.perf_counter()
    bad, checked = [], 0
    for m in (3, 4, 5):
        for k in (3, 4):
            if m ** k > 100_000:
                continue
            inst = fermat_instance(m, k)
            for name in inst.group_names:
                got = component_count(inst.epi, inst.element(name), inst.merge, inst.specs).count
                checked += 1
                if got != m ** (k - 1):
                    bad.append(f"({m},{k}) {name}: {got}")
    elapsed = time.perf_counter() - start
    record(1, "Fermat reproduction", not bad and elapsed < 10,
           f"{checked} generator counts equal m^(k-1), {elapsed:.2f} s (limit 10 s)"
           + (f"; mismatches {bad}" if bad else ""))


def test_criterion_2_schottky():
    start = time.perf_counter()
    inst = schottky_instance()
    got = {n: component_count(inst.epi, inst.element(n), inst.merge, inst.specs).count
           for n in ("a1", "a2", "a3")}
    elapsed = time.perf_counter() - start
    record(2, "Schottky reproduction", got == {"a1": 4, "a2": 4, "a3": 4} and elapsed < 1,
           f"counts {got}, {elapsed:.3f} s (limit 1 s)")


def test_criterion_3_oracle_equivalence():
    start = time.perf_counter()
    corpus, randomized = corpus_items()
    mismatches, elements = [], 0
    for item in corpus + randomized:
        epi = item.epi
        assert validate_epimorphism(epi).passed, item.label
        for g in range(1, epi.target.order):
            elements += 1
            a, b = macbeath_count(epi, g).count, fiber_oracle_count(epi, g)
            if a != b:
                mismatches.append((item.label, g, a, b))
    elapsed = time.perf_counter() - start
    hyperbolic = sum(item.epi.signature.is_hyperbolic() for item in corpus)
    random_ok = len(randomized) == 50 and all(item.epi.signature.is_hyperbolic() for item in randomized)
    ok = not mismatches and hyperbolic >= 100 and random_ok and elapsed < 60
    record(3, "oracle equivalence", ok,
           f"{len(corpus)} enumerated ({hyperbolic} hyperbolic, the rest torus quotients) "
           f"+ {len(randomized)} random hyperbolic instances, {elements} elements, "
           f"{len(mismatches)} mismatches, {elapsed:.1f} s (limit 60 s)")


def test_criterion_4_classical_counts():
    got = {}
    for g in (2, 3, 4, 5):
        epi = hyperelliptic(g)
        got[f"genus {g}"] = (fiber_oracle_count(epi, 1), 2 * g + 2)
    got["torus"] = (fiber_oracle_count(torus(), 1), 3)
    ok = all(a == b for a, b in got.values())
    record(4, "classical counts via oracle", ok,
           ", ".join(f"{k}: {a} (expected {b})" for k, (a, b) in got.items()))


def _bound_cases():
    for inst in catalog_instances():
        for name in inst.group_names:
            yield inst.epi, inst.element(name), inst.merge, inst.specs
    corpus, randomized = corpus_items()
    epis = [hyperelliptic(g) for g in (2, 3, 4, 5)] + [torus()]
    epis += [item.epi for item in corpus + randomized]
    for epi in epis:
        specs = elliptic_specs(epi)
        for g in range(1, epi.target.order):
            yield epi, g, MergeSpec(), specs


def test_criterion_5_bound():
    over, bad_terms, rows = [], [], 0
    for epi, g, merge, specs in _bound_cases():
        report = component_count(epi, g, merge, specs)
        rows += 1
        if report.count > component_upper_bound(epi, g):
            over.append(report)
        for _, n_i in report.n_values:
            if n_i <= 0 or report.normalizer_order % n_i:
                bad_terms.append(report)
    record(5, "bound property", not over and not bad_terms,
           f"{rows} (instance, element) pairs; {len(over)} above the bound, "
           f"{len(bad_terms)} non-integral summands")


def test_criterion_6_specialization():
    corpus, randomized = corpus_items()
    mismatches, elements = [], 0
    for item in corpus + randomized:
        epi = item.epi
        specs = elliptic_specs(epi)
        for g in range(1, epi.target.order):
            elements += 1
            if component_count(epi, g, MergeSpec(), specs).count != macbeath_count(epi, g).count:
                mismatches.append((item.label, g))
    record(6, "specialization", not mismatches,
           f"{elements} elements over {len(corpus) + len(randomized)} 2D instances, "
           f"{len(mismatches)} mismatches")


def _spec_cases():
    for inst in catalog_instances():
        yield inst.epi, inst.specs
    corpus, randomized = corpus_items()
    for item in corpus + randomized:
        yield item.epi, elliptic_specs(item.epi)


def test_criterion_7_divisibility():
    resolved, violations, unraised = 0, [], []
    for epi, specs in _spec_cases():
        G = epi.target
        for spec in specs:
            entry = epi.ecs_entry(spec.ecs_index)
            d, m = spec.power_divisor, entry.order
            n_i = resolve_n(epi, spec, d)
            power = entry.image ** (m // d)
            normalizer = normalizer_of_cyclic(G, power).order
            resolved += 1
            if n_i % m or normalizer % n_i:
                violations.append((spec, n_i))
            mutants = [NormalizerImageSpec(spec.ecs_index, d, n_value=m + 1),
                       NormalizerImageSpec(spec.ecs_index, d, n_value=2 * normalizer)]
            if G.order > m:
                mutants.append(NormalizerImageSpec(spec.ecs_index, d, n_value=m * normalizer + m))
            if m > 2:
                # the image of a proper power misses theta(kappa_i)
                mutants.append(NormalizerImageSpec(spec.ecs_index, d,
                                                   generator_words=(entry.word ** 2,)) if m % 2 == 0
                               else NormalizerImageSpec(spec.ecs_index, d, generator_words=(Word(),)))
            for mutant in mutants:
                try:
                    resolve_n(epi, mutant, d)
                except DivisibilityViolation:
                    continue
                unraised.append(mutant)
    record(7, "divisibility invariants", not violations and not unraised,
           f"{resolved} specs resolved with m_i | n_i | |N|; "
           f"{len(violations)} violations, {len(unraised)} mutants not rejected")


def _cli(*args: str) -> subprocess.CompletedProcess:
    return subprocess.run([sys.executable, "-m", "fixlocus.cli", *args], capture_output=True, check=False)


def test_criterion_8_parser_cli():
    problems = []
    corpus, _ = corpus_items()
    words = 0
    for item in corpus:
        names = item.epi.presentation.generator_names
        for rel in item.epi.presentation.relators:
            words += 1
            if parse_word(render_word(rel, names), names) != rel:
                problems.append(f"word round-trip {item.label}")
    for path in FIXTURES:
        bundle = parse_instance(path.read_text())
        if parse_instance(render_instance(bundle)) != bundle:
            problems.append(f"document round-trip {path.name}")
        for command in (["validate"], ["count", "--json"], ["bound"]):
            a, b = _cli(command[0], str(path), *command[1:]), _cli(command[0], str(path), *command[1:])
            if (a.stdout, a.stderr, a.returncode) != (b.stdout, b.stderr, b.returncode):
                problems.append(f"unstable {command[0]} on {path.name}")
    checks = {"schottky": _cli("catalog", "schottky", "--check")}
    for m in (3, 4, 5):
        for k in (3, 4):
            if m ** k <= 100_000:
                checks[f"fermat {m} {k}"] = _cli("catalog", "fermat", "--m", str(m), "--k", str(k), "--check")
    for label, proc in checks.items():
        if proc.returncode != 0:
            problems.append(f"catalog {label} exited {proc.returncode}")
    if checks["schottky"].stdout != b"a1: 4, a2: 4, a3: 4\n":
        problems.append("schottky check output")
    record(8, "parser/CLI", not problems,
           f"{words} relator words and {len(FIXTURES)} fixtures round-trip, "
           f"{len(checks)} catalog checks exit 0" if not problems else "; ".join(problems))


def main() -> int:
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    failed = 0
    for t in tests:
        try:
            t()
        except AssertionError:
            failed += 1
        except Exception as exc:  # noqa: BLE001
            failed += 1
            print(f"ERROR in {t.__name__}: {exc!r}")
    for number in sorted(RESULTS):
        print(RESULTS[number])
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
