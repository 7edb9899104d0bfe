"""Text formats: the word grammar, cycle notation and instance documents.

Word grammar (whitespace is insignificant)::

    word   := factor (('*')? factor)*
    factor := atom ('^' int)?
    atom   := ident | '1' | '(' word ')' | '[' word ',' word ']'

``[u,v]`` expands to ``u v u^-1 v^-1`` and ``1`` is the empty word.

An instance document is a list of ``[section]`` blocks of ``key = value``
lines (``#`` starts a comment).  Permutations use 1-based disjoint-cycle
notation, ``()`` being the identity.  Example::

    [group]
    degree = 6
    a1 = (1 2)
    a2 = (3 4)
    a3 = (5 6)

    [generators]
    names = k1 k2 k3

    [relators]
    k1^2
    k2^2
    k3^2

    [images]
    k1 = a1
    k2 = a2
    k3 = a3

    [ecs]
    1 = k1 : 2 : reversing
    2 = k2 : 2 : reversing
    3 = k3 : 2 : reversing

    [normalizer_images]
    1 2 = words k1
    2 2 = words k2
    3 2 = order 2

Further sections: ``[signature]`` (``genus``, ``periods``; replaces
``[generators]``/``[relators]`` and, when ``[ecs]`` is absent, supplies the
elliptic generators), ``[merge]`` (``element = {1 3} {2} : note``) and
``[reflections]`` (``reflection = centralizer word; word; ...``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from fixlocus.counting import MergeEntry, MergeSpec, NormalizerImageSpec
from fixlocus.counting2d import ReflectionClassData
from fixlocus.errors import (
    BadParameters,
    FixLocusError,
    IndexOutOfRange,
    MalformedPermutation,
    NotAMember,
    ParseError,
    UnknownGenerator,
    ValidationError,
)
from fixlocus.perm import FiniteGroup, Permutation, enumerate_group, format_cycles
from fixlocus.words import (
    EcsEntry,
    EpimorphismInstance,
    FuchsianSignature,
    Presentation,
    Word,
    commutator,
    evaluate_in,
    signature_to_presentation,
    validate_epimorphism,
)

SECTIONS = ("group", "generators", "relators", "signature", "images", "ecs",
            "normalizer_images", "merge", "reflections")

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<op>[-+*^()\[\],]))")


# words

class _WordParser:
    def __init__(self, text: str, names: Sequence[str], line: int, column: int):
        self.names = list(names)
        self.line = line
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                col = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise ParseError(f"unexpected character {text[col]!r}", line, column + col)
            kind = m.lastgroup
            start = m.start(kind)
            self.tokens.append((kind, m.group(kind), column + start))
            pos = m.end()
        self.end_column = column + len(text)
        self.pos = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def error(self, message: str) -> ParseError:
        tok = self.peek()
        return ParseError(message, self.line, tok[2] if tok else self.end_column)

    def take(self, value: str) -> None:
        tok = self.peek()
        if tok is None or tok[1] != value:
            raise self.error(f"expected {value!r}")
        self.pos += 1

    def parse(self) -> Word:
        if not self.tokens:
            raise ParseError("empty word", self.line, self.end_column)
        w = self.word()
        if self.peek() is not None:
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return w

    def _starts_atom(self) -> bool:
        tok = self.peek()
        return tok is not None and (tok[0] == "ident" or tok[1] in ("(", "[", "1"))

    def word(self) -> Word:
        w = self.factor()
        while True:
            tok = self.peek()
            if tok is not None and tok[1] == "*":
                self.pos += 1
                w = w * self.factor()
            elif self._starts_atom():
                w = w * self.factor()
            else:
                return w

    def factor(self) -> Word:
        a = self.atom()
        tok = self.peek()
        if tok is not None and tok[1] == "^":
            self.pos += 1
            sign = 1
            tok = self.peek()
            if tok is not None and tok[1] in "+-":
                sign = -1 if tok[1] == "-" else 1
                self.pos += 1
                tok = self.peek()
            if tok is None or tok[0] != "int":
                raise self.error("expected an integer exponent")
            self.pos += 1
            a = a ** (sign * int(tok[1]))
        return a

    def atom(self) -> Word:
        tok = self.peek()
        if tok is None:
            raise self.error("expected a generator, '1', '(' or '['")
        kind, value, col = tok
        if kind == "ident":
            self.pos += 1
            try:
                return Word.generator(self.names.index(value))
            except ValueError:
                raise UnknownGenerator(f"unknown generator {value!r}", self.line, col) from None
        if value == "1":
            self.pos += 1
            return Word()
        if value == "(":
            self.pos += 1
            w = self.word()
            self.take(")")
            return w
        if value == "[":
            self.pos += 1
            u = self.word()
            self.take(",")
            v = self.word()
            self.take("]")
            return commutator(u, v)
        raise self.error(f"unexpected {value!r}")


def parse_word(text: str, names: Sequence[str], line: int = 1, column: int = 1) -> Word:
    """Parse ``text`` as a word over ``names``; positions in errors start at ``line``/``column``."""
    return _WordParser(text, names, line, column).parse()


def render_word(w: Word, names: Sequence[str]) -> str:
    if w.is_identity():
        return "1"
    return "*".join(names[g] if e == 1 else f"{names[g]}^{e}" for g, e in w.letters)


# permutations

_CYCLES = re.compile(r"\s*(\(\s*[\d\s,]*\)\s*)+\Z")


def looks_like_cycles(text: str) -> bool:
    return bool(_CYCLES.match(text))


def parse_cycles(text: str, degree: int, line: int = 1, column: int = 1) -> Permutation:
    """1-based disjoint-cycle notation, e.g. ``(1 2 3)(4 5)``; ``()`` is the identity."""
    if not looks_like_cycles(text):
        raise ParseError("expected disjoint-cycle notation such as (1 2 3)", line, column)
    cycles = []
    for m in re.finditer(r"\(([^()]*)\)", text):
        points = [int(p) for p in re.split(r"[\s,]+", m.group(1).strip()) if p]
        if any(p < 1 or p > degree for p in points):
            raise ParseError(f"cycle point outside 1..{degree}", line, column + m.start())
        if points:
            cycles.append(tuple(p - 1 for p in points))
    try:
        return Permutation.from_cycles(cycles, degree)
    except MalformedPermutation as exc:
        raise ParseError(str(exc), line, column) from None


# documents

@dataclass
class _Line:
    key: str | None
    value: str
    line: int
    key_col: int
    value_col: int


@dataclass
class _Section:
    name: str
    line: int
    lines: list[_Line] = field(default_factory=list)


def _split_document(text: str) -> dict[str, _Section]:
    sections: dict[str, _Section] = {}
    current: _Section | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if not body.strip():
            continue
        stripped = body.strip()
        col0 = len(body) - len(body.lstrip()) + 1
        if stripped.startswith("["):
            m = re.fullmatch(r"\[\s*([a-z_]+)\s*\]", stripped)
            if m is None:
                raise ParseError("malformed section header", lineno, col0)
            name = m.group(1)
            if name not in SECTIONS:
                raise ParseError(f"unknown section [{name}]", lineno, col0 + 1)
            if name in sections:
                raise ParseError(f"duplicate section [{name}]", lineno, col0 + 1)
            current = sections[name] = _Section(name, lineno)
            continue
        if current is None:
            raise ParseError("content before the first section header", lineno, col0)
        if current.name == "relators":
            current.lines.append(_Line(None, stripped, lineno, col0, col0))
            continue
        if "=" not in body:
            raise ParseError("expected 'key = value'", lineno, col0)
        key_part, value_part = body.split("=", 1)
        value_col = len(key_part) + 2 + len(value_part) - len(value_part.lstrip())
        current.lines.append(_Line(key_part.strip(), value_part.strip(), lineno, col0, value_col))
    return sections


@dataclass(frozen=True)
class InstanceBundle:
    """A parsed document: the epimorphism plus the auxiliary counting data."""

    epi: EpimorphismInstance
    specs: tuple[NormalizerImageSpec, ...] = ()
    merge: MergeSpec = field(default_factory=MergeSpec)
    reflections: tuple[ReflectionClassData, ...] = ()
    group_names: tuple[str, ...] = ()

    def __iter__(self) -> Iterator:
        return iter((self.epi, self.specs, self.merge, self.reflections))

    def group_generator(self, name: str) -> Permutation:
        return self.epi.target.generators[self.group_names.index(name)]


def parse_element(text: str, group: FiniteGroup, names: Sequence[str],
                  line: int = 1, column: int = 1) -> Permutation:
    """Cycle notation, or a word in the group generators named ``names``."""
    if looks_like_cycles(text):
        return parse_cycles(text, group.degree, line, column)
    w = parse_word(text, names, line, column)
    return evaluate_in(group.generators, w, group.degree)


def _int(text: str, line: int, column: int, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {text!r}", line, column) from None


def _require(sections: dict[str, _Section], name: str) -> _Section:
    if name not in sections:
        raise ValidationError(f"missing section [{name}]", section=name)
    return sections[name]


def _single(sec: _Section, key: str) -> _Line:
    found = [ln for ln in sec.lines if ln.key == key]
    if len(found) != 1:
        raise ValidationError(f"expected exactly one '{key} = ...' line", section=sec.name)
    return found[0]


def _parse_group(sec: _Section) -> tuple[FiniteGroup, tuple[str, ...]]:
    deg_line = _single(sec, "degree")
    degree = _int(deg_line.value, deg_line.line, deg_line.value_col, "degree")
    if degree < 1:
        raise ParseError("degree must be positive", deg_line.line, deg_line.value_col)
    names, gens = [], []
    for ln in sec.lines:
        if ln.key == "degree":
            continue
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", ln.key or ""):
            raise ParseError(f"invalid generator name {ln.key!r}", ln.line, ln.key_col)
        if ln.key in names:
            raise ParseError(f"duplicate group generator {ln.key!r}", ln.line, ln.key_col)
        names.append(ln.key)
        gens.append(parse_cycles(ln.value, degree, ln.line, ln.value_col))
    if not gens:
        raise ValidationError("the group needs at least one generator", section="group")
    return enumerate_group(degree, gens), tuple(names)


def _parse_presentation(sections: dict[str, _Section]) -> tuple[Presentation, FuchsianSignature | None]:
    if "signature" in sections:
        for other in ("generators", "relators"):
            if other in sections:
                raise ValidationError(f"[{other}] cannot be combined with [signature]", section=other)
        sec = sections["signature"]
        g_line = _single(sec, "genus")
        genus = _int(g_line.value, g_line.line, g_line.value_col, "genus")
        p_lines = [ln for ln in sec.lines if ln.key == "periods"]
        periods: list[int] = []
        if p_lines:
            ln = p_lines[0]
            periods = [_int(t, ln.line, ln.value_col, "period") for t in ln.value.split()]
        try:
            sig = FuchsianSignature(genus, tuple(periods))
        except BadParameters as exc:
            raise ValidationError(str(exc), section="signature") from None
        return signature_to_presentation(sig), sig
    gen_line = _single(_require(sections, "generators"), "names")
    names = tuple(gen_line.value.split())
    try:
        Presentation(names)
    except BadParameters as exc:
        raise ParseError(str(exc), gen_line.line, gen_line.value_col) from None
    relators = []
    for ln in sections.get("relators", _Section("relators", 0)).lines:
        relators.append(parse_word(ln.value, names, ln.line, ln.value_col))
    return Presentation(names, tuple(relators)), None


def _parse_images(sec: _Section, pres: Presentation, group: FiniteGroup,
                  group_names: Sequence[str]) -> tuple[Permutation, ...]:
    images: dict[str, Permutation] = {}
    for ln in sec.lines:
        if ln.key not in pres.generator_names:
            raise UnknownGenerator(f"unknown generator {ln.key!r}", ln.line, ln.key_col)
        if ln.key in images:
            raise ParseError(f"image of {ln.key!r} given twice", ln.line, ln.key_col)
        p = parse_element(ln.value, group, group_names, ln.line, ln.value_col)
        if p not in group:
            raise ValidationError(f"image of {ln.key} is not in the group", section="images")
        images[ln.key] = p
    missing = [n for n in pres.generator_names if n not in images]
    if missing:
        raise ValidationError(f"no image for {', '.join(missing)}", section="images")
    return tuple(images[n] for n in pres.generator_names)


def _parse_ecs(sec: _Section, pres: Presentation, images: Sequence[Permutation],
               degree: int) -> tuple[EcsEntry, ...]:
    entries = []
    for ln in sec.lines:
        index = _int(ln.key or "", ln.line, ln.key_col, "e.c.s. index")
        parts = [p.strip() for p in ln.value.split(":")]
        if len(parts) not in (2, 3):
            raise ParseError("expected 'index = word : order [: orientation]'", ln.line, ln.value_col)
        word = parse_word(parts[0], pres.generator_names, ln.line, ln.value_col)
        order = _int(parts[1], ln.line, ln.value_col, "order")
        orientation = parts[2] if len(parts) == 3 else "unspecified"
        try:
            entries.append(EcsEntry(index, order, word, evaluate_in(images, word, degree), orientation))
        except BadParameters as exc:
            raise ParseError(str(exc), ln.line, ln.value_col) from None
    entries.sort(key=lambda e: e.index)
    if [e.index for e in entries] != list(range(1, len(entries) + 1)):
        raise ValidationError("e.c.s. indices must be 1..r without gaps", section="ecs")
    return tuple(entries)


def _parse_specs(sec: _Section, pres: Presentation, n_ecs: int) -> tuple[NormalizerImageSpec, ...]:
    specs = []
    for ln in sec.lines:
        key = (ln.key or "").split()
        if len(key) != 2:
            raise ParseError("expected 'index divisor = ...'", ln.line, ln.key_col)
        index = _int(key[0], ln.line, ln.key_col, "e.c.s. index")
        divisor = _int(key[1], ln.line, ln.key_col, "power divisor")
        if not 1 <= index <= n_ecs:
            raise ValidationError(f"normalizer data for unknown e.c.s. entry {index}",
                                  section="normalizer_images")
        head, _, rest = ln.value.partition(" ")
        rest_col = ln.value_col + len(head) + 1 + len(rest) - len(rest.lstrip())
        if head == "order":
            n = _int(rest.strip(), ln.line, rest_col, "order")
            try:
                specs.append(NormalizerImageSpec(index, divisor, n_value=n))
            except BadParameters as exc:
                raise ParseError(str(exc), ln.line, rest_col) from None
        elif head == "words":
            words = []
            col = rest_col
            for chunk in rest.split(";"):
                if chunk.strip():
                    words.append(parse_word(chunk, pres.generator_names, ln.line, col))
                col += len(chunk) + 1
            specs.append(NormalizerImageSpec(index, divisor, generator_words=tuple(words)))
        else:
            raise ParseError("expected 'order N' or 'words w1; w2; ...'", ln.line, ln.value_col)
    return tuple(specs)


def _parse_merge(sec: _Section, group: FiniteGroup, group_names: Sequence[str]) -> MergeSpec:
    entries = []
    for ln in sec.lines:
        element = parse_element(ln.key or "", group, group_names, ln.line, ln.key_col)
        blocks_text, _, note = ln.value.partition(":")
        if not re.fullmatch(r"\s*(\{[\d\s,]*\}\s*)+", blocks_text):
            raise ParseError("expected blocks such as {1 3} {2}", ln.line, ln.value_col)
        blocks = [tuple(int(t) for t in re.split(r"[\s,]+", b.strip()) if t)
                  for b in re.findall(r"\{([^{}]*)\}", blocks_text)]
        try:
            entries.append(MergeEntry(element, tuple(blocks), note.strip()))
        except BadParameters as exc:
            raise ParseError(str(exc), ln.line, ln.value_col) from None
    return MergeSpec(tuple(entries))


def _parse_reflections(sec: _Section, pres: Presentation, images: Sequence[Permutation],
                       group: FiniteGroup) -> tuple[ReflectionClassData, ...]:
    out = []
    for ln in sec.lines:
        key = ln.key or ""
        if looks_like_cycles(key):
            word = None
            image = parse_cycles(key, group.degree, ln.line, ln.key_col)
        else:
            word = parse_word(key, pres.generator_names, ln.line, ln.key_col)
            image = evaluate_in(images, word, group.degree)
        words = []
        col = ln.value_col
        for chunk in ln.value.split(";"):
            if chunk.strip():
                words.append(parse_word(chunk, pres.generator_names, ln.line, col))
            col += len(chunk) + 1
        try:
            out.append(ReflectionClassData(image, tuple(words), word))
        except BadParameters as exc:
            raise ValidationError(str(exc), section="reflections") from None
    return tuple(out)


_CHECK_SECTION = {"relators": "relators", "surjectivity": "images", "order check": "ecs"}


def parse_instance(text: str, validate: bool = True) -> InstanceBundle:
    """Parse a document; with ``validate`` the epimorphism must pass every check."""
    sections = _split_document(text)
    group, group_names = _parse_group(_require(sections, "group"))
    pres, sig = _parse_presentation(sections)
    images = _parse_images(_require(sections, "images"), pres, group, group_names)
    if "ecs" in sections:
        ecs = _parse_ecs(sections["ecs"], pres, images, group.degree)
    elif sig is not None:
        ecs = tuple(EcsEntry(i + 1, m, Word.generator(i), images[i], "preserving")
                    for i, m in enumerate(sig.periods))
    else:
        raise ValidationError("missing section [ecs]", section="ecs")
    kind = "fuchsian-signature" if sig is not None else "general"
    try:
        epi = EpimorphismInstance(pres, group, images, ecs, kind, sig)
    except (BadParameters, NotAMember, IndexOutOfRange) as exc:
        raise ValidationError(str(exc)) from None
    specs = _parse_specs(sections["normalizer_images"], pres, len(ecs)) \
        if "normalizer_images" in sections else ()
    merge = _parse_merge(sections["merge"], group, group_names) if "merge" in sections else MergeSpec()
    reflections = _parse_reflections(sections["reflections"], pres, images, group) \
        if "reflections" in sections else ()
    if validate:
        report = validate_epimorphism(epi)
        if not report.passed:
            raise ValidationError(f"{report.failed_check}: {report.message}",
                                  section=_CHECK_SECTION.get(report.failed_check or ""),
                                  check=report.failed_check)
    return InstanceBundle(epi, specs, merge, reflections, group_names)


def _render_element(p: Permutation, group: FiniteGroup, names: Sequence[str]) -> str:
    for name, gen in zip(names, group.generators):
        if gen == p:
            return name
    return format_cycles(p)


def render_instance(bundle: InstanceBundle, title: str | None = None) -> str:
    """Document text that parses back to an equal bundle."""
    epi = bundle.epi
    G = epi.target
    gnames = bundle.group_names
    kn = epi.presentation.generator_names
    out: list[str] = []
    if title:
        out.append(f"# {title}")
    out.append("[group]")
    out.append(f"degree = {G.degree}")
    for name, gen in zip(gnames, G.generators):
        out.append(f"{name} = {format_cycles(gen)}")
    if epi.signature is not None:
        out += ["", "[signature]", f"genus = {epi.signature.orbit_genus}"]
        if epi.signature.periods:
            out.append("periods = " + " ".join(map(str, epi.signature.periods)))
    else:
        out += ["", "[generators]", "names = " + " ".join(kn)]
        if epi.presentation.relators:
            out += ["", "[relators]"] + [render_word(r, kn) for r in epi.presentation.relators]
    out += ["", "[images]"]
    out += [f"{n} = {_render_element(p, G, gnames)}" for n, p in zip(kn, epi.images)]
    out += ["", "[ecs]"]
    for e in epi.ecs:
        out.append(f"{e.index} = {render_word(e.word, kn)} : {e.order} : {e.orientation}")
    if bundle.specs:
        out += ["", "[normalizer_images]"]
        for s in bundle.specs:
            if s.generator_words is not None:
                value = "words " + "; ".join(render_word(w, kn) for w in s.generator_words)
            else:
                value = f"order {s.n_value}"
            out.append(f"{s.ecs_index} {s.power_divisor} = {value}")
    if bundle.merge.entries:
        out += ["", "[merge]"]
        for m in bundle.merge.entries:
            blocks = " ".join("{" + " ".join(map(str, b)) + "}" for b in m.blocks)
            note = f" : {m.note}" if m.note else ""
            out.append(f"{_render_element(m.element, G, gnames)} = {blocks}{note}")
    if bundle.reflections:
        out += ["", "[reflections]"]
        for r in bundle.reflections:
            key = render_word(r.reflection_word, kn) if r.reflection_word is not None \
                else format_cycles(r.reflection_image)
            out.append(f"{key} = " + "; ".join(render_word(w, kn) for w in r.centralizer_words))
    return "\n".join(out) + "\n"


__all__ = [
    "FixLocusError",
    "InstanceBundle",
    "looks_like_cycles",
    "parse_cycles",
    "parse_element",
    "parse_instance",
    "parse_word",
    "render_instance",
    "render_word",
]
