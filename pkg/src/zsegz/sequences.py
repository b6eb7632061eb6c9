"""Multiset sequences over a finite abelian group.

A sequence is an unordered multiset of group elements; entries are stored
sorted by the group's lexicographic element order so that equal multisets
compare equal.  All operations are pure: sequences are immutable and safe
to share.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .groups import Element, Group, automorphism_index_maps, make_group


class SequenceParseError(ValueError):
    """Raised on malformed sequence text; carries the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (column {pos + 1})")
        self.pos = pos


@dataclass(frozen=True)
class SymmetryMode:
    """Which symmetry reductions a search or canonicalisation may use.

    Translation (adding a constant to every entry) is only sound when every
    target subsequence length is annihilated by the group exponent; callers
    assert that via the ``annihilated`` flag where required.
    """

    use_translation: bool = False
    use_automorphism: bool = False

    @classmethod
    def both(cls) -> "SymmetryMode":
        return cls(use_translation=True, use_automorphism=True)

    @classmethod
    def none(cls) -> "SymmetryMode":
        return cls()


@dataclass(frozen=True)
class Seq:
    """Immutable multiset of group elements with positive multiplicities."""

    group: Group
    entries: tuple[tuple[Element, int], ...]  # sorted by element index

    @cached_property
    def length(self) -> int:
        return sum(m for _, m in self.entries)

    @cached_property
    def total_sum(self) -> Element:
        acc = self.group.identity
        for e, m in self.entries:
            acc = self.group.add(acc, self.group.scalar_mul(m, e))
        return acc

    def multiplicity(self, e: Element) -> int:
        for x, m in self.entries:
            if x == e:
                return m
        return 0

    def mult_vector(self) -> list[int]:
        """Multiplicities indexed by the group's element enumeration."""
        vec = [0] * self.group.order
        for e, m in self.entries:
            vec[self.group.index(e)] = m
        return vec

    def support(self) -> list[Element]:
        return [e for e, _ in self.entries]

    def __str__(self) -> str:
        return format_seq(self)


def from_pairs(group: Group, entries: Iterable[tuple[Element, int]]) -> Seq:
    """Build a sequence from (element, multiplicity) pairs, merging duplicates."""
    merged: dict[Element, int] = {}
    for e, m in entries:
        e = tuple(e)
        group.check(e)
        if not isinstance(m, int) or m < 1:
            raise ValueError(f"multiplicity must be a positive integer, got {m!r}")
        merged[e] = merged.get(e, 0) + m
    ordered = sorted(merged.items(), key=lambda em: group.index(em[0]))
    return Seq(group, tuple(ordered))


def from_mult_vector(group: Group, vec: Iterable[int]) -> Seq:
    vec = list(vec)
    if len(vec) != group.order:
        raise ValueError("multiplicity vector has wrong length")
    return Seq(
        group,
        tuple((group.element(i), m) for i, m in enumerate(vec) if m > 0),
    )


def from_elements(group: Group, elems: Iterable[Element]) -> Seq:
    return from_pairs(group, [(e, 1) for e in elems])


def is_zero_sum(seq: Seq) -> bool:
    return seq.total_sum == seq.group.identity


def translate(seq: Seq, c: Element) -> Seq:
    """Add ``c`` to every entry; length and multiplicity profile are preserved."""
    g = seq.group
    g.check(c)
    return from_pairs(g, [(g.add(e, c), m) for e, m in seq.entries])


def project(seq: Seq, d: int) -> Seq:
    """Reduce every entry mod ``d``; requires ``d`` to divide each modulus."""
    g = seq.group
    if d < 1:
        raise ValueError("d must be >= 1")
    for n in g.moduli:
        if n % d != 0:
            raise ValueError(f"{d} does not divide modulus {n}")
    q = make_group([d] * g.rank)
    return from_pairs(q, [(tuple(r % d for r in e), m) for e, m in seq.entries])


def subtract(seq: Seq, sub: Seq) -> Seq:
    """Multiset difference; ``sub`` must be contained in ``seq``."""
    if sub.group != seq.group:
        raise ValueError("sequences live in different groups")
    remaining: list[tuple[Element, int]] = []
    for e, m in seq.entries:
        take = sub.multiplicity(e)
        if take > m:
            raise ValueError(f"{e} x{take} not contained (only x{m} present)")
        if m - take > 0:
            remaining.append((e, m - take))
    for e, m in sub.entries:
        if seq.multiplicity(e) < m:
            raise ValueError(f"{e} x{m} not contained in sequence")
    return Seq(seq.group, tuple(remaining))


def apply_index_map(seq: Seq, perm: tuple[int, ...]) -> Seq:
    """Apply an element-index permutation (e.g. an automorphism) to a sequence."""
    g = seq.group
    return from_pairs(g, [(g.element(perm[g.index(e)]), m) for e, m in seq.entries])


def _encoding(seq: Seq) -> tuple[tuple[int, int], ...]:
    g = seq.group
    return tuple((g.index(e), m) for e, m in seq.entries)


def canonical_form(seq: Seq, sym: SymmetryMode, annihilated: bool = False) -> Seq:
    """Orbit representative of ``seq`` under the enabled symmetries.

    The representative minimises the sorted (element-index, multiplicity)
    encoding lexicographically, over the full symmetry group enumerated
    explicitly; two sequences in the same orbit map to the same result.
    Translation must be vouched for with ``annihilated=True``, meaning every
    downstream target length k satisfies exp(G) | k.
    """
    if sym.use_translation and not annihilated:
        raise ValueError(
            "translation symmetry requires the annihilation guarantee "
            "(every target length divisible by the group exponent)"
        )
    g = seq.group
    auts = automorphism_index_maps(g) if sym.use_automorphism else (None,)
    shifts = list(g.elements()) if sym.use_translation else [g.identity]

    best = None
    best_seq = seq
    for perm in auts:
        mapped = seq if perm is None else apply_index_map(seq, perm)
        for c in shifts:
            cand = mapped if c == g.identity else translate(mapped, c)
            enc = _encoding(cand)
            if best is None or enc < best:
                best = enc
                best_seq = cand
    return best_seq


# Text grammar (used by the CLI and for JSON payloads):
#   seq    := "G=[" moduli "];" ws entries
#   moduli := int ("," int)*
#   entries:= entry (ws entry)*          -- may be empty
#   entry  := "(" int ("," int)* ")" [":" int]
# Multiplicity defaults to 1.  Example: G=[2,2]; (1,1):3 (0,1):1 (1,0):1

_ENTRY_RE = re.compile(r"\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)\s*(?::\s*(\d+))?")


def format_seq(seq: Seq) -> str:
    head = "G=[" + ",".join(str(n) for n in seq.group.moduli) + "];"
    body = " ".join(
        "(" + ",".join(str(r) for r in e) + f"):{m}" for e, m in seq.entries
    )
    return head + (" " + body if body else "")


def parse_entries(group: Group, text: str) -> Seq:
    """Parse the entry list ``(r1,...,rd):m ...`` against a known group."""
    pairs: list[tuple[Element, int]] = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _ENTRY_RE.match(text, pos)
        if not m:
            raise SequenceParseError("expected '(r1,...,rd)[:mult]' entry", pos)
        residues = tuple(int(t) for t in m.group(1).split(","))
        if len(residues) != group.rank:
            raise SequenceParseError(
                f"entry has {len(residues)} coordinates, group has rank {group.rank}",
                pos,
            )
        try:
            elem = group.reduce(residues)
        except ValueError as exc:
            raise SequenceParseError(str(exc), pos) from exc
        mult = int(m.group(2)) if m.group(2) else 1
        if mult < 1:
            raise SequenceParseError("multiplicity must be >= 1", pos)
        pairs.append((elem, mult))
        pos = m.end()
    return from_pairs(group, pairs)


def parse_seq(text: str) -> Seq:
    """Parse the full form ``G=[n1,...]; entries``."""
    m = re.match(r"\s*G\s*=\s*\[\s*(\d+(?:\s*,\s*\d+)*)\s*\]\s*;", text)
    if not m:
        raise SequenceParseError("expected 'G=[n1,n2,...];' header", 0)
    try:
        group = make_group(int(t) for t in m.group(1).split(","))
    except ValueError as exc:
        raise SequenceParseError(str(exc), 0) from exc
    rest = text[m.end():]
    try:
        return parse_entries(group, rest)
    except SequenceParseError as exc:
        raise SequenceParseError(
            str(exc).rsplit(" (column", 1)[0], exc.pos + m.end()
        ) from None


def parse_group(text: str) -> Group:
    """Parse a comma-separated moduli list, e.g. ``2,2`` or ``[2,4]``."""
    t = text.strip().lstrip("[").rstrip("]")
    if not re.fullmatch(r"\d+(\s*,\s*\d+)*", t):
        raise SequenceParseError("expected comma-separated moduli", 0)
    return make_group(int(x) for x in t.split(","))
