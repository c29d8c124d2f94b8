"""
Homology and fundamental-group arithmetic for a closed oriented surface F of genus g.

Generators are ordered A1, B1, A2, B2, ..., Ag, Bg.  A letter is a nonzero signed
integer: generator index i (0-based) is the letter i + 1, its inverse is -(i + 1).
The single defining relator is the product of commutators

    [A1, B1] [A2, B2] ... [Ag, Bg],   [a, b] = a b a^-1 b^-1,

and the intersection form is the standard symplectic one, <Ai, Bi> = +1.

Every piece of this relator has length one, so for g >= 2 it satisfies C'(1/6)
and Dehn's algorithm solves the word problem.  The same small cancellation
structure bounds conjugators, which is what `conjugate_in_F` relies on.
"""

from __future__ import annotations

import dataclasses
import enum
import functools
import math
import re
from typing import Iterable, Sequence

from .errors import GenusMismatch, LiteralError

Letters = tuple[int, ...]


def generator_name(i: int) -> str:
    """Name of the 0-based generator index i, e.g. 0 -> 'A1', 3 -> 'B2'."""
    return ("A" if i % 2 == 0 else "B") + str(i // 2 + 1)


def generator_index(name: str) -> int:
    m = re.fullmatch(r"([AB])([1-9][0-9]*)", name)
    if m is None:
        raise LiteralError(f"not a surface generator: {name!r}")
    return 2 * (int(m.group(2)) - 1) + (0 if m.group(1) == "A" else 1)


def free_reduce(letters: Iterable[int]) -> Letters:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_letters(letters: Sequence[int]) -> Letters:
    return tuple(-x for x in reversed(letters))


def cyclically_reduce(letters: Letters) -> Letters:
    w = free_reduce(letters)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


# --------------------------------------------------------------------------- #
# Base surface and homology
# --------------------------------------------------------------------------- #


@dataclasses.dataclass(frozen=True)
class SurfaceBase:
    genus: int

    def __post_init__(self):
        if not isinstance(self.genus, int) or self.genus < 1:
            raise ValueError(f"genus must be a positive integer, got {self.genus!r}")

    @property
    def rank(self) -> int:
        return 2 * self.genus

    def generators(self) -> list[str]:
        return [generator_name(i) for i in range(self.rank)]

    def relator(self) -> SurfaceWord:
        return SurfaceWord(self.genus, _relator(self.genus))

    def identity(self) -> SurfaceWord:
        return SurfaceWord(self.genus, ())

    def generator(self, name: str) -> SurfaceWord:
        i = generator_index(name)
        if i >= self.rank:
            raise GenusMismatch(f"{name} does not exist at genus {self.genus}")
        return SurfaceWord(self.genus, (i + 1,))

    def require_hyperbolic(self, what: str) -> None:
        if self.genus < 2:
            raise GenusMismatch(f"{what} needs genus >= 2 (got genus {self.genus})")


@dataclasses.dataclass(frozen=True)
class H1Class:
    """An integral homology class, coordinates in the basis (A1, B1, ..., Ag, Bg)."""

    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        if len(coords) == 0 or len(coords) % 2:
            raise ValueError("H1Class needs an even, positive number of coordinates")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def zero(cls, genus: int) -> H1Class:
        return cls((0,) * (2 * genus))

    @classmethod
    def basis(cls, genus: int, name: str) -> H1Class:
        i = generator_index(name)
        if i >= 2 * genus:
            raise GenusMismatch(f"{name} does not exist at genus {genus}")
        v = [0] * (2 * genus)
        v[i] = 1
        return cls(tuple(v))

    @property
    def genus(self) -> int:
        return len(self.coords) // 2

    def _check(self, other: H1Class) -> None:
        if len(self.coords) != len(other.coords):
            raise GenusMismatch(
                f"homology classes of genus {self.genus} and {other.genus} cannot be combined"
            )

    def __add__(self, other: H1Class) -> H1Class:
        self._check(other)
        return H1Class(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: H1Class) -> H1Class:
        return self + (-other)

    def __neg__(self) -> H1Class:
        return H1Class(tuple(-a for a in self.coords))

    def __mul__(self, n: int) -> H1Class:
        return H1Class(tuple(n * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def content(self) -> int:
        """gcd of the coordinates; 0 for the zero class."""
        return math.gcd(*self.coords)

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coords):
            if c == 0:
                continue
            name = generator_name(i)
            mag = name if abs(c) == 1 else f"{abs(c)}*{name}"
            if not parts:
                parts.append(mag if c > 0 else f"-{mag}")
            else:
                parts.append(("+ " if c > 0 else "- ") + mag)
        return " ".join(parts) if parts else "0"


def intersection_number(x: H1Class, y: H1Class) -> int:
    """Algebraic intersection x . y for the symplectic form <Ai, Bi> = 1."""
    x._check(y)
    total = 0
    c, d = x.coords, y.coords
    for i in range(0, len(c), 2):
        total += c[i] * d[i + 1] - c[i + 1] * d[i]
    return total


# --------------------------------------------------------------------------- #
# Words
# --------------------------------------------------------------------------- #


@dataclasses.dataclass(frozen=True)
class SurfaceWord:
    """A freely reduced word in the surface group generators (value semantics)."""

    genus: int
    letters: Letters = ()

    def __post_init__(self):
        letters = free_reduce(map(int, self.letters))
        bad = [x for x in letters if x == 0 or abs(x) > 2 * self.genus]
        if bad:
            raise GenusMismatch(f"letter {bad[0]} is outside the genus-{self.genus} alphabet")
        object.__setattr__(self, "letters", letters)

    @property
    def pairs(self) -> list[tuple[int, int]]:
        """The word as (generator index, sign) pairs."""
        return [(abs(x) - 1, 1 if x > 0 else -1) for x in self.letters]

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: SurfaceWord) -> SurfaceWord:
        return word_multiply(self, other)

    def __invert__(self) -> SurfaceWord:
        return word_invert(self)

    def __pow__(self, n: int) -> SurfaceWord:
        base = self if n >= 0 else ~self
        return SurfaceWord(self.genus, base.letters * abs(n))

    def __str__(self) -> str:
        return format_letters(self.letters)


def format_letters(letters: Sequence[int]) -> str:
    if not letters:
        return "1"
    out = []
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        name = generator_name(abs(letters[i]) - 1)
        e = (j - i) * (1 if letters[i] > 0 else -1)
        out.append(name if e == 1 else f"{name}^{e}")
        i = j
    return " ".join(out)


def _same_surface(u: SurfaceWord, v: SurfaceWord) -> None:
    if u.genus != v.genus:
        raise GenusMismatch(f"words of genus {u.genus} and {v.genus} cannot be combined")


def word_multiply(u: SurfaceWord, v: SurfaceWord) -> SurfaceWord:
    _same_surface(u, v)
    return SurfaceWord(u.genus, u.letters + v.letters)


def word_invert(u: SurfaceWord) -> SurfaceWord:
    return SurfaceWord(u.genus, invert_letters(u.letters))


def abelianize(w: SurfaceWord) -> H1Class:
    counts = [0] * (2 * w.genus)
    for x in w.letters:
        counts[abs(x) - 1] += 1 if x > 0 else -1
    return H1Class(tuple(counts))


# --------------------------------------------------------------------------- #
# Dehn's algorithm
# --------------------------------------------------------------------------- #


@functools.lru_cache(maxsize=None)
def _relator(genus: int) -> Letters:
    r: list[int] = []
    for i in range(genus):
        a, b = 2 * i + 1, 2 * i + 2
        r += [a, b, -a, -b]
    return tuple(r)


@functools.lru_cache(maxsize=None)
def relator_cycles(genus: int) -> tuple[Letters, ...]:
    """All cyclic permutations of the relator and of its inverse."""
    r = _relator(genus)
    cycles = set()
    for w in (r, invert_letters(r)):
        for s in range(len(w)):
            cycles.add(w[s:] + w[:s])
    return tuple(sorted(cycles))


@functools.lru_cache(maxsize=None)
def _cycle_index(genus: int) -> dict[Letters, Letters]:
    # Pieces have length 1, so any two consecutive letters pin down the cycle.
    index: dict[Letters, Letters] = {}
    for c in relator_cycles(genus):
        assert c[:2] not in index
        index[c[:2]] = c
    return index


def _longest_relator_prefix(w: Sequence[int], start: int, genus: int) -> tuple[int, Letters] | None:
    """Length of the longest prefix of a relator cycle read at w[start:], if > half."""
    half = 2 * genus
    if len(w) - start <= half:
        return None
    c = _cycle_index(genus).get(tuple(w[start:start + 2]))
    if c is None:
        return None
    n = 0
    limit = min(len(c), len(w) - start)
    while n < limit and w[start + n] == c[n]:
        n += 1
    return (n, c) if n > half else None


def dehn_reduce(letters: Sequence[int], genus: int) -> Letters:
    """Dehn's algorithm on a linear word: shorten while more than half a relator shows."""
    w = free_reduce(letters)
    half = 2 * genus
    index = _cycle_index(genus)
    while len(w) > half:
        for i in range(len(w) - half):
            c = index.get((w[i], w[i + 1]))
            if c is None:
                continue
            n, limit = 2, min(len(c), len(w) - i)
            while n < limit and w[i + n] == c[n]:
                n += 1
            if n > half:
                w = free_reduce(w[:i] + invert_letters(c[n:]) + w[i + n:])
                break
        else:
            break
    return w


def cyclic_dehn_reduce(letters: Sequence[int], genus: int) -> Letters:
    """Dehn reduction of the cyclic word, including subwords that wrap around."""
    w = cyclically_reduce(dehn_reduce(letters, genus))
    half = 2 * genus
    changed = True
    while changed and w:
        changed = False
        n = len(w)
        if n <= half:
            break
        doubled = w + w
        for i in range(n):
            window = doubled[i:i + n]
            hit = _longest_relator_prefix(window, 0, genus)
            if hit is None:
                continue
            m, c = hit
            w = cyclically_reduce(dehn_reduce(invert_letters(c[m:]) + window[m:], genus))
            changed = True
            break
    return w


def is_trivial(w: SurfaceWord) -> bool:
    """Word problem.  Genus 1 falls back to abelianization, since pi_1 is Z^2 there."""
    return letters_trivial(w.letters, w.genus)


def letters_trivial(letters: Sequence[int], genus: int) -> bool:
    """is_trivial on a raw letter sequence, skipping SurfaceWord validation."""
    if genus == 1:
        return not any(sum(1 if x == s else -1 if x == -s else 0 for x in letters) for s in (1, 2))
    return dehn_reduce(letters, genus) == ()


def canonical_rotation(letters: Letters) -> Letters:
    if not letters:
        return letters
    return min(letters[i:] + letters[:i] for i in range(len(letters)))


class Conjugacy(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@functools.lru_cache(maxsize=None)
def _short_conjugators(genus: int) -> tuple[Letters, ...]:
    out = {()}
    for c in relator_cycles(genus):
        for n in range(1, 2 * genus + 1):
            out.add(c[:n])
    return tuple(sorted(out, key=lambda c: (len(c), c)))


def conjugate_in_F(u: SurfaceWord, v: SurfaceWord, max_length: int = 64) -> Conjugacy:
    """
    Decide conjugacy in pi_1(F).

    Both words are cyclically Dehn-reduced first.  In a C'(1/6) group, reduced
    annular diagrams between such words have a single layer, so some rotations of
    the two words are conjugate by a path across one relator region.  Such a path
    is a subword of a relator cycle of length at most half the relator, which makes
    the search below complete; words longer than `max_length` give UNKNOWN.
    """
    _same_surface(u, v)
    if abelianize(u) != abelianize(v):
        return Conjugacy.NO
    g = u.genus
    if g == 1:
        return Conjugacy.YES
    a = cyclic_dehn_reduce(u.letters, g)
    b = cyclic_dehn_reduce(v.letters, g)
    if not a or not b:
        return Conjugacy.YES if a == b else Conjugacy.NO
    if canonical_rotation(a) == canonical_rotation(b):
        return Conjugacy.YES
    if len(a) > max_length or len(b) > max_length:
        return Conjugacy.UNKNOWN
    rotations_a = {a[i:] + a[:i] for i in range(len(a))}
    for j in range(len(b)):
        bj = b[j:] + b[:j]
        for c in _short_conjugators(g):
            if not c:
                continue
            target = dehn_reduce(c + bj + invert_letters(c), g)
            if target in rotations_a:
                return Conjugacy.YES
            for ai in rotations_a:
                if dehn_reduce(invert_letters(ai) + target, g) == ():
                    return Conjugacy.YES
    return Conjugacy.NO


# --------------------------------------------------------------------------- #
# Literals
# --------------------------------------------------------------------------- #

_WORD_TOKEN = re.compile(r"([AB][1-9][0-9]*)(?:\^(-?[0-9]+))?")


def parse_word(text: str, genus: int) -> SurfaceWord:
    """Parse `A1 B1 A1^-1 B2^3`; `1` or an empty string is the identity."""
    letters: list[int] = []
    for tok in text.split():
        if tok == "1":
            continue
        m = _WORD_TOKEN.fullmatch(tok)
        if m is None:
            raise LiteralError(f"bad word token {tok!r}")
        i = generator_index(m.group(1))
        if i >= 2 * genus:
            raise GenusMismatch(f"{m.group(1)} does not exist at genus {genus}")
        e = int(m.group(2)) if m.group(2) is not None else 1
        letters += [(i + 1) if e > 0 else -(i + 1)] * abs(e)
    return SurfaceWord(genus, tuple(letters))


_H1_TERM = re.compile(r"\s*([+-]?)\s*(?:([0-9]+)\s*\*?\s*)?([AB][1-9][0-9]*)\s*")


def parse_h1(text: str, genus: int) -> H1Class:
    """Parse an integer combination such as `2*A1 - 3*B2`; `0` is the zero class."""
    s = text.strip()
    coords = [0] * (2 * genus)
    if s in ("", "0"):
        return H1Class(tuple(coords))
    pos = 0
    first = True
    while pos < len(s):
        m = _H1_TERM.match(s, pos)
        if m is None or m.end() == pos or (not first and not m.group(1)):
            raise LiteralError(f"bad homology literal {text!r} near position {pos}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) else 1
        i = generator_index(m.group(3))
        if i >= 2 * genus:
            raise GenusMismatch(f"{m.group(3)} does not exist at genus {genus}")
        coords[i] += sign * coeff
        pos = m.end()
        first = False
    return H1Class(tuple(coords))
