"""The free group <a, b> as the fundamental group of a three-holed sphere.

Words are plain strings over ``a, A, b, B`` with capitals for inverses.
Boundary convention: d1 = a, d2 = b, d3 = (ab)^-1 = BA, so d1 d2 d3 = 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError
from .isometry import IsometryClass, classify
from .lorentz_core import IsometryLift

ALPHABET = "aAbB"
_INVERSE = {"a": "A", "A": "a", "b": "B", "B": "b"}
# Rank letters so that plain string comparison gives the order a < A < b < B.
_TO_RANK = str.maketrans("aAbB", "0123")
_FROM_RANK = str.maketrans("0123", "aAbB")


def inverse_letter(x: str) -> str:
    return _INVERSE[x]


def reduce_word(letters: str) -> str:
    """Freely reduce a string over ``aAbB``."""
    out: list[str] = []
    for x in letters:
        if x not in _INVERSE:
            raise ValueError(f"letter {x!r} not in alphabet {ALPHABET!r}")
        if out and out[-1] == _INVERSE[x]:
            out.pop()
        else:
            out.append(x)
    return "".join(out)


def invert_word(w: str) -> str:
    return "".join(_INVERSE[x] for x in reversed(w))


def word_power(w: str, n: int) -> str:
    base = w if n >= 0 else invert_word(w)
    return reduce_word(base * abs(n))


def cyclic_reduce(w: str) -> str:
    w = reduce_word(w)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == _INVERSE[w[j - 1]]:
        i += 1
        j -= 1
    return w[i:j]


def word_sort_key(w: str) -> tuple[int, str]:
    """Deterministic order: by length, then lexicographic with a < A < b < B."""
    return len(w), w.translate(_TO_RANK)


def canonical_rotation(w: str) -> str:
    """Lexicographically least rotation (a < A < b < B) of a cyclically reduced word."""
    if not w:
        return w
    ranked = w.translate(_TO_RANK)
    doubled = ranked + ranked
    n = len(ranked)
    best = min(doubled[i : i + n] for i in range(n))
    return best.translate(_FROM_RANK)


def conjugacy_rep(w: str) -> str:
    """Canonical representative of the conjugacy class of ``w``."""
    return canonical_rotation(cyclic_reduce(w))


def boundary_words() -> tuple[str, str, str]:
    return "a", "b", reduce_word("BA")


def enumerate_conjugacy_reps(max_len: int) -> list[str]:
    """One representative per cyclic-rotation class of cyclically reduced words.

    The representative is the least rotation under a < A < b < B; the output
    is sorted by length, then lexicographically. A word and its inverse are
    in different classes and both appear.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    # Work with ranks 0..3; inverse pairs are 0<->1 and 2<->3.
    inv = "1032"
    out: list[str] = []
    for n in range(1, max_len + 1):
        stack = [c for c in "3210"]
        while stack:
            w = stack.pop()
            if len(w) == n:
                if w[-1] == inv[int(w[0])] and n > 1:
                    continue
                doubled = w + w
                if all(w <= doubled[i : i + n] for i in range(1, n)):
                    out.append(w)
                continue
            last = inv[int(w[-1])]
            # Necklace prefix pruning: a rep cannot contain a letter smaller than its first.
            first = w[0]
            for c in "3210":
                if c != last and c >= first:
                    stack.append(w + c)
    return [w.translate(_FROM_RANK) for w in out]


@dataclass(frozen=True)
class HolonomyRep:
    """Generator lifts of a representation of <a, b> into SL(2,R).

    The three boundary words must map to non-elliptic elements.
    """

    gen_a: IsometryLift
    gen_b: IsometryLift
    _letters: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        letters = {
            "a": self.gen_a,
            "A": self.gen_a.inverse(),
            "b": self.gen_b,
            "B": self.gen_b.inverse(),
        }
        object.__setattr__(self, "_letters", letters)
        for w in boundary_words():
            cls = classify(self.evaluate(w))
            if cls in (IsometryClass.ELLIPTIC, IsometryClass.IDENTITY):
                raise DomainError(f"boundary word {w!r} is {cls.value.lower()}")

    def letter(self, x: str) -> IsometryLift:
        return self._letters[x]

    def evaluate(self, w: str) -> IsometryLift:
        g = IsometryLift.identity()
        for x in w:
            g = g @ self._letters[x]
        return g


def evaluate(rep: HolonomyRep, w: str) -> IsometryLift:
    return rep.evaluate(w)


def fricke_construct(x: float, y: float, z: float) -> HolonomyRep:
    """Representation with Tr(a) = x, Tr(b) = y, Tr(ab) = z.

    a = [[x, -1], [1, 0]], b = [[0, zeta], [-1/zeta, y]] where zeta + 1/zeta = z.
    """
    for name, t in (("x", x), ("y", y), ("z", z)):
        if abs(t) < 2.0:
            raise DomainError(f"|{name}| = {abs(t)} < 2 gives an elliptic boundary")
    if abs(z) == 2.0:
        zeta = z / 2.0
    else:
        zeta = 0.5 * (z + math.copysign(math.sqrt(max(z * z - 4.0, 0.0)), z))
    if zeta == 0.0:
        raise DomainError("degenerate Fricke parameter zeta = 0")
    gen_a = IsometryLift(float(x), -1.0, 1.0, 0.0)
    gen_b = IsometryLift(0.0, zeta, -1.0 / zeta, float(y))
    return HolonomyRep(gen_a, gen_b)
