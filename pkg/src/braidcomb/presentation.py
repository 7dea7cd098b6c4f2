"""Generators and conjugation relations of the pure braid group P_n(S).

A generator ``A(i,j)`` moves the point whose strand index is ``j`` around
the loop labelled ``i``.  For a surface of genus ``g`` with ``p`` boundary
components the strand indices are ``j_k = 2g + p - 1 + k`` (``k = 1..n``);
on a closed surface they are ``j_k = 2g + k``.

The module stores the twelve (PR/ER) rewriting rules as a table of
templates.  Each template rewrites ``a^-1 u a`` (unprimed, ``a`` positive)
or ``a u a^-1`` (primed, ``a`` negative) where ``second(a) < second(u)``
into a word whose letters all carry the second index of ``u``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import BudgetExceeded, InvalidLetter, NotSwappable, WordSyntaxError

__all__ = [
    "SurfaceParams",
    "Letter",
    "BraidWord",
    "Relation",
    "RelationCase",
    "RELATION_TABLE",
    "classify_relation",
    "conjugate_letter",
    "conjugate_word",
    "free_reduce",
    "inverse",
    "parse_word",
    "format_word",
    "validate_word",
]


@dataclass(frozen=True)
class SurfaceParams:
    g: int
    p: int = 1
    n: int = 1
    closed: bool = False

    def __post_init__(self):
        if self.g < 0:
            raise ValueError("genus must be >= 0")
        if self.n < 1:
            raise ValueError("need at least one strand")
        if self.closed:
            if self.g < 1:
                raise ValueError("closed surfaces need genus >= 1 (the sphere is excluded)")
            object.__setattr__(self, "p", 0)
        elif self.p < 1:
            raise ValueError("bounded surfaces need p >= 1 boundary components")

    @property
    def offset(self) -> int:
        """Index shift: ``j_k = offset + k``."""
        return 2 * self.g if self.closed else 2 * self.g + self.p - 1

    def j(self, k: int) -> int:
        if not 1 <= k <= self.n:
            raise ValueError(f"strand {k} out of range 1..{self.n}")
        return self.offset + k

    def strand(self, second_index: int) -> int:
        """Inverse of :meth:`j`."""
        k = second_index - self.offset
        if not 1 <= k <= self.n:
            raise ValueError(f"{second_index} is not a strand index")
        return k

    def is_valid(self, letter: "Letter") -> bool:
        return self.offset + 1 <= letter.j <= self.offset + self.n and 1 <= letter.i < letter.j

    def check(self, letter: "Letter") -> "Letter":
        if not self.is_valid(letter):
            raise InvalidLetter(f"{letter} is not a generator of P_{self.n}(S) for {self}")
        return letter

    def generators(self, k: int | None = None) -> list["Letter"]:
        """Positive generators, optionally restricted to strand ``k``."""
        ks = range(1, self.n + 1) if k is None else [k]
        return [Letter(i, self.j(kk)) for kk in ks for i in range(1, self.j(kk))]

    def as_dict(self) -> dict:
        d = {"g": self.g, "p": self.p, "n": self.n}
        if self.closed:
            d["closed"] = True
        return d


@dataclass(frozen=True, order=True)
class Letter:
    """The signed generator ``A(i,j)^sign``."""

    i: int
    j: int
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InvalidLetter(f"sign must be +1 or -1, got {self.sign}")
        if not 1 <= self.i < self.j:
            raise InvalidLetter(f"need 1 <= i < j, got A({self.i},{self.j})")

    def inverse(self) -> "Letter":
        return Letter(self.i, self.j, -self.sign)

    @property
    def c(self) -> int:
        """First index carrying the sign, as in the pair encoding."""
        return self.i * self.sign

    def __str__(self):
        return f"A({self.i},{self.j})" + ("^-1" if self.sign < 0 else "")

    def __repr__(self):
        return f"Letter({self})"


BraidWord = tuple  # tuple[Letter, ...]


class Relation(enum.Enum):
    PR1 = "PR1"
    PR2 = "PR2"
    PR3 = "PR3"
    PR4 = "PR4"
    ER1 = "ER1"
    ER2 = "ER2"


@dataclass(frozen=True)
class RelationCase:
    relation: Relation
    primed: bool = False

    def __str__(self):
        return self.relation.value + ("'" if self.primed else "")


# Templates over the symbolic first indices 'i', 'j' (of the conjugator A(i,j))
# and 'r' (of the target A(r,s)).  All output letters carry second index s.
RELATION_TABLE: dict[tuple[Relation, bool], tuple[tuple[str, int], ...]] = {
    (Relation.PR1, False): (("r", 1),),
    (Relation.PR2, False): (("i", 1), ("j", 1), ("i", -1)),
    (Relation.PR3, False): (("i", 1), ("j", 1), ("i", 1), ("j", -1), ("i", -1)),
    (Relation.PR4, False): (
        ("i", 1), ("j", 1), ("i", -1), ("j", -1), ("r", 1),
        ("j", 1), ("i", 1), ("j", -1), ("i", -1),
    ),
    # i = r + 1
    (Relation.ER1, False): (("r", 1), ("i", 1), ("j", -1), ("i", -1)),
    # i = r - 1
    (Relation.ER2, False): (
        ("i", 1), ("j", 1), ("i", -1), ("r", 1),
        ("j", 1), ("i", 1), ("j", -1), ("i", -1),
    ),
    (Relation.PR1, True): (("r", 1),),
    (Relation.PR2, True): (("j", -1), ("i", -1), ("j", 1), ("i", 1), ("j", 1)),
    (Relation.PR3, True): (("j", -1), ("i", 1), ("j", 1)),
    (Relation.PR4, True): (
        ("j", -1), ("i", -1), ("j", 1), ("i", 1), ("r", 1),
        ("i", -1), ("j", -1), ("i", 1), ("j", 1),
    ),
    (Relation.ER1, True): (("r", 1), ("j", 1)),
    (Relation.ER2, True): (("j", -1), ("r", 1), ("i", -1), ("j", -1), ("i", 1), ("j", 1)),
}


def _classify(i: int, j: int, r: int, g: int) -> Relation:
    if r <= i - 2 or r > j:
        return Relation.PR1
    if r == i - 1:
        return Relation.PR1 if (r >= 2 * g or r % 2 == 0) else Relation.ER1
    if r == i:
        return Relation.PR3
    if r == i + 1 and not (r > 2 * g or r % 2 == 1):
        return Relation.ER2
    if r < j:
        return Relation.PR4
    return Relation.PR2


def _check_pair(a: Letter, u: Letter, params: SurfaceParams):
    params.check(a)
    params.check(u)
    if a.j >= u.j:
        raise NotSwappable(f"cannot conjugate {u} by {a}: second indices {u.j} <= {a.j}")


def classify_relation(a: Letter, u: Letter, params: SurfaceParams) -> RelationCase:
    """Which (PR/ER) rule rewrites ``u`` conjugated by ``a``."""
    _check_pair(a, u, params)
    return RelationCase(_classify(a.i, a.j, u.i, params.g), a.sign < 0)


@lru_cache(maxsize=None)
def conj_indices(c: int, a_i: int, a_j: int, a_sign: int, g: int) -> tuple[int, ...]:
    """Signed first indices of ``a^-1 u a`` where ``u = A(|c|, s)^sign(c)``.

    Unchecked fast path used by the combing code; ``s`` is implicit.
    """
    r = abs(c)
    rel = _classify(a_i, a_j, r, g)
    idx = {"i": a_i, "j": a_j, "r": r}
    out = tuple(idx[name] * sgn for name, sgn in RELATION_TABLE[rel, a_sign < 0])
    if c < 0:
        out = tuple(-e for e in reversed(out))
    return out


def conjugate_letter(u: Letter, a: Letter, params: SurfaceParams) -> BraidWord:
    """Word for ``a^-1 u a`` over the second index of ``u``."""
    _check_pair(a, u, params)
    s = u.j
    return tuple(Letter(abs(e), s, 1 if e > 0 else -1)
                 for e in conj_indices(u.c, a.i, a.j, a.sign, params.g))


def conjugate_word(u: Letter, v: Sequence[Letter], params: SurfaceParams,
                   budget: int | None = None) -> BraidWord:
    """Freely reduced word for ``v^-1 u v``, conjugating by one letter of ``v`` at a time.

    The output can grow by a factor up to 9 per letter of ``v``.
    """
    params.check(u)
    cur = [u.c]
    for a in v:
        _check_pair(a, u, params)
        nxt: list[int] = []
        for c in cur:
            nxt.extend(conj_indices(c, a.i, a.j, a.sign, params.g))
        cur = _reduce_ints(nxt)
        if budget is not None and len(cur) > budget:
            raise BudgetExceeded(budget, len(cur))
    s = u.j
    return tuple(Letter(abs(e), s, 1 if e > 0 else -1) for e in cur)


def _reduce_ints(w: Iterable[int]) -> list[int]:
    stack: list[int] = []
    for x in w:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return stack


def free_reduce(w: Iterable) -> BraidWord:
    """Cancel adjacent inverse pairs until none remain.

    Works for any letters exposing ``inverse()``.
    """
    stack: list = []
    for x in w:
        if stack and stack[-1] == x.inverse():
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def inverse(w: Sequence) -> BraidWord:
    return tuple(x.inverse() for x in reversed(w))


def validate_word(w: Iterable[Letter], params: SurfaceParams) -> BraidWord:
    return tuple(params.check(x) for x in w)


_LETTER_RE = re.compile(r"A\(([1-9][0-9]*),([1-9][0-9]*)\)(\^[+-]1)?")
_WS_RE = re.compile(r"\s*")


def parse_letter(text: str) -> Letter:
    m = _LETTER_RE.fullmatch(text.strip())
    if not m:
        raise WordSyntaxError(f"not a letter: {text!r}", 0)
    return _letter_from_match(m, 0)


def _letter_from_match(m: re.Match, pos: int) -> Letter:
    i, j = int(m.group(1)), int(m.group(2))
    sign = -1 if m.group(3) == "^-1" else 1
    try:
        return Letter(i, j, sign)
    except InvalidLetter as e:
        raise InvalidLetter(f"{e} at position {pos}") from None


def parse_word(text: str, params: SurfaceParams | None = None) -> BraidWord:
    """Parse ``"A(1,2) A(1,4)^-1"``; letters are checked against ``params`` when given."""
    out = []
    pos = _WS_RE.match(text, 0).end()
    while pos < len(text):
        m = _LETTER_RE.match(text, pos)
        if not m:
            raise WordSyntaxError("expected a letter A(i,j)", pos)
        letter = _letter_from_match(m, pos)
        if params is not None and not params.is_valid(letter):
            raise InvalidLetter(f"{letter} at position {pos} is not a generator for {params}")
        out.append(letter)
        pos = _WS_RE.match(text, m.end()).end()
    return tuple(out)


def format_word(w: Iterable[Letter]) -> str:
    return " ".join(str(x) for x in w)
