"""Pure braids on a closed orientable surface of genus ``g >= 1``.

Here ``P_n(S)`` splits as ``pi_1(S) x| P_{n-1}(S minus p_1)``.  The
projection forgets every strand but the first.  The section ``s`` sends
``a_i`` to ``A(i, j_1)`` for ``i < 2g`` and ``a_2g`` to ``B_1 ... B_n``.
The kernel is rewritten by ``f`` into the braid group of the bounded
surface ``S'`` of genus ``g`` with one boundary component and ``n - 1``
strands, where the combing code of :mod:`braidcomb.combing` applies.

Fundamental-group words are tuples of nonzero ints: ``+i`` is ``a_i``
and ``-i`` is its inverse.  Combing here is exponential and guarded by a
letter budget.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Callable, Sequence

from . import combing, slp
from .combing import CombedNormalForm
from .errors import BudgetExceeded, InvalidLetter, NotKernel, ReductionStuck, WordSyntaxError
from .presentation import (
    BraidWord,
    Letter,
    SurfaceParams,
    _reduce_ints,
    conj_indices,
    inverse,
    validate_word,
)

__all__ = [
    "Pi1Word",
    "ClosedDecomposition",
    "surface_relator",
    "tr_relation",
    "b_k",
    "section_s",
    "section_rho",
    "project",
    "f_rewrite",
    "kernel_params",
    "pi1_normal_form",
    "pi1_equal",
    "parse_pi1",
    "format_pi1",
    "closed_comb_stage1",
    "closed_comb",
    "closed_words_equal",
]

Pi1Word = tuple  # tuple[int, ...]


def _require_closed(params: SurfaceParams):
    if not params.closed:
        raise ValueError("this operation needs a closed surface")


def commutator_product(g: int, gen: Callable[[int], Letter]) -> list:
    """``[x_2g^-1, x_2g-1] [x_2g-2^-1, x_2g-3] ... [x_2^-1, x_1]`` with ``x_i = gen(i)``."""
    out = []
    for h in range(g, 0, -1):
        x, y = gen(2 * h).inverse(), gen(2 * h - 1)
        out += [x, y, x.inverse(), y.inverse()]
    return out


class _Sym(int):
    # signed pi_1 generator with the inverse() protocol
    def inverse(self):
        return _Sym(-self)


def surface_relator(g: int) -> Pi1Word:
    """The single defining relator of ``pi_1`` of the genus-``g`` surface (length ``4g``)."""
    return tuple(int(x) for x in commutator_product(g, _Sym))


def tr_relation(params: SurfaceParams, k: int) -> tuple[BraidWord, BraidWord]:
    """Both sides of the extra closed-surface relation for strand ``k``."""
    _require_closed(params)
    g, n = params.g, params.n
    s = 2 * g + k
    lhs = commutator_product(g, lambda i: Letter(i, s))
    rhs = [Letter(l, s) for l in range(2 * g + 1, s)]
    rhs += [Letter(s, j) for j in range(s + 1, 2 * g + n + 1)]
    return tuple(lhs), tuple(rhs)


def b_k(params: SurfaceParams, k: int) -> BraidWord:
    """``B_k = A(2g, j_k) A(j_1, j_k) ... A(j_(k-1), j_k)``."""
    _require_closed(params)
    jk = params.j(k)
    return (Letter(2 * params.g, jk),) + tuple(Letter(params.j(t), jk) for t in range(1, k))


def _b_product(params: SurfaceParams, first: int = 1) -> BraidWord:
    out: tuple = ()
    for k in range(first, params.n + 1):
        out += b_k(params, k)
    return out


def _check_pi1(gamma: Sequence[int], g: int) -> Pi1Word:
    gamma = tuple(gamma)
    for x in gamma:
        if x == 0 or abs(x) > 2 * g:
            raise InvalidLetter(f"a{abs(x)} is not a generator of pi_1 for genus {g}")
    return gamma


def _apply_section(gamma, params, image: Callable[[int], BraidWord]) -> BraidWord:
    _require_closed(params)
    gamma = _check_pi1(gamma, params.g)
    out: tuple = ()
    for x in gamma:
        w = image(abs(x))
        out += w if x > 0 else inverse(w)
    return out


def section_s(gamma: Sequence[int], params: SurfaceParams) -> BraidWord:
    j1, top = params.j(1), 2 * params.g
    product = _b_product(params)
    return _apply_section(
        gamma, params, lambda i: product if i == top else (Letter(i, j1),))


def section_rho(gamma: Sequence[int], params: SurfaceParams) -> BraidWord:
    """The alternative section: ``a_i -> A(i, j_1)`` for odd ``i`` and
    ``a_i -> A(i, j_1) B_2 ... B_n`` for even ``i``."""
    j1 = params.j(1)
    tail = _b_product(params, 2)
    return _apply_section(
        gamma, params, lambda i: (Letter(i, j1),) + (tail if i % 2 == 0 else ()))


def project(w: Sequence[Letter], params: SurfaceParams) -> Pi1Word:
    """Forget every strand but the first."""
    _require_closed(params)
    j1 = params.j(1)
    return tuple(x.c for x in validate_word(w, params) if x.j == j1)


def kernel_params(params: SurfaceParams) -> SurfaceParams:
    """``S'``: genus ``g``, one boundary component, ``n - 1`` strands."""
    _require_closed(params)
    if params.n < 2:
        raise ValueError("the kernel is trivial for a single strand")
    return SurfaceParams(params.g, 1, params.n - 1)


def f_rewrite(w: Sequence[Letter], params: SurfaceParams) -> BraidWord:
    """Rewrite a word in the kernel generators (strands 2..n) over ``S'``."""
    sp = kernel_params(params)
    g, n = params.g, params.n
    w = validate_word(w, params)
    out: list[Letter] = []
    for x in w:
        k = params.strand(x.j)
        if k == 1:
            raise NotKernel(f"{x} moves the first strand")
        jk1 = sp.j(k - 1)
        if x.i <= 2 * g:
            img: tuple = (Letter(x.i, jk1),)
        elif x.i == 2 * g + 1:
            tail = [Letter(sp.j(t), jk1) for t in range(1, k - 1)]
            tail += [Letter(jk1, sp.j(t)) for t in range(k, n)]
            img = tuple(commutator_product(g, lambda i: Letter(i, jk1))) + inverse(tail)
        else:
            img = (Letter(x.i - 1, jk1),)
        out += img if x.sign > 0 else inverse(img)
    return tuple(out)


# fundamental group


class _Dehn:
    """Rotations of the relator and its inverse, indexed by first letter."""

    def __init__(self, g: int):
        self.g = g
        rel = surface_relator(g)
        self.length = len(rel)
        self.rotations: dict[int, list[tuple[int, int, Pi1Word]]] = {}
        for eps, word in ((1, rel), (-1, tuple(-x for x in reversed(rel)))):
            for off in range(len(word)):
                rot = word[off:] + word[:off]
                self.rotations.setdefault(rot[0], []).append((eps, off, rot))

    def find(self, word: Sequence[int], minimum: int):
        """Leftmost-longest match of length ``>= minimum`` with a rotation prefix.

        Ties prefer the relator over its inverse, then the smaller offset.
        Returns ``(pos, length, eps, offset, rotation)`` or ``None``.
        """
        L = self.length
        for pos in range(len(word)):
            best = None
            for eps, off, rot in self.rotations.get(word[pos], ()):
                ln = 0
                while ln < L and pos + ln < len(word) and word[pos + ln] == rot[ln]:
                    ln += 1
                if best is None or ln > best[1]:
                    best = (pos, ln, eps, off, rot)
            if best is not None and best[1] >= minimum:
                return best
        return None

    def find_swap(self, word: Sequence[int]):
        """Torus only: leftmost ``a_2^e a_1^f`` pair, to be rewritten as ``a_1^f a_2^e``."""
        for pos in range(len(word) - 1):
            if abs(word[pos]) == 2 and abs(word[pos + 1]) == 1:
                for eps, off, rot in self.rotations[word[pos]]:
                    if rot[1] == word[pos + 1]:
                        return (pos, 2, eps, off, rot)
        return None


_dehn_cache: dict[int, _Dehn] = {}


def _dehn(g: int) -> _Dehn:
    if g not in _dehn_cache:
        _dehn_cache[g] = _Dehn(g)
    return _dehn_cache[g]


def pi1_normal_form(gamma: Sequence[int], g: int) -> Pi1Word:
    """Deterministic reduced form of a ``pi_1`` element.

    Genus 1 is abelian: ``a_1^x a_2^y``.  For ``g >= 2`` Dehn's algorithm
    replaces the leftmost-longest subword covering more than half of a
    rotation of the relator (or its inverse) by the shorter complement.
    """
    gamma = _check_pi1(gamma, g)
    if g == 1:
        x = sum((1 if e > 0 else -1) for e in gamma if abs(e) == 1)
        y = sum((1 if e > 0 else -1) for e in gamma if abs(e) == 2)
        return (1 if x > 0 else -1,) * abs(x) + (2 if y > 0 else -2,) * abs(y)
    dehn = _dehn(g)
    word = _reduce_ints(gamma)
    while True:
        hit = dehn.find(word, dehn.length // 2 + 1)
        if hit is None:
            return tuple(word)
        pos, ln, _, _, rot = hit
        complement = [-x for x in reversed(rot[ln:])]
        word = _reduce_ints(word[:pos] + complement + word[pos + ln:])


def pi1_equal(g1: Sequence[int], g2: Sequence[int], g: int) -> bool:
    """Exact word problem in ``pi_1``: ``g1 g2^-1`` reduces to the empty word."""
    return pi1_normal_form(tuple(g1) + tuple(-x for x in reversed(g2)), g) == ()


def format_pi1(gamma: Sequence[int]) -> str:
    return " ".join(f"a{abs(x)}" + ("^-1" if x < 0 else "") for x in gamma)


_PI1_RE = re.compile(r"a([1-9][0-9]*)(\^[+-]1)?")


def parse_pi1(text: str, g: int | None = None) -> Pi1Word:
    out = []
    pos = len(text) - len(text.lstrip())
    while pos < len(text):
        m = _PI1_RE.match(text, pos)
        if not m:
            raise WordSyntaxError("expected a generator a<i>", pos)
        i = int(m.group(1))
        out.append(-i if m.group(2) == "^-1" else i)
        pos = m.end()
        pos += len(text[pos:]) - len(text[pos:].lstrip())
    if g is not None:
        _check_pi1(out, g)
    return tuple(out)


# combing


def _conj_letter(u: Letter, a_c: int, a_j: int, g: int) -> list[Letter]:
    # a^-1 u a with a = A(|a_c|, a_j)^sign(a_c); second(a) < second(u) is assumed
    s = u.j
    return [Letter(abs(e), s, 1 if e > 0 else -1)
            for e in conj_indices(u.c, abs(a_c), a_j, 1 if a_c > 0 else -1, g)]


class _Kernel:
    """A kernel word that absorbs first-strand letters passing leftwards through it."""

    def __init__(self, params: SurfaceParams, budget: int):
        self.g = params.g
        self.j1 = params.j(1)
        self.budget = budget
        self.used = 0
        self.word: list[Letter] = []

    def charge(self, n: int):
        self.used += n
        if self.used > self.budget:
            raise BudgetExceeded(self.budget, self.used)

    def conjugated(self, word: Sequence[Letter], a_c: int) -> list[Letter]:
        out: list[Letter] = []
        for u in word:
            out += _conj_letter(u, a_c, self.j1, self.g)
        self.charge(len(out))
        return list(_free_reduce_letters(out))

    def pass_letter(self, a_c: int):
        """``K a = a K^a``: conjugate the whole kernel word by ``a``."""
        self.word = self.conjugated(self.word, a_c)

    def append(self, letter: Letter):
        if self.word and self.word[-1] == letter.inverse():
            self.word.pop()
        else:
            self.word.append(letter)
        self.charge(1)


def _free_reduce_letters(w: Sequence[Letter]) -> list[Letter]:
    stack: list[Letter] = []
    for x in w:
        if stack and stack[-1] == x.inverse():
            stack.pop()
        else:
            stack.append(x)
    return stack


def closed_comb_stage1(w: Sequence[Letter], params: SurfaceParams,
                       budget: int = 10**6) -> tuple[BraidWord, BraidWord]:
    """Split ``w = w1 rest`` with ``w1`` on strand 1 and ``rest`` in the kernel."""
    _require_closed(params)
    w = validate_word(w, params)
    j1 = params.j(1)
    kernel = _Kernel(params, budget)
    first: list[Letter] = []
    for x in w:
        if x.j == j1:
            kernel.pass_letter(x.c)
            first.append(x)
        else:
            kernel.append(x)
    return tuple(first), tuple(kernel.word)


@dataclass(frozen=True)
class ClosedDecomposition:
    gamma: Pi1Word
    kernel: CombedNormalForm | None

    def to_json(self) -> dict:
        return {"gamma": format_pi1(self.gamma),
                "kernel": None if self.kernel is None else self.kernel.to_json()}

    @classmethod
    def from_json(cls, data: dict | str) -> "ClosedDecomposition":
        if isinstance(data, str):
            data = json.loads(data)
        kernel = data["kernel"]
        return cls(parse_pi1(data["gamma"]),
                   None if kernel is None else CombedNormalForm.from_json(kernel))


def _relator_kernel_word(params: SurfaceParams, eps: int, offset: int,
                         kernel: _Kernel) -> list[Letter]:
    """Kernel word equal, as a braid, to the relator rotation ``(R^eps)[offset:] + (R^eps)[:offset]``.

    ``R`` (on strand 1) equals ``K = A(j_1, j_2) ... A(j_1, j_n)``; a rotation
    is ``x^-1 R^eps x`` with ``x`` the rotated-away prefix.
    """
    lhs, rhs = tr_relation(params, 1)
    word = list(rhs) if eps > 0 else list(inverse(rhs))
    rel = [x.c for x in lhs] if eps > 0 else [-x.c for x in reversed(lhs)]
    for a_c in rel[:offset]:
        word = kernel.conjugated(word, a_c)
    return word


def _eliminate_first_strand(delta: list[int], params: SurfaceParams,
                            kernel: _Kernel) -> None:
    """Rewrite ``delta . kernel`` (``delta`` trivial in ``pi_1``) as a pure kernel word.

    A match ``U`` of a relator rotation ``R' = U T`` is replaced by ``T^-1``;
    the kernel word equal to ``R'`` is then moved to the right end through the
    first-strand letters that follow it.
    """
    g = params.g
    dehn = _dehn(g)
    delta[:] = _reduce_ints(delta)
    while delta:
        if g == 1:
            hit = dehn.find_swap(delta)
        else:
            hit = dehn.find(delta, dehn.length // 2 + 1)
        if hit is None:
            raise ReductionStuck(
                f"no relator rewrite applies to the first-strand word {format_pi1(delta)}")
        pos, ln, eps, off, rot = hit
        t_inv = [-x for x in reversed(rot[ln:])]
        piece = _relator_kernel_word(params, eps, off, kernel)
        after = t_inv + delta[pos + ln:]
        for a_c in after:
            piece = kernel.conjugated(piece, a_c)
        kernel.word = _free_reduce_letters(piece + kernel.word)
        delta[:] = _reduce_ints(delta[:pos] + after)


def closed_comb(w: Sequence[Letter], params: SurfaceParams,
                budget: int = 10**6) -> ClosedDecomposition:
    """``w = s(gamma) . kernel`` with ``gamma`` normalized and the kernel combed over ``S'``.

    Raises :class:`ReductionStuck` if the first-strand remainder cannot be
    rewritten by relator moves, and :class:`BudgetExceeded` when the
    intermediate words outgrow ``budget``.
    """
    _require_closed(params)
    w = validate_word(w, params)
    gamma = pi1_normal_form(project(w, params), params.g)
    shifted = inverse(section_s(gamma, params)) + w
    first, rest = closed_comb_stage1(shifted, params, budget)
    kernel = _Kernel(params, budget)
    kernel.word = list(rest)
    _eliminate_first_strand([x.c for x in first], params, kernel)
    if params.n == 1:
        return ClosedDecomposition(gamma, None)
    sp = kernel_params(params)
    return ClosedDecomposition(gamma, combing.comb_compressed(f_rewrite(kernel.word, params), sp))


def closed_words_equal(w1: Sequence[Letter], w2: Sequence[Letter], params: SurfaceParams,
                       budget: int = 10**6, **check) -> bool:
    """Decide ``w1 == w2`` on a closed surface.

    ``w1 w2^-1 = s(gamma) K`` is trivial exactly when ``gamma`` and ``K`` are;
    Dehn's algorithm empties every trivial ``pi_1`` word, and the kernel is
    trivial when each combed factor is.  ``check`` goes to :func:`slp.free_group_trivial`.
    """
    dec = closed_comb(tuple(w1) + inverse(w2), params, budget)
    if dec.gamma:
        return False
    if dec.kernel is None:
        return True
    return not dec.kernel.factor1 and all(
        slp.free_group_trivial(f, **check) for f in dec.kernel.factors)
