"""Combing pure braids on surfaces with boundary.

The combed normal form of a braid is ``alpha_1 alpha_2 ... alpha_n`` where
``alpha_k`` lies in the free group on ``A(i, j_k)``.  Moving every letter
with a smaller second index to the left conjugates the letters it passes,
so the k-th factor is the product of the letters ``u`` of strand ``k``,
each conjugated by the letters after it with smaller second index.  Those
conjugators are suffixes of a single subsequence ``v`` of the input, which
is what makes a polynomial-size program for each factor possible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from . import slp
from .errors import BudgetExceeded
from .presentation import (
    BraidWord,
    Letter,
    SurfaceParams,
    _reduce_ints,
    conj_indices,
    format_word,
    free_reduce,
    parse_word,
    validate_word,
)
from .slp import CompressedWord

__all__ = [
    "PairEncoding",
    "CombedNormalForm",
    "extract_factor_encoding",
    "build_factor_slp",
    "labelled_factor_rules",
    "comb_compressed",
    "comb_classical",
    "words_equal",
    "normal_forms_equal",
    "factor_verdicts",
    "beta_m",
    "size_bound",
]


@dataclass(frozen=True)
class PairEncoding:
    """``v`` plus one ``(c, d)`` per strand-k letter: the letter ``A(|c|, j_k)^sign(c)``
    conjugated by the suffix of ``v`` of length ``d``."""

    k: int
    v: BraidWord = ()
    pairs: tuple[tuple[int, int], ...] = ()


def extract_factor_encoding(w: Sequence[Letter], k: int, params: SurfaceParams) -> PairEncoding:
    jk = params.j(k)
    start = next((t for t, x in enumerate(w) if x.j == jk), None)
    if start is None:
        return PairEncoding(k)
    v = tuple(x for x in w[start + 1:] if x.j < jk)
    d = len(v)
    pairs = []
    for x in w[start:]:
        if x.j == jk:
            pairs.append((x.c, d))
        elif x.j < jk:
            d -= 1
    return PairEncoding(k, v, tuple(pairs))


def factor_terminals(params: SurfaceParams, k: int) -> tuple[Letter, ...]:
    jk = params.j(k)
    return tuple(Letter(i, jk, s) for i in range(1, jk) for s in (1, -1))


def _terminal_code(c: int) -> int:
    # position of A(|c|, j_k)^sign(c) in factor_terminals, encoded as a terminal
    return ~(2 * (abs(c) - 1) + (c < 0))


def size_bound(params: SurfaceParams, m: int) -> int:
    """Upper bound ``19 (2g + p + n) m`` on the size of every factor program."""
    return 19 * (2 * params.g + params.p + params.n) * m


def _reachable(enc: PairEncoding, g: int) -> list[set[int]]:
    """``needed[d]``: the signed first indices ``c`` with ``X(c, d)`` reachable from the root."""
    v = enc.v
    top = len(v)
    needed: list[set[int]] = [set() for _ in range(top + 1)]
    for c, d in enc.pairs:
        needed[d].add(c)
    for d in range(top, 1, -1):
        a = v[top - d]
        below = needed[d - 1]
        for c in needed[d]:
            below.update(conj_indices(c, a.i, a.j, a.sign, g))
    return needed


def labelled_factor_rules(enc: PairEncoding, params: SurfaceParams) -> dict:
    """Rules of the k-th factor program keyed by the pair ``(c, d)`` they define.

    Nonterminal ``X(c, d)`` stands for ``A(|c|, j_k)^sign(c)`` conjugated by
    the last ``d`` letters of ``v``; it rewrites to ``X(e_1, d-1) ... X(e_s, d-1)``
    where ``e`` spells the conjugate by the first of those letters.  Pairs with
    ``d = 0`` are terminals.  Only pairs reachable from the root are created;
    the dict is ordered by ``d`` then ``c`` and the root is stored under ``None``.
    """
    g, v = params.g, enc.v
    needed = _reachable(enc, g)
    rules: dict = {}
    for d in range(1, len(v) + 1):
        a = v[len(v) - d]
        for c in sorted(needed[d]):
            rules[c, d] = tuple((e, d - 1) for e in conj_indices(c, a.i, a.j, a.sign, g))
    rules[None] = tuple(enc.pairs)
    return rules


def build_factor_slp(enc: PairEncoding, params: SurfaceParams) -> CompressedWord:
    """Program whose evaluation represents the k-th combed factor.

    Same rules and order as :func:`labelled_factor_rules`, encoded as ints.
    """
    g, v = params.g, enc.v
    top = len(v)
    needed = _reachable(enc, g)
    terminals = factor_terminals(params, enc.k)
    prev = {c: _terminal_code(c) for c in range(-len(terminals) // 2, len(terminals) // 2 + 1) if c}
    levels = [prev]
    rules: list[tuple[int, ...]] = []
    for d in range(1, top + 1):
        a = v[top - d]
        ai, aj, asign = a.i, a.j, a.sign
        get = prev.__getitem__
        cur: dict[int, int] = {}
        for c in sorted(needed[d]):
            rules.append(tuple(map(get, conj_indices(c, ai, aj, asign, g))))
            cur[c] = len(rules) - 1
        levels.append(cur)
        prev = cur
    rules.append(tuple(levels[d][c] for c, d in enc.pairs))
    return CompressedWord._trusted(terminals, rules)


@dataclass(frozen=True)
class CombedNormalForm:
    params: SurfaceParams
    factor1: BraidWord
    factors: tuple[CompressedWord, ...] = field(default=())

    def factor(self, k: int) -> CompressedWord:
        """Factor ``k`` (2..n) as a program; ``k = 1`` is wrapped on the fly."""
        if k == 1:
            return slp.from_word(self.factor1, factor_terminals(self.params, 1))
        return self.factors[k - 2]

    @property
    def sizes(self) -> list[int]:
        return [f.size for f in self.factors]

    @property
    def eval_lengths(self) -> list[int]:
        return [slp.eval_length(f) for f in self.factors]

    def to_json(self) -> dict:
        return {
            "params": self.params.as_dict(),
            "factor1": format_word(self.factor1),
            "factors": [f.to_json() for f in self.factors],
            "sizes": self.sizes,
            "eval_lengths": [str(x) for x in self.eval_lengths],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "CombedNormalForm":
        if isinstance(data, str):
            data = json.loads(data)
        params = SurfaceParams(**data["params"])
        return cls(params, parse_word(data["factor1"], params),
                   tuple(CompressedWord.from_json(f) for f in data["factors"]))


def comb_compressed(w: Sequence[Letter], params: SurfaceParams) -> CombedNormalForm:
    if params.closed:
        raise ValueError("compressed combing needs a surface with boundary")
    w = validate_word(w, params)
    j1 = params.j(1)
    factor1 = free_reduce(x for x in w if x.j == j1)
    factors = tuple(build_factor_slp(extract_factor_encoding(w, k, params), params)
                    for k in range(2, params.n + 1))
    return CombedNormalForm(params, factor1, factors)


def comb_classical(w: Sequence[Letter], params: SurfaceParams,
                   budget: int = 10**6) -> list[BraidWord]:
    """Reduced words ``w_1 .. w_n`` of the combed normal form, fully expanded.

    Letters are appended one at a time to an already combed prefix and
    swapped leftwards past every letter with a larger second index, which
    is the leftmost out-of-order pair at each step.  Free reduction runs
    after every swap.  Exponential in general; ``budget`` caps the total
    number of letters produced.
    """
    w = validate_word(w, params)
    n, g = params.n, params.g
    factors: list[list[int]] = [[] for _ in range(n)]
    used = 0
    for x in w:
        k = params.strand(x.j)
        f = factors[k - 1]
        if f and f[-1] == -x.c:
            f.pop()
        else:
            f.append(x.c)
        for l in range(k, n):
            new: list[int] = []
            for c in factors[l]:
                new.extend(conj_indices(c, x.i, x.j, x.sign, g))
            used += len(new)
            if used > budget:
                raise BudgetExceeded(budget, used)
            factors[l] = _reduce_ints(new)
    return [tuple(Letter(abs(c), params.j(k), 1 if c > 0 else -1) for c in f)
            for k, f in enumerate(factors, start=1)]


def words_equal(w1: Sequence[Letter], w2: Sequence[Letter], params: SurfaceParams,
                **check) -> bool:
    """Decide ``w1 == w2`` in P_n(S) by comparing combed factors.

    Keyword arguments (``lam``, ``exact_threshold``, ``method``, ``rng``) go
    to :func:`slp.free_group_eq`.
    """
    nf1 = comb_compressed(w1, params)
    nf2 = comb_compressed(w2, params)
    return normal_forms_equal(nf1, nf2, **check)


def normal_forms_equal(nf1: CombedNormalForm, nf2: CombedNormalForm, **check) -> bool:
    if nf1.params != nf2.params:
        raise ValueError("normal forms belong to different groups")
    if nf1.factor1 != nf2.factor1:
        return False
    return all(slp.free_group_eq(a, b, **check) for a, b in zip(nf1.factors, nf2.factors))


def factor_verdicts(nf1: CombedNormalForm, nf2: CombedNormalForm, **check) -> list[bool]:
    """Per-factor equality, factor 1 first."""
    return [nf1.factor1 == nf2.factor1] + [
        slp.free_group_eq(a, b, **check) for a, b in zip(nf1.factors, nf2.factors)]


def beta_m(m: int) -> BraidWord:
    """``(A12^-1 A23)^-m A34 (A12^-1 A23)^m`` in P_4 of the disc; length ``4m + 1``."""
    if m < 1:
        raise ValueError("m >= 1")
    a12, a23 = Letter(1, 2), Letter(2, 3)
    g = (a12.inverse(), a23)
    ginv = (a23.inverse(), a12)
    return ginv * m + (Letter(3, 4),) + g * m
