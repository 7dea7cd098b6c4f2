"""Straight-line programs (compressed words).

A :class:`CompressedWord` is a list of production rules ``X_1 .. X_q``;
the right-hand side of ``X_k`` mentions terminals and nonterminals
``X_j`` with ``j < k``, and the last rule is the root.  Internally a
right-hand side is a tuple of ints: ``x >= 0`` names nonterminal ``x``
(0-based) and ``x < 0`` names terminal ``~x``.

Equality of evaluations and free-group triviality are decided exactly by
decompression when the evaluation is short enough, and otherwise by
randomized evaluation modulo large random primes:

* ``monoid_eq`` compares polynomial fingerprints ``sum w_t x^(L-1-t)``.
  Distinct words of length ``L`` collide for at most ``L - 1`` values of
  ``x`` mod ``p``.
* ``free_group_trivial`` maps the free group on the terminal alphabet into
  SL(2, Z) through ``y_r = b^r a b^-r`` with ``a = [[1,2],[0,1]]`` and
  ``b = [[1,0],[2,1]]``.  The map is injective, so a nontrivial element
  gives an integer matrix different from the identity, and only a few
  primes can divide the difference.

Both randomized tests can only err by answering ``True``; the number of
primes is chosen so that this happens with probability at most
``2**-lam``.
"""

from __future__ import annotations

import json
import math
import os
import random
from typing import Any, Hashable, Iterable, Sequence

import gmpy2

from .errors import AlphabetMismatch, TooLong
from .presentation import Letter, parse_letter

__all__ = [
    "CompressedWord",
    "DEFAULT_LAMBDA",
    "DEFAULT_EXACT_THRESHOLD",
    "from_word",
    "fibonacci",
    "concat",
    "invert",
    "evaluate",
    "eval_length",
    "monoid_eq",
    "free_group_trivial",
    "free_group_eq",
    "reduce",
    "set_seed",
    "get_rng",
]

DEFAULT_LAMBDA = 64
DEFAULT_EXACT_THRESHOLD = 10**6

_rng = random.Random(os.environ.get("BRAIDCOMB_SEED"))


def set_seed(seed) -> None:
    """Reseed the process-wide generator used to draw primes and evaluation points."""
    _rng.seed(seed)


def get_rng() -> random.Random:
    return _rng


class CompressedWord:
    """An immutable straight-line program.

    ``terminals`` is a tuple of distinct hashable symbols (usually
    :class:`Letter`); ``rules`` is a tuple of encoded right-hand sides, the
    last one being the root.  Empty non-root rules are pruned on
    construction and rankedness is checked.
    """

    __slots__ = ("terminals", "rules", "_lengths")

    def __init__(self, terminals: Iterable[Hashable], rules: Iterable[Sequence[int]]):
        terminals = tuple(terminals)
        rules = [tuple(r) for r in rules]
        if len(set(terminals)) != len(terminals):
            raise ValueError("terminal symbols must be distinct")
        if not rules:
            rules = [()]
        nt = len(terminals)
        for q, rhs in enumerate(rules):
            if rhs and (max(rhs) >= q or min(rhs) < -nt):
                raise ValueError(f"rule X{q + 1} is not ranked or names an unknown terminal")
        if any(not r for r in rules[:-1]):
            rules = _prune_empty(rules)
        self.terminals = terminals
        self.rules = tuple(rules)
        self._lengths = None

    @classmethod
    def _trusted(cls, terminals: tuple, rules: list[tuple[int, ...]]) -> "CompressedWord":
        """Skip validation for rules that are ranked and non-empty by construction."""
        self = cls.__new__(cls)
        self.terminals = terminals
        self.rules = tuple(rules)
        self._lengths = None
        return self

    @property
    def size(self) -> int:
        return sum(len(r) for r in self.rules)

    @property
    def root(self) -> int:
        return len(self.rules) - 1

    def lengths(self) -> list[int]:
        """Exact evaluation length of every nonterminal."""
        if self._lengths is None:
            lens: list[int] = []
            for rhs in self.rules:
                total = 0
                for s in rhs:
                    total += lens[s] if s >= 0 else 1
                lens.append(total)
            self._lengths = lens
        return self._lengths

    def symbol(self, s: int):
        return self.terminals[~s] if s < 0 else f"X{s + 1}"

    def productions(self) -> list[tuple[str, list]]:
        """Readable rules as ``(lhs name, [terminal or nonterminal name, ...])``."""
        return [(f"X{q + 1}", [self.symbol(s) for s in rhs]) for q, rhs in enumerate(self.rules)]

    def __eq__(self, other):
        if not isinstance(other, CompressedWord):
            return NotImplemented
        return self.terminals == other.terminals and self.rules == other.rules

    def __hash__(self):
        return hash((self.terminals, self.rules))

    def __repr__(self):
        return (f"CompressedWord(size={self.size}, rules={len(self.rules)}, "
                f"terminals={len(self.terminals)})")

    # serialization

    def to_json(self) -> dict:
        return {
            "terminals": [str(t) for t in self.terminals],
            "rules": [{"lhs": lhs, "rhs": [str(x) for x in rhs]}
                      for lhs, rhs in self.productions()],
            "root": f"X{len(self.rules)}",
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: dict | str) -> "CompressedWord":
        if isinstance(data, str):
            data = json.loads(data)
        term_names = list(data["terminals"])
        terminals = [_parse_terminal(t) for t in term_names]
        tindex = {name: ~k for k, name in enumerate(term_names)}
        nindex: dict[str, int] = {}
        rules = []
        for q, rule in enumerate(data["rules"]):
            rhs = []
            for sym in rule["rhs"]:
                if sym in nindex:
                    rhs.append(nindex[sym])
                elif sym in tindex:
                    rhs.append(tindex[sym])
                else:
                    raise ValueError(f"unknown symbol {sym!r} in rule {rule['lhs']}")
            if rule["lhs"] in nindex or rule["lhs"] in tindex:
                raise ValueError(f"duplicate symbol {rule['lhs']!r}")
            nindex[rule["lhs"]] = q
            rules.append(rhs)
        if rules and data["root"] != data["rules"][-1]["lhs"]:
            raise ValueError("the root must be the last (greatest) nonterminal")
        return cls(terminals, rules)

    @classmethod
    def loads(cls, text: str) -> "CompressedWord":
        return cls.from_json(json.loads(text))


def _parse_terminal(name: str):
    if name.startswith("A("):
        return parse_letter(name)
    return name


def _prune_empty(rules: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    newidx: list[int | None] = []
    out: list[tuple[int, ...]] = []
    last = len(rules) - 1
    for q, rhs in enumerate(rules):
        new = tuple(s if s < 0 else newidx[s] for s in rhs if s < 0 or newidx[s] is not None)
        if new or q == last:
            newidx.append(len(out))
            out.append(new)
        else:
            newidx.append(None)
    return out


def from_word(w: Iterable, terminals: Iterable[Hashable] | None = None) -> CompressedWord:
    """Single-rule program evaluating to ``w``."""
    w = tuple(w)
    if terminals is None:
        terminals = list(dict.fromkeys(w))
    else:
        terminals = list(terminals)
        extra = [x for x in dict.fromkeys(w) if x not in set(terminals)]
        terminals += extra
    index = {t: ~k for k, t in enumerate(terminals)}
    return CompressedWord(terminals, [tuple(index[x] for x in w)])


def fibonacci(n: int) -> CompressedWord:
    """``X1 -> b, X2 -> a, Xi -> X(i-1) X(i-2)``; evaluates to the n-th Fibonacci word."""
    if n < 1:
        raise ValueError("n >= 1")
    a, b = ~0, ~1
    rules: list[tuple[int, ...]] = [(b,), (a,)] + [(i - 1, i - 2) for i in range(2, n)]
    return CompressedWord(("a", "b"), rules[:n])


def _letter_signature(terminals) -> Any:
    if not terminals:
        return None
    if all(isinstance(t, Letter) for t in terminals):
        seconds = {t.j for t in terminals}
        return ("letter", seconds.pop()) if len(seconds) == 1 else ("letter", None)
    if any(isinstance(t, Letter) for t in terminals):
        return ("mixed", None)
    return ("symbol", None)


def _compatible(a, b) -> bool:
    sa, sb = _letter_signature(a), _letter_signature(b)
    if sa is None or sb is None:
        return True
    if sa[0] != sb[0] or sa[0] == "mixed":
        return sa == sb == ("mixed", None)
    if sa[0] == "letter" and sa[1] is not None and sb[1] is not None:
        return sa[1] == sb[1]
    return True


def concat(A: CompressedWord, B: CompressedWord) -> CompressedWord:
    """Program evaluating to ``ev(A) ev(B)``; adds one two-symbol root."""
    if not _compatible(A.terminals, B.terminals):
        raise AlphabetMismatch("terminal alphabets are not compatible")
    terminals = list(A.terminals)
    tidx = {t: k for k, t in enumerate(terminals)}
    for t in B.terminals:
        if t not in tidx:
            tidx[t] = len(terminals)
            terminals.append(t)
    bmap = [~tidx[t] for t in B.terminals]
    off = len(A.rules)
    rules = list(A.rules)
    rules += [tuple(s + off if s >= 0 else bmap[~s] for s in rhs) for rhs in B.rules]
    rules.append((A.root, off + B.root))
    return CompressedWord(terminals, rules)


def invert(A: CompressedWord) -> CompressedWord:
    """Program evaluating to the formal inverse of ``ev(A)``."""
    return CompressedWord((t.inverse() for t in A.terminals),
                          (tuple(reversed(r)) for r in A.rules))


def eval_length(A: CompressedWord) -> int:
    return A.lengths()[-1]


def evaluate(A: CompressedWord, max_len: int = DEFAULT_EXACT_THRESHOLD) -> tuple:
    """Decompress ``A``; raises :class:`TooLong` before expanding anything if too long."""
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    length = eval_length(A)
    if length > max_len:
        raise TooLong(length, max_len)
    terms = A.terminals
    return tuple(terms[t] for t in _expand(A))


def _expand(A: CompressedWord) -> list[int]:
    """Terminal positions of ``ev(A)`` in order (unguarded)."""
    rules = A.rules
    out: list[int] = []
    stack = list(reversed(rules[-1]))
    while stack:
        s = stack.pop()
        if s < 0:
            out.append(~s)
        else:
            stack.extend(reversed(rules[s]))
    return out


# randomized checks


def random_prime(bits: int, rng: random.Random) -> int:
    """Uniformly random prime in ``[2**(bits-1), 2**bits)``."""
    top = 1 << (bits - 1)
    while True:
        cand = rng.getrandbits(bits - 1) | top | 1
        if gmpy2.is_prime(cand, 40):
            return cand


def _fingerprint_plan(length: int, lam: int) -> tuple[int, int]:
    """``(bits, count)`` so that ``count`` trials err with probability <= 2**-lam."""
    bits = max(64, length.bit_length() + 64)
    per_trial = bits - 1 - length.bit_length()  # (L-1)/p <= 2**-per_trial
    return bits, math.ceil(lam / per_trial)


def fingerprint(A: CompressedWord, p: int, x: int, values: dict) -> int:
    """``sum ev(A)_t * x**(L-1-t) mod p`` computed bottom-up."""
    tv = [values[t] for t in A.terminals]
    h: list[int] = []
    pw: list[int] = []
    for rhs in A.rules:
        hh, pp = 0, 1
        for s in rhs:
            if s >= 0:
                hh = (hh * pw[s] + h[s]) % p
                pp = pp * pw[s] % p
            else:
                hh = (hh * x + tv[~s]) % p
                pp = pp * x % p
        h.append(hh)
        pw.append(pp)
    return h[-1]


def monoid_eq(A: CompressedWord, B: CompressedWord, *, lam: int = DEFAULT_LAMBDA,
              exact_threshold: int = DEFAULT_EXACT_THRESHOLD, method: str = "auto",
              rng: random.Random | None = None) -> bool:
    """Whether ``ev(A)`` and ``ev(B)`` are the same sequence of symbols.

    ``method`` is ``"auto"`` (exact below ``exact_threshold``), ``"exact"`` or
    ``"random"``.  A randomized ``False`` is always correct.
    """
    la, lb = eval_length(A), eval_length(B)
    if la != lb:
        return False
    if method == "exact" or (method == "auto" and la <= exact_threshold):
        return evaluate(A, la) == evaluate(B, lb)
    rng = rng or _rng
    alphabet = list(dict.fromkeys(A.terminals + B.terminals))
    bits, count = _fingerprint_plan(la, lam)
    for _ in range(count):
        p = random_prime(bits, rng)
        x = rng.randrange(p)
        values = dict(zip(alphabet, _distinct(rng, p, len(alphabet))))
        if fingerprint(A, p, x, values) != fingerprint(B, p, x, values):
            return False
    return True


def _distinct(rng: random.Random, p: int, k: int) -> list[int]:
    seen: dict[int, None] = {}
    while len(seen) < k:
        seen[rng.randrange(p)] = None
    return list(seen)


def _generator_matrix(r: int) -> tuple[int, int, int, int]:
    """``b^r a b^-r`` for the Sanov pair."""
    return (1 - 4 * r, 2, -8 * r * r, 4 * r + 1)


def _matrix_plan(length: int, rank: int, lam: int) -> tuple[int, int]:
    # entries of a product of `length` generators are below C**length
    log_c = math.ceil(math.log2(8 * rank * rank + 4 * rank + 1))
    entry_bits = length * log_c + 2
    bits = max(64, entry_bits.bit_length() + 64)
    # at most entry_bits/(bits-1) prime divisors of size >= 2**(bits-1), and at
    # least 2**(bits-1)/(2 bits) primes to choose from
    per_prime = bits - 1 - entry_bits.bit_length() - 2
    return bits, math.ceil(lam / per_prime)


def _matrix_eval(A: CompressedWord, p: int, gens: list[tuple[int, int, int, int]]):
    mats: list[tuple[int, int, int, int]] = []
    for rhs in A.rules:
        a, b, c, d = 1, 0, 0, 1
        for s in rhs:
            e, f, g, h = mats[s] if s >= 0 else gens[~s]
            a, b, c, d = (a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p
        mats.append((a, b, c, d))
    return mats[-1]


def free_group_trivial(A: CompressedWord, *, lam: int = DEFAULT_LAMBDA,
                       exact_threshold: int = DEFAULT_EXACT_THRESHOLD, method: str = "auto",
                       rng: random.Random | None = None) -> bool:
    """Whether ``ev(A)`` freely reduces to the empty word.

    Terminals must provide ``inverse()``; a letter and its inverse are the
    same free generator with opposite signs.
    """
    length = eval_length(A)
    if length == 0:
        return True
    rank_of = _ranks(A.terminals)
    if method == "exact" or (method == "auto" and length <= exact_threshold):
        return not _reduced_codes(A, _signed_codes(A.terminals, rank_of))
    rng = rng or _rng
    bits, count = _matrix_plan(length, len(rank_of), lam)
    for _ in range(count):
        p = random_prime(bits, rng)
        gens = []
        for t in A.terminals:
            m = _generator_matrix(rank_of[_base(t)])
            if _is_inverse_form(t):
                m = (m[3], -m[1], -m[2], m[0])
            gens.append(tuple(v % p for v in m))
        if _matrix_eval(A, p, gens) != (1, 0, 0, 1):
            return False
    return True


def _ranks(terminals) -> dict:
    bases = dict.fromkeys(_base(t) for t in terminals)
    return {key: r for r, key in enumerate(sorted(bases, key=repr), start=1)}


def _signed_codes(terminals, rank_of) -> list[int]:
    """Each terminal as ``+r`` or ``-r`` where ``r`` is the rank of its free generator."""
    return [-rank_of[_base(t)] if _is_inverse_form(t) else rank_of[_base(t)] for t in terminals]


def _reduced_codes(A: CompressedWord, signed: list[int]) -> list[int]:
    """Freely reduced ``ev(A)`` as signed codes, reducing every rule bottom-up.

    Free reduction is confluent, so a rule's reduced word is obtained from the
    reduced words of its children by cancelling at the seams.  A child is
    dropped after its last use to keep memory near the live frontier.
    """
    rules = A.rules
    last_use = list(range(len(rules)))
    for q, rhs in enumerate(rules):
        for s in rhs:
            if s >= 0:
                last_use[s] = q
    red: list[list[int] | None] = [None] * len(rules)
    for q, rhs in enumerate(rules):
        cur: list[int] = []
        for s in rhs:
            piece = [signed[~s]] if s < 0 else red[s]
            c, n, m = 0, len(cur), len(piece)
            while c < n and c < m and cur[n - 1 - c] == -piece[c]:
                c += 1
            if c:
                del cur[n - c:]
            cur.extend(piece[c:] if c else piece)
        red[q] = cur
        for s in rhs:
            if s >= 0 and last_use[s] == q:
                red[s] = None
    return red[-1]


def _base(t):
    if isinstance(t, Letter):
        return (t.i, t.j)
    inv = t.inverse()
    return min(t, inv, key=repr)


def _is_inverse_form(t) -> bool:
    if isinstance(t, Letter):
        return t.sign < 0
    return _base(t) != t


def free_group_eq(A: CompressedWord, B: CompressedWord, **kw) -> bool:
    """``ev(A) == ev(B)`` in the free group on the terminals."""
    return free_group_trivial(concat(A, invert(B)), **kw)


def reduce(A: CompressedWord, max_len: int = DEFAULT_EXACT_THRESHOLD) -> CompressedWord:
    """Program for the free reduction of ``ev(A)``; raises :class:`TooLong` above ``max_len``."""
    length = eval_length(A)
    if length > max_len:
        raise TooLong(length, max_len)
    signed = _signed_codes(A.terminals, _ranks(A.terminals))
    back = {code: t for code, t in zip(signed, A.terminals)}
    return from_word((back[x] for x in _reduced_codes(A, signed)), A.terminals)
