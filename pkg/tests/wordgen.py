"""Random inputs shared by the test modules."""

from __future__ import annotations

from braidcomb.presentation import Letter
from braidcomb.slp import CompressedWord


def random_word(rng, params, length, strands=None):
    """Uniform word over the signed generators, optionally restricted to some strands."""
    gens = params.generators()
    if strands is not None:
        gens = [x for x in gens if params.strand(x.j) in strands]
    return tuple(Letter(x.i, x.j, rng.choice((1, -1))) for x in (rng.choice(gens) for _ in range(length)))


def random_pi1(rng, g, length):
    return tuple(rng.choice((1, -1)) * rng.randint(1, 2 * g) for _ in range(length))


def random_slp(rng, terminals, rules, max_len):
    """Random program in which every rule is used by its successor or the root.

    Right-hand sides have two to four symbols; the evaluation length stays
    at most ``max_len`` by falling back to terminals when a rule would grow
    too long.
    """
    out: list[tuple[int, ...]] = []
    lengths: list[int] = []
    nt = len(terminals)
    for q in range(rules):
        rhs = []
        total = 0
        if q:
            rhs.append(q - 1)
            total += lengths[q - 1]
        for _ in range(rng.randint(1, 3)):
            if q and rng.random() < 0.6:
                s = rng.randrange(q)
                if total + lengths[s] <= max_len:
                    rhs.append(s)
                    total += lengths[s]
                    continue
            rhs.append(~rng.randrange(nt))
            total += 1
        rng.shuffle(rhs)
        out.append(tuple(rhs))
        lengths.append(total)
    return CompressedWord(terminals, out)
