"""Independent reference implementations used only by the tests.

``artin_action`` computes the action of a disc pure braid on the free group
F_n through the Artin representation, which is faithful.  It shares no code
with the relation table in the package, so agreement between the two is a
real check of the table in genus 0.
"""

from __future__ import annotations


def _reduce(w):
    out = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def _inv(w):
    return [-x for x in reversed(w)]


def sigma_word(i: int, j: int, sign: int) -> list[int]:
    """Artin generators (signed indices) spelling ``A(i,j)^sign`` on the disc."""
    up = list(range(j - 1, i, -1))
    w = up + [i, i] + [-s for s in reversed(up)]
    return w if sign > 0 else _inv(w)


def _apply_sigma(images: list[list[int]], s: int) -> list[list[int]]:
    # images[k] is the image of x_{k+1}; compose with sigma_|s|^sign(s) acting first
    k = abs(s) - 1
    x, y = images[k], images[k + 1]
    new = list(images)
    if s > 0:
        new[k] = _reduce(x + y + _inv(x))
        new[k + 1] = x
    else:
        new[k] = y
        new[k + 1] = _reduce(_inv(y) + x + y)
    return new


def artin_action(letters, n: int) -> tuple[tuple[int, ...], ...]:
    """Images of x_1..x_n under the braid ``letters`` (objects with i, j, sign)."""
    images = [[k] for k in range(1, n + 1)]
    for x in letters:
        for s in sigma_word(x.i, x.j, x.sign):
            images = _apply_sigma(images, s)
    return tuple(tuple(im) for im in images)


def fibonacci_numbers(count: int) -> list[int]:
    """F_1..F_count with F_1 = F_2 = 1."""
    out = [1, 1]
    while len(out) < count:
        out.append(out[-1] + out[-2])
    return out[:count]


def fibonacci_words(count: int) -> list[str]:
    """Words b, a, ab, aba, ... each the concatenation of the two before."""
    out = ["b", "a"]
    while len(out) < count:
        out.append(out[-1] + out[-2])
    return out[:count]
