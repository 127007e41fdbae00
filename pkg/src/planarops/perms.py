"""Permutations of {1..n} as tuples of images."""

from __future__ import annotations


def identity(n):
    return tuple(range(1, n + 1))


def sign(perm):
    seen = [False] * len(perm)
    sgn = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j] - 1
            length += 1
        if length % 2 == 0:
            sgn = -sgn
    return sgn


def compose(p, q):
    """(p o q)(j) = p(q(j))."""
    return tuple(p[q[j] - 1] for j in range(len(q)))


def invert(p):
    out = [0] * len(p)
    for j, v in enumerate(p):
        out[v - 1] = j + 1
    return tuple(out)


def rotation(n, r):
    """j -> ((j - 1 - r) mod n) + 1, the relabeling after a left shift by r."""
    return tuple((j - 1 - r) % n + 1 for j in range(1, n + 1))
