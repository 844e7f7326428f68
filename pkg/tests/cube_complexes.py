"""Random chain complexes whose cancelled part is a disjoint union of signed cubes."""

import random
from dataclasses import dataclass

from gridkh.linalg import SparseMatrix
from gridkh.reduction import split_complex


@dataclass
class RandomComplex:
    delta: SparseMatrix
    degree: list
    A: list
    B: list


def signed_cube(m, rng):
    """Differential of {0,1}^m with standard signs twisted by a random vertex gauge."""
    gauge = [rng.choice((1, -1)) for _ in range(1 << m)]
    entries = {}
    for v in range(1 << m):
        for k in range(m):
            if not v >> k & 1:
                w = v | 1 << k
                sign = -1 if bin(v & ((1 << k) - 1)).count("1") % 2 else 1
                entries[w, v] = sign * gauge[v] * gauge[w]
    return SparseMatrix(1 << m, 1 << m, entries)


def _random_a(sizes, rng):
    """A complex on sum(sizes) generators with sizes[k] of them in degree k.

    Each nonzero entry joins a generator to one in the next degree, and no
    generator is both a source and a target, so the square vanishes.
    """
    offs = [sum(sizes[:k]) for k in range(len(sizes) + 1)]
    used = set()
    entries = {}
    for k in range(len(sizes) - 1):
        for src in range(offs[k], offs[k + 1]):
            for tgt in range(offs[k + 1], offs[k + 2]):
                if src not in used and tgt not in used and rng.random() < 0.5:
                    entries[tgt, src] = rng.choice((1, -1, 2, 3))
                    used.update((src, tgt))
    return SparseMatrix(offs[-1], offs[-1], entries)


def random_complex(rng, max_dim=4):
    """(A, a0) direct sum cubes, then mixed by two unimodular changes of basis.

    Writing A = A1 + A2, the first change adds X: B -> A1 and the second
    adds Y: A2 -> B.  Both preserve degree, and Y vanishes on the image of
    d, so the B block of the result is still the cube differential.
    """
    top = 5
    sizes1 = [rng.randint(0, 2) for _ in range(top)]
    sizes2 = [rng.randint(0, 2) for _ in range(top)]
    a1 = _random_a(sizes1, rng)
    a2 = _random_a(sizes2, rng)
    deg_a1 = [k for k, s in enumerate(sizes1) for _ in range(s)]
    deg_a2 = [k for k, s in enumerate(sizes2) for _ in range(s)]
    cubes = []
    deg_b = []
    for _ in range(rng.randint(1, 3)):
        m = rng.randint(1, max_dim)
        base = rng.randint(0, top - 1 - m) if top - 1 - m >= 0 else 0
        cubes.append(signed_cube(m, rng))
        deg_b.extend(base + bin(v).count("1") for v in range(1 << m))
    nA1, nA2, nB = len(deg_a1), len(deg_a2), len(deg_b)
    n = nA1 + nA2 + nB
    # assemble delta0 = a1 + a2 + cubes on A1 | A2 | B
    entries = {}
    for (t, s), v in a1.entries.items():
        entries[t, s] = v
    for (t, s), v in a2.entries.items():
        entries[nA1 + t, nA1 + s] = v
    off = nA1 + nA2
    for cube in cubes:
        for (t, s), v in cube.entries.items():
            entries[off + t, off + s] = v
        off += cube.rows
    delta = SparseMatrix(n, n, entries)
    degree = deg_a1 + deg_a2 + deg_b
    # X: B -> A1 and Y: A2 -> B, degree preserving
    x_entries, y_entries = {}, {}
    for i in range(nA1):
        for j in range(nB):
            if degree[i] == deg_b[j] and rng.random() < 0.5:
                x_entries[i, nA1 + nA2 + j] = rng.choice((1, -1, 2))
    for i in range(nB):
        for j in range(nA2):
            if deg_b[i] == deg_a2[j] and rng.random() < 0.5:
                y_entries[nA1 + nA2 + i, nA1 + j] = rng.choice((1, -1, 2))
    ident = SparseMatrix.identity(n)
    X = SparseMatrix(n, n, x_entries)
    Y = SparseMatrix(n, n, y_entries)
    # (1 + X)^-1 = 1 - X and (1 + Y)^-1 = 1 - Y since X^2 = Y^2 = 0
    delta = (ident + X) @ delta @ (ident - X)
    delta = (ident + Y) @ delta @ (ident - Y)
    A = list(range(nA1 + nA2))
    B = list(range(nA1 + nA2, n))
    return RandomComplex(delta, degree, A, B)


def split_of(rc: RandomComplex):
    return split_complex(rc.delta, rc.A, rc.B)


def rng_for(seed):
    return random.Random(seed)
