"""Standard small groups used throughout the tests and demos."""
from __future__ import annotations

import itertools

import numpy as np

from .groups import FiniteGroup, direct_product, group_from_permutations, semidirect_product


def cyclic(n: int) -> FiniteGroup:
    """``C_n`` with element ``i`` standing for ``x^i``."""
    idx = np.arange(n)
    return FiniteGroup(n, table=(idx[:, None] + idx[None, :]) % n, name=f"C{n}")


def elementary_abelian(p: int, rank: int) -> FiniteGroup:
    """``(C_p)^rank`` with ``i`` the base-``p`` digit vector of ``i`` (digit 0 least significant)."""
    n = p ** rank
    idx = np.arange(n)
    digits = np.stack([(idx // p ** j) % p for j in range(rank)], axis=1)
    summed = (digits[:, None, :] + digits[None, :, :]) % p
    table = (summed * (p ** np.arange(rank))).sum(axis=2)
    labels = [tuple(int(d) for d in row) for row in digits]
    return FiniteGroup(n, table=table, labels=labels, name=f"C{p}^{rank}")


def klein() -> FiniteGroup:
    """``V_4``: 0 = 1, 1 = x, 2 = y, 3 = xy."""
    G = elementary_abelian(2, 2)
    G.name = "V4"
    return G


def symmetric(n: int) -> FiniteGroup:
    perms = list(itertools.permutations(range(n)))
    return group_from_permutations(perms, name=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    def even(p):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        return inversions % 2 == 0
    return group_from_permutations([p for p in itertools.permutations(range(n)) if even(p)], name=f"A{n}")


def inverting_action(K: FiniteGroup) -> np.ndarray:
    """Action of ``C_2`` on an abelian ``K`` by inversion."""
    return np.stack([K.elements, K.inv])


def dihedral(n: int) -> FiniteGroup:
    """``D_{2n} = [C_n]C_2``; element ``2*i + j`` is ``x^i y^j``."""
    K = cyclic(n)
    return semidirect_product(K, cyclic(2), inverting_action(K), name=f"D{2 * n}")


def quaternion() -> FiniteGroup:
    """``Q_8`` from unit quaternions; element 0 is 1."""
    units = []
    for sign in (1, -1):
        for axis in range(4):
            v = [0, 0, 0, 0]
            v[axis] = sign
            units.append(tuple(v))
    units.sort(key=lambda q: (q != (1, 0, 0, 0), q))

    def qmul(a, b):
        a0, a1, a2, a3 = a
        b0, b1, b2, b3 = b
        return (a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
                a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
                a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
                a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0)

    pos = {q: i for i, q in enumerate(units)}
    table = [[pos[qmul(a, b)] for b in units] for a in units]
    return FiniteGroup(8, table=np.array(table), labels=units, name="Q8")


def dense(G: FiniteGroup, name=None) -> FiniteGroup:
    """Copy of ``G`` realised as a dense table."""
    return FiniteGroup(G.order, table=G.table, name=name or G.name)


def small_groups_up_to_8() -> dict:
    """The thirteen groups of order 2..8 (one per isomorphism class)."""
    return {
        "C2": cyclic(2), "C3": cyclic(3), "C4": cyclic(4), "V4": klein(),
        "C5": cyclic(5), "C6": cyclic(6), "S3": symmetric(3), "C7": cyclic(7),
        "C8": cyclic(8), "C4xC2": direct_product(cyclic(4), cyclic(2), name="C4xC2"),
        "C2^3": elementary_abelian(2, 3), "D8": dense(dihedral(4), "D8"), "Q8": quaternion(),
    }


def named_group(name: str) -> FiniteGroup:
    """Look up a group by a short name: ``C<n>``, ``D<2n>``, ``S<n>``, ``A<n>``,
    ``V4``, ``Q8``, ``C4xC2``, ``C2^3`` (or ``C<p>^<r>``)."""
    table = small_groups_up_to_8()
    if name in table:
        return table[name]
    head, rest = name[:1], name[1:]
    try:
        if head == "C" and "^" in rest:
            p, r = rest.split("^")
            return elementary_abelian(int(p), int(r))
        n = int(rest)
    except ValueError:
        raise KeyError(name) from None
    if head == "C" and n >= 1:
        return cyclic(n)
    if head == "D" and n >= 4 and n % 2 == 0:
        return dihedral(n // 2)
    if head == "S" and n >= 1:
        return symmetric(n)
    if head == "A" and n >= 1:
        return alternating(n)
    raise KeyError(name)
