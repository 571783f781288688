"""Brute-force reference implementations.

Plain Python over lists and sets, written straight from the definitions and
sharing no code with the package.  Only usable at tiny orders.
"""
import itertools


def tab(G):
    """Cayley table of a package group as nested lists."""
    return G.table.tolist()


def is_group_table(t):
    n = len(t)
    if any(len(r) != n for r in t):
        return False
    if any(not 0 <= x < n for r in t for x in r):
        return False
    if any(t[0][x] != x or t[x][0] != x for x in range(n)):
        return False
    for a in range(n):
        if not any(t[a][b] == 0 and t[b][a] == 0 for b in range(n)):
            return False
    for a in range(n):
        for b in range(n):
            ab = t[a][b]
            for c in range(n):
                if t[ab][c] != t[a][t[b][c]]:
                    return False
    return True


def inverse(t, a):
    return next(b for b in range(len(t)) if t[a][b] == 0)


def closure(t, gens):
    S = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = t[x][g]
                if y not in S:
                    S.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(S)


def is_subgroup(t, S):
    return 0 in S and all(t[a][b] in S for a in S for b in S)


def all_subgroups(t):
    """Every subgroup as a frozenset (subsets containing 0 closed under products)."""
    n = len(t)
    found = set()
    others = list(range(1, n))
    for r in range(len(others) + 1):
        for combo in itertools.combinations(others, r):
            S = frozenset((0,) + combo)
            if is_subgroup(t, S):
                found.add(S)
    return found


def is_normal(t, S):
    n = len(t)
    return all(t[t[g][s]][inverse(t, g)] in S for g in range(n) for s in S)


def product(t, A, B):
    return frozenset(t[a][b] for a in A for b in B)


def is_hom(t1, t2, f):
    n = len(t1)
    return all(f[t1[a][b]] == t2[f[a]][f[b]] for a in range(n) for b in range(n))


def automorphisms(t):
    """Every bijection fixing 0 that respects the table."""
    n = len(t)
    out = []
    for perm in itertools.permutations(range(1, n)):
        f = (0,) + perm
        if is_hom(t, t, f):
            out.append(f)
    return out


def brace_law_holds(add, mul):
    n = len(add)
    neg = [inverse(add, a) for a in range(n)]
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if mul[a][add[b][c]] != add[add[mul[a][b]][neg[a]]][mul[a][c]]:
                    return False
    return True


def braces_by_table_filter(add):
    """Every multiplication table making ``add`` a skew brace.

    Runs over all tables whose rows are permutations with identity 0; only
    sensible for order at most 4.
    """
    n = len(add)
    rows = [[(a,) + p for p in itertools.permutations([x for x in range(n) if x != a])]
            for a in range(1, n)]
    found = []
    for choice in itertools.product(*rows):
        mul = [list(range(n))] + [list(r) for r in choice]
        if any(sorted(mul[a][b] for a in range(n)) != list(range(n)) for b in range(n)):
            continue
        if not is_group_table(mul):
            continue
        if brace_law_holds(add, mul):
            found.append(tuple(tuple(r) for r in mul))
    return sorted(found)


def lambda_perm(add, mul, a):
    n = len(add)
    na = inverse(add, a)
    return tuple(add[na][mul[a][b]] for b in range(n))


def brace_automorphisms(add, mul):
    return [f for f in automorphisms(add) if is_hom(mul, mul, f)]


def brace_label(add, mul, L):
    """0 not a subbrace, 1 subbrace, 2 left ideal, 3 strong left ideal, 4 ideal."""
    L = frozenset(L)
    n = len(add)
    if not (is_subgroup(add, L) and is_subgroup(mul, L)):
        return 0
    label = 1
    if all(lambda_perm(add, mul, a)[x] in L for a in range(n) for x in L):
        label = 2
        if is_normal(add, L):
            label = 3
            if is_normal(mul, L):
                label = 4
    return label


# tuples ------------------------------------------------------------------------

def trifact_holds(t, K, H, E):
    n = len(t)
    full = frozenset(range(n))
    return (is_normal(t, K)
            and product(t, K, E) == full and product(t, K, H) == full and product(t, H, E) == full
            and K & E == {0} and H & E == {0})


def decompose(t, K, E, g):
    """The unique ``(k, e)`` with ``g = k e``."""
    hits = [(k, e) for k in K for e in E if t[k][e] == g]
    assert len(hits) == 1
    return hits[0]


def associated_brace(t, K, H, E):
    """Tables on ``sorted(K)`` positions: ``k1 . k2 = k1 e k2 e^-1`` with ``e``
    the E-part of the element of H whose K-part is ``k1``."""
    ks = sorted(K)
    pos = {k: i for i, k in enumerate(ks)}
    sigma_inv = {}
    for h in H:
        k, e = decompose(t, K, E, h)
        sigma_inv[k] = (h, e)
    m = len(ks)
    add = [[pos[t[a][b]] for b in ks] for a in ks]
    mul = [[0] * m for _ in range(m)]
    for a in ks:
        e = sigma_inv[a][1]
        ei = inverse(t, e)
        for b in ks:
            mul[pos[a]][pos[b]] = pos[t[a][t[t[e][b]][ei]]]
    return add, mul


def tuple_isomorphic(t1, T1, t2, T2):
    """Exhaustive: a group isomorphism with ``f(K1)=K2, f(H1)=H2, f(E1)=E2``.

    ``T = (K, H, E)`` as sets.  Every element is ``k e`` so ``f`` is fixed by
    bijections ``K1 -> K2`` and ``E1 -> E2``; feasible while ``|K|! |E|!`` is small.
    """
    K1, H1, E1 = T1
    K2, H2, E2 = T2
    if len(t1) != len(t2) or (len(K1), len(H1), len(E1)) != (len(K2), len(H2), len(E2)):
        return False
    k1s, e1s = sorted(K1), sorted(E1)
    k2s, e2s = sorted(K2), sorted(E2)
    decomp = {t1[k][e]: (k, e) for k in k1s for e in e1s}
    for kp in itertools.permutations(k2s[1:]):
        fk = dict(zip(k1s, (0,) + kp))
        if any(fk[t1[a][b]] != t2[fk[a]][fk[b]] for a in k1s for b in k1s):
            continue
        for ep in itertools.permutations(e2s[1:]):
            fe = dict(zip(e1s, (0,) + ep))
            f = [0] * len(t1)
            for g, (k, e) in decomp.items():
                f[g] = t2[fk[k]][fe[e]]
            if len(set(f)) != len(f) or not is_hom(t1, t2, f):
                continue
            if frozenset(f[h] for h in H1) == frozenset(H2):
                return True
    return False
