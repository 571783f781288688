"""Skew left braces on ``0..n-1`` with shared identity ``0``.

The additive group ``K = (B, +)`` and the multiplicative group ``C = (B, .)``
share one index space; the identity map ``C -> K`` (a bijective 1-cocycle for
the lambda action) is therefore the identity on indices and never stored.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import config
from .errors import (
    AddNotGroup,
    BraceLawViolated,
    IdentityMismatch,
    InvalidBrace,
    InvalidGroup,
    MulNotGroup,
    NotAdditiveHom,
    NotAnIdeal,
    NotMultiplicativeHom,
    SearchBoundExceeded,
)
from .groups import (
    INDEX,
    FiniteGroup,
    GroupMap,
    SubgroupSet,
    as_set,
    automorphisms,
    coset_representatives,
    is_normal,
    is_subgroup,
    mask_of,
    validate_group,
)


class SkewBrace:
    """A certified skew left brace.  Use :func:`validate_brace` to build one."""

    def __init__(self, add: FiniteGroup, mul: FiniteGroup, name=None):
        assert add.order == mul.order
        self.add = add
        self.mul = mul
        self.order = add.order
        self.name = name
        self._lambda = None

    @property
    def neg(self) -> np.ndarray:
        return self.add.inv

    def plus(self, a, b):
        return self.add.mul(a, b)

    def times(self, a, b):
        return self.mul.mul(a, b)

    @property
    def lam(self) -> "LambdaMap":
        if self._lambda is None:
            self._lambda = lambda_map(self)
        return self._lambda

    def tables(self) -> tuple:
        return self.add.table, self.mul.table

    def same_tables(self, other: "SkewBrace") -> bool:
        return (self.order == other.order and np.array_equal(self.add.table, other.add.table)
                and np.array_equal(self.mul.table, other.mul.table))

    def is_trivial(self) -> bool:
        return np.array_equal(self.add.table, self.mul.table)

    def __repr__(self):
        name = f" {self.name}" if self.name else ""
        return f"<SkewBrace{name} order={self.order}>"


def _find_identity(t: np.ndarray):
    n = t.shape[0]
    idx = np.arange(n)
    for e in range(n):
        if np.array_equal(t[e], idx) and np.array_equal(t[:, e], idx):
            return e
    return None


def brace_law_violation(add: np.ndarray, mul: np.ndarray, neg: np.ndarray):
    """First ``(a, b, c)`` with ``a(b+c) != ab - a + ac``, or ``None``."""
    n = add.shape[0]
    idx = np.arange(n)
    chunk = max(1, 1_000_000 // (n * n))
    for start in range(0, n, chunk):
        a = idx[start:start + chunk, None, None]
        b, c = idx[None, :, None], idx[None, None, :]
        lhs = mul[a, add[b, c]]
        rhs = add[add[mul[a, b], neg[a]], mul[a, c]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            i, j, k = bad[0]
            return (int(start + i), int(j), int(k))
    return None


def validate_brace(add_table, mul_table, name=None) -> SkewBrace:
    """Certify a pair of Cayley tables as a skew left brace.

    ``add_table`` / ``mul_table`` may also be :class:`FiniteGroup` instances.
    Raises :class:`InvalidBrace` whose ``violations`` holds the failures
    (``AddNotGroup``, ``MulNotGroup``, ``IdentityMismatch``, ``BraceLawViolated``).
    """
    found = []
    groups = []
    for which, tab, err in (("additive", add_table, AddNotGroup), ("multiplicative", mul_table, MulNotGroup)):
        if isinstance(tab, FiniteGroup):
            groups.append(tab)
            continue
        t = np.asarray(tab)
        if t.ndim == 2 and t.shape[0] == t.shape[1] and t.size and np.issubdtype(t.dtype, np.integer) \
                and t.min() >= 0 and t.max() < t.shape[0]:
            e = _find_identity(t)
            if e is not None and e != 0:
                found.append(IdentityMismatch(f"{which} identity is {e}, expected 0", witness=e))
                groups.append(None)
                continue
        try:
            groups.append(validate_group(t))
        except InvalidGroup as exc:
            found.append(err(f"{which} table is not a group: {exc}", witness=exc.witness))
            groups.append(None)
    add, mul = groups
    if add is not None and mul is not None and add.order != mul.order:
        found.append(IdentityMismatch("tables have different sizes", witness=(add.order, mul.order)))
    if found:
        raise InvalidBrace(found)
    bad = brace_law_violation(add.table, mul.table, add.inv)
    if bad is not None:
        a, b, c = bad
        raise InvalidBrace([BraceLawViolated(f"a(b+c) != ab-a+ac at a={a}, b={b}, c={c}", witness=bad)])
    return SkewBrace(add, mul, name=name)


def trivial_brace(K: FiniteGroup, name=None) -> SkewBrace:
    """``a . b = a + b``."""
    return SkewBrace(K, K, name=name or (f"trivial({K.name})" if K.name else None))


def opposite_brace(K: FiniteGroup, name=None) -> SkewBrace:
    """``a . b = b + a``; lambda_a is conjugation ``b -> -a + b + a``."""
    t = K.table
    mul = FiniteGroup(K.order, table=t.T, labels=K.labels)
    return SkewBrace(K, mul, name=name or (f"opposite({K.name})" if K.name else None))


# lambda map ----------------------------------------------------------------------

class LambdaMap:
    """``perms[a]`` is ``lambda_a(b) = -a + ab`` as an index array."""

    def __init__(self, brace: SkewBrace, perms: np.ndarray):
        self.brace = brace
        self.perms = perms
        # distinct permutations in order of first occurrence; 0 is the identity
        _, first, inverse = np.unique(perms, axis=0, return_index=True, return_inverse=True)
        order = np.argsort(first, kind="stable")
        rank = np.empty_like(order)
        rank[order] = np.arange(len(order))
        self.image_perms = perms[np.sort(first)]
        self.image_index = rank[inverse.ravel()].astype(INDEX)
        self._image_group = None

    def __getitem__(self, a) -> np.ndarray:
        return self.perms[a]

    @property
    def image_group(self) -> FiniteGroup:
        """The permutation group ``lambda(C) <= Aut(K)``; element ``i`` is
        ``image_perms[i]`` and composition is ``(p q)(x) = p(q(x))``."""
        if self._image_group is None:
            P = self.image_perms
            lookup = {p.tobytes(): i for i, p in enumerate(P)}
            m = len(P)
            table = np.empty((m, m), dtype=INDEX)
            for i in range(m):
                for j in range(m):
                    table[i, j] = lookup[P[i][P[j]].tobytes()]
            self._image_group = FiniteGroup(m, table=table, labels=[tuple(p.tolist()) for p in P])
        return self._image_group

    def as_group_map(self) -> GroupMap:
        """``lambda`` as a certified homomorphism ``C -> image_group``."""
        return GroupMap(self.brace.mul, self.image_group, self.image_index).certify()

    def kernel_mask(self) -> np.ndarray:
        return self.image_index == 0


def lambda_map(B: SkewBrace) -> LambdaMap:
    add, mul = B.add.table, B.mul.table
    perms = add[B.neg[:, None], mul]  # perms[a, b] = -a + ab
    perms = np.ascontiguousarray(perms, dtype=INDEX)
    for a in range(B.order):
        assert GroupMap(B.add, B.add, perms[a]).is_homomorphism(), "lambda_a is not additive"
        assert len(np.unique(perms[a])) == B.order
    # lambda_{ab} = lambda_a o lambda_b
    for a in range(B.order):
        assert np.array_equal(perms[mul[a]], perms[a][perms]), "lambda is not a homomorphism"
    perms.setflags(write=False)
    return LambdaMap(B, perms)


def ker_lambda(B: SkewBrace) -> SubgroupSet:
    """``{a : lambda_a = id}``, a normal subgroup of the multiplicative group."""
    ker = SubgroupSet(B.mul, np.nonzero(B.lam.kernel_mask())[0])
    assert is_subgroup(B.mul, ker) and is_normal(B.mul, ker)
    return ker


# brace maps ------------------------------------------------------------------------

class BraceMap:
    """Index map between braces preserving both operations."""

    def __init__(self, source: SkewBrace, target: SkewBrace, images):
        self.source = source
        self.target = target
        arr = np.asarray(images, dtype=INDEX)
        arr.setflags(write=False)
        self.images = arr

    def __call__(self, a):
        return self.images[a]

    @property
    def additive(self) -> GroupMap:
        return GroupMap(self.source.add, self.target.add, self.images)

    @property
    def multiplicative(self) -> GroupMap:
        return GroupMap(self.source.mul, self.target.mul, self.images)

    @property
    def is_injective(self) -> bool:
        return len(np.unique(self.images)) == self.source.order

    @property
    def is_surjective(self) -> bool:
        return len(np.unique(self.images)) == self.target.order

    def image(self, S) -> np.ndarray:
        return np.unique(self.images[as_set(S)])

    def compose(self, other: "BraceMap") -> "BraceMap":
        return BraceMap(other.source, self.target, self.images[other.images])

    def __eq__(self, other):
        if not isinstance(other, BraceMap):
            return NotImplemented
        return self.source is other.source and self.target is other.target and np.array_equal(self.images, other.images)

    def __hash__(self):
        return hash(self.images.tobytes())

    def __repr__(self):
        return f"BraceMap({self.source.order} -> {self.target.order}, {self.images.tolist()[:16]})"


def _first_bad_pair(op1, op2, f):
    lhs = f[op1]
    rhs = op2[f[:, None], f[None, :]]
    bad = np.argwhere(lhs != rhs)
    return None if not bad.size else (int(bad[0][0]), int(bad[0][1]))


def is_brace_hom(images, B1: SkewBrace, B2: SkewBrace) -> BraceMap:
    """Certify ``images`` as a brace homomorphism ``B1 -> B2``.

    Raises ``NotAdditiveHom(a, b)`` or ``NotMultiplicativeHom(a, b)`` at the first
    violated pair.
    """
    f = np.asarray(images, dtype=INDEX)
    if f.shape != (B1.order,) or (f.size and (f.min() < 0 or f.max() >= B2.order)):
        raise NotAdditiveHom("map is not total on the source", witness=None)
    bad = _first_bad_pair(B1.add.table, B2.add.table, f)
    if bad is not None:
        raise NotAdditiveHom(f"f({bad[0]}+{bad[1]}) != f({bad[0]})+f({bad[1]})", witness=bad)
    bad = _first_bad_pair(B1.mul.table, B2.mul.table, f)
    if bad is not None:
        raise NotMultiplicativeHom(f"f({bad[0]}*{bad[1]}) != f({bad[0]})*f({bad[1]})", witness=bad)
    return BraceMap(B1, B2, f)


def identity_brace_map(B: SkewBrace) -> BraceMap:
    return BraceMap(B, B, np.arange(B.order))


def brace_automorphisms(B: SkewBrace) -> list:
    """Automorphisms of the additive group that also preserve the
    multiplication; each one is checked to fix ``ker lambda`` setwise."""
    if B.order > config.BOUNDS.automorphism:
        raise SearchBoundExceeded(f"brace_automorphisms: order {B.order} > {config.BOUNDS.automorphism}")
    mul = B.mul.table
    ker = ker_lambda(B).members
    out = []
    for f in automorphisms(B.add):
        img = f.images
        if np.array_equal(img[mul], mul[img[:, None], img[None, :]]):
            assert np.array_equal(np.unique(img[ker]), ker)
            out.append(BraceMap(B, B, img))
    return out


# substructures -------------------------------------------------------------------

class Substructure(enum.IntEnum):
    NotSubgroup = 0
    Subbrace = 1
    LeftIdeal = 2
    StrongLeftIdeal = 3
    Ideal = 4


class Flags(enum.IntFlag):
    NONE = 0
    ADD_SUBGROUP = 1
    MUL_SUBGROUP = 2
    LAMBDA_INVARIANT = 4
    ADD_NORMAL = 8
    MUL_NORMAL = 16


@dataclass(frozen=True)
class SubstructureLabel:
    label: Substructure
    flags: Flags

    def at_least(self, level: Substructure) -> bool:
        return self.label >= level


def substructure_flags(B: SkewBrace, L) -> Flags:
    arr = as_set(L)
    flags = Flags.NONE
    if arr.size == 0 or arr[0] != 0 or arr[-1] >= B.order:
        return flags
    m = mask_of(B.add, arr)
    if is_subgroup(B.add, arr):
        flags |= Flags.ADD_SUBGROUP
        if is_normal(B.add, arr):
            flags |= Flags.ADD_NORMAL
    if is_subgroup(B.mul, arr):
        flags |= Flags.MUL_SUBGROUP
        if is_normal(B.mul, arr):
            flags |= Flags.MUL_NORMAL
    if m[B.lam.perms[:, arr]].all():
        flags |= Flags.LAMBDA_INVARIANT
    return flags


def classify_substructure(B: SkewBrace, L) -> SubstructureLabel:
    """Finest label of ``L``: subbrace (subgroup of both operations), left ideal
    (additive subgroup invariant under every lambda_a), strong left ideal (also
    normal in ``(B,+)``) or ideal (also normal in ``(B,.)``)."""
    flags = substructure_flags(B, L)
    label = Substructure.NotSubgroup
    if Flags.ADD_SUBGROUP in flags and Flags.MUL_SUBGROUP in flags:
        label = Substructure.Subbrace
    if Flags.ADD_SUBGROUP in flags and Flags.LAMBDA_INVARIANT in flags:
        assert Flags.MUL_SUBGROUP in flags
        label = Substructure.LeftIdeal
        if Flags.ADD_NORMAL in flags:
            label = Substructure.StrongLeftIdeal
            if Flags.MUL_NORMAL in flags:
                label = Substructure.Ideal
    return SubstructureLabel(label, flags)


def subbraces(B: SkewBrace) -> list:
    """Every subbrace, as sorted index arrays in canonical order."""
    from .groups import all_subgroups
    return [S.members for S in all_subgroups(B.add) if is_subgroup(B.mul, S.members)]


def brace_quotient(B: SkewBrace, I) -> tuple:
    """``B/I`` on least additive coset representatives, with the projection."""
    arr = as_set(I)
    if classify_substructure(B, arr).label != Substructure.Ideal:
        raise NotAnIdeal(f"{arr.tolist()} is not an ideal", witness=arr.tolist())
    reps = coset_representatives(B.add, arr)
    uniq = np.unique(reps)
    where = np.full(B.order, -1, dtype=INDEX)
    where[uniq] = np.arange(len(uniq), dtype=INDEX)
    proj = where[reps]
    add_q = proj[B.add.table[uniq[:, None], uniq[None, :]]]
    mul_q = proj[B.mul.table[uniq[:, None], uniq[None, :]]]
    Q = validate_brace(add_q, mul_q)
    return Q, is_brace_hom(proj, B, Q)


def restrict_brace(B: SkewBrace, L) -> tuple:
    """The subbrace on ``L`` re-indexed to ``0..|L|-1`` (sorted order), and the
    index dictionary ``new -> old``."""
    arr = as_set(L)
    where = np.full(B.order, -1, dtype=INDEX)
    where[arr] = np.arange(len(arr), dtype=INDEX)
    add = where[B.add.table[arr[:, None], arr[None, :]]]
    mul = where[B.mul.table[arr[:, None], arr[None, :]]]
    if (add < 0).any() or (mul < 0).any():
        from .errors import NotASubbrace
        raise NotASubbrace(f"{arr.tolist()} is not closed", witness=arr.tolist())
    return validate_brace(add, mul), arr


# enumeration ------------------------------------------------------------------------

def enumerate_braces(K: FiniteGroup) -> list:
    """Every brace with additive group ``K``, one per regular subgroup of
    ``Hol(K) = [K]Aut(K)``.

    A regular subgroup is ``{(a, phi_a)}`` with exactly one element over each
    point; it is found by backtracking on ``phi_a`` for the least point not yet
    covered and closing.  The multiplication is ``a . b = a + phi_a(b)``.
    """
    if K.order > config.BOUNDS.enumeration:
        raise SearchBoundExceeded(f"enumerate_braces: order {K.order} > {config.BOUNDS.enumeration}")
    n = K.order
    auts = [f.images.tolist() for f in automorphisms(K)]
    ident = list(range(n))
    lookup = {tuple(p): i for i, p in enumerate(auts)}
    id_aut = lookup[tuple(ident)]
    comp = [[lookup[tuple(p[q[x]] for x in range(n))] for q in auts] for p in auts]
    add = K.rows
    found = []

    def close(assign, gens):
        # assign[a] = aut index of the element over point a, or -1
        assign = list(assign)
        queue = [a for a in range(n) if assign[a] >= 0]
        for a in queue:
            phi = assign[a]
            p = auts[phi]
            for g in gens:
                c = add[a][p[g]]
                psi = comp[phi][assign[g]]
                cur = assign[c]
                if cur == -1:
                    assign[c] = psi
                    queue.append(c)
                elif cur != psi:
                    return None
        return assign

    def rec(assign, gens):
        try:
            a = assign.index(-1)
        except ValueError:
            found.append(list(assign))
            return
        for phi in range(len(auts)):
            trial = list(assign)
            trial[a] = phi
            closed = close(trial, gens + [a])
            if closed is not None:
                rec(closed, gens + [a])

    start = [-1] * n
    start[0] = id_aut
    rec(start, [])
    tables = set()
    out = []
    for assign in found:
        mul = np.array([[add[a][auts[assign[a]][b]] for b in range(n)] for a in range(n)], dtype=INDEX)
        key = mul.tobytes()
        if key in tables:
            continue
        tables.add(key)
        out.append(mul)
    out.sort(key=lambda t: t.ravel().tolist())
    braces = []
    for mul in out:
        B = validate_brace(K, mul)
        braces.append(B)
    return braces
