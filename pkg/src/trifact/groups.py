"""Exact arithmetic in finite groups on the index set ``0..n-1``.

A group is either a dense Cayley table or a semidirect product ``[K]E`` whose
elements ``(k, e)`` are encoded as ``k * |E| + e`` and multiplied on the fly by
``(k1, e1)(k2, e2) = (k1 * alpha_e1(k2), e1 e2)``.  Element ``0`` is always the
identity.  Multiplication is vectorised: ``G.mul(a, b)`` broadcasts over numpy
arrays, so subset arithmetic never loops in Python.

Subsets are passed around as sorted ``int64`` arrays; :class:`SubgroupSet` wraps
the ones known to be subgroups.
"""
from __future__ import annotations

from collections import namedtuple

import numpy as np

from . import config
from .errors import (
    ActionNotAutomorphism,
    ActionNotHomomorphism,
    DifferentParent,
    IndexOutOfRange,
    InvalidGroup,
    NoIdentity,
    NoInverse,
    NonAssociative,
    NotASubgroup,
    NotClosed,
    NotHomomorphism,
    NotNormal,
    SearchBoundExceeded,
)

INDEX = np.int64


def as_set(members) -> np.ndarray:
    """Canonical form of a subset: sorted, duplicate free ``int64`` array."""
    if isinstance(members, SubgroupSet):
        return members.members
    arr = np.asarray(list(members) if not isinstance(members, np.ndarray) else members, dtype=INDEX)
    return np.unique(arr.ravel())


class FiniteGroup:
    """A certified finite group on ``0..order-1`` with identity ``0``.

    Build instances with :func:`validate_group`, :func:`semidirect_product` or
    the helpers in :mod:`trifact.named`; the constructor trusts its input.
    """

    def __init__(self, order, *, table=None, semidirect=None, labels=None, name=None):
        self.order = int(order)
        self.name = name
        self.labels = labels
        self._table = None if table is None else np.ascontiguousarray(table, dtype=INDEX)
        self._semidirect = semidirect
        if self._table is not None:
            self._table.setflags(write=False)
        self._inv = None
        self._rows = None
        self._orders = None
        self._gens = None

    # realisation ---------------------------------------------------------
    @property
    def is_semidirect(self) -> bool:
        return self._semidirect is not None

    @property
    def base(self) -> "FiniteGroup":
        return self._semidirect[0]

    @property
    def actor(self) -> "FiniteGroup":
        return self._semidirect[1]

    @property
    def action(self) -> np.ndarray:
        """``action[e, k]`` is the image of base element ``k`` under actor ``e``."""
        return self._semidirect[2]

    def pair(self, g):
        n_e = self.actor.order
        return divmod(int(g), n_e)

    def index(self, k, e) -> int:
        return int(k) * self.actor.order + int(e)

    def mul(self, a, b):
        if self._table is not None:
            return self._table[a, b]
        base, actor, action = self._semidirect
        n_e = actor.order
        k1, e1 = np.divmod(a, n_e)
        k2, e2 = np.divmod(b, n_e)
        return base.mul(k1, action[e1, k2]) * n_e + actor.mul(e1, e2)

    @property
    def has_table(self) -> bool:
        return self._table is not None or self.order <= config.BOUNDS.dense_table

    @property
    def table(self) -> np.ndarray:
        if self._table is None:
            if self.order > config.BOUNDS.dense_table:
                raise SearchBoundExceeded(
                    f"order {self.order} exceeds the dense table bound {config.BOUNDS.dense_table}"
                )
            idx = np.arange(self.order, dtype=INDEX)
            table = self.mul(idx[:, None], idx[None, :])
            table.setflags(write=False)
            self._table = table
        return self._table

    @property
    def rows(self) -> list:
        """The table as nested lists, for scalar loops."""
        if self._rows is None:
            self._rows = self.table.tolist()
        return self._rows

    @property
    def inv(self) -> np.ndarray:
        if self._inv is None:
            if self._table is not None:
                r, c = np.nonzero(self._table == 0)
                inv = np.empty(self.order, dtype=INDEX)
                inv[r] = c
            else:
                base, actor, action = self._semidirect
                n_e = actor.order
                k, e = np.divmod(np.arange(self.order, dtype=INDEX), n_e)
                e_inv = actor.inv[e]
                inv = action[e_inv, base.inv[k]] * n_e + e_inv
            inv.setflags(write=False)
            self._inv = inv
        return self._inv

    @property
    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=INDEX)

    @property
    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            idx = self.elements
            orders = np.zeros(self.order, dtype=INDEX)
            power = idx.copy()
            step = 1
            while True:
                done = (power == 0) & (orders == 0)
                orders[done] = step
                if orders.all():
                    break
                power = self.mul(power, idx)
                step += 1
            orders.setflags(write=False)
            self._orders = orders
        return self._orders

    @property
    def generators(self) -> tuple:
        if self._gens is None:
            self._gens = tuple(_choose_generators(self))
        return self._gens

    def conj(self, g, x):
        """``g x g^-1`` (vectorised)."""
        return self.mul(self.mul(g, x), self.inv[g])

    def power(self, g, m: int) -> int:
        acc = 0
        for _ in range(m % int(self.element_orders[g])):
            acc = int(self.mul(acc, g))
        return acc

    def label(self, g):
        g = int(g)
        if self.labels is not None:
            return self.labels[g]
        if self.is_semidirect:
            k, e = self.pair(g)
            return (self.base.label(k), self.actor.label(e))
        return g

    def is_abelian(self) -> bool:
        idx = self.elements
        gens = np.asarray(self.generators, dtype=INDEX)
        return bool(np.all(self.mul(idx[:, None], gens[None, :]) == self.mul(gens[None, :], idx[:, None])))

    def whole(self) -> "SubgroupSet":
        return SubgroupSet(self, self.elements)

    def trivial(self) -> "SubgroupSet":
        return SubgroupSet(self, [0])

    def subgroup(self, members) -> "SubgroupSet":
        """Wrap ``members`` after checking it is a subgroup."""
        arr = _checked(self, members)
        if not is_subgroup(self, arr):
            raise NotASubgroup(f"{arr.tolist()} is not a subgroup", witness=arr.tolist())
        return SubgroupSet(self, arr)

    def base_subgroup(self) -> "SubgroupSet":
        n_e = self.actor.order
        return SubgroupSet(self, np.arange(self.base.order, dtype=INDEX) * n_e)

    def actor_subgroup(self) -> "SubgroupSet":
        return SubgroupSet(self, np.arange(self.actor.order, dtype=INDEX))

    def __len__(self):
        return self.order

    def __repr__(self):
        kind = "semidirect" if self.is_semidirect else "table"
        name = f" {self.name}" if self.name else ""
        return f"<FiniteGroup{name} order={self.order} {kind}>"


class SubgroupSet:
    """Sorted member list of a subgroup (or, for intermediate results, a subset)
    of ``parent``."""

    __slots__ = ("parent", "members", "_mask", "_key")

    def __init__(self, parent: FiniteGroup, members):
        self.parent = parent
        arr = as_set(members)
        arr.setflags(write=False)
        self.members = arr
        self._mask = None
        self._key = None

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def mask(self) -> np.ndarray:
        if self._mask is None:
            self._mask = np.zeros(self.parent.order, dtype=bool)
            self._mask[self.members] = True
        return self._mask

    @property
    def key(self) -> tuple:
        if self._key is None:
            self._key = tuple(self.members.tolist())
        return self._key

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members.tolist())

    def __contains__(self, g):
        return 0 <= g < self.parent.order and bool(self.mask[g])

    def __eq__(self, other):
        if not isinstance(other, SubgroupSet):
            return NotImplemented
        return self.parent is other.parent and self.key == other.key

    def __hash__(self):
        return hash((id(self.parent), self.key))

    def __lt__(self, other):
        return self.key < other.key

    def __repr__(self):
        body = self.key if len(self.key) <= 12 else self.key[:12] + ("...",)
        return f"SubgroupSet(order={self.order}, members={list(body)})"


def _checked(G: FiniteGroup, members) -> np.ndarray:
    arr = as_set(members)
    if arr.size and (arr[0] < 0 or arr[-1] >= G.order):
        bad = arr[(arr < 0) | (arr >= G.order)][0]
        raise IndexOutOfRange(f"element {int(bad)} outside 0..{G.order - 1}", witness=int(bad))
    return arr


def _same_parent(*sets):
    parents = {id(s.parent) for s in sets if isinstance(s, SubgroupSet)}
    if len(parents) > 1:
        raise DifferentParent("subsets belong to different groups")


def mask_of(G: FiniteGroup, members) -> np.ndarray:
    if isinstance(members, SubgroupSet) and members.parent is G:
        return members.mask
    m = np.zeros(G.order, dtype=bool)
    m[as_set(members)] = True
    return m


# validation ----------------------------------------------------------------

Violation = namedtuple("Violation", "kind witness")


def group_violations(table, *, bounds=None) -> list:
    """Every violated group axiom of ``table``, one witness each."""
    bounds = bounds or config.BOUNDS
    t = np.asarray(table)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        return [NotClosed(f"table must be a non-empty square matrix, got shape {t.shape}", witness=None)]
    n = t.shape[0]
    if not np.issubdtype(t.dtype, np.integer):
        return [NotClosed("table entries must be integers", witness=None)]
    t = t.astype(INDEX)
    out_of_range = (t < 0) | (t >= n)
    if out_of_range.any():
        a, b = map(int, np.argwhere(out_of_range)[0])
        return [NotClosed(f"{a}*{b} = {int(t[a, b])} is not an element", witness=(a, b))]
    found = []
    idx = np.arange(n, dtype=INDEX)
    bad_id = np.nonzero((t[0] != idx) | (t[:, 0] != idx))[0]
    if bad_id.size:
        x = int(bad_id[0])
        found.append(NoIdentity(f"0 is not a two-sided identity (fails at {x})", witness=x))
    has_right = (t == 0).any(axis=1)
    for a in np.nonzero(~has_right)[0][:1]:
        found.append(NoInverse(f"element {int(a)} has no inverse", witness=int(a)))
    if has_right.all():
        right = np.argmax(t == 0, axis=1)
        bad = np.nonzero(t[right, idx] != 0)[0]
        if bad.size:
            a = int(bad[0])
            found.append(NoInverse(f"element {a} has no two-sided inverse", witness=a))
    triple = _associativity_witness(t, bounds)
    if triple is not None:
        a, b, c = triple
        found.append(NonAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})", witness=triple))
    return found


def _associativity_witness(t: np.ndarray, bounds):
    n = t.shape[0]
    idx = np.arange(n, dtype=INDEX)
    if n <= bounds.associativity_full:
        chunk = max(1, 2_000_000 // (n * n))
        for start in range(0, n, chunk):
            a = idx[start:start + chunk, None, None]
            lhs = t[t[a, idx[None, :, None]], idx[None, None, :]]
            rhs = t[a, t[idx[:, None], idx[None, :]][None, :, :]]
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                i, b, c = bad[0]
                return (int(start + i), int(b), int(c))
        return None
    # Light's test: the elements z with (xy)z = x(yz) for all x, y form a
    # submagma, so checking a generating set is a proof.
    gens = _greedy_generators_table(t)
    for g in gens:
        lhs = t[t[idx[:, None], idx[None, :]], g]
        rhs = t[idx[:, None], t[idx, g][None, :]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            a, b = bad[0]
            return (int(a), int(b), int(g))
    rng = np.random.default_rng(0)
    a, b, c = rng.integers(0, n, size=(3, bounds.sample_triples))
    bad = np.nonzero(t[t[a, b], c] != t[a, t[b, c]])[0]
    if bad.size:
        i = bad[0]
        return (int(a[i]), int(b[i]), int(c[i]))
    return None


def validate_group(table, *, labels=None, name=None) -> FiniteGroup:
    """Certify a Cayley table with identity ``0``.

    Raises :class:`InvalidGroup` listing every violated axiom.
    """
    found = group_violations(table)
    if found:
        raise InvalidGroup(found)
    return FiniteGroup(len(table), table=np.asarray(table, dtype=INDEX), labels=labels, name=name)


def group_from_permutations(perms, *, name=None) -> FiniteGroup:
    """The group of the given permutations (tuples of images), closed under
    composition ``(p q)(x) = p(q(x))``; element 0 is the identity and the rest
    are sorted."""
    perms = [tuple(p) for p in perms]
    degree = len(perms[0]) if perms else 0
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    gens = [p for p in perms if p != ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(p[g[i]] for i in range(degree))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    elems = [ident] + sorted(seen - {ident})
    pos = {p: i for i, p in enumerate(elems)}
    arr = np.array(elems, dtype=INDEX).reshape(len(elems), degree)
    comp = arr[:, arr.T].transpose(0, 2, 1) if degree else np.zeros((1, 1, 0), dtype=INDEX)
    # comp[i, j] = elems[i] o elems[j]
    table = np.empty((len(elems), len(elems)), dtype=INDEX)
    for i in range(len(elems)):
        for j in range(len(elems)):
            table[i, j] = pos[tuple(comp[i, j].tolist())]
    return FiniteGroup(len(elems), table=table, labels=elems, name=name)


# generation -----------------------------------------------------------------

def _closure(G: FiniteGroup, start, gens) -> np.ndarray:
    """Smallest subgroup containing ``start`` (a subgroup or ``[0]``) and ``gens``."""
    gens = as_set(gens)
    gens = gens[gens != 0]
    mask = np.zeros(G.order, dtype=bool)
    mask[as_set(start)] = True
    mask[0] = True
    if gens.size == 0:
        return np.nonzero(mask)[0].astype(INDEX)
    frontier = np.nonzero(mask)[0].astype(INDEX)
    while frontier.size:
        prod = np.unique(G.mul(frontier[:, None], gens[None, :]))
        prod = prod[~mask[prod]]
        mask[prod] = True
        frontier = prod
    return np.nonzero(mask)[0].astype(INDEX)


def _closure_rows(rows, start_mask, gens):
    mask = list(start_mask)
    members = [i for i, m in enumerate(mask) if m]
    queue = list(members)
    for x in queue:
        row = rows[x]
        for g in gens:
            y = row[g]
            if not mask[y]:
                mask[y] = True
                queue.append(y)
    return mask


def _greedy_generators_table(t: np.ndarray) -> list:
    rows = t.tolist()
    return _greedy(rows, len(rows))


def _greedy(rows, n) -> list:
    mask = [False] * n
    mask[0] = True
    size = 1
    gens = []
    while size < n:
        best, best_size, best_mask = None, -1, None
        tried = set()
        for x in range(n):
            if mask[x]:
                continue
            new_mask = _closure_rows(rows, mask, gens + [x])
            key = tuple(new_mask)
            if key in tried:
                continue
            tried.add(key)
            s = sum(new_mask)
            if s > best_size:
                best, best_size, best_mask = x, s, new_mask
                if s == n:
                    break
        gens.append(best)
        mask, size = best_mask, best_size
    return gens


def _choose_generators(G: FiniteGroup) -> list:
    if G.order <= config.BOUNDS.associativity_full or (not G.is_semidirect and G.has_table):
        return _greedy(G.rows, G.order)
    # large semidirect products: images of the factors' generators
    gens = [G.index(k, 0) for k in G.base.generators] + [G.index(0, e) for e in G.actor.generators]
    out, have = [], np.array([0], dtype=INDEX)
    for g in gens:
        if not np.isin(g, have):
            out.append(g)
            have = _closure(G, have, out)
    return out


def generated_subgroup(G: FiniteGroup, gens) -> SubgroupSet:
    """Least subgroup containing ``gens``."""
    arr = _checked(G, gens)
    return SubgroupSet(G, _closure(G, [0], arr))


def subgroup_generators(G: FiniteGroup, S) -> list:
    """A small generating set of the subgroup ``S`` (greedy by new closure size)."""
    members = as_set(S)
    have = np.array([0], dtype=INDEX)
    gens = []
    orders = G.element_orders[members]
    for g in members[np.argsort(-orders, kind="stable")]:
        if len(have) == len(members):
            break
        if not np.isin(g, have):
            gens.append(int(g))
            have = _closure(G, have, gens)
    return gens


# subset calculus -------------------------------------------------------------

def product_set(G: FiniteGroup, A, B) -> np.ndarray:
    """``AB = {a b}`` as a sorted array."""
    _same_parent(A, B)
    a, b = as_set(A), as_set(B)
    return np.unique(G.mul(a[:, None], b[None, :]))


def intersection(A, B) -> np.ndarray:
    _same_parent(A, B)
    return np.intersect1d(as_set(A), as_set(B), assume_unique=True)


def inverse_set(G: FiniteGroup, A) -> np.ndarray:
    return np.unique(G.inv[as_set(A)])


def is_subgroup(G: FiniteGroup, S) -> bool:
    s = as_set(S)
    if s.size == 0 or s[0] != 0:
        return False
    m = mask_of(G, s)
    gens = subgroup_generators(G, s) if s.size > 64 else s
    gens = as_set(gens)
    return bool(m[G.mul(s[:, None], gens[None, :])].all())


def is_normal(G: FiniteGroup, S) -> bool:
    """``g s g^-1`` in ``S`` for every ``g``; checked on generators of both."""
    _same_parent(S)
    s = as_set(S)
    m = mask_of(G, s)
    g = np.asarray(G.generators, dtype=INDEX)
    sg = as_set(subgroup_generators(G, s))
    return bool(m[G.conj(g[:, None], sg[None, :])].all())


def normalizes(G: FiniteGroup, X, S) -> bool:
    """Every element of ``X`` normalises ``S``."""
    s = as_set(S)
    m = mask_of(G, s)
    x = as_set(X)
    return bool(m[G.conj(x[:, None], s[None, :])].all())


def normalizer(G: FiniteGroup, S) -> SubgroupSet:
    s = as_set(S)
    m = mask_of(G, s)
    idx = G.elements
    ok = m[G.conj(idx[:, None], s[None, :])].all(axis=1)
    return SubgroupSet(G, idx[ok])


def centralizer(G: FiniteGroup, A, B) -> np.ndarray:
    """Elements of ``A`` commuting with every element of ``B``."""
    a, b = as_set(A), as_set(B)
    if b.size > 64:
        b = as_set(subgroup_generators(G, b))
    ok = (G.mul(a[:, None], b[None, :]) == G.mul(b[None, :], a[:, None])).all(axis=1)
    return a[ok]


def normal_closure(G: FiniteGroup, S) -> SubgroupSet:
    s = as_set(S)
    g = np.asarray(G.generators, dtype=INDEX)
    current = _closure(G, [0], s)
    while True:
        conj = np.unique(G.conj(g[:, None], current[None, :]))
        m = mask_of(G, current)
        extra = conj[~m[conj]]
        if extra.size == 0:
            return SubgroupSet(G, current)
        current = _closure(G, current, np.concatenate([as_set(subgroup_generators(G, current)), extra]))


SubgroupCalculus = namedtuple("SubgroupCalculus", "product_set intersection is_subgroup normal_closure")


def subgroup_calculus(G: FiniteGroup, A, B) -> SubgroupCalculus:
    """Product set, intersection, whether ``AB`` is a subgroup, and the normal
    closure of ``AB``."""
    _same_parent(A, B)
    ab = product_set(G, A, B)
    return SubgroupCalculus(ab, intersection(A, B), is_subgroup(G, ab), normal_closure(G, ab))


def conjugacy_classes(G: FiniteGroup) -> list:
    idx = G.elements
    conj = G.conj(idx[:, None], idx[None, :])  # conj[g, x]
    seen = np.zeros(G.order, dtype=bool)
    classes = []
    for x in range(G.order):
        if not seen[x]:
            cls = np.unique(conj[:, x])
            seen[cls] = True
            classes.append(cls)
    return classes


def normal_subgroups(G: FiniteGroup) -> list:
    """Every normal subgroup, in canonical (lexicographic member) order.

    Each normal subgroup is the join of the normal closures of the conjugacy
    classes it contains, so joins of class closures enumerate them all.
    """
    if G.order > config.BOUNDS.normal_subgroups:
        raise SearchBoundExceeded(f"normal_subgroups: order {G.order} > {config.BOUNDS.normal_subgroups}")
    closures = {}
    for cls in conjugacy_classes(G):
        if cls[0] == 0:
            continue
        ncl = normal_closure(G, cls)
        closures[ncl.key] = ncl.members
    found = {(0,): np.array([0], dtype=INDEX)}
    frontier = [found[(0,)]]
    minimal = list(closures.values())
    while frontier:
        nxt = []
        for N in frontier:
            mN = mask_of(G, N)
            for M in minimal:
                if mN[M].all():
                    continue
                J = product_set(G, N, M)
                key = tuple(J.tolist())
                if key not in found:
                    found[key] = J
                    nxt.append(J)
        frontier = nxt
    return [SubgroupSet(G, found[k]) for k in sorted(found)]


def all_subgroups(G: FiniteGroup) -> list:
    """Every subgroup, as joins of cyclic subgroups; canonical order."""
    if G.order > config.BOUNDS.all_subgroups:
        raise SearchBoundExceeded(f"all_subgroups: order {G.order} > {config.BOUNDS.all_subgroups}")
    cyclic = {}
    for x in range(G.order):
        c = _closure(G, [0], [x])
        cyclic.setdefault(tuple(c.tolist()), (x, c))
    found = {(0,): ([], np.array([0], dtype=INDEX))}
    frontier = [(0,)]
    while frontier:
        nxt = []
        for key in frontier:
            gens, S = found[key]
            mS = mask_of(G, S)
            for x, c in cyclic.values():
                if mS[x]:
                    continue
                J = _closure(G, S, gens + [x]) if gens else c
                jkey = tuple(J.tolist())
                if jkey not in found:
                    found[jkey] = (gens + [x], J)
                    nxt.append(jkey)
        frontier = nxt
    return [SubgroupSet(G, found[k][1]) for k in sorted(found)]


def dedekind_holds(G: FiniteGroup, A, B, C) -> bool:
    """``A(B n C) == AB n C``; an identity whenever ``C`` is a subgroup
    containing ``A``."""
    lhs = product_set(G, A, intersection(B, C))
    rhs = intersection(product_set(G, A, B), C)
    return np.array_equal(lhs, rhs)


def induced_group(G: FiniteGroup, S) -> tuple:
    """The subgroup ``S`` as a group on ``0..|S|-1`` (sorted member order),
    with the member array mapping new indices to old ones."""
    members = as_set(S)
    where = np.full(G.order, -1, dtype=INDEX)
    where[members] = np.arange(len(members), dtype=INDEX)
    table = where[G.mul(members[:, None], members[None, :])]
    if (table < 0).any():
        raise NotASubgroup("set is not closed", witness=members.tolist())
    labels = [G.label(g) for g in members]
    return FiniteGroup(len(members), table=table, labels=labels), members


# quotients -------------------------------------------------------------------

def coset_representatives(G: FiniteGroup, N) -> np.ndarray:
    """``reps[g]`` is the least element of ``gN``."""
    n = as_set(N)
    return G.mul(G.elements[:, None], n[None, :]).min(axis=1)


def quotient_group(G: FiniteGroup, N) -> tuple:
    """``G/N`` on least coset representatives, with the certified projection."""
    n = as_set(N)
    if not is_subgroup(G, n) or not is_normal(G, n):
        raise NotNormal(f"subgroup {n.tolist()[:12]} is not normal", witness=n.tolist())
    reps = coset_representatives(G, n)
    uniq = np.unique(reps)
    where = np.full(G.order, -1, dtype=INDEX)
    where[uniq] = np.arange(len(uniq), dtype=INDEX)
    table = where[reps[G.mul(uniq[:, None], uniq[None, :])]]
    Q = FiniteGroup(len(uniq), table=table, labels=None, name=None)
    proj = GroupMap(G, Q, where[reps])
    proj.certify()
    return Q, proj


# maps ------------------------------------------------------------------------

class GroupMap:
    """Element-wise map ``source -> target``."""

    def __init__(self, source: FiniteGroup, target: FiniteGroup, images):
        self.source = source
        self.target = target
        arr = np.asarray(images, dtype=INDEX)
        if arr.shape != (source.order,):
            raise IndexOutOfRange(f"expected {source.order} images, got shape {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() >= target.order):
            raise IndexOutOfRange("image outside target group")
        arr.setflags(write=False)
        self.images = arr

    def __call__(self, g):
        return self.images[g]

    def homomorphism_violation(self):
        """First pair ``(x, g)`` with ``f(xg) != f(x)f(g)``, g ranging over
        generators of the source, or ``None``."""
        if self.images[0] != 0:
            return (0, 0)
        x = self.source.elements
        for g in self.source.generators:
            lhs = self.images[self.source.mul(x, g)]
            rhs = self.target.mul(self.images, self.images[g])
            bad = np.nonzero(lhs != rhs)[0]
            if bad.size:
                return (int(bad[0]), int(g))
        return None

    def is_homomorphism(self) -> bool:
        return self.homomorphism_violation() is None

    def certify(self) -> "GroupMap":
        bad = self.homomorphism_violation()
        if bad is not None:
            raise NotHomomorphism(f"f({bad[0]}*{bad[1]}) != f({bad[0]})f({bad[1]})", witness=bad)
        return self

    def image(self, S=None) -> np.ndarray:
        src = self.images if S is None else self.images[as_set(S)]
        return np.unique(src)

    def kernel(self) -> SubgroupSet:
        return SubgroupSet(self.source, np.nonzero(self.images == 0)[0])

    def preimage(self, S) -> np.ndarray:
        return np.nonzero(mask_of(self.target, S)[self.images])[0].astype(INDEX)

    @property
    def is_injective(self) -> bool:
        return len(np.unique(self.images)) == self.source.order

    @property
    def is_surjective(self) -> bool:
        return len(np.unique(self.images)) == self.target.order

    @property
    def is_bijective(self) -> bool:
        return self.is_injective and self.is_surjective

    def compose(self, other: "GroupMap") -> "GroupMap":
        """``self o other``."""
        return GroupMap(other.source, self.target, self.images[other.images])

    def inverse(self) -> "GroupMap":
        inv = np.empty(self.target.order, dtype=INDEX)
        inv[self.images] = np.arange(self.source.order, dtype=INDEX)
        return GroupMap(self.target, self.source, inv)

    def __eq__(self, other):
        if not isinstance(other, GroupMap):
            return NotImplemented
        return (self.source is other.source and self.target is other.target
                and np.array_equal(self.images, other.images))

    def __hash__(self):
        return hash(self.images.tobytes())

    def __repr__(self):
        return f"GroupMap({self.source.order} -> {self.target.order})"


def identity_map(G: FiniteGroup) -> GroupMap:
    return GroupMap(G, G, G.elements)


# products --------------------------------------------------------------------

def semidirect_product(K: FiniteGroup, E: FiniteGroup, action, *, name=None) -> FiniteGroup:
    """``[K]E`` where ``action[e]`` is the automorphism of ``K`` induced by ``e``.

    ``action`` is an ``|E| x |K|`` array (or a :class:`GroupMap`-like object with
    ``images`` indexing rows of such an array).
    """
    act = np.asarray(action, dtype=INDEX)
    if act.shape != (E.order, K.order):
        raise ActionNotHomomorphism(f"action must have shape {(E.order, K.order)}, got {act.shape}")
    for e in range(E.order):
        if not _is_automorphism(K, act[e]):
            raise ActionNotAutomorphism(f"action of {e} is not an automorphism of the base", witness=e)
    if not np.array_equal(act[0], K.elements):
        raise ActionNotHomomorphism("identity does not act trivially", witness=(0, 0))
    e = E.elements
    for g in E.generators:
        lhs = act[E.mul(e, g)]                 # alpha_{e g}
        rhs = act[e][:, act[g]]               # alpha_e o alpha_g
        bad = np.nonzero((lhs != rhs).any(axis=1))[0]
        if bad.size:
            raise ActionNotHomomorphism(f"alpha({int(bad[0])}*{g}) != alpha({int(bad[0])}) o alpha({g})",
                                        witness=(int(bad[0]), int(g)))
    act.setflags(write=False)
    return FiniteGroup(K.order * E.order, semidirect=(K, E, act), name=name)


def _is_automorphism(K: FiniteGroup, perm) -> bool:
    perm = np.asarray(perm, dtype=INDEX)
    if perm.shape != (K.order,) or len(np.unique(perm)) != K.order or perm.min() < 0 or perm.max() >= K.order:
        return False
    return GroupMap(K, K, perm).is_homomorphism()


def direct_product(A: FiniteGroup, B: FiniteGroup, *, name=None) -> FiniteGroup:
    trivial = np.tile(A.elements, (B.order, 1))
    G = semidirect_product(A, B, trivial, name=name)
    if G.order <= config.BOUNDS.dense_table:
        return FiniteGroup(G.order, table=G.table, name=name,
                           labels=[(A.label(a), B.label(b)) for a in range(A.order) for b in range(B.order)])
    return G


# automorphisms and isomorphisms -------------------------------------------------

IsomorphismResult = namedtuple("IsomorphismResult", "map nodes")


def _signature(G: FiniteGroup, subsets) -> np.ndarray:
    sig = G.element_orders.astype(INDEX) << len(subsets)
    for i, S in enumerate(subsets):
        sig = sig | (mask_of(G, S).astype(INDEX) << i)
    return sig


def _extend(rows1, rows2, gens, imgs, n1):
    """Map ``<gens>`` homomorphically with ``gens[i] -> imgs[i]``.

    Returns ``(domain, f)`` or ``None`` if the assignment is inconsistent or
    not injective.
    """
    f = [-1] * n1
    f[0] = 0
    queue = [0]
    for x in queue:
        rx, fx = rows1[x], rows2[f[x]]
        for g, h in zip(gens, imgs):
            y = rx[g]
            fy = fx[h]
            cur = f[y]
            if cur == -1:
                if fy == 0:
                    return None
                f[y] = fy
                queue.append(y)
            elif cur != fy:
                return None
    return queue, f


def _iso_search(G1: FiniteGroup, G2: FiniteGroup, sig1, sig2, *, first_only: bool):
    rows1, rows2 = G1.rows, G2.rows
    gens = list(G1.generators)
    n1 = G1.order
    sig1 = sig1.tolist()
    sig2 = np.asarray(sig2)
    by_sig = {}
    for y, s in enumerate(sig2.tolist()):
        by_sig.setdefault(s, []).append(y)
    sig2l = sig2.tolist()
    found = []
    nodes = 0

    def rec(depth, imgs, image_mask):
        nonlocal nodes
        nodes += 1
        if depth == len(gens):
            found.append(list(imgs_full[0]))
            return first_only
        for y in by_sig.get(sig1[gens[depth]], ()):
            if image_mask is not None and image_mask[y]:
                continue
            trial = imgs + [y]
            ext = _extend(rows1, rows2, gens[:depth + 1], trial, n1)
            if ext is None:
                continue
            dom, f = ext
            if any(sig1[x] != sig2l[f[x]] for x in dom):
                continue
            if len(set(f[x] for x in dom)) != len(dom):
                continue
            mask = [False] * G2.order
            for x in dom:
                mask[f[x]] = True
            imgs_full[0] = f
            if rec(depth + 1, trial, mask):
                return True
        return False

    imgs_full = [None]
    if G1.order == 1:
        return [[0]], 1
    rec(0, [], None)
    return found, nodes


def automorphisms(G: FiniteGroup) -> list:
    """All automorphisms of ``G`` (deterministic order)."""
    if G.order > config.BOUNDS.automorphism:
        raise SearchBoundExceeded(f"automorphisms: order {G.order} > {config.BOUNDS.automorphism}")
    sig = _signature(G, [])
    found, _ = _iso_search(G, G, sig, sig, first_only=False)
    return [GroupMap(G, G, f) for f in found]


def constrained_isomorphism(G1: FiniteGroup, G2: FiniteGroup, pairs=()) -> IsomorphismResult:
    """An isomorphism ``f`` with ``f(S1) = S2`` for every pair, or ``map=None``
    after exhausting the search tree (``nodes`` counts visited nodes)."""
    bound = config.BOUNDS.isomorphism
    if max(G1.order, G2.order) > bound:
        raise SearchBoundExceeded(f"constrained_isomorphism: order > {bound}")
    pairs = [(as_set(a), as_set(b)) for a, b in pairs]
    if G1.order != G2.order or any(len(a) != len(b) for a, b in pairs):
        return IsomorphismResult(None, 0)
    sig1 = _signature(G1, [a for a, _ in pairs])
    sig2 = _signature(G2, [b for _, b in pairs])
    if not np.array_equal(np.sort(sig1), np.sort(sig2)):
        return IsomorphismResult(None, 1)
    found, nodes = _iso_search(G1, G2, sig1, sig2, first_only=True)
    if not found:
        return IsomorphismResult(None, nodes)
    f = GroupMap(G1, G2, found[0]).certify()
    assert f.is_bijective
    return IsomorphismResult(f, nodes)


def is_isomorphism_preserving(f: GroupMap, pairs) -> bool:
    if not f.is_bijective or not f.is_homomorphism():
        return False
    return all(np.array_equal(f.image(a), as_set(b)) for a, b in pairs)


__all__ = [
    "FiniteGroup", "SubgroupSet", "GroupMap", "Violation", "IsomorphismResult",
    "as_set", "mask_of", "validate_group", "group_violations", "group_from_permutations",
    "generated_subgroup", "subgroup_generators", "product_set", "intersection", "inverse_set",
    "is_subgroup", "is_normal", "normalizes", "normalizer", "centralizer", "normal_closure",
    "subgroup_calculus", "conjugacy_classes", "normal_subgroups", "all_subgroups",
    "coset_representatives", "quotient_group", "dedekind_holds", "induced_group", "identity_map", "semidirect_product",
    "direct_product", "automorphisms", "constrained_isomorphism", "is_isomorphism_preserving",
]

