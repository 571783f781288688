"""Trifactorised groups ``(G, K, H, E)`` and their link with skew braces.

A trifactorised group has ``K`` normal in ``G``, ``G = KE = KH = HE`` and
``K n E = H n E = 1``.  Each ``g`` factors uniquely as ``k_g e_g``; the map
``sigma: H -> K, h -> k_h`` is a bijective derivation and transports the
multiplication of ``H`` to a brace structure on ``K``.

Braces built here embed their elements as ``b -> (b, 1)`` in ``[K]E``, so local
brace index ``b`` is the ``b``-th member of ``K`` in sorted order.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import config
from .braces import BraceMap, SkewBrace, is_brace_hom, ker_lambda, validate_brace
from .errors import (
    ContainmentFails,
    FactorisationFails,
    IntersectionNontrivial,
    InvalidTrifact,
    KernelNotInKerLambda,
    KNotNormal,
    NotASubgroup,
    NotNormal,
    ObstructionWitness,
)
from .groups import (
    INDEX,
    FiniteGroup,
    GroupMap,
    SubgroupSet,
    as_set,
    centralizer,
    induced_group,
    intersection,
    is_normal,
    is_subgroup,
    mask_of,
    product_set,
    quotient_group,
    semidirect_product,
)


@dataclass(frozen=True)
class Provenance:
    """The brace a tuple was built from and the kernel ``N`` of ``eta``
    (a subgroup of the multiplicative group)."""

    brace: SkewBrace
    kernel: SubgroupSet


class TrifactorisedGroup:
    """A certified tuple; build with :func:`validate_trifact` or one of the
    constructions below."""

    def __init__(self, G: FiniteGroup, K: SubgroupSet, H: SubgroupSet, E: SubgroupSet, provenance=None):
        self.G, self.K, self.H, self.E = G, K, H, E
        self.provenance = provenance
        self._decomp = None
        self._k_pos = None

    @property
    def order(self) -> int:
        return self.G.order

    def decompose(self, g) -> tuple:
        """``(k_g, e_g)`` with ``g = k_g e_g`` (vectorised)."""
        g = np.asarray(g, dtype=INDEX)
        if self._decomp is not None:
            return self._decomp[0][g], self._decomp[1][g]
        return _decompose(self, g)

    def decomposition(self) -> tuple:
        """``(k_of, e_of)`` for every element of ``G``."""
        if self._decomp is None:
            self._decomp = _decompose(self, self.G.elements)
        return self._decomp

    def local_index(self, k) -> np.ndarray:
        """Position of ``K`` members in sorted order (the associated brace's index)."""
        if self._k_pos is None:
            pos = np.full(self.G.order, -1, dtype=INDEX)
            pos[self.K.members] = np.arange(self.K.order, dtype=INDEX)
            self._k_pos = pos
        return self._k_pos[k]

    def sigma(self, h) -> np.ndarray:
        """``sigma(h) = k_h`` for ``h`` in ``H``."""
        return self.decompose(h)[0]

    def sigma_inverse(self, k) -> np.ndarray:
        """``sigma^-1(k)`` for ``k`` in ``K``."""
        table = np.empty(self.K.order, dtype=INDEX)
        table[self.local_index(self.sigma(self.H.members))] = self.H.members
        return table[self.local_index(k)]

    def __repr__(self):
        return (f"<TrifactorisedGroup |G|={self.G.order} |K|={self.K.order} "
                f"|H|={self.H.order} |E|={self.E.order}>")


def _decompose(T: TrifactorisedGroup, g: np.ndarray) -> tuple:
    G = T.G
    if G.is_semidirect and T.K == G.base_subgroup() and T.E == G.actor_subgroup():
        n_e = G.actor.order
        k, e = np.divmod(g, n_e)
        return k * n_e, e
    E = T.E.members
    M = G.mul(g[..., None], G.inv[E])
    hit = mask_of(G, T.K)[M]
    pick = np.argmax(hit, axis=-1)
    k = np.take_along_axis(M, pick[..., None], axis=-1)[..., 0]
    return k, E[pick]


def _as_subgroup(G: FiniteGroup, S, which: str) -> SubgroupSet:
    if isinstance(S, SubgroupSet) and S.parent is G:
        members = S.members
    else:
        members = as_set(S)
    if not is_subgroup(G, members):
        raise NotASubgroup(f"{which} is not a subgroup", witness=which)
    return S if isinstance(S, SubgroupSet) and S.parent is G else SubgroupSet(G, members)


def trifact_violations(G: FiniteGroup, K, H, E) -> list:
    """Every failed condition among: ``K`` normal, the three factorisations and
    the two trivial intersections."""
    found = []
    if not is_normal(G, K):
        found.append(KNotNormal("K is not normal in G", witness="K"))
    for name, A, B in (("KE", K, E), ("KH", K, H), ("HE", H, E)):
        if len(product_set(G, A, B)) != G.order:
            found.append(FactorisationFails(f"G != {name}", witness=name))
    for name, A, B in (("K∩E", K, E), ("H∩E", H, E)):
        if len(intersection(A, B)) != 1:
            found.append(IntersectionNontrivial(f"{name} != 1", witness=name))
    return found


def validate_trifact(G: FiniteGroup, K, H, E, provenance=None) -> TrifactorisedGroup:
    """Certify ``(G, K, H, E)``; raises :class:`InvalidTrifact` naming every
    failed condition (first one first)."""
    K = _as_subgroup(G, K, "K")
    H = _as_subgroup(G, H, "H")
    E = _as_subgroup(G, E, "E")
    found = trifact_violations(G, K, H, E)
    if found:
        raise InvalidTrifact(found)
    T = TrifactorisedGroup(G, K, H, E, provenance)
    if G.order <= config.BOUNDS.decomposition_cache:
        T.decomposition()
    return T


# constructions from a brace -------------------------------------------------------

def _tuple_from_action(B: SkewBrace, E: FiniteGroup, action: np.ndarray, eta: np.ndarray,
                       N: SubgroupSet) -> TrifactorisedGroup:
    G = semidirect_product(B.add, E, action)
    n_e = E.order
    b = np.arange(B.order, dtype=INDEX)
    H = SubgroupSet(G, b * n_e + eta)
    return validate_trifact(G, G.base_subgroup(), H, G.actor_subgroup(), Provenance(B, N))


def generalised_trifact(B: SkewBrace, N) -> TrifactorisedGroup:
    """The tuple built from ``eta: C -> C/N``; needs ``N`` normal in ``C`` and
    contained in ``ker lambda``.  ``G = [K](C/N)``, ``H = {(c, cN)}``."""
    N = as_set(N)
    if not (is_subgroup(B.mul, N) and is_normal(B.mul, N)):
        raise NotNormal("N is not a normal subgroup of the multiplicative group", witness=N.tolist())
    ker = B.lam.kernel_mask()
    if not ker[N].all():
        bad = int(N[~ker[N]][0])
        raise KernelNotInKerLambda(f"{bad} is in N but lambda_{bad} != id", witness=bad)
    Q, eta = quotient_group(B.mul, N)
    reps = np.full(Q.order, -1, dtype=INDEX)
    reps[eta.images[::-1]] = np.arange(B.order, dtype=INDEX)[::-1]  # least preimage
    action = B.lam.perms[reps]
    return _tuple_from_action(B, Q, action, eta.images, SubgroupSet(B.mul, N))


def large_trifact(B: SkewBrace) -> TrifactorisedGroup:
    """``L(B) = ([K]C, K, {(c, c)}, C)``."""
    b = np.arange(B.order, dtype=INDEX)
    return _tuple_from_action(B, B.mul, B.lam.perms, b, B.mul.trivial())


def small_trifact(B: SkewBrace) -> TrifactorisedGroup:
    """``S(B) = ([K]lambda(C), K, {(a, lambda_a)}, lambda(C))`` inside ``Hol(K)``."""
    lam = B.lam
    E = lam.image_group
    T = _tuple_from_action(B, E, lam.image_perms, lam.image_index, ker_lambda(B))
    assert len(centralizer(T.G, T.E, T.K)) == 1
    return T


# the associated brace ---------------------------------------------------------------

def associated_brace(T: TrifactorisedGroup) -> SkewBrace:
    """Brace on ``K`` (local indices): addition is ``K``'s operation and
    ``k1 . k2 = k1 (e k2 e^-1)`` where ``e`` is the ``E``-part of ``sigma^-1(k1)``."""
    G = T.G
    k = T.K.members
    add = T.local_index(G.mul(k[:, None], k[None, :]))
    e = T.decompose(T.sigma_inverse(k))[1]
    mul = T.local_index(G.mul(k[:, None], G.conj(e[:, None], k[None, :])))
    labels = [G.label(x) for x in k]
    B = validate_brace(add, mul)
    B.add.labels = labels
    B.mul.labels = labels
    return B


@dataclass
class DerivationMap:
    """``sigma: H -> K`` as parallel arrays of global indices."""

    trifact: TrifactorisedGroup
    h: np.ndarray
    k: np.ndarray

    def __call__(self, h):
        pos = np.searchsorted(self.h, h)
        return self.k[pos]


def cocycle_violation(T: TrifactorisedGroup):
    """First ``(h1, h2)`` with ``sigma(h1 h2) != sigma(h1) e_h1 sigma(h2) e_h1^-1``."""
    G = T.G
    h = T.H.members
    k_h, e_h = T.decompose(h)
    lhs = T.sigma(G.mul(h[:, None], h[None, :]))
    rhs = G.mul(k_h[:, None], G.conj(e_h[:, None], k_h[None, :]))
    bad = np.argwhere(lhs != rhs)
    return None if not bad.size else (int(h[bad[0][0]]), int(h[bad[0][1]]))


def derivation(T: TrifactorisedGroup) -> DerivationMap:
    """``sigma`` with bijectivity and the cocycle identity certified."""
    h = T.H.members
    k = T.sigma(h)
    assert np.array_equal(np.sort(k), T.K.members), "sigma is not a bijection onto K"
    assert cocycle_violation(T) is None, "sigma is not a derivation"
    return DerivationMap(T, h, k)


@dataclass
class EtaDatum:
    """``eta: (K, .) -> E`` recovered from a tuple.

    ``images[b]`` is the global index in ``G`` of ``eta(b)`` for local brace
    index ``b``; ``group_map`` is the same map into ``E`` re-indexed as a group.
    """

    brace: SkewBrace
    kernel: SubgroupSet
    E: FiniteGroup
    E_members: np.ndarray
    images: np.ndarray
    group_map: GroupMap = field(repr=False)


def recover_eta(T: TrifactorisedGroup, brace: SkewBrace = None) -> EtaDatum:
    """``eta = pi_E o sigma^-1`` with ``ker eta = K n H``."""
    B = brace if brace is not None else (T.provenance.brace if T.provenance else associated_brace(T))
    k = T.K.members
    images = T.decompose(T.sigma_inverse(k))[1]
    E_group, E_members = induced_group(T.G, T.E)
    pos = np.full(T.G.order, -1, dtype=INDEX)
    pos[E_members] = np.arange(len(E_members), dtype=INDEX)
    gmap = GroupMap(B.mul, E_group, pos[images]).certify()
    kernel = SubgroupSet(B.mul, np.nonzero(images == 0)[0])
    assert np.array_equal(T.local_index(intersection(T.K, T.H)), kernel.members)
    assert B.lam.kernel_mask()[kernel.members].all()
    return EtaDatum(B, kernel, E_group, E_members, images, gmap)


# morphisms ---------------------------------------------------------------------------

@dataclass
class TrifactMorphism:
    """A certified morphism ``T1 -> T2`` with injectivity/surjectivity flags of
    the restrictions."""

    map: GroupMap
    source: TrifactorisedGroup
    target: TrifactorisedGroup
    flags: dict

    @property
    def is_monomorphism(self) -> bool:
        return self.flags["injective"]

    @property
    def is_epimorphism(self) -> bool:
        return self.flags["surjective"]

    @property
    def is_isomorphism(self) -> bool:
        return self.flags["injective"] and self.flags["surjective"]

    def kernel(self) -> SubgroupSet:
        return self.map.kernel()


def _restriction_flags(f: GroupMap, S1, S2) -> tuple:
    img = f.images[as_set(S1)]
    uniq = np.unique(img)
    return len(uniq) == len(as_set(S1)), len(uniq) == len(as_set(S2))


def is_trifact_morphism(f, T1: TrifactorisedGroup, T2: TrifactorisedGroup) -> TrifactMorphism:
    """Certify a group homomorphism ``G1 -> G2`` mapping ``K1, H1, E1`` into
    ``K2, H2, E2``; also checks ``sigma2 o f = f o sigma1`` on ``H1``."""
    if not isinstance(f, GroupMap):
        f = GroupMap(T1.G, T2.G, f)
    f.certify()
    for name, S1, S2 in (("K", T1.K, T2.K), ("H", T1.H, T2.H), ("E", T1.E, T2.E)):
        img = f.images[S1.members]
        if not S2.mask[img].all():
            bad = int(S1.members[~S2.mask[img]][0])
            raise ContainmentFails(f"f({name}1) not contained in {name}2 (element {bad})", witness=name)
    h = T1.H.members
    assert np.array_equal(T2.sigma(f.images[h]), f.images[T1.sigma(h)]), "f does not commute with sigma"
    flags = {}
    for name, S1, S2 in (("K", T1.K, T2.K), ("H", T1.H, T2.H), ("E", T1.E, T2.E)):
        flags[name + "_injective"], flags[name + "_surjective"] = _restriction_flags(f, S1, S2)
    flags["injective"] = f.is_injective
    flags["surjective"] = f.is_surjective
    # restrictions to K and H behave alike; K and E control f
    assert flags["K_injective"] == flags["H_injective"]
    assert flags["K_surjective"] == flags["H_surjective"]
    if flags["K_surjective"]:
        assert flags["surjective"]
    if flags["K_injective"] and flags["E_injective"]:
        assert flags["injective"]
    if flags["injective"]:
        assert flags["K_injective"] and flags["H_injective"] and flags["E_injective"]
    if flags["surjective"]:
        assert flags["K_surjective"] and flags["H_surjective"] and flags["E_surjective"]
    return TrifactMorphism(f, T1, T2, flags)


def identity_morphism(T: TrifactorisedGroup) -> TrifactMorphism:
    return is_trifact_morphism(GroupMap(T.G, T.G, T.G.elements), T, T)


def induced_brace_hom(m: TrifactMorphism, B1: SkewBrace = None, B2: SkewBrace = None) -> BraceMap:
    """``f|_K1`` as a brace homomorphism between the associated braces."""
    T1, T2 = m.source, m.target
    B1 = B1 or associated_brace(T1)
    B2 = B2 or associated_brace(T2)
    images = T2.local_index(m.map.images[T1.K.members])
    return is_brace_hom(images, B1, B2)


def lift_brace_hom(f: BraceMap, T1: TrifactorisedGroup, T2: TrifactorisedGroup) -> TrifactMorphism:
    """Extend a brace homomorphism between the associated braces to
    ``k eta1(c) -> f(k) eta2(f(c))``.

    Possible exactly when ``f(ker eta1) <= ker eta2``; otherwise raises
    :class:`ObstructionWitness` carrying an element ``c`` of ``ker eta1`` with
    ``f(c)`` outside ``ker eta2``.
    """
    eta1 = recover_eta(T1, f.source)
    eta2 = recover_eta(T2, f.target)
    ker2 = eta2.kernel.mask
    img = f.images[eta1.kernel.members]
    if not ker2[img].all():
        c = int(eta1.kernel.members[~ker2[img]][0])
        raise ObstructionWitness(f"f({c}) = {int(f.images[c])} is not in ker eta2", witness=c)
    G1 = T1.G
    # a preimage under eta1 for each element of E1
    pre = np.full(G1.order, -1, dtype=INDEX)
    b = np.arange(f.source.order, dtype=INDEX)
    pre[eta1.images[::-1]] = b[::-1]
    k_of, e_of = T1.decompose(G1.elements)
    c = pre[e_of]
    k_local = T1.local_index(k_of)
    images = T2.G.mul(T2.K.members[f.images[k_local]], eta2.images[f.images[c]])
    return is_trifact_morphism(GroupMap(G1, T2.G, images), T1, T2)


def tuple_epimorphism(T1: TrifactorisedGroup, T2: TrifactorisedGroup) -> TrifactMorphism:
    """For two tuples with the same associated brace and ``ker eta1 <= ker eta2``:
    the morphism ``k eta1(c) -> k eta2(c)`` (identity on the brace)."""
    B1, B2 = associated_brace(T1), associated_brace(T2)
    assert B1.same_tables(B2), "tuples are associated with different braces"
    ident = BraceMap(B1, B2, np.arange(B1.order))
    return lift_brace_hom(ident, T1, T2)
