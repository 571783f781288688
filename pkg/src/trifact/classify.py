"""Isomorphism classes of the tuples associated with one brace.

``Omega`` is the set of normal subgroups of the multiplicative group inside
``ker lambda``.  ``Aut(B)`` acts on it by images, and two kernels give
isomorphic tuples exactly when they lie in the same orbit.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .braces import BraceMap, SkewBrace, brace_automorphisms, ker_lambda
from .groups import SubgroupSet, centralizer, constrained_isomorphism, intersection, normal_subgroups
from .trifact import (
    TrifactorisedGroup,
    associated_brace,
    generalised_trifact,
    lift_brace_hom,
    recover_eta,
)


@dataclass
class OmegaSet:
    brace: SkewBrace
    members: list

    def __len__(self):
        return len(self.members)

    def index(self, N) -> int:
        key = N.key if isinstance(N, SubgroupSet) else tuple(np.asarray(N).tolist())
        for i, M in enumerate(self.members):
            if M.key == key:
                return i
        raise KeyError(key)


def omega(B: SkewBrace) -> OmegaSet:
    """Normal subgroups of ``(B, .)`` contained in ``ker lambda``, canonical order."""
    ker = ker_lambda(B).mask
    members = [N for N in normal_subgroups(B.mul) if ker[N.members].all()]
    return OmegaSet(B, members)


@dataclass
class OrbitPartition:
    omega: OmegaSet
    orbits: list
    representatives: list
    # transporter[i] is a brace automorphism taking the representative of
    # member i's orbit onto member i
    transporter: list = field(repr=False)
    automorphisms: list = field(repr=False)

    def orbit_of(self, i: int) -> int:
        for j, orb in enumerate(self.orbits):
            if i in orb:
                return j
        raise KeyError(i)


def aut_orbits(B: SkewBrace, auts=None) -> OrbitPartition:
    """Orbits of ``Aut(B)`` on ``Omega``; the representative of an orbit is
    its least member in canonical order."""
    om = omega(B)
    auts = brace_automorphisms(B) if auts is None else auts
    keys = {N.key: i for i, N in enumerate(om.members)}
    transporter = [None] * len(om)
    orbits = []
    for i, N in enumerate(om.members):
        if transporter[i] is not None:
            continue
        transporter[i] = BraceMap(B, B, np.arange(B.order))
        orbit = [i]
        for f in auts:
            j = keys[tuple(np.unique(f.images[N.members]).tolist())]
            if transporter[j] is None:
                transporter[j] = f
                orbit.append(j)
        orbits.append(sorted(orbit))
    return OrbitPartition(om, orbits, [orb[0] for orb in orbits], transporter, auts)


@dataclass
class IsoClass:
    kernel: SubgroupSet
    tuple: TrifactorisedGroup
    orbit: list
    isomorphisms: list  # certified tuple isomorphisms rep -> member, orbit order


@dataclass
class Classification:
    brace: SkewBrace
    partition: OrbitPartition
    classes: list
    certified: bool = False
    # (i, j) -> search-tree node count proving the reps of classes i, j are not isomorphic
    non_isomorphism: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        rows = []
        for c in self.classes:
            rows.append({
                "kernel": c.kernel.members.tolist(),
                "kernel_order": c.kernel.order,
                "group_order": c.tuple.order,
                "kind": identify_kind(c.tuple).name,
                "orbit": [self.partition.omega.members[i].members.tolist() for i in c.orbit],
            })
        return {
            "omega": [N.members.tolist() for N in self.partition.omega.members],
            "aut_order": len(self.partition.automorphisms),
            "orbits": len(self.classes),
            "classes": rows,
            "certified": self.certified,
            "non_isomorphism_nodes": {f"{i},{j}": n for (i, j), n in sorted(self.non_isomorphism.items())},
        }


def tuple_isomorphism(T1: TrifactorisedGroup, T2: TrifactorisedGroup):
    """Exhaustive search for a group isomorphism carrying ``K, H, E`` onto
    ``K, H, E``; returns ``(map or None, nodes)``."""
    pairs = [(T1.K.members, T2.K.members), (T1.H.members, T2.H.members), (T1.E.members, T2.E.members)]
    return constrained_isomorphism(T1.G, T2.G, pairs)


def iso_classes(B: SkewBrace, certify: bool = False) -> Classification:
    """One tuple per orbit of ``Aut(B)`` on ``Omega``.

    Orbit members are always shown isomorphic to their representative by
    lifting the transporting automorphism.  With ``certify`` every pair of
    representatives is also shown non-isomorphic by exhausting the search.
    """
    part = aut_orbits(B)
    om = part.omega
    classes = []
    for orbit in part.orbits:
        rep = om.members[orbit[0]]
        T = generalised_trifact(B, rep.members)
        isos = []
        for i in orbit:
            Ti = T if i == orbit[0] else generalised_trifact(B, om.members[i].members)
            m = lift_brace_hom(part.transporter[i], T, Ti)
            assert m.is_isomorphism, "lifted automorphism is not an isomorphism"
            isos.append(m)
        classes.append(IsoClass(rep, T, orbit, isos))
    result = Classification(B, part, classes, certify)
    if certify:
        for i in range(len(classes)):
            for j in range(i + 1, len(classes)):
                found = tuple_isomorphism(classes[i].tuple, classes[j].tuple)
                assert found.map is None, f"tuples for orbits {i} and {j} are isomorphic"
                result.non_isomorphism[(i, j)] = found.nodes
    return result


class Kind(enum.Flag):
    INTERMEDIATE = 0
    LARGE = enum.auto()
    SMALL = enum.auto()

    @property
    def name_text(self) -> str:
        if self == Kind.INTERMEDIATE:
            return "Intermediate"
        return "+".join(k.name.capitalize() for k in (Kind.LARGE, Kind.SMALL) if k in self)


@dataclass
class KindCertificate:
    kind: Kind
    kernel: np.ndarray
    ker_lambda: np.ndarray
    centraliser_order: int

    @property
    def name(self) -> str:
        return self.kind.name_text


def identify_kind(T: TrifactorisedGroup, brace: SkewBrace = None) -> KindCertificate:
    """Large when ``K n H = 1`` (``ker eta = 1``); small when ``ker eta = ker lambda``.

    A brace with ``ker lambda = 1`` has one tuple which is both.
    """
    B = brace if brace is not None else (T.provenance.brace if T.provenance else associated_brace(T))
    eta = recover_eta(T, B)
    kl = ker_lambda(B).members
    kind = Kind.INTERMEDIATE
    if len(intersection(T.K, T.H)) == 1:
        kind |= Kind.LARGE
    if np.array_equal(eta.kernel.members, kl):
        kind |= Kind.SMALL
    cent = len(centralizer(T.G, T.E, T.K))
    if Kind.SMALL in kind:
        assert cent == 1, "small tuple with a nontrivial centraliser of K in E"
    return KindCertificate(kind, eta.kernel.members, kl, cent)

