"""Quotients of trifactorised groups by normal subgroups.

A normal subgroup ``T`` of ``G`` gives a quotient tuple
``(G/T, KT/T, HT/T, ET/T)`` exactly when ``T = (T n K)(T n E) = (T n H)(T n E)``,
equivalently ``T = ((T n K)H n (T n K)E)(T n E)``.  The derivation of the
quotient is ``hT -> sigma(h)T``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .braces import Substructure, SkewBrace, brace_quotient, classify_substructure, validate_brace
from .errors import KernelsNotNested, NotAdmissible, NotAnIdeal, NotContainedInE, NotNormal
from .groups import (
    INDEX,
    GroupMap,
    SubgroupSet,
    as_set,
    centralizer,
    intersection,
    is_normal,
    is_subgroup,
    product_set,
    quotient_group,
)
from .trifact import (
    Provenance,
    TrifactMorphism,
    TrifactorisedGroup,
    associated_brace,
    generalised_trifact,
    is_trifact_morphism,
    large_trifact,
    recover_eta,
    small_trifact,
    trifact_violations,
    tuple_epimorphism,
    validate_trifact,
)


@dataclass
class QuotientReport:
    Tn: np.ndarray
    cond1: bool
    cond2: bool
    cond3: bool
    quotient: TrifactorisedGroup = None
    projection: GroupMap = None

    @property
    def admissible(self) -> bool:
        return self.cond1

    def as_dict(self) -> dict:
        return {
            "T": self.Tn.tolist(),
            "quotient_tuple_axioms": self.cond1,
            "product_equalities": self.cond2,
            "reconstruction_identity": self.cond3,
            "admissible": self.admissible,
            "quotient_order": None if self.quotient is None else self.quotient.order,
            "projection": None if self.projection is None else self.projection.images.tolist(),
        }


def _normal_members(G, Tn) -> np.ndarray:
    n = as_set(Tn.members if isinstance(Tn, SubgroupSet) else Tn)
    if not (is_subgroup(G, n) and is_normal(G, n)):
        raise NotNormal("T is not a normal subgroup of G", witness=n.tolist())
    return n


def _same(a, b) -> bool:
    return np.array_equal(a, b)


def quotient_admissible(T: TrifactorisedGroup, Tn) -> QuotientReport:
    """All three equivalent conditions, each computed from scratch; the
    quotient tuple is attached when they hold."""
    G = T.G
    n = _normal_members(G, Tn)
    Q, proj = quotient_group(G, n)
    K_bar, H_bar, E_bar = (np.unique(proj.images[S.members]) for S in (T.K, T.H, T.E))
    cond1 = not trifact_violations(Q, K_bar, H_bar, E_bar)
    nK, nH, nE = intersection(n, T.K), intersection(n, T.H), intersection(n, T.E)
    cond2 = _same(product_set(G, nK, nE), n) and _same(product_set(G, nH, nE), n)
    core = intersection(product_set(G, nK, T.H), product_set(G, nK, T.E))
    cond3 = _same(product_set(G, core, nE), n)
    assert cond1 == cond2 == cond3, f"quotient conditions disagree for T={n.tolist()}: {cond1} {cond2} {cond3}"
    report = QuotientReport(n, cond1, cond2, cond3)
    if cond1:
        report.quotient = validate_trifact(Q, K_bar, H_bar, E_bar)
        report.projection = proj
    return report


@dataclass
class QuotientResult:
    tuple: TrifactorisedGroup
    morphism: TrifactMorphism
    report: QuotientReport


def quotient_trifact(T: TrifactorisedGroup, Tn) -> QuotientResult:
    """The quotient tuple and the projection, certified as a morphism of tuples
    (which includes ``sigma_bar(hT) = sigma(h)T``) whose kernel is ``Tn``."""
    report = quotient_admissible(T, Tn)
    if not report.admissible:
        raise NotAdmissible("T does not give a quotient tuple", witness=report.Tn.tolist())
    Tq, proj = report.quotient, report.projection
    h = T.H.members
    assert np.array_equal(Tq.sigma(proj.images[h]), proj.images[T.sigma(h)])
    m = is_trifact_morphism(proj, T, Tq)
    assert m.is_epimorphism
    ker = m.kernel().members
    assert np.array_equal(ker, report.Tn)
    # the kernel of a tuple morphism splits along K, E and along H, E
    kE = intersection(ker, T.E)
    assert np.array_equal(product_set(T.G, intersection(ker, T.K), kE), ker)
    assert np.array_equal(product_set(T.G, intersection(ker, T.H), kE), ker)
    return QuotientResult(Tq, m, report)


def _brace_of(T: TrifactorisedGroup) -> SkewBrace:
    return T.provenance.brace if T.provenance else associated_brace(T)


def relabel_brace(B: SkewBrace, phi) -> SkewBrace:
    """Pull ``B`` back along a bijection ``phi: i -> B-index``."""
    phi = np.asarray(phi, dtype=INDEX)
    inv = np.empty_like(phi)
    inv[phi] = np.arange(len(phi), dtype=INDEX)
    add = inv[B.add.table[phi[:, None], phi[None, :]]]
    mul = inv[B.mul.table[phi[:, None], phi[None, :]]]
    return validate_brace(add, mul)


def ideal_quotient_tuple(T: TrifactorisedGroup, I, brace: SkewBrace = None) -> QuotientResult:
    """Quotient by ``LH n LE`` for the ideal ``L`` with local indices ``I``.

    The quotient's associated brace, pulled back along the natural bijection
    ``b + I -> k_b T``, has exactly the tables of ``brace_quotient(B, I)``; the
    result's provenance carries that brace.  For a large tuple the quotient is
    large again (``K_bar n H_bar = 1``).
    """
    B = brace if brace is not None else _brace_of(T)
    I = as_set(I)
    if classify_substructure(B, I).label != Substructure.Ideal:
        raise NotAnIdeal(f"{I.tolist()} is not an ideal", witness=I.tolist())
    G = T.G
    L = T.K.members[I]
    Tn = intersection(product_set(G, L, T.H), product_set(G, L, T.E))
    res = quotient_trifact(T, Tn)
    Tq = res.tuple
    Bq, bproj = brace_quotient(B, I)
    image_local = Tq.local_index(res.morphism.map.images[T.K.members])
    phi = np.full(Bq.order, -1, dtype=INDEX)
    phi[bproj.images] = image_local
    assert (phi >= 0).all() and len(np.unique(phi)) == Bq.order
    assert np.array_equal(phi[bproj.images], image_local), "natural map is not well defined"
    pulled = relabel_brace(associated_brace(Tq), phi)
    assert pulled.same_tables(Bq), "quotient tuple is not associated with B/I"
    eta = recover_eta(T, B)
    if eta.kernel.order == 1:
        assert len(intersection(Tq.K, Tq.H)) == 1, "quotient of a large tuple is not large"
    Tq.provenance = Provenance(associated_brace(Tq), None)
    Tq.provenance = Provenance(Tq.provenance.brace, recover_eta(Tq).kernel)
    res.brace_quotient = Bq
    res.relabel = phi
    return res


@dataclass
class SmallCheck:
    holds: bool
    centraliser: np.ndarray
    quotient: TrifactorisedGroup

    def __bool__(self):
        return self.holds


def is_small(T: TrifactorisedGroup) -> bool:
    """``Cent_E(K) = 1``."""
    return len(centralizer(T.G, T.E, T.K)) == 1


def small_not_preserved_check(T: TrifactorisedGroup, Tn) -> SmallCheck:
    """Whether the quotient by ``Tn`` still has ``Cent_E_bar(K_bar) = 1``."""
    report = quotient_admissible(T, Tn)
    if not report.admissible:
        raise NotAdmissible("T does not give a quotient tuple", witness=report.Tn.tolist())
    Tq = report.quotient
    cent = centralizer(Tq.G, Tq.E, Tq.K)
    return SmallCheck(len(cent) == 1, cent, Tq)


def quotient_by_E_normal(T: TrifactorisedGroup, Tn, brace: SkewBrace = None) -> QuotientResult:
    """Quotient by a normal subgroup of ``G`` inside ``E``: same brace, and
    ``eta_bar = pi o eta`` so the new kernel is ``eta^-1(Tn)``."""
    G = T.G
    n = as_set(Tn.members if isinstance(Tn, SubgroupSet) else Tn)
    if not T.E.mask[n].all():
        bad = int(n[~T.E.mask[n]][0])
        raise NotContainedInE(f"{bad} is not in E", witness=bad)
    n = _normal_members(G, n)
    B = brace if brace is not None else _brace_of(T)
    res = quotient_trifact(T, n)
    Tq = res.tuple
    phi = Tq.local_index(res.morphism.map.images[T.K.members])
    pulled = relabel_brace(associated_brace(Tq), phi)
    assert pulled.same_tables(B), "quotient by a subgroup of E changed the brace"
    eta = recover_eta(T, B)
    in_n = np.isin(eta.images, n)
    kernel = SubgroupSet(B.mul, np.nonzero(in_n)[0])
    eta_q = recover_eta(Tq, associated_brace(Tq))
    assert np.array_equal(np.sort(phi[kernel.members]), eta_q.kernel.members)
    res.relabel = phi
    res.kernel = kernel
    Tq.provenance = Provenance(pulled, kernel) if np.array_equal(phi, np.arange(len(phi))) else Tq.provenance
    return res


@dataclass
class ChainLink:
    morphism: TrifactMorphism
    kernel: np.ndarray
    kernel_in_E: bool


def _link(T1: TrifactorisedGroup, T2: TrifactorisedGroup) -> ChainLink:
    m = tuple_epimorphism(T1, T2)
    assert m.is_epimorphism, "chain map is not onto"
    ker = m.kernel().members
    in_E = bool(T1.E.mask[ker].all())
    assert in_E, "kernel of an epimorphism of tuples with the same brace is not inside E"
    return ChainLink(m, ker, in_E)


def quotient_chain(B: SkewBrace, N1, N2) -> ChainLink:
    """The epimorphism ``k eta1(c) -> k eta2(c)`` between the tuples for
    ``N1 <= N2``; its kernel is ``eta1(N2)``, a subgroup of ``E1``."""
    n1, n2 = as_set(N1), as_set(N2)
    if not np.isin(n1, n2).all():
        bad = int(n1[~np.isin(n1, n2)][0])
        raise KernelsNotNested(f"{bad} is in N1 but not in N2", witness=bad)
    T1 = generalised_trifact(B, n1)
    T2 = generalised_trifact(B, n2)
    link = _link(T1, T2)
    eta1 = recover_eta(T1, B)
    assert np.array_equal(np.unique(eta1.images[n2]), link.kernel)
    return link


def sql_chain(B: SkewBrace, N) -> tuple:
    """Epimorphisms ``L(B) -> T_N -> S(B)`` for ``N`` in ``Omega``."""
    TL = large_trifact(B)
    TN = generalised_trifact(B, N)
    TS = small_trifact(B)
    return _link(TL, TN), _link(TN, TS)
