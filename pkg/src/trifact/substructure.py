"""Substructures of the associated brace seen inside a trifactorised group.

Images and preimages under ``sigma`` are set products: ``sigma^-1(L) = LE n H``,
``sigma(S) = SE n K`` and ``pi_E(sigma^-1(L)) = L^-1 H n E``.  A subset ``L`` of
``K`` is a subbrace, left ideal, strong left ideal or ideal exactly when certain
products built from ``L``, ``H`` and ``E`` are (normal) subgroups of ``G``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .braces import Substructure, classify_substructure, restrict_brace, subbraces
from .errors import NotASubbrace, NotASubgroup, NotSubsetOfH, NotSubsetOfK, SearchBoundExceeded
from .groups import (
    INDEX,
    SubgroupSet,
    all_subgroups,
    as_set,
    dedekind_holds,
    induced_group,
    intersection,
    inverse_set,
    is_subgroup,
    mask_of,
    product_set,
)
from . import config
from .trifact import Provenance, TrifactorisedGroup, associated_brace, recover_eta, validate_trifact


def _inside(T: TrifactorisedGroup, X, S: SubgroupSet, err):
    arr = as_set(X)
    if arr.size and (arr.min() < 0 or arr.max() >= T.G.order or not S.mask[arr].all()):
        raise err("subset is not contained in the expected factor", witness=arr.tolist())
    return arr


def sigma_preimage(T: TrifactorisedGroup, L) -> np.ndarray:
    """``LE n H``."""
    L = _inside(T, L, T.K, NotSubsetOfK)
    return intersection(product_set(T.G, L, T.E), T.H)


def sigma_image(T: TrifactorisedGroup, S) -> np.ndarray:
    """``SE n K``."""
    S = _inside(T, S, T.H, NotSubsetOfH)
    return intersection(product_set(T.G, S, T.E), T.K)


def pi_E_of_preimage(T: TrifactorisedGroup, L) -> np.ndarray:
    """``L^-1 H n E``, the ``E``-parts of ``sigma^-1(L)``."""
    L = _inside(T, L, T.K, NotSubsetOfK)
    return intersection(product_set(T.G, inverse_set(T.G, L), T.H), T.E)


# witnesses ----------------------------------------------------------------------

def subgroup_witness(G, S):
    """``None`` if ``S`` is a subgroup, else a pair ``(a, b)`` with ``ab`` outside
    ``S`` (or ``("identity",)`` / ``("empty",)``)."""
    s = as_set(S)
    if s.size == 0:
        return ("empty",)
    if s[0] != 0:
        return ("identity",)
    m = mask_of(G, s)
    prod = G.mul(s[:, None], s[None, :])
    bad = np.argwhere(~m[prod])
    return None if not bad.size else (int(s[bad[0][0]]), int(s[bad[0][1]]))


def normalises_witness(G, X, S):
    """``None`` if every ``x`` in ``X`` normalises ``S``, else ``(x, s)`` with
    ``x s x^-1`` outside ``S``."""
    s, x = as_set(S), as_set(X)
    m = mask_of(G, s)
    conj = G.conj(x[:, None], s[None, :])
    bad = np.argwhere(~m[conj])
    return None if not bad.size else (int(x[bad[0][0]]), int(s[bad[0][1]]))


@dataclass
class Check:
    holds: bool
    witness: object = None

    def __bool__(self):
        return self.holds


def _sub(G, S) -> Check:
    w = subgroup_witness(G, S)
    return Check(w is None, w)


def _norm(G, X, S, require_subgroup=True) -> Check:
    if require_subgroup:
        w = subgroup_witness(G, S)
        if w is not None:
            return Check(False, ("not a subgroup",) + tuple(w))
    w = normalises_witness(G, X, S)
    return Check(w is None, w)


def _both(*checks) -> Check:
    for c in checks:
        if not c:
            return Check(False, c.witness)
    return Check(True)


GROUPS = {
    Substructure.Subbrace: ("1a", "1b", "1c", "1d"),
    Substructure.LeftIdeal: ("2a", "2b", "2c"),
    Substructure.StrongLeftIdeal: ("3a", "3b"),
    Substructure.Ideal: ("4a", "4b", "4c"),
}

DESCRIPTIONS = {
    "1a": "(L,+,.) is a subbrace",
    "1b": "L <= K and LE n H <= H",
    "1c": "L <= K and LE n H normalises L",
    "1d": "LE n LH is a subgroup of G",
    "2a": "L is a left ideal",
    "2b": "L <= K and E normalises L",
    "2c": "LE is a subgroup of G",
    "3a": "L is a strong left ideal",
    "3b": "L is a normal subgroup of G",
    "4a": "L is an ideal",
    "4b": "L normal in G and LE n H normal in H",
    "4c": "LE n LH is a normal subgroup of G",
}


@dataclass
class SubstructureReport:
    L: np.ndarray
    local: np.ndarray
    brace_label: object
    group_checks: dict = field(default_factory=dict)

    def level_holds(self, level: Substructure) -> bool:
        return bool(self.group_checks[GROUPS[level][-1]])

    @property
    def group_label(self) -> Substructure:
        label = Substructure.NotSubgroup
        for level in (Substructure.Subbrace, Substructure.LeftIdeal, Substructure.StrongLeftIdeal, Substructure.Ideal):
            if self.level_holds(level):
                label = level
        return label

    def constant_groups(self) -> dict:
        """For each level, whether all its equivalent conditions agree."""
        return {level: len({bool(self.group_checks[c]) for c in names}) == 1 for level, names in GROUPS.items()}

    @property
    def consistent(self) -> bool:
        return all(self.constant_groups().values()) and self.group_label == self.brace_label.label

    def as_dict(self) -> dict:
        return {
            "L": self.L.tolist(),
            "brace_label": self.brace_label.label.name,
            "group_label": self.group_label.name,
            "consistent": self.consistent,
            "checks": {name: {"condition": DESCRIPTIONS[name], "holds": c.holds,
                              "witness": None if c.holds else _jsonable(c.witness)}
                       for name, c in self.group_checks.items()},
        }


def _jsonable(w):
    if isinstance(w, tuple):
        return [_jsonable(x) for x in w]
    if isinstance(w, (np.integer,)):
        return int(w)
    return w


def classify_substructure_trifact(T: TrifactorisedGroup, L, brace=None) -> SubstructureReport:
    """Evaluate every group-side condition for ``L <= K`` (no short circuit)
    together with the brace-level classification of ``L``."""
    G, K, H, E = T.G, T.K, T.H, T.E
    L = _inside(T, L, K, NotSubsetOfK)
    B = brace if brace is not None else (T.provenance.brace if T.provenance else associated_brace(T))
    local = T.local_index(L)
    label = classify_substructure(B, local)
    LE = product_set(G, L, E)
    LH = product_set(G, L, H)
    LEH = intersection(LE, H)
    LELH = intersection(LE, LH)
    L_sub = _sub(G, L)
    c = {}
    c["1a"] = Check(label.label >= Substructure.Subbrace, None if label.label >= Substructure.Subbrace else label.flags)
    c["1b"] = _both(L_sub, _sub(G, LEH))
    c["1c"] = _both(L_sub, _norm(G, LEH, L, require_subgroup=False))
    c["1d"] = _sub(G, LELH)
    c["2a"] = Check(label.label >= Substructure.LeftIdeal, None if label.label >= Substructure.LeftIdeal else label.flags)
    c["2b"] = _both(L_sub, _norm(G, E, L, require_subgroup=False))
    c["2c"] = _sub(G, LE)
    c["3a"] = Check(label.label >= Substructure.StrongLeftIdeal,
                    None if label.label >= Substructure.StrongLeftIdeal else label.flags)
    c["3b"] = _norm(G, G.elements, L)
    c["4a"] = Check(label.label >= Substructure.Ideal, None if label.label >= Substructure.Ideal else label.flags)
    c["4b"] = _both(_norm(G, G.elements, L), _norm(G, H, LEH))
    c["4c"] = _norm(G, G.elements, LELH)
    if L_sub:
        # LE n LH = L(LE n H) and LE n K = L for any subgroup L of K
        assert dedekind_holds(G, L, H, LE)
        assert np.array_equal(intersection(LE, K), L)
    return SubstructureReport(L, local, label, c)


def subbrace_trifact(T: TrifactorisedGroup, L, brace=None) -> tuple:
    """``(LE n LH, L, LE n H, LH n E)`` as a tuple in its own right.

    The ambient group is re-indexed to ``0..m-1`` (sorted member order);
    returns ``(tuple, members)`` where ``members[i]`` is the index in ``T.G`` of
    the new element ``i``.  Its associated brace equals the subbrace on ``L``
    and its kernel is ``ker eta n L``.
    """
    G, K, H, E = T.G, T.K, T.H, T.E
    L = _inside(T, L, K, NotSubsetOfK)
    B = brace if brace is not None else (T.provenance.brace if T.provenance else associated_brace(T))
    local = T.local_index(L)
    if classify_substructure(B, local).label < Substructure.Subbrace:
        raise NotASubbrace(f"{local.tolist()} is not a subbrace", witness=local.tolist())
    LE = product_set(G, L, E)
    LH = product_set(G, L, H)
    ambient = intersection(LE, LH)
    assert np.array_equal(ambient, product_set(G, L, sigma_preimage(T, L)))
    Hs = intersection(LE, H)
    Es = intersection(LH, E)
    assert np.array_equal(Es, pi_E_of_preimage(T, L))
    sub, members = induced_group(G, ambient)
    where = np.full(G.order, -1, dtype=INDEX)
    where[members] = np.arange(len(members), dtype=INDEX)
    subbrace, _ = restrict_brace(B, local)
    eta = recover_eta(T, B)
    kernel = np.nonzero(np.isin(local, eta.kernel.members))[0]
    prov = Provenance(subbrace, SubgroupSet(subbrace.mul, kernel))
    Ts = validate_trifact(sub, where[L], where[Hs], where[Es], prov)
    return Ts, members


@dataclass
class TrifactSubgroupResult:
    holds: bool
    subgroup: np.ndarray
    L: np.ndarray
    tuple: TrifactorisedGroup = None
    members: np.ndarray = None

    def __bool__(self):
        return self.holds


def is_trifact_subgroup(T: TrifactorisedGroup, S) -> TrifactSubgroupResult:
    """``S`` is a trifactorised subgroup iff ``S = (S n K)E n (S n K)H``; when it
    is, the sub-tuple is certified and its derivation is ``sigma`` restricted."""
    G = T.G
    S = as_set(S)
    if not is_subgroup(G, S):
        raise NotASubgroup("S is not a subgroup of G", witness=S.tolist())
    L = intersection(S, T.K)
    rebuilt = intersection(product_set(G, L, T.E), product_set(G, L, T.H))
    if not np.array_equal(rebuilt, S):
        return TrifactSubgroupResult(False, S, L)
    sub, members = induced_group(G, S)
    where = np.full(G.order, -1, dtype=INDEX)
    where[members] = np.arange(len(members), dtype=INDEX)
    Ts = validate_trifact(sub, where[L], where[intersection(S, T.H)], where[intersection(S, T.E)])
    h = Ts.H.members
    assert np.array_equal(members[Ts.sigma(h)], T.sigma(members[h])), "derivation is not the restriction"
    return TrifactSubgroupResult(True, S, L, Ts, members)


@dataclass
class BijectionReport:
    pairs: list
    ideal_pairs: list
    trifact_subgroups: list

    @property
    def is_bijection(self) -> bool:
        return sorted(tuple(t.tolist()) for _, t in self.pairs) == sorted(tuple(t.tolist()) for t in self.trifact_subgroups)


def subbrace_bijection(T: TrifactorisedGroup, brace=None) -> BijectionReport:
    """Pair every subbrace ``L`` with ``LH n LE``; check this hits every
    trifactorised subgroup exactly once and that ideals go to the normal ones."""
    if T.G.order > config.BOUNDS.all_subgroups:
        raise SearchBoundExceeded(f"subbrace_bijection: order {T.G.order} > {config.BOUNDS.all_subgroups}")
    G = T.G
    B = brace if brace is not None else (T.provenance.brace if T.provenance else associated_brace(T))
    pairs = []
    ideal_images = set()
    for local in subbraces(B):
        L = T.K.members[local]
        S = intersection(product_set(G, L, T.H), product_set(G, L, T.E))
        pairs.append((L, S))
        if classify_substructure(B, local).label == Substructure.Ideal:
            ideal_images.add(tuple(S.tolist()))
    images = [tuple(S.tolist()) for _, S in pairs]
    assert len(set(images)) == len(images), "L -> LH n LE is not injective"
    trifact = []
    normal_trifact = set()
    for S in all_subgroups(G):
        res = is_trifact_subgroup(T, S.members)
        if res:
            trifact.append(S.members)
            if normalises_witness(G, G.generators, S.members) is None:
                normal_trifact.add(S.key)
    report = BijectionReport(pairs, [p for p in pairs if tuple(p[1].tolist()) in ideal_images], trifact)
    assert report.is_bijection, "subbraces and trifactorised subgroups do not correspond"
    assert ideal_images == normal_trifact, "ideals do not correspond to normal trifactorised subgroups"
    return report
