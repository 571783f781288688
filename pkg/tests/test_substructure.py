import numpy as np
import pytest

from trifact.braces import Substructure, classify_substructure, ker_lambda, subbraces, trivial_brace
from trifact.errors import NotASubbrace, NotASubgroup, NotSubsetOfH, NotSubsetOfK
from trifact.groups import generated_subgroup
from trifact.named import cyclic, dihedral, klein, symmetric
from trifact.substructure import (
    GROUPS,
    classify_substructure_trifact,
    is_trifact_subgroup,
    pi_E_of_preimage,
    sigma_image,
    sigma_preimage,
    subbrace_bijection,
    subbrace_trifact,
)
from trifact.trifact import associated_brace, generalised_trifact, large_trifact, recover_eta, small_trifact, validate_trifact

from . import oracles


def d12_tuple():
    G = dihedral(6)
    return validate_trifact(G, generated_subgroup(G, [2]), generated_subgroup(G, [4, 7]), generated_subgroup(G, [1]))


def test_d12_preimage():
    T = d12_tuple()
    assert sigma_preimage(T, [0, 4, 8]).tolist() == [0, 4, 8]
    # K itself pulls back to all of H
    assert sigma_preimage(T, T.K.members).tolist() == T.H.members.tolist()


def test_sigma_image_singleton_and_errors():
    T = d12_tuple()
    for h in T.H.members.tolist():
        img = sigma_image(T, [h])
        assert len(img) == 1 and T.K.mask[img[0]]
    with pytest.raises(NotSubsetOfH):
        sigma_image(T, [1])
    with pytest.raises(NotSubsetOfK):
        sigma_preimage(T, [1])


def test_preimage_image_inverse(corpus):
    for B in corpus["S3"] + corpus["C4"]:
        T = small_trifact(B)
        for h in T.H.members.tolist():
            k = sigma_image(T, [h])
            assert sigma_preimage(T, k).tolist() == [h]


def test_pi_E_matches_oracle():
    T = generalised_trifact(trivial_brace(klein()), [0, 1])
    t = oracles.tab(T.G)
    K, E = set(T.K.members.tolist()), set(T.E.members.tolist())
    for L in ([0], T.K.members[:2].tolist(), T.K.members.tolist()):
        pre = sigma_preimage(T, L)
        expected = sorted({oracles.decompose(t, K, E, h)[1] for h in pre.tolist()})
        assert pi_E_of_preimage(T, L).tolist() == expected


def test_trivial_s3_labels():
    T = large_trifact(trivial_brace(symmetric(3)))
    labels = {}
    for local in subbraces(T.provenance.brace):
        r = classify_substructure_trifact(T, T.K.members[local])
        assert r.consistent
        labels[tuple(local.tolist())] = r.group_label
    assert labels[(0, 3, 4)] == Substructure.Ideal
    assert labels[(0, 1)] == Substructure.LeftIdeal


def _oracle_group_label(t, K, H, E, L):
    """Levels from the last group-side condition of each block, straight from sets."""
    n = len(t)
    full = frozenset(range(n))
    LE, LH = oracles.product(t, L, E), oracles.product(t, L, H)
    S = LE & LH
    label = 0
    if oracles.is_subgroup(t, S):
        label = 1
        if oracles.is_subgroup(t, LE):
            label = 2
            if oracles.is_normal(t, L):
                label = 3
                if oracles.is_normal(t, S):
                    label = 4
    return label


@pytest.mark.parametrize("name", ["C4", "V4", "S3", "C6"])
def test_labels_against_oracle(corpus, name):
    for B in corpus[name]:
        for T in (large_trifact(B), small_trifact(B)):
            t = oracles.tab(T.G)
            K, H, E = (frozenset(S.members.tolist()) for S in (T.K, T.H, T.E))
            add, mul = B.tables()
            for local in oracles.all_subgroups(add.tolist()):
                L = frozenset(T.K.members[sorted(local)].tolist())
                r = classify_substructure_trifact(T, sorted(L), B)
                assert r.consistent
                assert int(r.brace_label.label) == oracles.brace_label(add.tolist(), mul.tolist(), local)
                assert int(r.group_label) == _oracle_group_label(t, K, H, E, L)


def test_report_lists_every_condition():
    T = d12_tuple()
    r = classify_substructure_trifact(T, [0, 4, 8])
    assert set(r.group_checks) == {c for names in GROUPS.values() for c in names}
    d = r.as_dict()
    assert d["consistent"] and d["group_label"] == r.brace_label.label.name


def test_subbrace_tuple_v4():
    B = trivial_brace(klein())
    T = generalised_trifact(B, [0, 1])
    Ts, members = subbrace_trifact(T, T.K.members[[0, 2]])
    assert Ts.order == 4
    assert members.tolist() == [0, 1, 4, 5]
    assert associated_brace(Ts).same_tables(Ts.provenance.brace)
    assert recover_eta(Ts).kernel.members.tolist() == Ts.provenance.kernel.members.tolist()


def test_subbrace_tuple_rejects():
    T = large_trifact(trivial_brace(cyclic(4)))
    with pytest.raises(NotASubbrace):
        subbrace_trifact(T, T.K.members[[0, 1]])


def test_is_trifact_subgroup():
    T = d12_tuple()
    assert not is_trifact_subgroup(T, T.K.members)  # K = KE n KH would need E inside
    assert is_trifact_subgroup(T, T.G.elements)
    res = is_trifact_subgroup(T, [0, 4, 8])
    assert res and res.tuple.order == 3
    assert not is_trifact_subgroup(T, T.E.members)
    with pytest.raises(NotASubgroup):
        is_trifact_subgroup(T, [0, 1, 2])


@pytest.mark.parametrize("G,expected", [(symmetric(3), 6), (klein(), 5)])
def test_bijection_counts(G, expected):
    T = large_trifact(trivial_brace(G))
    rep = subbrace_bijection(T)
    assert len(rep.pairs) == expected and rep.is_bijection


def test_bijection_corpus(corpus):
    for name in ("C4", "S3", "C6", "D8"):
        for B in corpus[name]:
            for T in (large_trifact(B), small_trifact(B)):
                rep = subbrace_bijection(T, B)
                assert rep.is_bijection
