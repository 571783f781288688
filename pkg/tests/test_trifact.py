import numpy as np
import pytest

from trifact.braces import (
    BraceMap,
    Substructure,
    brace_automorphisms,
    brace_quotient,
    classify_substructure,
    is_brace_hom,
    ker_lambda,
    opposite_brace,
    subbraces,
    trivial_brace,
)
from trifact.classify import tuple_isomorphism
from trifact.errors import (
    ContainmentFails,
    FactorisationFails,
    IntersectionNontrivial,
    InvalidTrifact,
    KernelNotInKerLambda,
    KNotNormal,
    NotNormal,
    ObstructionWitness,
)
from trifact.groups import GroupMap, centralizer, direct_product, generated_subgroup, intersection
from trifact.named import alternating, cyclic, dihedral, klein, symmetric
from trifact.trifact import (
    associated_brace,
    derivation,
    generalised_trifact,
    identity_morphism,
    induced_brace_hom,
    is_trifact_morphism,
    large_trifact,
    lift_brace_hom,
    recover_eta,
    small_trifact,
    tuple_epimorphism,
    validate_trifact,
)

from . import oracles


def d12_tuple():
    G = dihedral(6)
    K = generated_subgroup(G, [2])
    H = generated_subgroup(G, [4, 7])  # <x^2, x^3 y>
    E = generated_subgroup(G, [1])
    return validate_trifact(G, K, H, E)


def involution_a5():
    A5 = alternating(5)
    return A5, next(i for i, p in enumerate(A5.labels) if p == (1, 0, 3, 2, 4))


def sets(T):
    return tuple(frozenset(S.members.tolist()) for S in (T.K, T.H, T.E))


# validation -------------------------------------------------------------------------

def test_validate_trivial_small_form():
    S3 = symmetric(3)
    T = validate_trifact(S3, S3.elements, S3.elements, [0])
    assert T.order == 6


def test_validate_d12():
    T = d12_tuple()
    assert (T.K.order, T.H.order, T.E.order) == (6, 6, 2)
    assert intersection(T.K, T.H).tolist() == [0, 4, 8]


def test_validation_failures():
    S3 = symmetric(3)
    with pytest.raises(InvalidTrifact) as exc:
        validate_trifact(S3, [0, 3, 4], S3.elements, S3.elements)
    kinds = [type(v) for v in exc.value.violations]
    assert kinds.count(IntersectionNontrivial) == 2
    with pytest.raises(InvalidTrifact) as exc:
        validate_trifact(S3, [0, 1], S3.elements, [0, 3, 4])
    assert isinstance(exc.value.violations[0], KNotNormal)
    with pytest.raises(InvalidTrifact) as exc:
        validate_trifact(S3, [0, 3, 4], [0, 3, 4], [0, 1])
    assert any(isinstance(v, FactorisationFails) for v in exc.value.violations)


def test_decomposition_unique():
    T = d12_tuple()
    t = oracles.tab(T.G)
    K, E = set(T.K.members.tolist()), set(T.E.members.tolist())
    k_of, e_of = T.decomposition()
    for g in range(T.order):
        assert oracles.decompose(t, K, E, g) == (k_of[g], e_of[g])


# constructions -------------------------------------------------------------------------

def test_large_trifact_shapes():
    T = large_trifact(trivial_brace(cyclic(2)))
    assert T.order == 4 and T.G.is_abelian()
    assert T.H.members.tolist() == [0, 3]  # the diagonal {(c, c)}
    assert large_trifact(trivial_brace(klein())).order == 16
    TA = large_trifact(opposite_brace(alternating(5)))
    assert TA.order == 3600 and not TA.G.has_table
    assert intersection(TA.K, TA.H).tolist() == [0]


def test_small_trifact_trivial_brace_is_additive_group():
    S3 = symmetric(3)
    T = small_trifact(trivial_brace(S3))
    assert T.order == 6 and T.E.order == 1
    assert np.array_equal(T.G.table, S3.table)
    assert np.array_equal(T.K.members, S3.elements) and np.array_equal(T.H.members, S3.elements)
    T2 = small_trifact(trivial_brace(cyclic(2)))
    assert T2.order == 2


def test_small_trifact_a5():
    B = opposite_brace(alternating(5))
    T = small_trifact(B)
    assert T.order == 3600 and T.E.order == 60
    assert centralizer(T.G, T.E, T.K).tolist() == [0]
    # G = K x H: H centralises K
    for h in T.H.members[:60:7]:
        assert np.array_equal(T.G.conj(h, T.K.members), T.K.members)


def test_small_has_trivial_centraliser(corpus):
    for name in ("S3", "D8", "Q8", "C4xC2"):
        for B in corpus[name]:
            T = small_trifact(B)
            assert centralizer(T.G, T.E, T.K).tolist() == [0]


def test_generalised_trivial_kernel_is_large(corpus):
    for B in corpus["S3"] + corpus["Q8"]:
        L, G0 = large_trifact(B), generalised_trifact(B, [0])
        assert np.array_equal(L.G.table, G0.G.table)
        assert sets(L) == sets(G0)


def test_generalised_ker_lambda_is_small(corpus):
    for B in corpus["S3"] + corpus["C4"] + corpus["V4"]:
        T = generalised_trifact(B, ker_lambda(B).members)
        assert tuple_isomorphism(T, small_trifact(B)).map is not None


def test_generalised_v4_kernel():
    B = trivial_brace(klein())
    T = generalised_trifact(B, [0, 1])
    assert T.order == 8 and len(intersection(T.K, T.H)) == 2


def test_generalised_rejects_bad_kernels():
    B = opposite_brace(symmetric(3))
    with pytest.raises(KernelNotInKerLambda):
        generalised_trifact(B, [0, 3, 4])
    with pytest.raises(NotNormal):
        generalised_trifact(trivial_brace(symmetric(3)), [0, 1])


# associated brace and derivation ----------------------------------------------------------

@pytest.mark.parametrize("name", ["C2", "C4", "V4", "S3", "C6"])
def test_associated_brace_matches_oracle(corpus, name):
    for B in corpus[name]:
        for T in (large_trifact(B), small_trifact(B)):
            t = oracles.tab(T.G)
            add, mul = oracles.associated_brace(t, *(set(S.members.tolist()) for S in (T.K, T.H, T.E)))
            A = associated_brace(T)
            assert A.add.table.tolist() == add and A.mul.table.tolist() == mul
            assert A.same_tables(B)


def test_associated_brace_of_trivial_form():
    S3 = symmetric(3)
    T = validate_trifact(S3, S3.elements, S3.elements, [0])
    assert associated_brace(T).is_trivial()


def test_associated_brace_d12():
    B = associated_brace(d12_tuple())
    assert B.add.is_abelian() and 6 in B.add.element_orders
    assert not B.mul.is_abelian() and B.mul.order == 6


def test_derivation():
    S3 = symmetric(3)
    T = validate_trifact(S3, S3.elements, S3.elements, [0])
    d = derivation(T)
    assert np.array_equal(d.h, d.k)
    L = large_trifact(trivial_brace(klein()))
    dl = derivation(L)
    # (delta(c), c) -> delta(c)
    assert np.array_equal(dl.k, np.arange(4) * 4)
    T = generalised_trifact(trivial_brace(klein()), [0, 1])
    d = derivation(T)
    assert sorted(d.k.tolist()) == T.K.members.tolist()
    t = oracles.tab(T.G)
    K, E = set(T.K.members.tolist()), set(T.E.members.tolist())
    for h1 in T.H.members.tolist():
        k1, e1 = oracles.decompose(t, K, E, h1)
        for h2 in T.H.members.tolist():
            k2, _ = oracles.decompose(t, K, E, h2)
            k12, _ = oracles.decompose(t, K, E, t[h1][h2])
            assert k12 == t[k1][t[t[e1][k2]][oracles.inverse(t, e1)]]


def test_recover_eta():
    B = trivial_brace(klein())
    assert recover_eta(large_trifact(B)).kernel.members.tolist() == [0]
    assert np.array_equal(recover_eta(small_trifact(B)).kernel.members, ker_lambda(B).members)
    S3 = symmetric(3)
    T = validate_trifact(S3, S3.elements, S3.elements, [0])
    assert recover_eta(T).kernel.order == 6


@pytest.mark.parametrize("make", [d12_tuple, lambda: generalised_trifact(trivial_brace(klein()), [0, 2])])
def test_tuple_round_trip(make):
    """Rebuilding from (associated brace, ker eta) gives T back, K fixed pointwise."""
    T = make()
    B = associated_brace(T)
    eta = recover_eta(T, B)
    R = generalised_trifact(B, eta.kernel.members)
    ident = BraceMap(B, B, np.arange(B.order))
    m = lift_brace_hom(ident, R, T)
    assert m.is_isomorphism
    assert np.array_equal(m.map.images[R.K.members], T.K.members)


# morphisms --------------------------------------------------------------------------------

def test_identity_morphism():
    T = d12_tuple()
    m = identity_morphism(T)
    assert m.is_isomorphism
    f = induced_brace_hom(m)
    assert f.images.tolist() == list(range(6))


@pytest.mark.parametrize("n", [3, 4])
def test_projection_not_mono(n):
    G = direct_product(cyclic(n), cyclic(n))
    x, y = n, 1  # (1,0) and (0,1)
    xy = G.mul(x, y)
    T1 = validate_trifact(G, generated_subgroup(G, [x]), generated_subgroup(G, [xy]), generated_subgroup(G, [y]))
    C = cyclic(n)
    T2 = validate_trifact(C, C.elements, C.elements, [0])
    proj = GroupMap(G, C, np.arange(G.order) // n)
    m = is_trifact_morphism(proj, T1, T2)
    assert m.flags["K_injective"] and m.flags["H_injective"]
    assert not m.is_monomorphism and m.is_epimorphism


def test_containment_failure():
    G = direct_product(cyclic(2), cyclic(2))
    T = validate_trifact(G, [0, 2], [0, 3], [0, 1])
    swap = GroupMap(G, G, [0, 2, 1, 3])
    with pytest.raises(ContainmentFails):
        is_trifact_morphism(swap, T, T)


def test_v4_chain_epimorphism():
    B = trivial_brace(klein())
    T1, T2 = generalised_trifact(B, [0]), generalised_trifact(B, [0, 1])
    m = tuple_epimorphism(T1, T2)
    assert m.is_epimorphism and not m.is_monomorphism
    assert induced_brace_hom(m).images.tolist() == [0, 1, 2, 3]


def test_lifts_between_large_tuples(corpus):
    for name in ("V4", "S3", "D8"):
        for B in corpus[name]:
            L = large_trifact(B)
            for f in brace_automorphisms(B):
                m = lift_brace_hom(f, L, L)
                assert m.is_isomorphism
                assert np.array_equal(induced_brace_hom(m, B, B).images, f.images)


def test_lift_mono_criterion():
    # f mono with f(N1) = N2 <=> lifted map mono
    B = trivial_brace(klein())
    for f in brace_automorphisms(B):
        for N1 in ([0], [0, 1], [0, 2], [0, 3]):
            image = sorted(f.images[N1].tolist())
            for N2 in ([0, 1], [0, 2], [0, 3], [0, 1, 2, 3]):
                if not set(image) <= set(N2):
                    continue
                m = lift_brace_hom(f, generalised_trifact(B, N1), generalised_trifact(B, N2))
                assert m.is_monomorphism == (image == N2)


def test_epimorphisms_extend_to_small_tuples(corpus):
    for B in corpus["D8"] + corpus["S3"] + corpus["C4xC2"][:10]:
        for I in subbraces(B):
            if classify_substructure(B, I).label != Substructure.Ideal:
                continue
            Q, proj = brace_quotient(B, I)
            m = lift_brace_hom(proj, small_trifact(B), small_trifact(Q))
            assert m.is_epimorphism


def test_c2_to_a5_obstruction():
    A5, t = involution_a5()
    B1, B2 = trivial_brace(cyclic(2)), opposite_brace(A5)
    f = is_brace_hom([0, t], B1, B2)
    assert lift_brace_hom(f, large_trifact(B1), large_trifact(B2)).is_monomorphism
    with pytest.raises(ObstructionWitness) as exc:
        lift_brace_hom(f, small_trifact(B1), small_trifact(B2))
    assert exc.value.witness == 1
    assert ker_lambda(B2).members.tolist() == [0]
