"""The eight acceptance criteria over the full order <= 8 corpus.

Each test records a PASS/FAIL line, printed in the terminal summary.
"""
import contextlib
import time

import numpy as np
import pytest

from trifact.braces import (
    Substructure,
    brace_quotient,
    classify_substructure,
    is_brace_hom,
    ker_lambda,
    opposite_brace,
    subbraces,
    trivial_brace,
)
from trifact.classify import aut_orbits, iso_classes, omega, tuple_isomorphism
from trifact.errors import ObstructionWitness
from trifact.groups import all_subgroups, centralizer, generated_subgroup, intersection, is_isomorphism_preserving, normal_subgroups
from trifact.named import alternating, cyclic, dihedral, klein
from trifact.quotients import (
    ideal_quotient_tuple,
    is_small,
    quotient_admissible,
    quotient_trifact,
    small_not_preserved_check,
    sql_chain,
)
from trifact.substructure import classify_substructure_trifact
from trifact.trifact import associated_brace, generalised_trifact, large_trifact, lift_brace_hom, small_trifact, validate_trifact

from .conftest import ACCEPTANCE_LINES

pytestmark = pytest.mark.slow

CORPUS_NAMES = ["C2", "C3", "C4", "V4", "C5", "C6", "S3", "C7", "C8", "C4xC2", "C2^3", "D8", "Q8"]


@contextlib.contextmanager
def criterion(n, title, limit=None):
    """Record PASS/FAIL for criterion ``n``; ``info`` collects the detail text."""
    info = {}
    start = time.perf_counter()
    try:
        yield info
        elapsed = time.perf_counter() - start
        if limit is not None:
            assert elapsed <= limit, f"took {elapsed:.1f}s, limit {limit}s"
    except BaseException as exc:
        ACCEPTANCE_LINES[n] = f"criterion {n} FAIL  {title}: {type(exc).__name__}: {exc}"
        raise
    ACCEPTANCE_LINES[n] = f"criterion {n} PASS  {title}: {info.get('detail', '')} ({elapsed:.1f}s)"


@pytest.fixture(scope="module")
def all_braces(corpus):
    assert set(CORPUS_NAMES) <= set(corpus)
    return [(name, B) for name in CORPUS_NAMES for B in corpus[name]]


@pytest.fixture(scope="module")
def all_tuples(all_braces):
    out = []
    for name, B in all_braces:
        for N in omega(B).members:
            out.append((name, B, N, generalised_trifact(B, N.members)))
    return out


def test_c1_round_trip(all_braces):
    with criterion(1, "round trip B -> T_N -> associated brace", limit=300) as info:
        pairs = 0
        for _, B in all_braces:
            for N in omega(B).members:
                T = generalised_trifact(B, N.members)
                A = associated_brace(T)
                assert np.array_equal(A.add.table, B.add.table) and np.array_equal(A.mul.table, B.mul.table)
                pairs += 1
        info["detail"] = f"{len(all_braces)} braces, {pairs} (B, N) pairs, tables equal"


def test_c2_classification(all_braces):
    with criterion(2, "Aut(B)-orbits on Omega = iso classes of tuples", limit=900) as info:
        total = 0
        for _, B in all_braces:
            cl = iso_classes(B, certify=True)
            # independent count: greedy partition of all tuples by exhaustive search
            reps = []
            for N in cl.partition.omega.members:
                T = generalised_trifact(B, N.members)
                if not any(tuple_isomorphism(R, T).map is not None for R in reps):
                    reps.append(T)
            assert len(reps) == len(cl.classes) == len(cl.partition.orbits)
            total += len(reps)
        info["detail"] = f"{len(all_braces)} braces, {total} classes, all certified"


def test_c3_v4_example():
    with criterion(3, "trivial brace on V4") as info:
        B = trivial_brace(klein())
        cl = iso_classes(B, certify=True)
        assert len(omega(B)) == 5 and len(cl.classes) == 3
        assert sorted(c.tuple.order for c in cl.classes) == [4, 8, 16]
        eights = [generalised_trifact(B, N.members) for N in omega(B).members if N.order == 2]
        assert len(eights) == 3
        for T in eights[1:]:
            f = tuple_isomorphism(eights[0], T).map
            assert f is not None
            pairs = [(eights[0].K.members, T.K.members), (eights[0].H.members, T.H.members),
                     (eights[0].E.members, T.E.members)]
            assert is_isomorphism_preserving(f, pairs)
        info["detail"] = "|Omega|=5, 3 orbits, orders 16/8/4, order-8 tuples isomorphic by explicit maps"


def test_c4_c2_to_a5():
    with criterion(4, "C2 -> A5 lift and obstruction", limit=120) as info:
        A5 = alternating(5)
        t = A5.labels.index((1, 0, 3, 2, 4))
        B1, B2 = trivial_brace(cyclic(2)), opposite_brace(A5)
        f = is_brace_hom([0, t], B1, B2)
        assert lift_brace_hom(f, large_trifact(B1), large_trifact(B2)).is_monomorphism
        S2 = small_trifact(B2)
        with pytest.raises(ObstructionWitness) as exc:
            lift_brace_hom(f, small_trifact(B1), S2)
        w = exc.value.witness
        assert w in ker_lambda(B1).members.tolist() and f.images[w] != 0
        assert ker_lambda(B2).members.tolist() == [0]
        assert S2.order == 3600 and S2.E.order == 60
        info["detail"] = f"hom certified, large lift mono, small obstruction at {w}, |S(B2)|=3600, |E2|=60"


def test_c5_substructures(all_tuples):
    with criterion(5, "substructure condition groups vs brace classifier") as info:
        checks = bad = 0
        subgroup_cache = {}
        for name, B, N, T in all_tuples:
            key = id(B)
            if key not in subgroup_cache:
                subgroup_cache[key] = [S.members for S in all_subgroups(B.add)]
            for local in subgroup_cache[key]:
                r = classify_substructure_trifact(T, T.K.members[local], B)
                checks += 1
                bad += not r.consistent
        assert bad == 0
        info["detail"] = f"{len(all_tuples)} tuples, {checks} subgroups L, 0 discrepancies"


def test_c6_quotients(all_tuples):
    with criterion(6, "quotient conditions (1)-(3), ideal quotients") as info:
        cases = admissible = ideals = 0
        for name, B, N, T in all_tuples:
            if T.order > 96:
                continue
            for Tn in normal_subgroups(T.G):
                rep = quotient_admissible(T, Tn)  # asserts (1) == (2) == (3)
                assert rep.cond1 == rep.cond2 == rep.cond3
                assert (rep.quotient is not None) == rep.cond1
                cases += 1
                admissible += rep.cond1
            for I in subbraces(B):
                if classify_substructure(B, I).label != Substructure.Ideal:
                    continue
                res = ideal_quotient_tuple(T, I, B)
                assert res.brace_quotient.same_tables(brace_quotient(B, I)[0])
                if N.order == 1:
                    assert len(intersection(res.tuple.K, res.tuple.H)) == 1
                ideals += 1
        info["detail"] = f"{cases} (tuple, Tn) cases, {admissible} admissible, {ideals} ideal quotients"


def test_c7_d12():
    with criterion(7, "D12 example") as info:
        G = dihedral(6)
        T = validate_trifact(G, generated_subgroup(G, [2]), generated_subgroup(G, [4, 7]), generated_subgroup(G, [1]))
        assert is_small(T)
        x2 = [0, 4, 8]
        rep = quotient_admissible(T, x2)
        assert rep.admissible
        Q = quotient_trifact(T, x2).tuple
        assert Q.order == 4 and Q.G.is_abelian()
        chk = small_not_preserved_check(T, x2)
        assert not chk and len(chk.centraliser) == 2
        assert len(centralizer(Q.G, Q.E, Q.K)) == 2
        info["detail"] = "small, <x^2> admissible, quotient order 4 abelian, |Cent| = 2"


def test_c8_sql_chain(all_tuples):
    with criterion(8, "L(B) -> T_N -> S(B) epimorphisms") as info:
        for name, B, N, T in all_tuples:
            a, b = sql_chain(B, N.members)
            assert a.morphism.is_epimorphism and b.morphism.is_epimorphism
            assert a.kernel_in_E and b.kernel_in_E
        info["detail"] = f"{len(all_tuples)} chains, kernels inside E"
