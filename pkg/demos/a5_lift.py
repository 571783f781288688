"""Lifting C2 -> A5, a -> (1,2)(3,4), to large and to small tuples."""
from trifact import large_trifact, small_trifact, lift_brace_hom, opposite_brace, trivial_brace
from trifact.braces import is_brace_hom
from trifact.errors import ObstructionWitness
from trifact.named import alternating, cyclic

A5 = alternating(5)
t = A5.labels.index((1, 0, 3, 2, 4))
B1, B2 = trivial_brace(cyclic(2)), opposite_brace(A5)
f = is_brace_hom([0, t], B1, B2)

m = lift_brace_hom(f, large_trifact(B1), large_trifact(B2))
print("large tuples: lifted, mono =", m.is_monomorphism)

S2 = small_trifact(B2)
print("small tuple of A5:", S2.order, "elements, |E| =", S2.E.order)
try:
    lift_brace_hom(f, small_trifact(B1), S2)
except ObstructionWitness as exc:
    print("small tuples: no lift,", exc, "witness", exc.witness)
