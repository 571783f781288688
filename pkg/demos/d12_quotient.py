"""A small tuple on D12 whose quotient by <x^2> is no longer small."""
from trifact import validate_trifact
from trifact.groups import generated_subgroup
from trifact.named import dihedral
from trifact.quotients import is_small, quotient_admissible, small_not_preserved_check

G = dihedral(6)  # x = index 2, y = index 1
T = validate_trifact(G, generated_subgroup(G, [2]), generated_subgroup(G, [4, 7]), generated_subgroup(G, [1]))
print("Cent_E(K) trivial:", is_small(T))

rep = quotient_admissible(T, [0, 4, 8])
print("conditions:", rep.cond1, rep.cond2, rep.cond3)
chk = small_not_preserved_check(T, [0, 4, 8])
Q = chk.quotient
print(f"quotient order {Q.order}, abelian {Q.G.is_abelian()}, |Cent| = {len(chk.centraliser)}")
