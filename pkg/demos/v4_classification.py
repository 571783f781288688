"""Tuples attached to the trivial brace on C2 x C2, up to isomorphism."""
from trifact import iso_classes, omega, trivial_brace
from trifact.classify import identify_kind
from trifact.named import klein

B = trivial_brace(klein())
print("Omega:", [N.members.tolist() for N in omega(B).members])

cl = iso_classes(B, certify=True)
for c in cl.classes:
    kind = identify_kind(c.tuple, B).name
    print(f"N={c.kernel.members.tolist()}  |G|={c.tuple.order}  {kind}  orbit size {len(c.orbit)}")
print("search nodes for non-isomorphism:", cl.non_isomorphism)
