"""Subbraces of the trivial S3 brace seen from the large tuple."""
from trifact import large_trifact, trivial_brace
from trifact.braces import subbraces
from trifact.named import symmetric
from trifact.substructure import classify_substructure_trifact, subbrace_bijection

T = large_trifact(trivial_brace(symmetric(3)))
for local in subbraces(T.provenance.brace):
    r = classify_substructure_trifact(T, T.K.members[local])
    print(local.tolist(), r.group_label.name, "consistent" if r.consistent else "MISMATCH")

rep = subbrace_bijection(T)
print(len(rep.pairs), "subbraces <->", len(rep.trifact_subgroups), "trifactorised subgroups;",
      len(rep.ideal_pairs), "ideals")
