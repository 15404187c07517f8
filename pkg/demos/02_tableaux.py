"""Diagonals and tableaux for m = 1.

Looks up a few entries of the E6/E7/E8 dictionaries, reduces and multiplies
tableaux, and checks that the mesh relations hold in every type.
"""
from mclusters import tableaux as tb

D = tb.dictionary("E6")
for d in ("[1,6]_R", "[2,4]_G", "[5,7]_B"):
    print(f"{d:8s} <-> {D.tableau(d)}")

S = tb.Tableau.column((1, 2, 4))
T = tb.Tableau.column((3, 5, 6))
U = tb.row_union(S, T)
print("row union of", S, "and", T, "is", U)
print("reduced:", tb.reduce(tb.row_union(U, tb.trivial_column(1, 3))))

for typ in ("E6", "E7", "E8"):
    r = tb.mesh_sum_check(typ)
    print(f"{typ}: {len(tb.dictionary(typ))} tableaux, ranks {tb.dictionary(typ).rank_distribution()},"
          f" meshes {r['passed']}/{r['meshes']}")
