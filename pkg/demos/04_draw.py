"""Draw the anchor cluster of F4 (m=2) and one random tilting object of E7."""
import random
from pathlib import Path

from mclusters import render, tilting
from mclusters.model import ClusterModel

out = Path("demo_out")
out.mkdir(exist_ok=True)

F = ClusterModel("F4", 2)
diags = [d for i in F.anchor_cluster() for d in F.lifts(i)]
(out / "f4_anchor.svg").write_text(render.svg(diags, F.N, "F4 m=2 anchor"))

E = ClusterModel("E7", 1)
_, cl = tilting.enumerate_clusters(E.graph)
pick = random.Random(7).choice(cl)
(out / "e7_random.tex").write_text(render.tikz([E.objects[i] for i in pick], E.N))
print("wrote", ", ".join(sorted(p.name for p in out.iterdir())))
