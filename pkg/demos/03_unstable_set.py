# Extra relations: solve for z, classify, scan a small window.
from complextrees.tree import Relation
from complextrees.unstable import Classification, solve_relation, classify_point, scan_unstable
from complextrees.render import render_scan_ppm

rel = Relation.parse("2313(1)~1222(1)")
for r in solve_relation(rel).roots:
    print(rel, "root", r.z, "in R" if r.in_R else "")

for z in (0.5, 0.82, 0.7 + 0.2j, 0.55 + 0.55j, 1.2):
    print(z, classify_point(z).name)

# coarse and shallow so it runs in seconds; the CLI defaults are 400x400, depth 10
grid = scan_unstable(resolution=(120, 104), depth=6)
open("scan.ppm", "wb").write(render_scan_ppm(grid))
print({c.name: grid.count(c) for c in Classification})
