# Refined curves C, D and the stacked surface over real parameters.
from complextrees.geodesic import refine_paths, path_length, refinement_distance, build_surface
from complextrees.render import render_path_svg, render_surface_obj

z = 0.7 + 0.2j
prev = None
for k in range(8):
    p = refine_paths(z, k)
    d = refinement_distance(prev.curveC, p.curveC) if prev else float("nan")
    print(k, "lengths %.5f %.5f" % path_length(p), "step %.2e" % d)
    prev = p
open("path.svg", "wb").write(render_path_svg(refine_paths(z, 8)))

mesh = build_surface(0.42, 0.95, 40, 5)
open("surface.obj", "wb").write(render_surface_obj(mesh))
print(mesh.layers, "layers,", len(mesh.vertices), "vertices,", len(mesh.triangles), "triangles")
