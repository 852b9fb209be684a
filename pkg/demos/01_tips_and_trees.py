# Trees and tips for a fixed alphabet.
import numpy as np
from complextrees import parse_address, eval_tip, eval_node
from complextrees.presets import alphabet_preset
from complextrees.render import RenderSpec, render_tree_svg, render_tipset_svg

A = alphabet_preset("golden")
print("ratios:", np.round(A.ratios, 6))

# a finite word is a node, an eventually periodic one a tip
print("phi(23)    =", eval_node((2, 3), A))
print("phi(23(1)) =", eval_tip(parse_address("23(1)"), A))
print("phi(122(1))=", eval_tip(parse_address("122(1)"), A))   # same point

with open("golden_tree.svg", "wb") as fh:
    fh.write(render_tree_svg(A, 9))
with open("golden_tips.svg", "wb") as fh:
    fh.write(render_tipset_svg(A, 8, RenderSpec(kind="tipset-svg", point_radius=0.8)))
print("wrote golden_tree.svg, golden_tips.svg")
