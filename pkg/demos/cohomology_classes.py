"""First cohomology, additive characters and rank-r classes."""

from flatbundles.basespace import CORPUS, circle
from flatbundles.cohomology import h1_constant, h1_glr_enumerate, hom_to_additive, unipotent_from_class
from flatbundles.exactfield import field_make

for name in sorted(CORPUS):
    dims = []
    for spec in ("Q", "F(2)", "F(3)"):
        ctx = field_make(spec)
        dims.append(f"{spec}: {h1_constant(CORPUS[name](), ctx).dimension}/{hom_to_additive(CORPUS[name](), ctx).dimension}")
    print(f"{name:9s}", "  ".join(dims))

Q = field_make("Q")
print("unipotent system of the class a -> 1:", unipotent_from_class(circle(), Q, {"a": 1}).rep["a"].to_strings())
for spec in ("F(2)", "F(3)", "F(2, x^2+x+1)", "F(5)"):
    print("rank-1 classes on the circle over", spec, len(h1_glr_enumerate(circle(), field_make(spec), 1)))
classes = h1_glr_enumerate(circle(), field_make("F(2)"), 2)
print("rank-2 classes over F(2):", [(c.size, c.representative["a"].to_strings()) for c in classes])
