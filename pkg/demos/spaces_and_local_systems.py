"""Two-complexes, presentations and local systems."""

from flatbundles.basespace import format_word, torus, triangle
from flatbundles.exactfield import field_make
from flatbundles.localsystem import LocalSystem, global_sections, iso_test, monodromy_image

X = triangle()
print("triangle tree edges:", sorted(X.tree_edges), "presentation:", X.presentation)
T = torus()
print("torus relator:", format_word(T.presentation.relators[0]))

F3 = field_make("F(3)")
E = LocalSystem(T, F3, 2, {"a": [[1, 1], [0, 1]], "b": [[1, 2], [0, 1]]})
print("commuting unipotents on the torus: monodromy order", monodromy_image(E).order)
print("flat sections:", [[F3.format(c) for c in v] for v in global_sections(E)])

F = LocalSystem(T, F3, 2, {"a": [[1, 0], [1, 1]], "b": [[1, 0], [2, 1]]})
res = iso_test(E, F)
print("transposed system:", res.status, res.witness.to_strings() if res.witness else "")
