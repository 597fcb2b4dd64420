"""Field descent, the mod-p pipeline and solenoid towers."""

import math

from flatbundles.basespace import circle, triangle
from flatbundles.descent import (
    Trivialization,
    etale_quotients,
    field_descent,
    level_of_definition,
    mod_p_pipeline,
    tower_make,
)
from flatbundles.exactfield import Embedding, field_make
from flatbundles.localsystem import CechCocycle, LocalSystem
from flatbundles.matrixgroup import Matrix

F2, F4 = field_make("F(2)"), field_make("F(2, x^2+x+1)")
X = triangle()
c = CechCocycle(X, F2, 1, {e: [[1]] for e in X.edges})
t = Trivialization(X, F4, 1, {v: Matrix(F4, [[F4.generator]]) for v in X.vertices})
h = field_descent(c, t, Embedding(F2, F4))
print("descended trivialization:", {v: m.to_strings() for v, m in h.mats.items()})

Q = field_make("Q")
E = LocalSystem(circle(), Q, 2, {"a": [["1", "1/3"], [0, 1]]})
res = mod_p_pipeline(E, 2)
print("mod 2: group order", res.group.order, "cover degree", res.covering.degree)

dyadic = tower_make([2], 64)
print("dyadic survival:", etale_quotients(dyadic, 12))
print("[[16]] at level 4 is defined at level", level_of_definition(dyadic, 4, LocalSystem(circle(), Q, 1, {"a": [[16]]})).level)

full = tower_make([2, 3, 5, 7, 11, 13, 17, 19], math.lcm(*range(1, 21)))
print("full solenoid truncation:", len(full.indices), "levels; survivors", [m for m, k in etale_quotients(full, 20) if k > 1])
