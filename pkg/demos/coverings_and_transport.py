"""Schreier covers, decomposition, pullback, pushforward and parallel transport."""

from flatbundles.basespace import circle, format_id, format_word, wedge
from flatbundles.coverings import (
    Transporter,
    decompose,
    etale_image_size,
    exact_sequence_report,
    pushforward,
    schreier_cover,
    schreier_words,
)
from flatbundles.exactfield import field_make
from flatbundles.finitegroup import FiniteGroup
from flatbundles.localsystem import LocalSystem

action = schreier_cover(circle(), {"a": "(1 2)"}, mode="action", degree=3)
print("action of a as (1 2) on 3 points splits into degrees", [p.degree for p in decompose(action)])

S3 = FiniteGroup.from_permutations([(1, 2, 0), (1, 0, 2)])
c = schreier_cover(wedge(), {"a": S3.index((1, 0, 2)), "b": S3.index((1, 2, 0))}, S3)
print("S3 cover of the wedge: degree", c.degree, "galois", c.is_galois)
for gen, word in schreier_words(c).items():
    print("  subgroup generator", format_id(gen), "=", format_word(word))

F5 = field_make("F(5)")
sign = LocalSystem(wedge(), F5, 1, {"a": [[4]], "b": [[1]]})
print("sign bundle exact sequence passes:", exact_sequence_report(sign, c).passed)
T = Transporter(sign, c)
print("transport along each deck element:", [T.matrix(g).to_strings()[0][0] for g in range(S3.order)])
print("etale image size:", etale_image_size(c))

Z3 = FiniteGroup.cyclic(3)
z3 = schreier_cover(circle(), {"a": 1}, Z3)
Q = field_make("Q")
print("pushforward of the trivial line:", pushforward(LocalSystem.trivial(z3.total, Q, 1), z3).rep["a"].to_strings())
