"""Exact fields, matrix groups and the multiplicative Jordan decomposition."""

from flatbundles.exactfield import Embedding, field_make
from flatbundles.matrixgroup import Matrix, group_closure, jordan_multiplicative, matrix_root

F4 = field_make("F(2, x^2+x+1)")
x = F4.generator
print("F4 elements:", [F4.format(a) for a in F4.elements()])
print("x^3 in F4:", F4.format(F4.pow(x, 3)))

emb = Embedding("F(2)", "F(2, x^2+x+1)")
print("embedding:", emb.source, "->", emb.target)

F2 = field_make("F(2)")
fib = Matrix.of(F2, [[0, 1], [1, 1]])
print("Fibonacci matrix mod 2 generates a group of order", group_closure([fib]).order)

Q = field_make("Q")
M = Matrix.of(Q, [[2, 1], [0, 2]])
s, u = jordan_multiplicative(M)
print("M =", M.to_strings(), "semisimple", s.to_strings(), "unipotent", u.to_strings())
print("square root of [[4]]:", matrix_root(Matrix.of(Q, [[4]]), 2).to_strings())
