#!/usr/bin/env python3
"""Orbit constants and regularity normalization for the su(3) catalog."""
import sympy as sp
from sympy import I, sqrt

l = [None] * 9
l[1] = sp.Matrix([[0, 1, 0], [1, 0, 0], [0, 0, 0]])
l[2] = sp.Matrix([[0, -I, 0], [I, 0, 0], [0, 0, 0]])
l[3] = sp.Matrix([[1, 0, 0], [0, -1, 0], [0, 0, 0]])
l[4] = sp.Matrix([[0, 0, 1], [0, 0, 0], [1, 0, 0]])
l[5] = sp.Matrix([[0, 0, -I], [0, 0, 0], [I, 0, 0]])
l[6] = sp.Matrix([[0, 0, 0], [0, 0, 1], [0, 1, 0]])
l[7] = sp.Matrix([[0, 0, 0], [0, 0, -I], [0, I, 0]])
l[8] = sp.Matrix([[1, 0, 0], [0, 1, 0], [0, 0, -2]]) / sqrt(3)
B = [None] + [-I * l[a] / 2 for a in range(1, 8)] + [sqrt(3) * (-I * l[8] / 2)]

x = sp.symbols('x1:9')
p2 = 4*(x[0]**2 + x[1]**2 + x[2]**2 + x[3]**2 + x[4]**2 + x[5]**2 + x[6]**2) + sp.Rational(4, 3)*x[7]**2
p3 = sp.expand((-36*I*x[0]**2*x[7] - 108*I*x[0]*x[3]*x[5] - 108*I*x[0]*x[4]*x[6]
      - 36*I*x[1]**2*x[7] + 108*I*x[1]*x[3]*x[6] - 108*I*x[1]*x[4]*x[5]
      - 36*I*x[2]**2*x[7] - 54*I*x[2]*x[3]**2 - 54*I*x[2]*x[4]**2
      + 54*I*x[2]*x[5]**2 + 54*I*x[2]*x[6]**2 + 18*I*x[3]**2*x[7]
      + 18*I*x[4]**2*x[7] + 18*I*x[5]**2*x[7] + 18*I*x[6]**2*x[7]
      + 4*I*x[7]**3) / (2*I))

# dual coordinates via trace form: x_a(xi_M) = t * tr(M B_a)
m1, m2 = sp.symbols('m1 m2')
m3 = -m1 - m2
M = -I * sp.diag(m1, m2, m3)
t = -2  # scale making coordinates rational and small
xm = [sp.nsimplify(sp.expand(t * sp.trace(M * B[a]))) for a in range(1, 9)]
print("Cartan coords:", xm)
subs = {x[i]: xm[i] for i in range(8)}
q2 = sp.expand(p2.subs(subs))
q3 = sp.expand(p3.subs(subs))
s2 = sp.expand(m1**2 + m2**2 + m3**2)
s3 = sp.expand(m1**3 + m2**3 + m3**3)
print("p2|Cartan =", sp.factor(q2), " s2 =", s2, " ratio:", sp.simplify(q2 / s2))
print("p3|Cartan =", sp.factor(q3), " s3 =", s3, " ratio:", sp.simplify(q3 / s3))

# regular example: mu = (1, 0, -1); singular example: mu = (1, 1, -2)
for mu in [(1, 0), (1, 1), (2, 1)]:
    sub2 = {m1: mu[0], m2: mu[1]}
    pt = [v.subs(sub2) for v in xm]
    print("mu =", (mu[0], mu[1], -mu[0]-mu[1]), "coords =", pt,
          " c2 =", q2.subs(sub2), " c3 =", q3.subs(sub2))
