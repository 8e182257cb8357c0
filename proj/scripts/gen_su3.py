#!/usr/bin/env python3
"""Generate exact rational su(3) catalog data (structure constants, quadratic
and cubic invariants, a regular orbit constant) in a rescaled Gell-Mann basis.

Basis: X_a = -i*lambda_a/2 for a=1..7, X_8 = sqrt(3) * (-i*lambda_8/2).
All structure constants and invariant coefficients come out rational.
"""
import sympy as sp
from sympy import I, Rational, sqrt, simplify

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

n = 8
# structure constants: [B_i, B_j] = sum_k c[i][j][k] B_k
# solve via trace pairing: tr(B_a B_b) gives a nondegenerate metric
G = sp.Matrix(n, n, lambda i, j: sp.trace(B[i + 1] * B[j + 1]))
Ginv = G.inv()

def coords(M):
    v = sp.Matrix(n, 1, lambda i, _: sp.trace(M * B[i + 1]))
    return (Ginv * v).applyfunc(sp.nsimplify)

c = {}
for i in range(1, n + 1):
    for j in range(1, n + 1):
        comm = B[i] * B[j] - B[j] * B[i]
        co = coords(comm)
        for k in range(1, n + 1):
            val = sp.simplify(co[k - 1])
            if val != 0:
                assert val.is_rational, (i, j, k, val)
                c[(i, j, k)] = Rational(val)

# Jacobi check
for i in range(1, n + 1):
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            for m in range(1, n + 1):
                s = sum(c.get((i, j, ll), 0) * c.get((ll, k, m), 0)
                        + c.get((j, k, ll), 0) * c.get((ll, i, m), 0)
                        + c.get((k, i, ll), 0) * c.get((ll, j, m), 0)
                        for ll in range(1, n + 1))
                assert s == 0, (i, j, k, m, s)
print("Jacobi OK; nonzero constants:", len(c))

x = sp.symbols('x1:9')

def pb(f, g):
    out = 0
    for (i, j, k), cv in c.items():
        out += cv * x[k - 1] * sp.diff(f, x[i - 1]) * sp.diff(g, x[j - 1])
    return sp.expand(out)

# quadratic invariant from the inverse trace metric: p2 = sum Ginv... use
# p2 = x^T Ginv_scaled x with a nice scale
Gq = Ginv.applyfunc(sp.nsimplify)
xv = sp.Matrix(n, 1, lambda i, _: x[i])
p2raw = sp.expand((xv.T * Gq * xv)[0])
# scale so coefficients are small integers
p2 = sp.expand(-2 * p2raw)
print("p2 =", p2)
for j in range(n):
    assert pb(p2, x[j]) == 0, ("p2 not central", j)
print("p2 central OK")

# cubic invariant: m_abc = tr(Ba Bb Bc + Ba Bc Bb), contracted with dual coords
# dual vector y^a = sum_b Ginv[a,b] x_b so that invariance holds
y = Gq * xv
p3raw = 0
for a in range(1, n + 1):
    for b in range(1, n + 1):
        for cc in range(1, n + 1):
            t = sp.trace(B[a] * B[b] * B[cc] + B[a] * B[cc] * B[b])
            if t != 0:
                p3raw += sp.nsimplify(t) * y[a - 1] * y[b - 1] * y[cc - 1]
p3raw = sp.expand(p3raw)
# pick scale making coefficients integers
p3 = sp.expand(sp.Rational(-1, 2) * p3raw * 8)  # tune below
den = sp.lcm([sp.fraction(sp.nsimplify(co))[1] for co in sp.Poly(p3raw, *x).coeffs()])
p3 = sp.expand(p3raw * den)
print("p3 =", p3)
for j in range(n):
    assert sp.expand(pb(p3, x[j])) == 0, ("p3 not central", j)
print("p3 central OK")

# regular point: Lambda = -i*diag(1,0,-1) in su(3), coordinates via trace form
Lam = -I * sp.diag(1, 0, -1)
xi = coords(Lam)
print("regular point coords:", list(xi))
subs = {x[i]: xi[i] for i in range(n)}
c2 = p2.subs(subs)
c3 = p3.subs(subs)
print("c2 =", sp.nsimplify(c2), " c3 =", sp.nsimplify(c3))

# power-sum normalization: evaluate p2,p3 on generic Cartan -i*diag(m1,m2,m3)
m1, m2 = sp.symbols('m1 m2')
m3 = -m1 - m2
Lg = -I * sp.diag(m1, m2, m3)
xig = coords(Lg)
subsg = {x[i]: xig[i] for i in range(n)}
s2 = sp.expand(m1**2 + m2**2 + m3**2)
s3 = sp.expand(m1**3 + m2**3 + m3**3)
print("p2 on Cartan:", sp.factor(sp.expand(p2.subs(subsg))), "vs s2:", s2)
print("p3 on Cartan:", sp.factor(sp.expand(p3.subs(subsg))), "vs s3:", s3)

# dump structure constants for C++ (only i<j)
print("---- C++ ----")
for (i, j, k), cv in sorted(c.items()):
    if i < j:
        print(f"      {{{i},{j},{k},{{{sp.fraction(cv)[0]},{sp.fraction(cv)[1]}}}}},")
def poly_cpp(p):
    P = sp.Poly(p, *x)
    out = []
    for mono, co in zip(P.monoms(), P.coeffs()):
        co = sp.nsimplify(co)
        nu, de = sp.fraction(co)
        out.append((mono, nu, de))
    return out
print("p2 terms:")
for mono, nu, de in poly_cpp(p2):
    print(f"      {{{{{','.join(map(str,mono))}}}}},{{{nu},{de}}}}},")
print("p3 terms:")
for mono, nu, de in poly_cpp(p3):
    print(f"      {{{{{','.join(map(str,mono))}}}}},{{{nu},{de}}}}},")
