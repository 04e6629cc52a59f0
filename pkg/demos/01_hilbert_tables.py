"""
Graded rings, modules, and dimension tables
===========================================

Everything in this package is exact: dimensions are integers computed by
rational Gaussian elimination, never floats.  This script builds the few
standard gradings the rest of the demos use and tabulates component
dimensions.
"""

from coarsecoh import (
    DegreeGroup,
    DegreeWindow,
    GradedModulePresentation,
    GradedPolynomialRing,
    MonomialIdeal,
)

# K[x, y] with the fine Z^2 grading: deg x = (1,0), deg y = (0,1).
# The trailing tuple is the positivity certificate - a linear weight
# strictly positive on every variable degree, which is what guarantees
# each graded component is finite-dimensional.
Z2 = DegreeGroup(2)
R = GradedPolynomialRing(
    Z2, ("x", "y"), (Z2.degree((1, 0)), Z2.degree((0, 1))), (1, 1)
)

window = DegreeWindow.box(Z2, (0, 0), (3, 3))

# the free module of rank one: every component in the positive quadrant
# is one-dimensional (the single monomial of that bidegree)
F = GradedModulePresentation.free(R, [Z2.zero()])
print("free rank-1 module over the fine plane")
for g in window:
    print("  dim at %s = %d" % (g, F.dim(g)))

# a quotient by a monomial ideal: dimensions drop to 0 where a generator
# divides the monomial
I = MonomialIdeal(R, [R.mono(x=2), R.mono(x=1, y=1)])
Q = GradedModulePresentation.quotient_by_ideal(I)
print("\nquotient by (x^2, xy)")
print("  surviving monomials in the window:")
for g in window:
    if Q.dim(g):
        print("    %s" % (g,))

# gradings may carry torsion: Z + Z/2 with deg x = (1;1), deg y = (1;0).
# A degree prints as (free part; torsion part).
G = DegreeGroup(1, (2,))
Rm = GradedPolynomialRing(
    G, ("x", "y"), (G.degree((1,), (1,)), G.degree((1,), (0,))), (1,)
)
Fm = GradedModulePresentation.free(Rm, [G.zero()])
print("\nmixed grading Z + Z/2: monomials of total degree d split by parity")
for g in DegreeWindow.box(G, 0, 3):
    print("  dim at %s = %d" % (g, Fm.dim(g)))

# Hilbert tables are the tabulated form the rest of the package passes
# around; hilbert() fills one over a window
table = Q.hilbert(window)
print("\ntable totals: quotient has %d monomials in the window" % table.total())
