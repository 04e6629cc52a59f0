"""
Local cohomology by two independent routes
==========================================

Route one assembles the alternating localization complex degreewise, with
each localization modeled by a certified stabilized ray.  Route two takes
the limit of Ext against powers of the ideal.  They are computed by
disjoint code paths, so agreement between them is a real check and not a
tautology.

The ray route needs finite-dimensional localization components at each
degree.  Where that fails - a free module over the standard-graded plane
is the basic offender - the tool raises rather than truncating silently,
and the tower route remains available.
"""

from coarsecoh import (
    DegreeGroup,
    DegreeWindow,
    GradedModulePresentation,
    GradedPolynomialRing,
    MonomialIdeal,
    UnstabilizedError,
    local_cohomology,
)

# the line: K[x] supported at (x).  Top cohomology is the Laurent tail.
Z1 = DegreeGroup(1)
R = GradedPolynomialRing(Z1, ("x",), (Z1.degree((1,)),), (1,))
a = MonomialIdeal(R, [R.mono(x=1)])
F = GradedModulePresentation.free(R, [Z1.zero()])
w = DegreeWindow.box(Z1, -4, 2)

ray = local_cohomology(a, 1, F, w, route="cech", ray_cap=8)
tower = local_cohomology(a, 1, F, w, route="ext", n_cap=8)
print("H^1 on the line, both routes:")
for g in w:
    mark = "" if ray.get(g) == tower.get(g) else "   <-- DISAGREE"
    print("  %s  ray %d  tower %d%s" % (g, ray.get(g), tower.get(g), mark))

# the fine plane: K[x,y] graded by Z^2, supported at (x,y).  Components
# of every localization are at most one-dimensional, so the ray route
# applies, and the top cohomology sits exactly on the negative quadrant
# shifted off the axes.
Z2 = DegreeGroup(2)
R2 = GradedPolynomialRing(
    Z2, ("x", "y"), (Z2.degree((1, 0)), Z2.degree((0, 1))), (1, 1)
)
m2 = MonomialIdeal(R2, [R2.mono(x=1), R2.mono(y=1)])
F2 = GradedModulePresentation.free(R2, [Z2.zero()])
w2 = DegreeWindow.box(Z2, (-2, -2), (0, 0))
h2_ray = local_cohomology(m2, 2, F2, w2, route="cech")
h2_tower = local_cohomology(m2, 2, F2, w2, route="ext", n_cap=7)
print("\nH^2 on the fine plane (nonzero cells):")
for g in w2:
    if h2_ray.get(g) or h2_tower.get(g):
        print("  %s  ray %d  tower %d" % (g, h2_ray.get(g), h2_tower.get(g)))

# the honest refusal: coarsen the grading to standard Z and the single
# localization component (K[x,y]_y)_0 already contains 1, x/y, x^2/y^2, ...
# so no finite ray can stabilize.  The error carries the growing ranks.
Rs = GradedPolynomialRing(
    Z1, ("x", "y"), (Z1.degree((1,)), Z1.degree((1,))), (1,)
)
ms = MonomialIdeal(Rs, [Rs.mono(x=1), Rs.mono(y=1)])
Fs = GradedModulePresentation.free(Rs, [Z1.zero()])
try:
    local_cohomology(ms, 2, Fs, DegreeWindow.box(Z1, -2, 0), route="cech")
except UnstabilizedError as err:
    print("\nstd-graded plane, ray route: refused as it must be")
    print("  " + str(err))
    print("  trajectory of ranks:", err.trajectory)

# the tower route has no such problem there
h2_std = local_cohomology(ms, 2, Fs, DegreeWindow.box(Z1, -4, 0), route="ext", n_cap=7)
print("\nstd-graded plane, tower route:")
for g, d in h2_std.rows():
    print("  %s  %d" % (g, d))
