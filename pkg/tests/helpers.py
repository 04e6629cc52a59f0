"""Shared builders for the test suite: the handful of standard rings and
modules that the checks revolve around."""

from __future__ import annotations

from coarsecoh.grading import DegreeGroup, DegreeWindow, GroupEpimorphism
from coarsecoh.ringcore import (
    GradedModulePresentation,
    GradedPolynomialRing,
    MonomialIdeal,
    Poly,
)

Z1 = DegreeGroup(1)
Z2 = DegreeGroup(2)
Z_Z2 = DegreeGroup(1, (2,))


def ring_x():
    """K[x], standard Z grading."""
    return GradedPolynomialRing(Z1, ("x",), (Z1.degree((1,)),), (1,))


def std_ring_xy():
    """K[x,y], both variables in degree 1."""
    return GradedPolynomialRing(
        Z1, ("x", "y"), (Z1.degree((1,)), Z1.degree((1,))), (1,)
    )


def fine_ring_xy():
    """K[x,y] with its fine Z^2 grading."""
    return GradedPolynomialRing(
        Z2, ("x", "y"), (Z2.degree((1, 0)), Z2.degree((0, 1))), (1, 1)
    )


def mixed_ring_xy():
    """K[x,y] graded by Z + Z/2 with deg x = (1;1), deg y = (1;0)."""
    return GradedPolynomialRing(
        Z_Z2,
        ("x", "y"),
        (Z_Z2.degree((1,), (1,)), Z_Z2.degree((1,), (0,))),
        (1,),
    )


def sum_map():
    """Z^2 onto Z, (a,b) to a+b."""
    return GroupEpimorphism(Z2, Z1, (Z1.degree((1,)), Z1.degree((1,))))


def forget_torsion_map():
    """Z + Z/2 onto Z, projection away from the torsion summand."""
    return GroupEpimorphism(Z_Z2, Z1, (Z1.degree((1,)), Z1.zero()))


def maximal_ideal(ring):
    gens = []
    for i in range(ring.nvars):
        e = [0] * ring.nvars
        e[i] = 1
        gens.append(tuple(e))
    return MonomialIdeal(ring, gens)


def quotient_module(ring, *gen_monomials):
    return GradedModulePresentation.quotient_by_ideal(
        MonomialIdeal(ring, [ring.mono(**g) for g in gen_monomials])
    )


def window1(lo, hi):
    return DegreeWindow.box(Z1, (lo,), (hi,))


def window2(lo, hi):
    return DegreeWindow.box(Z2, lo, hi)
