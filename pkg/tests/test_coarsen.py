from __future__ import annotations

import pytest

from coarsecoh.coarsen import (
    check_commutation,
    check_gamma_identity,
    coarsen_module,
    coarsen_ring,
    coarsen_table,
    compare_tables,
    derive_coarse_certificate,
    hom_comparison,
)
from coarsecoh.errors import CoarseningRefusal
from coarsecoh.grading import DegreeWindow, GroupEpimorphism
from coarsecoh.ringcore import (
    GradedModulePresentation,
    HilbertTable,
    MonomialIdeal,
)

from helpers import (
    Z1,
    Z2,
    Z_Z2,
    fine_ring_xy,
    forget_torsion_map,
    maximal_ideal,
    mixed_ring_xy,
    ring_x,
    sum_map,
    window1,
    window2,
)


def mixed_box(lo, hi):
    return DegreeWindow.box(Z_Z2, lo, hi)


# ---------------------------------------------------------------------------
# Ring and module coarsening.
# ---------------------------------------------------------------------------


def test_certificate_for_sum_map():
    assert derive_coarse_certificate(fine_ring_xy(), sum_map()) == (1,)


def test_certificate_for_sign_flip():
    flip = GroupEpimorphism(Z1, Z1, [Z1.degree((-1,))])
    assert derive_coarse_certificate(ring_x(), flip) == (-1,)


def test_coarsen_ring_rejects_wrong_source():
    with pytest.raises(ValueError):
        coarsen_ring(fine_ring_xy(), forget_torsion_map())


def test_coarsened_module_components_are_fiber_sums():
    R = mixed_ring_xy()
    phi = forget_torsion_map()
    Rc = coarsen_ring(R, phi)
    M = GradedModulePresentation.quotient_by_ideal(MonomialIdeal(R, [R.mono(x=2)]))
    Mc = coarsen_module(M, Rc, phi)
    coarse = Mc.hilbert(window1(0, 3))
    fine = M.hilbert(mixed_box(0, 3))
    assert [v for _, v in coarse.rows()] == [1, 2, 2, 2]
    for h in window1(0, 3):
        assert coarse.get(h) == sum(fine.get(g) for g in phi.fiber(h, fine.window))


# ---------------------------------------------------------------------------
# Fiber sums of tables and their certificates.
# ---------------------------------------------------------------------------


def test_coarsen_table_finite_kernel_route():
    R = mixed_ring_xy()
    phi = forget_torsion_map()
    M = GradedModulePresentation.quotient_by_ideal(MonomialIdeal(R, [R.mono(x=2)]))
    table, cert = coarsen_table(M.hilbert(mixed_box(0, 3)), phi, window1(0, 3))
    assert cert.route == "finite-kernel"
    assert [v for _, v in table.rows()] == [1, 2, 2, 2]


def test_coarsen_table_support_route():
    R = fine_ring_xy()
    psi = sum_map()
    Rc = coarsen_ring(R, psi)
    F = GradedModulePresentation.free(R, [Z2.zero()])
    fine = F.hilbert(window2((0, 0), (3, 3)))
    table, cert = coarsen_table(
        fine, psi, window1(0, 3), fine_ring=R, coarse_ring=Rc
    )
    assert cert.route == "support-generators"
    assert [v for _, v in table.rows()] == [1, 2, 3, 4]


def test_coarsen_table_refusal_names_degree_and_flag_truncates():
    R = fine_ring_xy()
    psi = sum_map()
    Rc = coarsen_ring(R, psi)
    F = GradedModulePresentation.free(R, [Z2.zero()])
    fine = F.hilbert(window2((0, 0), (3, 3)))
    with pytest.raises(CoarseningRefusal) as err:
        coarsen_table(fine, psi, window1(0, 4), fine_ring=R, coarse_ring=Rc)
    assert err.value.h == Z1.degree((4,))
    # with the explicit assumption the sum is over the window only: of the
    # five fiber degrees over 4, two lie outside the 3x3 box, so the value
    # 3 undercounts the true dimension 5 -- exactly the hazard the flag
    # signs off on
    table, cert = coarsen_table(
        fine,
        psi,
        window1(0, 4),
        fine_ring=R,
        coarse_ring=Rc,
        assume_support_covered=True,
    )
    assert cert.route == "assumed"
    assert [v for _, v in table.rows()] == [1, 2, 3, 4, 3]


def test_compare_tables_reports_witnesses():
    w = window1(0, 2)
    a = HilbertTable(w, {h: 1 for h in w})
    values = {h: 1 for h in w}
    values[Z1.degree((1,))] = 2
    b = HilbertTable(w, values)
    agree, witnesses = compare_tables(a, b)
    assert not agree
    assert witnesses == [{"degree": "(1)", "coarsened": 1, "coarse": 2}]
    assert compare_tables(a, a) == (True, [])


# ---------------------------------------------------------------------------
# Element-level identities.
# ---------------------------------------------------------------------------


def test_gamma_identity_mixed_nilpotent():
    # x^2 = 0 kills the whole module, so the torsion submodule is all of
    # it on both sides; the check still pushes actual basis vectors
    R = mixed_ring_xy()
    phi = forget_torsion_map()
    M = GradedModulePresentation.quotient_by_ideal(MonomialIdeal(R, [R.mono(x=2)]))
    a = MonomialIdeal(R, [R.mono(x=1)])
    rep = check_gamma_identity(a, M, phi, mixed_box(0, 3), window1(0, 3))
    assert rep.ok
    assert [(r.fine_total, r.coarse_dim) for r in rep.rows] == [
        (1, 1),
        (2, 2),
        (2, 2),
        (2, 2),
    ]


def test_hom_comparison_mixed():
    R = mixed_ring_xy()
    phi = forget_torsion_map()
    Mx = GradedModulePresentation.quotient_by_ideal(MonomialIdeal(R, [R.mono(x=1)]))
    M2 = GradedModulePresentation.quotient_by_ideal(MonomialIdeal(R, [R.mono(x=2)]))
    rows = hom_comparison(Mx, M2, phi, mixed_box(0, 3), window1(0, 3))
    assert [(r.fine_total, r.coarse_dim) for r in rows] == [
        (0, 0),
        (1, 1),
        (1, 1),
        (1, 1),
    ]
    assert all(r.injective and r.surjective for r in rows)


# ---------------------------------------------------------------------------
# Commutation of local cohomology with coarsening.
# ---------------------------------------------------------------------------


def test_commutation_mixed_forget_torsion():
    R = mixed_ring_xy()
    phi = forget_torsion_map()
    F = GradedModulePresentation.free(R, [R.group.zero()])
    rep = check_commutation(
        maximal_ideal(R),
        F,
        phi,
        [0, 2],
        mixed_box(-3, 1),
        window1(-3, 1),
        n_cap=6,
    )
    assert rep.verdict == "COMMUTES_ON_WINDOW"
    assert [e.cert.route for e in rep.entries] == ["finite-kernel"] * 2
    top = rep.entries[1]
    assert top.i == 2
    assert [v for _, v in top.coarsened.rows()] == [2, 1, 0, 0, 0]
    assert [v for _, v in top.coarse.rows()] == [2, 1, 0, 0, 0]


def test_commutation_fine_sum_map():
    R = fine_ring_xy()
    psi = sum_map()
    F = GradedModulePresentation.free(R, [Z2.zero()])
    rep = check_commutation(
        maximal_ideal(R),
        F,
        psi,
        [0, 1, 2],
        window2((-2, -2), (0, 0)),
        window1(-2, 0),
        n_cap=7,
        assume_support_covered=True,
    )
    assert rep.verdict == "COMMUTES_ON_WINDOW"
    # the torsion table certifies through its generator degrees; the
    # higher tables carry no support data and lean on the flag
    assert [e.cert.route for e in rep.entries] == [
        "support-generators",
        "assumed",
        "assumed",
    ]
    assert [v for _, v in rep.entries[2].coarsened.rows()] == [1, 0, 0]
    assert all(e.agree for e in rep.entries)


def test_commutation_higher_needs_flag_under_infinite_kernel():
    R = fine_ring_xy()
    psi = sum_map()
    F = GradedModulePresentation.free(R, [Z2.zero()])
    with pytest.raises(CoarseningRefusal):
        check_commutation(
            maximal_ideal(R),
            F,
            psi,
            [1],
            window2((-2, -2), (0, 0)),
            window1(-2, 0),
            n_cap=6,
        )


def test_commutation_unstabilized_verdict():
    R = fine_ring_xy()
    psi = sum_map()
    F = GradedModulePresentation.free(R, [Z2.zero()])
    rep = check_commutation(
        maximal_ideal(R),
        F,
        psi,
        [2],
        window2((-1, -1), (0, 0)),
        window1(-1, 0),
        n_cap=2,
        assume_support_covered=True,
    )
    assert rep.verdict == "UNSTABILIZED"
    assert rep.unstable is not None
    assert rep.unstable["i"] == 2
    assert len(rep.unstable["trajectory"]) == 2
