"""Hilbert tables, the free-shift verifier, and the brute-force oracles."""

import pytest

from multisec.core import (
    RING_R,
    RING_T,
    CanonicalReport,
    MultiSectionSetup,
    canonical_report,
    compute_U,
)
from multisec.geometry import (
    NoOracle,
    build_blowup_p2_point,
    build_product,
    h0,
    vanishing_dim,
)
from multisec.hilbert import (
    MARKER_OMEGA_R,
    MARKER_OMEGA_T,
    MARKER_R,
    MARKER_T,
    DegreeWindow,
    HilbertTable,
    ReportNotFree,
    admissible,
    bruteforce_product_dim,
    bruteforce_vanishing_dim,
    default_window,
    hilbert,
    verify_free_shift,
)


def blowup_setup():
    return MultiSectionSetup(
        variety=build_blowup_p2_point(), divisors=((-1, 0), (0, 1))
    )


def product_setup():
    return MultiSectionSetup(
        variety=build_product(1, 2), divisors=((1, 1), (1, 2))
    )


class TestTables:
    def test_blowup_T_values(self):
        setup = blowup_setup()
        window = DegreeWindow(u_set=compute_U(setup), lo=(0, 0), hi=(2, 2))
        table = hilbert(setup, MARKER_T, window).as_dict()
        assert table[(1, 1)] == 2  # two lines through the center
        assert table[(0, 0)] == 1  # global functions
        assert table[(2, 1)] == 0  # no line with a double point

    def test_blowup_omega_T_unit(self):
        setup = blowup_setup()
        window = DegreeWindow(u_set=compute_U(setup), lo=(1, 0), hi=(2, 4))
        table = hilbert(setup, MARKER_OMEGA_T, window).as_dict()
        # K + D_1 + 3 D_2 = 0
        assert table[(1, 3)] == 1

    def test_T_restricted_to_nonnegative_degrees(self):
        setup = blowup_setup()
        window = DegreeWindow(u_set=compute_U(setup), lo=(-2, -2), hi=(1, 1))
        table = hilbert(setup, MARKER_T, window)
        assert all(all(n >= 0 for n in degree) for degree, _ in table.entries)

    def test_omega_T_window_respects_U(self):
        setup = blowup_setup()
        window = DegreeWindow(u_set=compute_U(setup), lo=(-2, -2), hi=(3, 3))
        table = hilbert(setup, MARKER_OMEGA_T, window)
        assert table.entries
        assert all(degree[0] >= 1 for degree, _ in table.entries)

    def test_R_marker_covers_negative_degrees(self):
        setup = blowup_setup()
        window = DegreeWindow(u_set=frozenset(), lo=(-2, 0), hi=(0, 2))
        table = hilbert(setup, MARKER_R, window).as_dict()
        # degree (-1, 2): class is E + 2A, sections are all conics
        assert table[(-1, 2)] == 6

    def test_product_table_entry(self):
        setup = product_setup()
        window = DegreeWindow(u_set=compute_U(setup), lo=(0, 0), hi=(1, 1))
        table = hilbert(setup, MARKER_T, window).as_dict()
        assert table[(1, 1)] == h0(setup.variety, (2, 3))
        assert len(table) == 4

    def test_empty_window(self):
        setup = blowup_setup()
        window = DegreeWindow(u_set=frozenset(), lo=(1, 1), hi=(0, 0))
        table = hilbert(setup, MARKER_T, window)
        assert table.entries == ()
        assert table.to_csv() == "n_1,n_2,dim\n"

    def test_csv_format(self):
        table = HilbertTable(
            marker=MARKER_T,
            arity=2,
            entries=(((0, 0), 1), ((0, 1), 3)),
        )
        assert table.to_csv() == "n_1,n_2,dim\n0,0,1\n0,1,3\n"

    def test_csv_rows_sorted(self):
        setup = blowup_setup()
        window = DegreeWindow(u_set=frozenset(), lo=(0, 0), hi=(2, 2))
        lines = hilbert(setup, MARKER_T, window).to_csv().splitlines()
        degrees = [tuple(map(int, line.split(",")[:2])) for line in lines[1:]]
        assert degrees == sorted(degrees)

    def test_bad_marker_rejected(self):
        with pytest.raises(ValueError):
            hilbert(
                blowup_setup(),
                "S",
                DegreeWindow(u_set=frozenset(), lo=(0, 0), hi=(1, 1)),
            )

    def test_window_arity_checked(self):
        with pytest.raises(ValueError):
            hilbert(
                blowup_setup(),
                MARKER_T,
                DegreeWindow(u_set=frozenset(), lo=(0,), hi=(1,)),
            )

    def test_superadditivity_on_T(self):
        setup = blowup_setup()
        window = DegreeWindow(u_set=frozenset(), lo=(0, 0), hi=(3, 3))
        table = hilbert(setup, MARKER_T, window).as_dict()
        for a in table:
            for b in table:
                total = (a[0] + b[0], a[1] + b[1])
                if total in table and table[a] >= 1 and table[b] >= 1:
                    assert table[total] >= max(table[a], table[b])

    def test_default_windows(self):
        setup = blowup_setup()
        assert default_window(setup, MARKER_T).lo == (0, 0)
        assert default_window(setup, MARKER_R).lo == (-4, -4)
        omega = default_window(setup, MARKER_OMEGA_T)
        assert omega.lo == (1, -4)  # U = {1}
        assert omega.hi == (8, 8)


class TestAdmissibility:
    def test_markers(self):
        u = frozenset({1})
        assert admissible(MARKER_T, u, (0, -0))
        assert not admissible(MARKER_T, u, (-1, 0))
        assert admissible(MARKER_R, u, (-5, -5))
        assert admissible(MARKER_OMEGA_R, u, (-5, -5))
        assert admissible(MARKER_OMEGA_T, u, (1, -7))
        assert not admissible(MARKER_OMEGA_T, u, (0, 3))


class TestVerifyFreeShift:
    def test_blowup_T_box_passes(self):
        setup = blowup_setup()
        report = canonical_report(setup, RING_T)
        window = DegreeWindow(u_set=compute_U(setup), lo=(1, -2), hi=(6, 8))
        verdict = verify_free_shift(setup, report, window)
        assert verdict.passed
        assert verdict.witness is None
        assert verdict.cells == 6 * 11

    def test_blowup_R_box_passes(self):
        setup = blowup_setup()
        report = canonical_report(setup, RING_R)
        window = DegreeWindow(u_set=frozenset(), lo=(-4, -4), hi=(6, 6))
        assert verify_free_shift(setup, report, window).passed

    def test_wrong_shift_fails_with_witness(self):
        setup = blowup_setup()
        wrong = CanonicalReport(
            ring=RING_T,
            omega_class=(0,),
            free=True,
            shift=(-1, -2),
            shift_solution_lattice=(),
        )
        window = DegreeWindow(u_set=compute_U(setup), lo=(1, -2), hi=(6, 8))
        verdict = verify_free_shift(setup, wrong, window)
        assert not verdict.passed
        # first lexicographic mismatch: omega at (1,2) is zero but the
        # shifted ring piece sits at the origin with dimension one
        assert verdict.witness == (1, 2)

    def test_truncation_is_real(self):
        # just outside the omega_T window (n_1 = 0) the sheaf cohomology is
        # nonzero, so the intersection with the coordinate ring genuinely
        # truncates the module
        setup = blowup_setup()
        variety = setup.variety
        k = variety.canonical_class
        degree = (0, 6)
        assert not admissible(MARKER_OMEGA_T, compute_U(setup), degree)
        value = h0(
            variety,
            tuple(
                k[i] + degree[0] * setup.divisors[0][i] + degree[1] * setup.divisors[1][i]
                for i in range(2)
            ),
        )
        assert value > 0

    def test_requires_free_report(self):
        setup = blowup_setup()
        not_free = CanonicalReport(
            ring=RING_T,
            omega_class=(1,),
            free=False,
            shift=None,
            shift_solution_lattice=(),
        )
        with pytest.raises(ReportNotFree):
            verify_free_shift(
                setup,
                not_free,
                DegreeWindow(u_set=frozenset(), lo=(0, 0), hi=(1, 1)),
            )

    def test_product_pass_and_perturbations_fail(self):
        setup = product_setup()
        u = compute_U(setup)
        report = canonical_report(setup, RING_T)
        window = DegreeWindow(u_set=u, lo=(0, 0), hi=(5, 5))
        assert verify_free_shift(setup, report, window).passed
        for i in range(2):
            for delta in (-1, 1):
                shift = list(report.shift)
                shift[i] += delta
                wrong = CanonicalReport(
                    ring=RING_T,
                    omega_class=report.omega_class,
                    free=True,
                    shift=tuple(shift),
                    shift_solution_lattice=(),
                )
                verdict = verify_free_shift(setup, wrong, window)
                assert not verdict.passed and verdict.witness is not None


class TestBruteForceOracles:
    def test_product_dims(self):
        assert bruteforce_product_dim(1, 2, 2, 1) == 9
        assert bruteforce_product_dim(1, 1, 0, 0) == 1
        assert bruteforce_product_dim(2, 1, 1, 3) == 12

    def test_product_negative_rejected(self):
        with pytest.raises(ValueError):
            bruteforce_product_dim(1, 1, -1, 0)

    def test_product_bound(self):
        with pytest.raises(ValueError):
            bruteforce_product_dim(3, 3, 400, 400)

    def test_product_agrees_with_oracle(self):
        variety = build_product(1, 2)
        for p in range(0, 9):
            for q in range(0, 9):
                assert bruteforce_product_dim(1, 2, p, q) == h0(variety, (p, q))

    def test_vanishing_examples(self):
        assert bruteforce_vanishing_dim(2, 1) == 5
        assert bruteforce_vanishing_dim(4, 0) == 15
        assert bruteforce_vanishing_dim(1, 2) == 0

    def test_vanishing_negative_rejected(self):
        with pytest.raises(ValueError):
            bruteforce_vanishing_dim(-1, 0)
        with pytest.raises(ValueError):
            bruteforce_vanishing_dim(2, -1)

    def test_vanishing_agrees_with_geometry_oracle(self):
        # the full derivative matrix of all orders below `order` against the
        # top-order-only computation used by the geometry oracle
        for degree in range(0, 7):
            for order in range(0, 7):
                assert bruteforce_vanishing_dim(degree, order) == vanishing_dim(
                    degree, order
                )

    def test_vanishing_agrees_with_blowup_oracle_after_translation(self):
        variety = build_blowup_p2_point()
        for n1 in range(0, 6):
            for n2 in range(0, 6):
                assert h0(variety, (-n1, n2)) == bruteforce_vanishing_dim(n2, n1)

    def test_no_oracle_propagates(self):
        from multisec.cones import Cone
        from multisec.geometry import VarietyPresentation

        bare = VarietyPresentation(
            name="bare",
            dim_x=1,
            class_rank=1,
            canonical_class=(-2,),
            eff_cone=Cone([(1,)]),
            amp_cone=Cone([(1,)]),
        )
        setup = MultiSectionSetup(variety=bare, divisors=((1,),))
        with pytest.raises(NoOracle):
            hilbert(
                setup,
                MARKER_T,
                DegreeWindow(u_set=frozenset(), lo=(0,), hi=(1,)),
            )


class TestOmegaSupport:
    def test_all_entries_inside_window(self):
        setup = blowup_setup()
        u = compute_U(setup)
        window = DegreeWindow(u_set=u, lo=(-3, -3), hi=(4, 4))
        table = hilbert(setup, MARKER_OMEGA_T, window)
        for degree, _ in table.entries:
            assert all(degree[i - 1] >= 1 for i in u)
