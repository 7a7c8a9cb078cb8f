import warnings

import numpy as np
import pytest

from tables import FIRST_ZEROS

from rsext.errors import AccuracyWarning, BudgetExceededError, DomainError
from rsext.zeros import (
    CriticalZero,
    ZeroKind,
    ZeroSeparationWarning,
    _component,
    critical_zeros,
    link_roots,
    scan_line,
    trace_curves,
)

# zeros of the M = 1 approximation, which is what the curve tracer samples
M1_ZEROS = [14.140863, 21.023047, 25.012177, 30.426122, 32.935263, 37.587348, 40.918572]


@pytest.fixture(autouse=True)
def _quiet():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", AccuracyWarning)
        yield


class TestScanLine:
    @pytest.mark.parametrize("t", [25.3, 100.0, 777.7, 7000.0])
    def test_im_root_at_zero(self, t):
        roots = scan_line(t, kind=ZeroKind.IM)
        assert min(abs(r) for r in roots) <= 1e-12

    @pytest.mark.parametrize("t", [25.3, 100.0, 777.7])
    def test_im_roots_symmetric(self, t):
        roots = np.array(sorted(scan_line(t, kind=ZeroKind.IM)))
        assert np.allclose(roots, -roots[::-1], atol=1e-9)

    @pytest.mark.parametrize("kind", [ZeroKind.RE, ZeroKind.IM])
    def test_roots_are_roots(self, kind):
        for t in (30.0, 41.7, 212.0):
            for r in scan_line(t, kind=kind):
                assert abs(_component(t, r, kind, 1)) <= 1e-9

    def test_string_kind(self):
        assert scan_line(100.0, kind="im") == scan_line(100.0, kind=ZeroKind.IM)

    def test_re_near_zero(self):
        # the Re = 0 curve bends back at the zero: a symmetric pair on one side, none on the other
        t0 = M1_ZEROS[0]
        roots = scan_line(t0 - 0.05, (-0.6, 0.6), 121, ZeroKind.RE)
        assert len(roots) == 2 and abs(roots[0] + roots[1]) <= 1e-9
        assert 0.1 < roots[1] < 0.4
        assert scan_line(t0 + 0.05, (-0.6, 0.6), 121, ZeroKind.RE) == []

    @pytest.mark.parametrize("rng", [(-1.2, 0.5), (0.5, 0.2)])
    def test_bad_range(self, rng):
        with pytest.raises(DomainError):
            scan_line(100.0, rng)

    def test_too_few_samples(self):
        with pytest.raises(DomainError):
            scan_line(100.0, n_samples=4)

    def test_low_t_warns_once(self):
        with warnings.catch_warnings(record=True) as w:
            warnings.simplefilter("always")
            scan_line(15.0)
        assert sum(issubclass(x.category, AccuracyWarning) for x in w) == 1


class TestCriticalZeros:
    @pytest.mark.parametrize("dt", [0.01, 0.05, 0.1])
    def test_first_seven(self, dt):
        zs = critical_zeros((13.0, 42.0), dt)
        assert len(zs) == 7
        for z, ref in zip(zs, FIRST_ZEROS):
            assert abs(z.t - ref) <= 0.01
            assert z.refinement_width == pytest.approx(1e-9)

    def test_empty(self):
        assert critical_zeros((15.0, 20.0)) == []

    def test_m1(self):
        zs = critical_zeros((13.0, 42.0), 0.05, M=1)
        assert [round(z.t, 6) for z in zs] == M1_ZEROS

    def test_type(self):
        zs = critical_zeros((20.0, 22.0))
        assert len(zs) == 1 and isinstance(zs[0], CriticalZero)

    def test_close_pair(self):
        zs = critical_zeros((7005.0, 7005.2), 0.005)
        assert len(zs) == 2
        assert zs[1].t - zs[0].t < 0.05

    def test_dip_warning(self):
        # a coarse grid steps over the close pair near 7005.08
        with warnings.catch_warnings(record=True) as w:
            warnings.simplefilter("always")
            zs = critical_zeros((7004.95, 7005.35), 0.1, dip_threshold=0.5)
        assert len(zs) == 0
        assert any(issubclass(x.category, ZeroSeparationWarning) for x in w)

    def test_range_errors(self):
        with pytest.raises(DomainError):
            critical_zeros((42.0, 13.0))
        with pytest.raises(DomainError):
            critical_zeros((13.0, 42.0), 0.0)


class TestLinking:
    def test_two_tracks(self):
        lines = [(0.0, [0.1, -0.3]), (0.1, [-0.28, 0.12]), (0.2, [0.13, -0.25])]
        curves = link_roots(lines, ZeroKind.IM, 0.1, 0.1)
        assert len(curves) == 2
        eps = sorted([p[1] for p in c.points] for c in curves)
        assert eps == [[-0.3, -0.28, -0.25], [0.1, 0.12, 0.13]]

    def test_jump_starts_new_curve(self):
        lines = [(0.0, [0.0]), (0.1, [0.5])]
        assert len(link_roots(lines, ZeroKind.RE, 0.1, 0.1)) == 2

    def test_nearest_wins(self):
        lines = [(0.0, [0.0]), (0.1, [0.05, 0.02])]
        curves = link_roots(lines, ZeroKind.RE, 0.1, 0.1)
        assert curves[0].points == [(0.0, 0.0), (0.1, 0.02)]
        assert len(curves) == 2

    def test_gap_ends_curve(self):
        lines = [(0.0, [0.0]), (0.1, []), (0.2, [0.0])]
        assert len(link_roots(lines, ZeroKind.IM, 0.1, 0.1)) == 2


class TestTrace:
    def test_single_line(self):
        curves = trace_curves((100.0, 100.0), 0.1)
        assert all(len(c.points) == 1 for c in curves)
        assert {c.points[0][0] for c in curves} == {100.0}

    def test_im_axis_curve(self):
        curves = trace_curves((100.0, 101.0), 0.05)
        axis = [c for c in curves if all(abs(e) < 1e-12 for _, e in c.points)]
        assert len(axis) == 1 and len(axis[0].points) == 21
        assert axis[0].scan_dt == 0.05 and axis[0].kind is ZeroKind.IM

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            trace_curves((20.0, 200.0), 0.01, point_budget=1000)

    def test_parallel_matches_sequential(self):
        args = ((30.0, 34.0), 0.05, (-0.5, 0.5), 31, ZeroKind.RE)
        seq = trace_curves(*args)
        par = trace_curves(*args, parallelism=3)
        assert [c.points for c in seq] == [c.points for c in par]

    @pytest.mark.parametrize("t0", M1_ZEROS)
    def test_re_curves_cross_line_at_zero(self, t0):
        # fit t = a + b eps^2 + c eps^4 to the Re = 0 points near the zero
        dt = 0.02
        curves = trace_curves((t0 - 0.4, t0 + 0.4), dt, (-0.4, 0.4), 61, ZeroKind.RE)
        pts = np.array([p for c in curves for p in c.points if abs(p[0] - t0) < 0.4 and abs(p[1]) < 0.4])
        assert len(pts) >= 4
        A = np.stack([np.ones(len(pts)), pts[:, 1] ** 2, pts[:, 1] ** 4], axis=1)
        coef, *_ = np.linalg.lstsq(A, pts[:, 0], rcond=None)
        assert abs(coef[0] - t0) <= dt
