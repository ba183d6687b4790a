"""Time-domain integrator: grid rules, RK4 convergence, cross-checks."""

import math

import numpy as np
import pytest

from photon_router import (
    Channel,
    ChannelAmplitudes,
    GridTooCoarse,
    NonFinite,
    ParameterError,
    PulseNotContained,
    RouterParams,
    TimeGrid,
    WavePacket,
    cavity_amplitude,
    default_grid,
    integrate_cavity,
    mean_output_two,
    output_flux,
    packet_output_numbers,
    time_domain_report,
    time_pulse,
)

PI = math.pi


def _pair(phi: float, mean_n: float = 1.0, Omega: float = 0.3) -> list[WavePacket]:
    return [
        WavePacket(Channel.R1, mean_n=mean_n, Omega=Omega),
        WavePacket(Channel.L1, mean_n=mean_n, Omega=Omega, phase=phi),
    ]


class TestTimeGrid:
    def test_exact_division(self):
        grid = TimeGrid(0.0, 10.0, 0.01)
        assert grid.n_steps == 1000
        assert grid.step == pytest.approx(0.01, rel=1e-15)
        assert grid.times.shape == (1001,)
        assert grid.times[0] == 0.0 and grid.times[-1] == 10.0

    def test_halving_dt_doubles_steps(self):
        # the rounding guard keeps 40 / 0.005 from ceiling up to 8001
        assert TimeGrid(-20.0, 20.0, 0.005).n_steps == 8000
        assert TimeGrid(-20.0, 20.0, 0.0025).n_steps == 16000

    def test_dt_is_upper_bound(self):
        grid = TimeGrid(0.0, 1.0, 0.0003)
        assert grid.n_steps == 3334
        assert grid.step <= 0.0003

    def test_rejects_bad_windows(self):
        with pytest.raises(ParameterError):
            TimeGrid(1.0, 1.0, 0.01)
        with pytest.raises(ParameterError):
            TimeGrid(2.0, 1.0, 0.01)
        with pytest.raises(ParameterError):
            TimeGrid(0.0, 1.0, 0.0)
        with pytest.raises(NonFinite):
            TimeGrid(0.0, math.nan, 0.01)

    def test_default_grid_covers_pulse_and_ringdown(self):
        params = RouterParams()
        grid = default_grid(params, [WavePacket(Channel.R1, 1.0, Omega=0.3)])
        assert grid.t_start == pytest.approx(-40.0)
        assert grid.t_end == pytest.approx(40.0 + 11.0)
        assert grid.dt <= 0.01 / params.total_decay


class TestGridGuards:
    def test_step_above_decay_limit(self):
        slow = WavePacket(Channel.R1, 1.0, Omega=0.05)
        drives = [(Channel.R1, lambda t: time_pulse(slow, t))]
        with pytest.raises(GridTooCoarse):
            integrate_cavity(RouterParams(), drives, TimeGrid(-100.0, 100.0, 0.02))

    def test_too_few_steps(self):
        drives = [(Channel.R1, lambda t: time_pulse(
            WavePacket(Channel.R1, 1.0, Omega=20.0), t, t0=0.45))]
        with pytest.raises(GridTooCoarse):
            integrate_cavity(RouterParams(), drives, TimeGrid(0.0, 0.9, 0.001))


class TestTimePulse:
    def test_flux_normalisation(self):
        packet = WavePacket(Channel.R1, mean_n=1.0, Omega=0.3)
        grid = TimeGrid(-40.0, 40.0, 0.004)
        vals = time_pulse(packet, grid.times)
        w = np.full(grid.times.shape, grid.step)
        w[0] *= 0.5
        w[-1] *= 0.5
        assert float(np.dot(w, np.abs(vals) ** 2)) == pytest.approx(1.0, abs=1e-8)

    def test_envelope_width(self):
        packet = WavePacket(Channel.R1, mean_n=1.0, Omega=0.4)
        ratio = abs(complex(time_pulse(packet, 1.0 / 0.4))) / \
            abs(complex(time_pulse(packet, 0.0)))
        assert ratio == pytest.approx(math.exp(-1.0), rel=1e-12)

    def test_zero_packet(self):
        packet = WavePacket(Channel.R1, mean_n=0.0, Omega=0.3)
        assert complex(time_pulse(packet, 0.3)) == 0j

    def test_carrier(self):
        base = WavePacket(Channel.R1, mean_n=1.0, Omega=0.3)
        mod = WavePacket(Channel.R1, mean_n=1.0, Omega=0.3, omega0=2.0)
        t = 0.7
        want = complex(time_pulse(base, t)) * np.exp(-2.0j * t)
        assert complex(time_pulse(mod, t)) == pytest.approx(want, rel=1e-12)


class TestIntegrateCavity:
    def test_no_drive_stays_empty(self):
        traj = integrate_cavity(RouterParams(), [], TimeGrid(-10.0, 10.0, 0.004))
        assert np.all(traj == 0j)

    def test_destructive_pair_never_excites(self):
        packet = WavePacket(Channel.R1, mean_n=1.0, Omega=0.3)
        flipped = WavePacket(Channel.L1, mean_n=1.0, Omega=0.3, phase=PI)
        drives = [(Channel.R1, lambda t: time_pulse(packet, t)),
                  (Channel.L1, lambda t: time_pulse(flipped, t))]
        traj = integrate_cavity(RouterParams(gamma2=0.6, gamma_c=0.2), drives,
                                TimeGrid(-40.0, 40.0, 0.004))
        assert float(np.max(np.abs(traj))) <= 1e-12

    def test_unconfined_drive_rejected(self):
        drives = [(Channel.R1, lambda t: np.ones_like(t))]
        with pytest.raises(PulseNotContained):
            integrate_cavity(RouterParams(), drives, TimeGrid(-10.0, 10.0, 0.004))

    def test_plateau_matches_stationary_response(self):
        # a pulse much longer than the cavity lifetime tracks the
        # monochromatic solution at its instantaneous amplitude
        params = RouterParams(omega_c=0.3)
        slow = WavePacket(Channel.R1, mean_n=1.0, Omega=0.01)
        grid = TimeGrid(-1200.0, 1211.0, 0.005)
        traj = integrate_cavity(
            params, [(Channel.R1, lambda t: time_pulse(slow, t))], grid)
        peak_idx = int(np.argmin(np.abs(grid.times)))
        c_ss = cavity_amplitude(
            params, ChannelAmplitudes(r1=complex(time_pulse(slow, 0.0))), 0.3)
        assert abs(traj[peak_idx]) ** 2 == pytest.approx(abs(c_ss) ** 2, rel=1e-4)

    def test_rk4_order(self):
        params = RouterParams()
        wide = WavePacket(Channel.R1, mean_n=1.0, Omega=0.5)
        drive = [(Channel.R1, lambda t: time_pulse(wide, t))]
        c_h = integrate_cavity(params, drive, TimeGrid(-20.0, 20.0, 0.005))
        c_h2 = integrate_cavity(params, drive, TimeGrid(-20.0, 20.0, 0.0025))
        c_ref = integrate_cavity(params, drive, TimeGrid(-20.0, 20.0, 0.000625))
        e1 = float(np.max(np.abs(c_h - c_ref[::8])))
        e2 = float(np.max(np.abs(c_h2[::2] - c_ref[::8])))
        assert math.log2(e1 / e2) >= 3.8


class TestOutputFlux:
    def test_shape_mismatch_rejected(self):
        grid = TimeGrid(-10.0, 10.0, 0.004)
        with pytest.raises(ParameterError):
            output_flux(RouterParams(), [], np.zeros(17, dtype=complex), grid)


class TestTimeDomainReport:
    def test_zero_input(self):
        rep = time_domain_report(
            RouterParams(), [WavePacket(Channel.R1, mean_n=0.0, Omega=0.3)])
        assert rep.n_total == 0.0
        assert rep.n_in == pytest.approx(0.0, abs=1e-15)

    def test_lossless_conservation(self):
        rep = time_domain_report(RouterParams(gamma2=0.8), _pair(1.1))
        assert abs(rep.loss) <= 1e-6 * rep.n_in

    def test_narrow_band_matches_closed_form(self):
        params = RouterParams()
        rep = time_domain_report(params, _pair(PI / 2, Omega=0.01))
        mono = mean_output_two(params, 1.0, 0.0, PI / 2)
        for ch in Channel:
            assert abs(rep.n_out[ch] - mono.n_out[ch]) <= 1e-3 * rep.n_in

    def test_matches_frequency_domain_broadband(self):
        params = RouterParams(gamma_c=0.1)
        packets = _pair(PI / 2)
        td = time_domain_report(params, packets)
        fd = packet_output_numbers(params, packets)
        for ch in Channel:
            assert abs(td.n_out[ch] - fd.n_out[ch]) <= 1e-4 * td.n_in
        assert abs(td.n_total - fd.n_total) <= 1e-4 * td.n_in

    def test_amplitude_linearity(self):
        params = RouterParams(gamma_c=0.1)
        base = time_domain_report(params, _pair(1.1))
        s = 1.7
        scaled = time_domain_report(params, _pair(1.1, mean_n=s * s))
        for ch in Channel:
            want = s * s * base.n_out[ch]
            assert abs(scaled.n_out[ch] - want) <= 1e-12 * max(want, 1.0)

    def test_rotating_frame_detunes_consistently(self):
        # a carrier at omega0 with the cavity offset by the same amount is
        # the baseband problem; 64.25 - 64 is exact in binary so the two
        # parameter sets are bitwise identical after rotation
        packets = [WavePacket(Channel.R1, mean_n=1.0, Omega=0.3, omega0=64.0),
                   WavePacket(Channel.L1, mean_n=1.0, Omega=0.3, omega0=64.0,
                              phase=0.8)]
        lab = time_domain_report(RouterParams(omega_c=64.25), packets)
        base = time_domain_report(RouterParams(omega_c=0.25), _pair(0.8))
        for ch in Channel:
            assert lab.n_out[ch] == base.n_out[ch]

    def test_envelope_outside_window_rejected(self):
        with pytest.raises(PulseNotContained):
            time_domain_report(RouterParams(), _pair(0.0),
                               grid=TimeGrid(-1.0, 30.0, 0.004))

    def test_unfinished_ringdown_rejected(self):
        params = RouterParams(gamma1=0.05, gamma2=0.0)
        with pytest.raises(PulseNotContained):
            time_domain_report(
                params, [WavePacket(Channel.R1, mean_n=1.0, Omega=0.3)],
                grid=TimeGrid(-40.0, 45.0, 0.05))
