"""Smoke test for the spiketyke extension module.

Build and install first:
    maturin build --release -m crates/py/Cargo.toml -o dist && pip install dist/spiketyke-*.whl
then run:
    python python/smoke_test.py
"""

import math

import spiketyke as st


def close(a, b, rel=1e-12):
    return a == b or abs(a - b) <= rel * max(abs(a), abs(b))


def main():
    c = st.PhysicalConstants()
    assert c.h == 6.6261e-34 and c.c == 2.9979e8
    assert st.PhysicalConstants.prose().c == 3e8

    ed = st.planck_energy_density(500e-9, 6000.0)
    rad = st.planck_radiance(500e-9, 6000.0)
    assert close(ed / rad, 4.0 / c.c)

    curve = st.sample_curve(st.WavelengthGrid(100e-9, 1e-9, 2901), 6000.0)
    assert 2.88e-3 <= curve.peak_wavelength() * 6000.0 <= 2.92e-3

    e = 1.60218e-19
    assert close(st.smallest_resistance(e), c.h / e**2)
    assert close(st.quantized_resistance(7, e), 7 * st.smallest_resistance(e))
    assert close(st.tyke_potential(1e-9, e), 1e-9 * c.h / e**2)
    assert st.phase_fraction(math.pi) == 0.5
    trace = st.verify_derivation(1, 1.0, 1.0, 1.0)
    assert trace["resistance"] == c.h

    dev = st.MemristorState(100.0, 1, 50.0, 1.0, 50.0)
    assert close(st.memristance(dev), 100.0 * math.sqrt(0.5))
    try:
        st.memristance(dev.with_flux(150.0))
    except st.SaturationError:
        pass
    else:
        raise AssertionError("expected SaturationError")

    params = st.StdpParams(0.1, 10e-3)
    assert close(st.stdp_delta(5e-3, 0.0, params), 0.1 * math.exp(-0.5))
    assert st.apply_stdp(0.5, 1.0, 1.0, params) == 0.5

    train = st.generate_train()
    assert len(train) == 2400 and train.prefix_length == 300
    assert all(v == 0.0 for v in train.potentials[:300])
    sums = [st.segment_accumulation(train, k) for k in range(1, 8)]
    assert sums == sorted(sums)
    assert close(st.wavelength_to_time(1e-9), 3.3357e-18, 5e-5)

    report = st.evaluate_model()
    assert report.total == 300 and report.fraction >= 0.97
    partial = st.count_matches([1.0, 2.0, 3.0], [1.0, 2.0, 4.0])
    assert partial.matched == 2 and partial.first_mismatch_index == 2

    print("spiketyke smoke test passed:", report)


if __name__ == "__main__":
    main()
