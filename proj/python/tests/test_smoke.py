import json

import numpy as np
import pytest

import iontrotter as it


def test_hubbard_census():
    seq = it.compile(it.jw_transform(it.build_hubbard(4, 5)), steps=10)
    counts = seq.counts()
    assert counts["entangling_total"] == 2680
    assert counts["entangling_by_group"] == {"hop-col": 1200, "hop-row": 1280, "onsite": 200}


def test_holstein_census_and_time():
    seq = it.compile(it.jw_transform(it.build_holstein(10)), steps=1)
    assert seq.counts()["census"] == 38
    t = it.estimate_time(seq, ions=11, scaling=True)
    assert 1500 <= t["entangling_per_step_us"][0] <= 3000


def test_spectrum_matches_fock_matrix():
    H = it.build_hubbard(1, 2, 1.0, 2.0)
    a = np.linalg.eigvalsh(it.jw_transform(H).matrix())
    b = np.linalg.eigvalsh(H.fock_matrix())
    assert np.allclose(a, b, atol=1e-10)


@pytest.mark.parametrize("backend", [it.Backend.MS, it.Backend.UMQ, it.Backend.CNOT])
def test_compiled_step_is_a_product_formula(backend):
    s = it.jw_transform(it.build_hubbard(1, 2, 1.0, 2.0))
    exact = it.exact_evolution(s, 0.5)
    coarse = it.unitary_distance(it.compile(s, t=0.5, steps=2, backend=backend).unitary(), exact)
    fine = it.unitary_distance(it.compile(s, t=0.5, steps=16, backend=backend).unitary(), exact)
    assert fine < coarse


def test_round_trips():
    H = it.build_holstein(3)
    assert it.Hamiltonian.from_json(H.to_json()) == H
    seq = it.compile(it.jw_transform(H), steps=2)
    assert it.GateSequence.from_json(seq.to_json()).to_json() == seq.to_json()
    assert json.loads(seq.to_json())["n_qubits"] == 3


def test_jw_labels():
    terms = {label: c for label, c, _ in it.jw_transform(it.build_hubbard(1, 1, 1.0, 1.0)).terms()}
    assert terms == {"I": 0.25, "Z1": 0.25, "Z2": 0.25, "Z1 Z2": 0.25}


def test_resources_helpers():
    assert it.umq_speedup(10) == pytest.approx(100.0)
    assert it.classical_dimension(10, 10, 7) == 2**40
    assert it.classical_dimension(40, 40, 7) is None


def test_cli():
    code, out, _ = it.run_cli(["compile", "--backend", "cnot"])
    assert code == 0
    assert "17240 (about 17000)" in out
    code, _, err = it.run_cli(["compile", "--rows", "abc"])
    assert code == 2
    assert "error" in err


def test_errors_become_python_exceptions():
    with pytest.raises(ValueError):
        it.build_hubbard(0, 3)
