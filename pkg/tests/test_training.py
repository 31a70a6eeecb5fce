"""Ansatz, loss/accuracy, parameter-shift gradients, and the epoch loop."""

import threading
import time

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from encoderlab import datasets, encoders, training
from encoderlab.core import expectation_z0, run_circuit
from encoderlab.errors import ConfigurationError, ContractError, NotFoundError, TransportError
from encoderlab.training import (
    EpochRecord,
    RunControl,
    TrainingConfig,
    accuracy,
    ansatz_gates,
    forward,
    initial_params,
    loss,
    parameter_shift_grad,
    predict,
    train,
    trained_map,
)


def small_config(**overrides):
    base = dict(
        dataset_id="D1-vstripes",
        encoder_id="E01",
        epochs=8,
        learning_rate=0.5,
        seed=7,
        resolution=8,
    )
    base.update(overrides)
    return TrainingConfig(**base)


def records_equal(a: EpochRecord, b: EpochRecord) -> bool:
    return (
        a.epoch == b.epoch
        and a.loss == b.loss
        and a.accuracy == b.accuracy
        and np.array_equal(a.params, b.params)
        and np.array_equal(a.trained_map.values, b.trained_map.values)
    )


# --- ansatz ------------------------------------------------------------------


def test_ansatz_has_ten_gates():
    gates = ansatz_gates(np.zeros(7))
    assert len(gates) == 10
    kinds = [g.kind for g in gates]
    assert kinds == ["RY", "RY", "CNOT"] * 3 + ["RY"]


def test_ansatz_zero_params_inert_on_zero_state():
    state = run_circuit(ansatz_gates(np.zeros(7)), 2)
    assert np.allclose(state.amplitudes, [1, 0, 0, 0], atol=1e-12)


def test_ansatz_layout_assigns_params_in_order():
    params = np.arange(1.0, 8.0)
    gates = ansatz_gates(params)
    rotation_angles = [g.angle for g in gates if g.kind == "RY"]
    assert rotation_angles == list(params)
    for gate in gates:
        if gate.kind == "CNOT":
            assert gate.control == 0 and gate.target == 1


def test_ansatz_rejects_wrong_arity():
    with pytest.raises(ContractError):
        ansatz_gates(np.zeros(6))


# --- loss / accuracy / predict -------------------------------------------------


def test_loss_examples():
    assert loss([1, -1], [1, -1]) == 0.0
    assert loss([0, 0], [1, -1]) == 1.0
    assert loss([1], [-1]) == 4.0


def test_loss_length_mismatch():
    with pytest.raises(ContractError):
        loss([1, 2], [1])
    with pytest.raises(ContractError):
        loss([], [])


def test_accuracy_examples():
    assert accuracy([0.2, -0.9], [1, -1]) == 1.0
    assert accuracy([0.2, -0.9], [-1, 1]) == 0.0
    # predict(0) breaks the tie toward +1
    assert accuracy([0.0], [-1]) == 0.0
    assert accuracy([0.0], [1]) == 1.0


def test_predict_signs():
    assert list(predict([0.5, -0.5, 0.0])) == [1, -1, 1]


# --- forward -------------------------------------------------------------------


def test_forward_examples():
    e01 = encoders.get_encoder("E01")
    zero = np.zeros(7)
    assert forward(e01, zero, (0.0, 0.0)) == pytest.approx(1.0, abs=1e-12)
    assert forward(e01, zero, (1.0, 0.3)) == pytest.approx(-1.0, abs=1e-12)
    theta6_pi = np.zeros(7)
    theta6_pi[6] = np.pi
    assert forward(e01, theta6_pi, (0.0, 0.0)) == pytest.approx(-1.0, abs=1e-12)


def test_forward_matches_object_pipeline():
    rng = np.random.default_rng(5)
    e04 = encoders.get_encoder("E04")
    for _ in range(10):
        params = rng.uniform(0, 2 * np.pi, 7)
        features = (float(rng.uniform()), float(rng.uniform()))
        circuit = list(encoders.bind_angles(e04, features)) + ansatz_gates(params)
        reference = expectation_z0(run_circuit(circuit, 2))
        assert forward(e04, params, features) == pytest.approx(reference, abs=1e-12)


def test_trained_map_zero_params_equals_encoder_map():
    # zero-angle ansatz reduces to CNOTs with control q0, which preserve <Z0>
    for encoder_id in ("E01", "E05", "E09"):
        template = encoders.get_encoder(encoder_id)
        learned = trained_map(template, np.zeros(7), 8)
        plain = encoders.encoder_map(template, 8)
        assert np.max(np.abs(learned.values - plain.values)) < 1e-12


# --- gradients -----------------------------------------------------------------


def test_shift_rule_on_single_effective_parameter():
    # with only theta[0] = t live, the model output at (0,0) under E01 is cos t
    e01 = encoders.get_encoder("E01")
    for t, slope in [(np.pi / 2, -1.0), (0.0, 0.0)]:
        params = np.zeros(7)
        params[0] = t
        plus, minus = params.copy(), params.copy()
        plus[0] += np.pi / 2
        minus[0] -= np.pi / 2
        shift = (forward(e01, plus, (0.0, 0.0)) - forward(e01, minus, (0.0, 0.0))) / 2
        assert shift == pytest.approx(slope, abs=1e-12)
        assert shift == pytest.approx(-np.sin(t), abs=1e-12)


def test_gradient_matches_finite_differences():
    rng = np.random.default_rng(99)
    h = 1e-5
    for encoder_id in ("E01", "E04", "E07"):
        template = encoders.get_encoder(encoder_id)
        grid = datasets.generate("D2-checkerboard", 4)
        f0, f1 = grid.features()
        labels = grid.labels_flat()
        params = rng.uniform(0, 2 * np.pi, 7)
        grad = parameter_shift_grad(template, params, grid)

        def loss_at(p):
            outputs = [forward(template, p, (f0[i], f1[i])) for i in range(labels.size)]
            return loss(outputs, labels)

        for k in range(7):
            bumped = params.copy()
            bumped[k] += h
            up = loss_at(bumped)
            bumped[k] -= 2 * h
            down = loss_at(bumped)
            assert abs(grad[k] - (up - down) / (2 * h)) < 1e-5


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 2**16))
def test_small_step_never_increases_loss_materially(seed):
    rng = np.random.default_rng(seed)
    template = encoders.get_encoder("E03")
    grid = datasets.generate("D4-diagonal", 4)
    f0, f1 = grid.features()
    labels = grid.labels_flat()
    params = rng.uniform(0, 2 * np.pi, 7)
    grad = parameter_shift_grad(template, params, grid)
    before = loss([forward(template, params, (f0[i], f1[i])) for i in range(labels.size)], labels)
    stepped = params - 1e-3 * grad
    after = loss([forward(template, stepped, (f0[i], f1[i])) for i in range(labels.size)], labels)
    assert after <= before + 1e-9


# --- the epoch loop -------------------------------------------------------------


def test_config_validation():
    with pytest.raises(ConfigurationError):
        small_config(epochs=0).validate()
    with pytest.raises(ConfigurationError):
        small_config(epochs=10001).validate()
    with pytest.raises(ConfigurationError):
        small_config(learning_rate=0.0).validate()
    with pytest.raises(ConfigurationError):
        small_config(learning_rate=11.0).validate()
    with pytest.raises(ConfigurationError):
        small_config(resolution=3).validate()
    with pytest.raises(NotFoundError):
        train(small_config(dataset_id="bogus"))
    with pytest.raises(NotFoundError):
        train(small_config(encoder_id="E77"))


def test_initial_params_are_seeded_uniform():
    params = initial_params(7)
    assert params.shape == (7,)
    assert np.array_equal(params, np.random.default_rng(7).uniform(0.0, 2 * np.pi, 7))
    assert not np.array_equal(initial_params(7), initial_params(8))


def test_train_emits_consecutive_epochs():
    records = []
    final = train(small_config(), emit=records.append)
    assert [r.epoch for r in records] == list(range(1, 9))
    assert records_equal(records[-1], final)


def test_first_epoch_is_one_exact_gradient_step():
    config = small_config(epochs=1)
    record = train(config)
    init = initial_params(config.seed)
    grad = parameter_shift_grad(
        encoders.get_encoder(config.encoder_id),
        init,
        datasets.generate(config.dataset_id, config.resolution),
    )
    assert np.array_equal(record.params, init - config.learning_rate * grad)


def test_record_map_matches_post_update_params():
    config = small_config(epochs=3)
    records = []
    train(config, emit=records.append)
    for record in records:
        fresh = trained_map(
            encoders.get_encoder(config.encoder_id), record.params, config.resolution
        )
        assert np.array_equal(record.trained_map.values, fresh.values)


def test_training_is_reproducible():
    first, second = [], []
    train(small_config(), emit=first.append)
    train(small_config(), emit=second.append)
    assert all(records_equal(a, b) for a, b in zip(first, second))


def test_emit_failure_aborts_with_transport_error():
    def bad_emit(record):
        raise RuntimeError("sink went away")

    with pytest.raises(TransportError):
        train(small_config(), emit=bad_emit)


def test_stop_ends_run_early():
    control = RunControl()
    records = []

    def emit(record):
        records.append(record)
        if record.epoch == 3:
            control.request_stop()

    final = train(small_config(), control=control, emit=emit)
    assert [r.epoch for r in records] == [1, 2, 3]
    assert final.epoch == 3


def test_pause_resume_preserves_record_stream():
    # identical to an uninterrupted run, pause or not
    straight = []
    train(small_config(epochs=12), emit=straight.append)

    control = RunControl()
    interrupted = []

    def emit(record):
        interrupted.append(record)
        if record.epoch in (4, 8):
            control.request_pause()

    def nudge():
        for _ in range(2):
            while not control.paused:
                time.sleep(0.005)
            time.sleep(0.02)
            control.request_resume()

    nudger = threading.Thread(target=nudge)
    nudger.start()
    train(small_config(epochs=12), control=control, emit=emit)
    nudger.join()

    assert len(interrupted) == 12
    assert all(records_equal(a, b) for a, b in zip(straight, interrupted))


def test_matched_configuration_reaches_high_accuracy():
    final = train(TrainingConfig("D1-vstripes", "E01", 100, 0.5, 7, 16))
    assert final.accuracy >= 0.90


def test_epoch_record_serialization():
    record = train(small_config(epochs=2))
    doc = record.to_json()
    assert sorted(doc) == ["accuracy", "epoch", "loss", "trained_map"]
    assert len(doc["trained_map"]) == 64  # flat row-major
    with_params = record.to_json(include_params=True)
    assert len(with_params["params"]) == 7
