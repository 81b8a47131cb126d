import math

import numpy as np
import pytest

import ndq

TINY = [
    "env.name=hallway",
    "model.msg_len=2",
    "model.rnn_hidden=6",
    "model.encoder_hidden=5",
    "model.posterior_hidden=4",
    "model.mixing_embed=3",
    "train.total_env_steps=150",
    "train.n_runners=1",
    "train.batch_size=2",
    "eval.period=50",
    "eval.episodes=3",
    "eval.calibration_episodes=3",
]


def test_hallway_env_dynamics():
    env = ndq.make_env(["env.name=hallway", "env.m=1", "env.n=1"])
    assert env.spec.n_agents == 2
    first = env.reset(0)
    assert first["observations"].shape == (2, 2)
    out = env.step([0, 0])
    assert out["reward"] == 10.0
    assert out["terminated"]
    assert env.won


def test_sensor_env_shapes():
    env = ndq.make_env()
    r = env.reset(3)
    assert r["observations"].shape == (3, 4)
    assert r["available_actions"].sum() == 15
    with pytest.raises(ndq.ContractViolation):
        env.step([0, 0])


def test_config_errors():
    with pytest.raises(ndq.ConfigError):
        ndq.config_ini(overrides=["loss.nope=1"])
    assert "name = search" in ndq.config_ini(overrides=["env.name=search"])


def test_mask_and_cut():
    for bits in range(16):
        assert ndq.encode_mask(ndq.decode_mask(bits, 4)) == bits
    values, mask = ndq.cut([2.5, 0.1, -3.0], [2.7, 0.4, -2.4], 2.0)
    assert mask == [True, False, True]
    assert values == [2.7, 0.0, -2.4]


def test_oracles():
    assert ndq.oracle.solve_sensor_optimal() == 15.0
    win, length = ndq.oracle.solve_hallway_optimal()
    assert win == 1.0 and length == pytest.approx(50 / 16)
    lhs, rhs, holds = ndq.oracle.eq5_check([0.5, 0.5], [-1.0, 1.0])
    assert holds and lhs <= rhs == pytest.approx(0.5)
    assert ndq.oracle.numeric_gaussian_kl(1.5) == pytest.approx(1.125, abs=1e-6)
    assert all(passed for _, passed, _ in ndq.oracle.run_suite(1, 5))


def test_train_evaluate_sweep_dump(tmp_path):
    seen = []
    rows = ndq.train(overrides=TINY, out_dir=str(tmp_path), on_eval=lambda r: seen.append(r) or True)
    assert len(rows) == len(seen) >= 1
    assert rows[-1]["env_steps"] >= 150
    assert (tmp_path / "metrics.csv").exists()
    ckpt = str(tmp_path / f"ckpt_{rows[-1]['env_steps']}.bin")

    res = ndq.evaluate(ckpt, episodes=4)
    assert 0.0 <= res["win_rate"] <= 1.0
    assert res["by_bit_drop_rate"] == 0.0

    sweep = ndq.sweep_drop(ckpt, [1.0, 0.0], scope="bits", episodes=4)
    assert [r["rate"] for r in sweep] == [0.0, 1.0]
    assert sweep[0]["mean_return"] == res["mean_return"]
    assert sweep[1]["bits_sent_total"] == 0

    records, summary = ndq.dump_messages(ckpt, episodes=2, threshold=0.5)
    assert len(summary) == 4
    mu = np.array([r["mu"] for r in records])
    assert mu.shape[1] == 2 and np.isfinite(mu).all()
    for s in summary:
        sel = [abs(r["mu"][s["bit"]]) for r in records if r["i"] == s["i"] and r["j"] == s["j"]]
        assert math.isclose(s["mean_abs_mu"], sum(sel) / len(sel), rel_tol=1e-12)


def test_train_can_stop_early():
    rows = ndq.train(overrides=TINY + ["train.total_env_steps=5000"], on_eval=lambda r: False)
    assert len(rows) == 1
