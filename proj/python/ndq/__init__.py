"""Nearly decomposable Q-learning with minimised communication."""

from ndq._core import (
    ConfigError,
    ContractViolation,
    config_ini,
    cut,
    decode_mask,
    dump_messages,
    encode_mask,
    evaluate,
    make_env,
    oracle,
    sweep_drop,
    train,
)

__all__ = [
    "ConfigError",
    "ContractViolation",
    "config_ini",
    "cut",
    "decode_mask",
    "dump_messages",
    "encode_mask",
    "evaluate",
    "make_env",
    "oracle",
    "sweep_drop",
    "train",
]
