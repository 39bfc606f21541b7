"""Run configuration: a versioned JSON file, overridden by command-line flags."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from .classifiers import ALGORITHMS, Algorithm, Hyperparameters
from .errors import ConfigError
from .evaluation import ExperimentConfig
from .features import SETUPS, Setup

CONFIG_VERSION = 1
SEED_ENV = "INFODEMIC_SEED"
SEED_MASK = (1 << 64) - 1

_KEYS = {
    "version", "corpus_path", "corpus_format", "format", "seed", "setups", "algorithms", "k_folds",
    "vectorizer", "hyperparameters", "out", "jobs", "keep_per_fold", "top_n",
}
_VECTORIZER_KEYS = {"min_df", "max_unigrams", "max_bigrams"}


@dataclass(frozen=True)
class RunConfig:
    corpus_path: str | None = None
    corpus_format: str | None = None
    format: str = "csv"
    seed: int = 0
    setups: tuple[Setup, ...] = SETUPS
    algorithms: tuple[Algorithm, ...] = ALGORITHMS
    k_folds: int = 10
    min_df: int = 2
    max_unigrams: int | None = 5000
    max_bigrams: int | None = 5000
    hyperparameters: Hyperparameters = field(default_factory=Hyperparameters)
    out: str = "out"
    jobs: int = 1
    keep_per_fold: bool = True
    top_n: int = 20

    def experiment_config(self) -> ExperimentConfig:
        return ExperimentConfig(
            setups=self.setups,
            algorithms=self.algorithms,
            k_folds=self.k_folds,
            seed=self.seed,
            min_df=self.min_df,
            max_unigrams=self.max_unigrams,
            max_bigrams=self.max_bigrams,
            hyperparameters=self.hyperparameters,
            keep_per_fold=self.keep_per_fold,
            jobs=self.jobs,
        )


def parse_seed(value) -> int:
    """Accept any integer (negative values wrap into the unsigned 64-bit range)."""
    if isinstance(value, bool):
        raise ConfigError(f"invalid seed {value!r}")
    try:
        seed = int(str(value).strip(), 0) if isinstance(value, str) else int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"invalid seed {value!r}") from None
    if isinstance(value, float) and value != seed:
        raise ConfigError(f"invalid seed {value!r}")
    return seed & SEED_MASK


def _names(values, parse, what):
    if isinstance(values, str):
        values = [v for v in values.split(",") if v.strip()]
    if not isinstance(values, (list, tuple)) or not values:
        raise ConfigError(f"{what} must be a non-empty list")
    out = []
    for v in values:
        try:
            item = parse(v)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if item not in out:
            out.append(item)
    return tuple(out)


def _cap(value, name):
    if value is None:
        return None
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ConfigError(f"vectorizer.{name} must be a positive integer or null")
    return value


def _positive_int(value, name, minimum=1):
    if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
        raise ConfigError(f"{name} must be an integer >= {minimum}")
    return value


def read_config_file(path: str | Path) -> dict:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    if data.get("version") != CONFIG_VERSION:
        raise ConfigError(f"config version must be {CONFIG_VERSION}, got {data.get('version')!r}")
    unknown = set(data) - _KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return data


def build_config(file_values: dict | None = None, overrides: dict | None = None, env=None) -> RunConfig:
    """Merge defaults, file values and flag overrides (highest priority).

    The seed falls back to ``INFODEMIC_SEED`` when neither the file nor the
    flags set one.
    """
    env = os.environ if env is None else env
    values = dict(file_values or {})
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    values.pop("version", None)

    kwargs = {}
    if "seed" in values:
        kwargs["seed"] = parse_seed(values.pop("seed"))
    elif env.get(SEED_ENV, "").strip():
        kwargs["seed"] = parse_seed(env[SEED_ENV])
    if "setups" in values:
        kwargs["setups"] = _names(values.pop("setups"), Setup.parse, "setups")
    if "algorithms" in values:
        kwargs["algorithms"] = _names(values.pop("algorithms"), Algorithm.parse, "algorithms")
    if "k_folds" in values:
        kwargs["k_folds"] = _positive_int(values.pop("k_folds"), "k_folds", 2)
    if "jobs" in values:
        kwargs["jobs"] = _positive_int(values.pop("jobs"), "jobs")
    if "top_n" in values:
        kwargs["top_n"] = _positive_int(values.pop("top_n"), "top_n")
    vec = values.pop("vectorizer", None) or {}
    if not isinstance(vec, dict) or set(vec) - _VECTORIZER_KEYS:
        raise ConfigError(f"vectorizer accepts only {sorted(_VECTORIZER_KEYS)}")
    if "min_df" in vec:
        kwargs["min_df"] = _positive_int(vec["min_df"], "vectorizer.min_df")
    for name in ("max_unigrams", "max_bigrams"):
        if name in vec:
            kwargs[name] = _cap(vec[name], name)
    hp = values.pop("hyperparameters", None)
    if hp is not None:
        if not isinstance(hp, dict):
            raise ConfigError("hyperparameters must be an object")
        try:
            kwargs["hyperparameters"] = Hyperparameters().with_overrides(hp)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"invalid hyperparameters: {exc}") from None
    for key in ("format", "corpus_format"):
        if key in values:
            fmt = values.pop(key)
            if fmt not in ("csv", "jsonl"):
                raise ConfigError(f"{key} must be 'csv' or 'jsonl'")
            kwargs[key] = fmt
    if "keep_per_fold" in values:
        kwargs["keep_per_fold"] = bool(values.pop("keep_per_fold"))
    for key in ("corpus_path", "out"):
        if key in values:
            kwargs[key] = str(values.pop(key))
    if values:
        raise ConfigError(f"unknown settings: {sorted(values)}")
    return RunConfig(**kwargs)


def effective_config(config: RunConfig) -> dict:
    """JSON-ready echo of every setting, for provenance."""
    return {
        "version": CONFIG_VERSION,
        "corpus_path": config.corpus_path,
        "seed": config.seed,
        "setups": [s.value for s in config.setups],
        "algorithms": [a.value for a in config.algorithms],
        "k_folds": config.k_folds,
        "vectorizer": {"min_df": config.min_df, "max_unigrams": config.max_unigrams, "max_bigrams": config.max_bigrams},
        "hyperparameters": config.hyperparameters.to_dict(),
        "top_n": config.top_n,
    }
