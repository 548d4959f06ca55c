"""Run configuration: defaults, TOML file, CHAINPROVER_* environment, flags.

Later sources win. A config file may use flat keys or ``[engine]`` /
``[llm]`` / ``[filter]`` tables::

    policy = "lenient"
    workers = 4

    [engine]
    backend = "external"
    prover_command = "vampire --mode casc -t {timeout_s}"
    timeout_ms = 10000

    [llm]
    base_url = "https://api.openai.com"
    model_name = "gpt-4o"
    api_key_env_var = "OPENAI_API_KEY"
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from chainprover.engine import EngineConfig
from chainprover.errors import ChainProverError
from chainprover.nl2fol.llm import LlmEndpointConfig
from chainprover.nl2fol.preprocess import DEFAULT_KEYWORDS

ENV_PREFIX = "CHAINPROVER_"


class ConfigError(ChainProverError, ValueError):
    pass


@dataclass
class RunConfig:
    engine: EngineConfig = field(default_factory=EngineConfig)
    llm: LlmEndpointConfig | None = None
    llm_script: str | None = None
    input_path: str | None = None
    output_dir: str | None = None
    workers: int = 1
    policy: str = "lenient"
    seed: int | None = None
    keywords: tuple[str, ...] = DEFAULT_KEYWORDS


# flat key -> (section, field)
_ENGINE_KEYS = {f.name for f in fields(EngineConfig)}
_LLM_KEYS = {f.name for f in fields(LlmEndpointConfig)}
_ENV = {
    "ENGINE": "backend",
    "PROVER_CMD": "prover_command",
    "TIMEOUT_MS": "timeout_ms",
    "SKOLEM_DEPTH": "skolem_depth_bound",
    "MAX_GROUND_CLAUSES": "max_ground_clauses",
    "WORKERS": "workers",
    "POLICY": "policy",
    "SEED": "seed",
    "LLM_ENDPOINT": "base_url",
    "LLM_MODEL": "model_name",
    "LLM_API_KEY_VAR": "api_key_env_var",
    "LLM_SCRIPT": "llm_script",
}
_INTS = {"timeout_ms", "skolem_depth_bound", "max_ground_clauses", "workers", "seed", "request_timeout_ms"}


def _flatten(data: dict) -> dict:
    flat = {}
    for key, value in data.items():
        if isinstance(value, dict):
            flat.update(value)
        else:
            flat[key] = value
    return flat


def load_file(path: str | Path) -> dict:
    try:
        with open(path, "rb") as fh:
            return _flatten(tomllib.load(fh))
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"{path}: {e}") from None


def from_env(environ=os.environ) -> dict:
    out = {}
    for suffix, key in _ENV.items():
        value = environ.get(ENV_PREFIX + suffix)
        if value is not None:
            out[key] = value
    return out


def build(*layers: dict) -> RunConfig:
    """Merge layers (later wins) into a validated RunConfig."""
    merged: dict = {}
    for layer in layers:
        merged.update({k: v for k, v in layer.items() if v is not None})
    try:
        for key in _INTS & merged.keys():
            merged[key] = int(merged[key])
        if "temperature" in merged:
            merged["temperature"] = float(merged["temperature"])
        engine_args = {k: merged[k] for k in _ENGINE_KEYS if k in merged}
        engine = EngineConfig(**engine_args)
        llm = None
        if merged.get("base_url") or merged.get("model_name"):
            if not (merged.get("base_url") and merged.get("model_name")):
                raise ConfigError("LLM endpoint needs both a base URL and a model name")
            llm = LlmEndpointConfig(**{k: merged[k] for k in _LLM_KEYS if k in merged})
        workers = merged.get("workers", 1)
        if workers < 1:
            raise ConfigError("workers must be at least 1")
        keywords = merged.get("keywords", DEFAULT_KEYWORDS)
        if isinstance(keywords, str):
            keywords = [k.strip() for k in keywords.split(",") if k.strip()]
        return RunConfig(
            engine=engine,
            llm=llm,
            llm_script=merged.get("llm_script"),
            input_path=merged.get("input_path"),
            output_dir=merged.get("output_dir"),
            workers=workers,
            policy=engine.policy,
            seed=merged.get("seed"),
            keywords=tuple(keywords),
        )
    except (TypeError, ValueError) as e:
        if isinstance(e, ConfigError):
            raise
        raise ConfigError(str(e)) from e
