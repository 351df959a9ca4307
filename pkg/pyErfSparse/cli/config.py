"""
Run configuration of the command-line tool

Precedence: command-line flags > --set key=value > --config FILE > defaults.
Config files hold flat key=value lines with # comments.

"""

import configparser
import dataclasses
import logging
import os
from typing import Dict, List, Optional

from pyErfSparse.experiments.spec import ExperimentSpec

SEED_ENV = "ERF_SPARSE_SEED"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


@dataclasses.dataclass
class RunConfig:
    command: str
    inputs: List[str] = dataclasses.field(default_factory=list)
    out: Optional[str] = None
    seed: int = 0
    overrides: Dict[str, str] = dataclasses.field(default_factory=dict)
    jobs: int = 1
    progress: bool = True


def load_config_file(path) -> Dict[str, str]:
    """Read flat key=value pairs; keys keep their case."""
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#",))
    parser.optionxform = str
    with open(path) as f:
        parser.read_string("[run]\n" + f.read(), source=str(path))
    return dict(parser["run"])


def parse_overrides(items) -> Dict[str, str]:
    """Turn ["key=value", ...] into a dict."""
    out = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise ValueError("Override must look like key=value, got %r" % item)
        out[key.strip()] = value.strip()
    return out


def resolve_seed(seed: Optional[int]) -> int:
    """--seed, else $ERF_SPARSE_SEED, else 0."""
    if seed is not None:
        return int(seed)
    env = os.environ.get(SEED_ENV)
    if env not in (None, ""):
        try:
            return int(env)
        except ValueError:
            raise ValueError("%s must be an integer, got %r" % (SEED_ENV, env))
    return 0


def setup_logging(verbose=False, quiet=False) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(format=LOG_FORMAT, level=logging.WARNING)
    logging.getLogger("pyErfSparse").setLevel(level)


def build_spec(kind, config_path=None, overrides=None, flags=None) -> ExperimentSpec:
    """Experiment spec from defaults, a config file, --set pairs and flags.

    Without a seed in any of them, the seed comes from resolve_seed().
    """
    values = {}
    if config_path:
        values.update(load_config_file(config_path))
    values.update(overrides or {})
    values.update({k: v for k, v in (flags or {}).items() if v is not None})
    if "seed" not in values:
        values["seed"] = resolve_seed(None)
    return ExperimentSpec.defaults(kind).updated(values)
