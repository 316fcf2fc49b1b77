"""
Run configuration files.

Plain ``key = value`` lines grouped in [grid], [solver], [initial],
[criterion], [serrin] and [monitor] sections (see config/example_run.ini).
Command-line overrides ``section.key=value`` are applied on top of the file.
"""

import configparser
import logging
from pathlib import Path
from typing import Dict, Iterable, Optional, Type, TypeVar, Union

from pydantic import BaseModel, ValidationError

from domains.core.errors import RunConfigError
from domains.exponents.schemas import SerrinCondition
from domains.grid.schemas import CylGrid
from domains.monitor.schemas import CriterionConfig, MonitorConfig, RunConfig
from domains.solver.schemas import InitialData, SolverConfig

logger = logging.getLogger(__name__)

Sections = Dict[str, Dict[str, str]]
M = TypeVar("M", bound=BaseModel)

SECTION_MODELS: Dict[str, Type[BaseModel]] = {
    "grid": CylGrid,
    "solver": SolverConfig,
    "initial": InitialData,
    "criterion": CriterionConfig,
    "serrin": SerrinCondition,
    "monitor": MonitorConfig,
}

# keys of [monitor] that belong to RunConfig itself
RUN_KEYS = ("seed",)


def parse_override(text: str):
    """'section.key=value' -> (section, key, value)."""
    target, sep, value = text.partition("=")
    section, dot, key = target.strip().partition(".")
    if not sep or not dot or not section or not key:
        raise RunConfigError(f"override {text!r} is not of the form section.key=value", {"override": text})
    return section.lower(), key.strip().lower(), value.strip()


def load_sections(path: Optional[Union[str, Path]] = None, overrides: Iterable[str] = ()) -> Sections:
    """Raw string values per section, file first, then overrides."""
    parser = configparser.ConfigParser()
    if path is not None:
        path = Path(path)
        if not path.exists():
            raise RunConfigError(f"config file {path} does not exist", {"path": str(path)})
        try:
            parser.read(path)
        except configparser.Error as e:
            raise RunConfigError(f"cannot parse {path}: {e}", {"path": str(path)})
    for text in overrides:
        section, key, value = parse_override(text)
        if not parser.has_section(section):
            parser.add_section(section)
        parser.set(section, key, value)

    sections: Sections = {}
    for name in parser.sections():
        if name not in SECTION_MODELS:
            raise RunConfigError(f"unknown section [{name}]", {"section": name})
        sections[name] = {k: v for k, v in parser[name].items() if v != ""}
    return sections


def section_model(sections: Sections, name: str, model: Type[M], default: Optional[M] = None) -> M:
    """Build one section's model; missing sections fall back to ``default``."""
    values = {k: v for k, v in sections.get(name, {}).items() if k not in RUN_KEYS}
    unknown = set(values) - set(model.model_fields)
    if unknown:
        raise RunConfigError(f"unknown key(s) in [{name}]: {sorted(unknown)}", {"section": name})
    if not values and default is not None:
        return default
    if default is not None:
        values = {**default.model_dump(), **values}
    try:
        return model(**values)
    except ValidationError as e:
        fields = [f"{name}.{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()]
        raise RunConfigError(f"invalid [{name}] settings: {'; '.join(fields)}", {"fields": fields})


def load_run_config(path: Optional[Union[str, Path]] = None, overrides: Iterable[str] = (),
                    seed: Optional[int] = None) -> RunConfig:
    """RunConfig from a file plus overrides; [grid] and [solver] are required."""
    sections = load_sections(path, overrides)
    for required in ("grid", "solver"):
        if required not in sections:
            raise RunConfigError(f"section [{required}] is required for a run", {"section": required})
    defaults = RunConfig.model_fields
    seed_text = sections.get("monitor", {}).get("seed")
    if seed is None and seed_text is not None:
        try:
            seed = int(seed_text)
        except ValueError:
            raise RunConfigError(f"monitor.seed must be an integer, got {seed_text!r}", {"seed": seed_text})
    cfg = RunConfig(
        grid=section_model(sections, "grid", CylGrid),
        solver=section_model(sections, "solver", SolverConfig),
        initial=section_model(sections, "initial", InitialData, defaults["initial"].default),
        criterion=section_model(sections, "criterion", CriterionConfig, defaults["criterion"].default),
        serrin=section_model(sections, "serrin", SerrinCondition, defaults["serrin"].default),
        monitor=section_model(sections, "monitor", MonitorConfig, defaults["monitor"].default),
        seed=seed,
    )
    logger.debug(f"Loaded run config from {path or 'overrides only'}")
    return cfg
