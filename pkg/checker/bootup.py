'''Helper module for loading the engine configuration and logger whenever a run starts'''
import os
from pathlib import Path
from typing import Any, Final, Optional, Union

from models.errors import ConfigurationError

from checker.config.checker_config import CheckerConfig
from checker.log_models import Severity
from checker.logging import Logger

import pytomlpp
from dotenv import load_dotenv
from pydantic import ValidationError

__all__ = ('LOG_FILE_ENV', 'LOG_SEVERITY_ENV', 'flatten_sections', 'create_checker_config', 'create_logger')

LOG_FILE_ENV: Final[str] = 'HANDSHAKE_CHECKER_LOG_FILE'
LOG_SEVERITY_ENV: Final[str] = 'HANDSHAKE_CHECKER_LOG_SEVERITY'

def flatten_sections(loaded: dict[str, Any]) -> dict[str, Any]:
    '''Collapse TOML sections into one flat mapping; keys are unique across sections'''
    flattened_dict: dict[str, Any] = {}
    leftover_mappings: list[dict[str, Any]] = [loaded]
    while leftover_mappings:
        mapping = leftover_mappings.pop()
        for k, v in mapping.items():
            if isinstance(v, dict):
                leftover_mappings.append(v)
                continue
            flattened_dict.update({k:v})
    return flattened_dict

def create_checker_config(filepath: Optional[Union[str, Path]] = None, **overrides: Any) -> CheckerConfig:
    '''Load `checker_config.toml` (or `filepath`), apply environment and keyword overrides, and validate.

    Raises:
        ConfigurationError: if the file is unreadable or fails validation
    '''
    config_path: Path = Path(filepath) if filepath else Path(__file__).parent.joinpath('config', 'checker_config.toml')
    try:
        loaded_constants: dict[str, Any] = pytomlpp.load(config_path)
    except (OSError, ValueError) as load_error:
        raise ConfigurationError(f'Unable to read engine configuration {config_path}: {load_error}')

    flattened_dict: dict[str, Any] = flatten_sections(loaded_constants)

    load_dotenv()
    if log_file := os.environ.get(LOG_FILE_ENV):
        flattened_dict['log_sink'] = log_file
    if log_severity := os.environ.get(LOG_SEVERITY_ENV):
        flattened_dict['log_severity'] = log_severity.strip().lower()

    flattened_dict.update({k:v for k, v in overrides.items() if v is not None})
    try:
        return CheckerConfig.model_validate(flattened_dict)
    except ValidationError as validation_error:
        raise ConfigurationError(f'Invalid engine configuration: {validation_error}')

def create_logger(config: CheckerConfig) -> Logger:
    return Logger(batch_size=config.log_batch_size,
                  sink=config.log_sink,
                  minimum_severity=Severity(config.log_severity))
