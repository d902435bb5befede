from pathlib import Path
from typing import Annotated, Any, Optional, Union
from typing_extensions import Self

from models.errors import ConfigurationError

from protocols.states import Protocol

import pytomlpp
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

__all__ = ('SCENARIO_FIELDS', 'ScenarioConfig')

SCENARIO_FIELDS: tuple[str, ...] = ('protocol', 'n_legit', 'n_illegit', 'resources', 'T', 'max_retrans')

class ScenarioConfig(BaseModel):
    '''Shape of one verification run: protocol, population, server TCB size and client timing'''
    model_config = ConfigDict(frozen=True, extra='forbid')

    protocol: Protocol
    n_legit: Annotated[int, Field(ge=0, le=16)] = 1
    n_illegit: Annotated[int, Field(ge=0, le=16)] = 1
    resources: Annotated[int, Field(ge=1, le=64)]
    T: Annotated[int, Field(ge=1, le=1024)] = 2
    max_retrans: Annotated[int, Field(ge=0, le=1024)] = 1

    @model_validator(mode='before')
    @classmethod
    def default_resources(cls, data: Any) -> Any:
        # One TCB slot per client endpoint unless overridden
        if isinstance(data, dict) and data.get('resources') is None:
            data = dict(data)
            data['resources'] = max(1, int(data.get('n_legit', 1)) + int(data.get('n_illegit', 1)))
        return data

    @model_validator(mode='after')
    def validate_population(self) -> Self:
        if self.n_clients > 64:
            raise ValueError(f'At most 64 clients supported, got {self.n_clients}')
        return self

    @property
    def n_clients(self) -> int:
        return self.n_legit + self.n_illegit

    @property
    def legitimate_ids(self) -> tuple[int, ...]:
        return tuple(range(self.n_legit))

    @property
    def illegitimate_ids(self) -> tuple[int, ...]:
        return tuple(range(self.n_legit, self.n_clients))

    @property
    def label(self) -> str:
        return (f'{self.protocol.value}(legit={self.n_legit}, illegit={self.n_illegit}, '
                f'resources={self.resources}, T={self.T}, max_retrans={self.max_retrans})')

    @classmethod
    def create(cls, **fields: Any) -> 'ScenarioConfig':
        '''Validate keyword fields, raising ConfigurationError instead of pydantic's ValidationError'''
        try:
            return cls.model_validate({k:v for k, v in fields.items() if v is not None})
        except ValidationError as validation_error:
            raise ConfigurationError(f'Invalid scenario: {validation_error}')

    @classmethod
    def load_fields(cls, filepath: Union[str, Path]) -> dict[str, Any]:
        '''Read a flat `key = value` scenario file without validating it, so flags can be layered on top'''
        try:
            loaded: dict[str, Any] = pytomlpp.load(Path(filepath))
        except (OSError, ValueError) as load_error:
            raise ConfigurationError(f'Unable to read scenario file {filepath}: {load_error}')
        unknown: set[str] = set(loaded) - set(SCENARIO_FIELDS)
        if unknown:
            raise ConfigurationError(f'Unknown scenario keys in {filepath}: {", ".join(sorted(unknown))}')
        return loaded

    @classmethod
    def from_file(cls, filepath: Union[str, Path], **overrides: Optional[Any]) -> 'ScenarioConfig':
        fields: dict[str, Any] = cls.load_fields(filepath)
        fields.update({k:v for k, v in overrides.items() if v is not None})
        return cls.create(**fields)
