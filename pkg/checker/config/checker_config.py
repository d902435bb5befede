from typing import Annotated, Optional
from typing_extensions import Self

from models.constants import ENGINE_CONSTANTS

from checker.log_models import Severity

from pydantic import BaseModel, BeforeValidator, Field, model_validator

__all__ = ('CheckerConfig',)

class CheckerConfig(BaseModel):
    version: Annotated[str, Field(frozen=True, pattern=r'^[0-9]{1,3}\.[0-9]{1,3}\.[0-9]{1,3}$')]

    # Exploration
    max_states: Annotated[int, Field(ge=1)]
    max_depth: Annotated[Optional[int], Field(default=None, ge=1)]
    time_budget: Annotated[Optional[float], Field(default=None, gt=0)]
    progress_interval: Annotated[int, Field(ge=1)]

    # Parallel exploration
    workers: Annotated[int, Field(ge=1, le=64)]
    chunk_size: Annotated[int, Field(ge=1)]

    # Logging
    log_batch_size: Annotated[int, Field(ge=1)]
    log_sink: Annotated[str, Field(min_length=1), BeforeValidator(lambda sink : sink.strip())]
    log_severity: Severity = Severity.INFO

    @model_validator(mode='after')
    def validate_limits(self) -> Self:
        assert ENGINE_CONSTANTS
        if self.max_states > ENGINE_CONSTANTS.limits.max_states * 100:
            raise ValueError(f'max_states {self.max_states} exceeds hard ceiling {ENGINE_CONSTANTS.limits.max_states * 100}')
        if self.version != ENGINE_CONSTANTS.version:
            raise ValueError(f'Configuration version {self.version} does not match engine version {ENGINE_CONSTANTS.version}')
        return self
