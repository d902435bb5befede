from pathlib import Path
from typing import Annotated, Any, Final, Optional

import pytomlpp
from pydantic import BaseModel, Field

__all__ = ('IdentifierConstants',
           'EncodingConstants',
           'LimitConstants',
           'EngineConstants',
           'ENGINE_CONSTANTS',
           'STRUCT_WIDTH_CODES',
           'load_constants')

class IdentifierConstants(BaseModel):
    ident_regex: Annotated[str, Field(frozen=True)]
    max_length: Annotated[int, Field(frozen=True, ge=1)]

class EncodingConstants(BaseModel):
    slot_widths: tuple[Annotated[int, Field(frozen=True, ge=1)], ...]

class LimitConstants(BaseModel):
    max_states: Annotated[int, Field(frozen=True, ge=1)]

class EngineConstants(BaseModel):
    name: Annotated[str, Field(frozen=True)]
    version: Annotated[str, Field(frozen=True, pattern=r'^[0-9]{1,3}\.[0-9]{1,3}\.[0-9]{1,3}$')]
    identifiers: IdentifierConstants
    encoding: EncodingConstants
    limits: LimitConstants

ENGINE_CONSTANTS: Optional[EngineConstants] = None

# struct format characters per byte width
STRUCT_WIDTH_CODES: Final[dict[int, str]] = {1: 'B', 2: 'H', 4: 'I', 8: 'Q'}

def load_constants() -> EngineConstants:
    global ENGINE_CONSTANTS

    loaded_constants: dict[str, Any] = pytomlpp.load(Path(__file__).parent.joinpath('constants.toml'))
    engine_section: dict[str, Any] = loaded_constants['engine']
    ENGINE_CONSTANTS = EngineConstants.model_validate({'name' : engine_section['name'],
                                                       'version' : engine_section['version'],
                                                       'identifiers' : IdentifierConstants.model_validate(engine_section['identifiers']),
                                                       'encoding' : EncodingConstants.model_validate(engine_section['encoding']),
                                                       'limits' : LimitConstants.model_validate(engine_section['limits'])})
    return ENGINE_CONSTANTS
