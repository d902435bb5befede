'''Typing utilities for common modelling types'''
from typing import Annotated, TypeAlias, Union, TYPE_CHECKING

from models.constants import ENGINE_CONSTANTS

from pydantic import Field

if TYPE_CHECKING: assert ENGINE_CONSTANTS

Ident:              TypeAlias = Annotated[str, Field(min_length=1,
                                                     max_length=ENGINE_CONSTANTS.identifiers.max_length,
                                                     pattern=ENGINE_CONSTANTS.identifiers.ident_regex)]
Value:              TypeAlias = Union[int, bool]
