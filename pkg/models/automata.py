'''Declarations making up process templates and composed systems'''
from typing import Annotated, Literal, Optional, Union
from typing_extensions import Self

from models.expressions import TRUE, Expr, VarRef
from models.flags import LocationKind, SyncKind, VariableScope
from models.typing import Ident

from pydantic import BaseModel, ConfigDict, Field, model_validator

__all__ = ('VariableDecl',
           'FieldDecl',
           'RecordArrayDecl',
           'Declaration',
           'ClockDecl',
           'Channel',
           'Location',
           'SelectBinder',
           'Assign',
           'ClockReset',
           'UpdateAction',
           'Edge',
           'ParameterDecl',
           'ProcessTemplate',
           'ProcessInstance',
           'SystemDef')

_frozen: ConfigDict = ConfigDict(frozen=True)

def _check_initial(lo: int, hi: int, initial: int, alias: str) -> None:
    if lo > hi:
        raise ValueError(f'Empty range [{lo}, {hi}] declared for {alias}')
    if not (lo <= initial <= hi):
        raise ValueError(f'Initial value {initial} of {alias} outside range [{lo}, {hi}]')

class VariableDecl(BaseModel):
    '''Bounded integer scalar, or array of bounded integers when size is set'''
    model_config = _frozen

    name: Ident
    lo: int
    hi: int
    initial: int
    scope: VariableScope = VariableScope.GLOBAL
    size: Annotated[Optional[int], Field(default=None, ge=1)]

    @model_validator(mode='after')
    def validate_range(self) -> Self:
        _check_initial(self.lo, self.hi, self.initial, self.name)
        return self

class FieldDecl(BaseModel):
    model_config = _frozen

    name: Ident
    lo: int
    hi: int
    initial: int

    @model_validator(mode='after')
    def validate_range(self) -> Self:
        _check_initial(self.lo, self.hi, self.initial, self.name)
        return self

class RecordArrayDecl(BaseModel):
    '''Array of records, e.g. the server TCB table'''
    model_config = _frozen

    name: Ident
    size: Annotated[int, Field(ge=1)]
    fields: Annotated[tuple[FieldDecl, ...], Field(min_length=1)]
    scope: VariableScope = VariableScope.GLOBAL

    def field_decl(self, name: str) -> Optional[FieldDecl]:
        return next((field for field in self.fields if field.name == name), None)

Declaration = Union[VariableDecl, RecordArrayDecl]

class ClockDecl(BaseModel):
    '''Per-process discrete clock saturating at its ceiling'''
    model_config = _frozen

    name: Ident
    ceiling: Annotated[int, Field(ge=1)]

class Channel(BaseModel):
    model_config = _frozen

    name: Ident
    kind: Literal['broadcast'] = 'broadcast'

class Location(BaseModel):
    model_config = _frozen

    name: Ident
    kind: LocationKind = LocationKind.NORMAL
    invariant: Expr = TRUE
    initial: bool = False

    @property
    def committed(self) -> bool:
        return self.kind is LocationKind.COMMITTED

class SelectBinder(BaseModel):
    '''Edge-level binder instantiating one concrete edge per value in [lo, hi]'''
    model_config = _frozen

    name: Ident
    lo: int
    hi: int

class Assign(BaseModel):
    model_config = _frozen

    kind: Literal['assign'] = 'assign'
    target: VarRef
    value: Expr

    def __str__(self) -> str:
        return f'{self.target} := {self.value}'

class ClockReset(BaseModel):
    model_config = _frozen

    kind: Literal['reset'] = 'reset'
    clock: Ident

    def __str__(self) -> str:
        return f'{self.clock} := 0'

UpdateAction = Annotated[Union[Assign, ClockReset], Field(discriminator='kind')]

class Edge(BaseModel):
    model_config = _frozen

    source: Ident
    target: Ident
    guard: Expr = TRUE
    sync: SyncKind = SyncKind.NONE
    channel: Optional[Ident] = None
    update: tuple[UpdateAction, ...] = ()
    select: Optional[SelectBinder] = None
    label: Optional[str] = None

    @model_validator(mode='after')
    def validate_sync(self) -> Self:
        if (self.sync is SyncKind.NONE) != (self.channel is None):
            raise ValueError(f'Edge {self.source}->{self.target}: a channel is required exactly when the edge synchronises')
        return self

    @property
    def sync_label(self) -> str:
        if self.sync is SyncKind.SEND:
            return f'{self.channel}!'
        if self.sync is SyncKind.RECEIVE:
            return f'{self.channel}?'
        return ''

class ParameterDecl(BaseModel):
    model_config = _frozen

    name: Ident
    lo: int
    hi: int

class ProcessTemplate(BaseModel):
    model_config = _frozen

    name: Ident
    parameters: tuple[ParameterDecl, ...] = ()
    locations: tuple[Location, ...]
    edges: tuple[Edge, ...] = ()
    variables: tuple[Declaration, ...] = ()
    clocks: tuple[ClockDecl, ...] = ()

    @property
    def initial_location(self) -> Optional[Location]:
        return next((location for location in self.locations if location.initial), None)

    def location_index(self, name: str) -> int:
        for index, location in enumerate(self.locations):
            if location.name == name:
                return index
        raise KeyError(f'Template {self.name} has no location {name}')

class ProcessInstance(BaseModel):
    '''A template bound to concrete parameter values'''
    model_config = _frozen

    name: str
    template: Ident
    arguments: dict[str, int] = Field(default_factory=dict)

class SystemDef(BaseModel):
    model_config = _frozen

    templates: tuple[ProcessTemplate, ...] = ()
    processes: tuple[ProcessInstance, ...] = ()
    variables: tuple[Declaration, ...] = ()
    channels: tuple[Channel, ...] = ()
    constants: dict[str, int] = Field(default_factory=dict)

    # Identity domains used by the property language's `ids` alias
    client_ids: tuple[int, ...] = ()
    legitimate_ids: tuple[int, ...] = ()

    def template(self, name: str) -> ProcessTemplate:
        for template in self.templates:
            if template.name == name:
                return template
        raise KeyError(f'No template named {name}')

    def channel_names(self) -> tuple[str, ...]:
        return tuple(channel.name for channel in self.channels)

    def process_index(self, name: str) -> int:
        for index, process in enumerate(self.processes):
            if process.name == name:
                return index
        raise KeyError(f'No process named {name}')
