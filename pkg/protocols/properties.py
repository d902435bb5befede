'''Named standard properties: half-open connections, resource hogging and the happy path'''
from types import MappingProxyType
from typing import Callable, Final

from protocols.scenario import ScenarioConfig
from protocols.states import Protocol

from pydantic import BaseModel, ConfigDict

__all__ = ('StandardProperty', 'STANDARD_PROPERTY_NAMES', 'standard_properties', 'standard_property')

class StandardProperty(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    text: str
    description: str
    legitimate_ids_only: bool = False

def _range(upper: int) -> str:
    return f'int[0,{upper - 1}]'

def _half_open(protocol: Protocol, cfg: ScenarioConfig) -> StandardProperty:
    text: str = 'A[] true'
    if cfg.n_legit:
        text = (f'A[] forall (i: {_range(cfg.n_legit)}) (Legit_Client(i).cur_state == ESTABLISHED imply '
                f'exists (j: {_range(cfg.resources)}) (Server.tcb[j].peer == i and Server.tcb[j].cur_state == ESTABLISHED))')
    return StandardProperty(name='half-open', text=text, legitimate_ids_only=True,
                            description='every established legitimate client has a matching established server entry')

def _hogging(protocol: Protocol, cfg: ScenarioConfig, strict: bool) -> StandardProperty:
    occupied: str = '!= CLOSED'
    if strict:
        occupied = '== SYN_RECEIVED' if protocol is Protocol.TCP else '== ESTABLISHED'
    text: str = (f'E<> exists (i: {_range(cfg.n_clients)}) (forall (j: {_range(cfg.resources)}) '
                 f'(Server.tcb[j].peer == i and Server.tcb[j].cur_state {occupied}))')
    return StandardProperty(name='hogging-strict' if strict else 'hogging', text=text,
                            description='a single client occupies every server entry'
                                        + (f' (cur_state {occupied})' if strict else ''))

def _happy_path(protocol: Protocol, cfg: ScenarioConfig) -> StandardProperty:
    text: str = 'E<> false'
    if cfg.n_legit:
        text = (f'E<> exists (i: {_range(cfg.n_legit)}) (Legit_Client(i).cur_state == ESTABLISHED and '
                f'exists (j: {_range(cfg.resources)}) (Server.tcb[j].peer == i and Server.tcb[j].cur_state == ESTABLISHED))')
    return StandardProperty(name='happy-path', text=text, legitimate_ids_only=True,
                            description='some legitimate client establishes with a matching server entry')

_BUILDERS: Final[MappingProxyType[str, Callable[[Protocol, ScenarioConfig], StandardProperty]]] = MappingProxyType({
    'half-open' : _half_open,
    'hogging' : lambda protocol, cfg : _hogging(protocol, cfg, strict=False),
    'hogging-strict' : lambda protocol, cfg : _hogging(protocol, cfg, strict=True),
    'happy-path' : _happy_path
})

STANDARD_PROPERTY_NAMES: Final[tuple[str, ...]] = tuple(_BUILDERS)

def standard_properties(protocol: Protocol, cfg: ScenarioConfig) -> dict[str, StandardProperty]:
    '''Property texts instantiated with the scenario's client and resource ranges, keyed by name'''
    return {name : builder(protocol, cfg) for name, builder in _BUILDERS.items()}

def standard_property(name: str, cfg: ScenarioConfig) -> StandardProperty:
    if name not in _BUILDERS:
        raise KeyError(f'Unknown standard property {name}, expected one of {", ".join(STANDARD_PROPERTY_NAMES)}')
    return _BUILDERS[name](cfg.protocol, cfg)
