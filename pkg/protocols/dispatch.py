from types import MappingProxyType
from typing import Callable, Final

from models.automata import SystemDef

from protocols.scenario import ScenarioConfig
from protocols.sctp import build_sctp_system
from protocols.states import Protocol
from protocols.tcp import build_tcp_system

__all__ = ('SYSTEM_BUILDERS', 'build_system')

SYSTEM_BUILDERS: Final[MappingProxyType[Protocol, Callable[[ScenarioConfig], SystemDef]]] = MappingProxyType({
    Protocol.TCP : build_tcp_system,
    Protocol.SCTP : build_sctp_system
})

def build_system(cfg: ScenarioConfig) -> SystemDef:
    return SYSTEM_BUILDERS[cfg.protocol](cfg)
