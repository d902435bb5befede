import pytest

from models.automata import SystemDef

from checker.compiled import CompiledSystem, compile_system

from protocols.dispatch import build_system
from protocols.scenario import ScenarioConfig
from protocols.states import Protocol

# One legitimate client (id 0), one flooder (id 1), two TCB entries
DESK_FIELDS: dict[str, int] = {'n_legit' : 1, 'n_illegit' : 1, 'resources' : 2, 'T' : 2, 'max_retrans' : 1}

@pytest.fixture(scope='session')
def tcp_cfg() -> ScenarioConfig:
    return ScenarioConfig.create(protocol='tcp', **DESK_FIELDS)

@pytest.fixture(scope='session')
def sctp_cfg() -> ScenarioConfig:
    return ScenarioConfig.create(protocol='sctp', **DESK_FIELDS)

@pytest.fixture(scope='session')
def tcp_system(tcp_cfg: ScenarioConfig) -> SystemDef:
    return build_system(tcp_cfg)

@pytest.fixture(scope='session')
def sctp_system(sctp_cfg: ScenarioConfig) -> SystemDef:
    return build_system(sctp_cfg)

@pytest.fixture(scope='session')
def tcp_compiled(tcp_system: SystemDef) -> CompiledSystem:
    return compile_system(tcp_system)

@pytest.fixture(scope='session')
def sctp_compiled(sctp_system: SystemDef) -> CompiledSystem:
    return compile_system(sctp_system)

@pytest.fixture(scope='session', params=[Protocol.TCP, Protocol.SCTP], ids=lambda protocol : protocol.value)
def desk_compiled(request: pytest.FixtureRequest) -> CompiledSystem:
    return compile_system(build_system(ScenarioConfig.create(protocol=request.param, **DESK_FIELDS)))
