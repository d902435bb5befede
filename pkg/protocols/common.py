'''Declarations and edge fragments shared by the TCP and SCTP builders'''
from enum import IntEnum
from typing import Final

from models.automata import (Assign, Channel, ClockDecl, ClockReset, Edge, FieldDecl, Location, ParameterDecl,
                             ProcessInstance, ProcessTemplate, RecordArrayDecl, SystemDef, UpdateAction, VariableDecl)
from models.errors import ConfigurationError
from models.expressions import Expr, clock, conj, const, eq, le, lit, lt, param, var
from models.flags import SyncKind, VariableScope

from protocols.scenario import ScenarioConfig
from protocols.states import NONE, Protocol

__all__ = ('SERVER', 'LEGIT_CLIENT', 'ILLEGIT_CLIENT', 'TCB', 'SELECT',
           'require_protocol', 'scenario_constants', 'global_declarations', 'client_parameters', 'client_locals',
           'send_from', 'full_reset', 'free', 'owned_by', 'release', 'requester_is_me', 'reply_guard', 'retransmit_guard',
           'wait_invariant', 'illegit_client_template', 'instantiate')

SERVER: Final[str] = 'Server'
LEGIT_CLIENT: Final[str] = 'Legit_Client'
ILLEGIT_CLIENT: Final[str] = 'Illegit_Client'
TCB: Final[str] = 'tcb'
SELECT: Final[str] = 'j'

def require_protocol(cfg: ScenarioConfig, protocol: Protocol) -> None:
    if cfg.protocol is not protocol:
        raise ConfigurationError(f'Scenario is for {cfg.protocol.value}, cannot build a {protocol.value} system')

def scenario_constants(cfg: ScenarioConfig, states: type[IntEnum]) -> dict[str, int]:
    constants: dict[str, int] = {state.name : int(state) for state in states}
    constants.update({'NONE' : NONE,
                      'RESOURCES' : cfg.resources,
                      'T' : cfg.T,
                      'MAX_RETRANS' : cfg.max_retrans,
                      'N_CLIENTS' : cfg.n_clients})
    return constants

def global_declarations(cfg: ScenarioConfig, states: type[IntEnum], initial_entry_state: int) -> tuple[RecordArrayDecl, VariableDecl, VariableDecl]:
    '''The server TCB table and the two scratch variables carrying peer identities across broadcasts'''
    highest_id: int = max(cfg.n_clients - 1, NONE)
    tcb: RecordArrayDecl = RecordArrayDecl(name=TCB,
                                           size=cfg.resources,
                                           fields=(FieldDecl(name='peer', lo=NONE, hi=highest_id, initial=NONE),
                                                   FieldDecl(name='cur_state', lo=int(states['CLOSED']), hi=int(states['ESTABLISHED']), initial=initial_entry_state)))
    last_sender: VariableDecl = VariableDecl(name='last_sender', lo=NONE, hi=highest_id, initial=NONE)
    requester: VariableDecl = VariableDecl(name='requester', lo=NONE, hi=highest_id, initial=NONE)
    return tcb, last_sender, requester

def client_parameters(cfg: ScenarioConfig) -> tuple[ParameterDecl, ...]:
    return (ParameterDecl(name='id', lo=0, hi=max(cfg.n_clients - 1, 0)),)

def client_locals(cfg: ScenarioConfig, states: type[IntEnum]) -> tuple[tuple[VariableDecl, ...], tuple[ClockDecl, ...]]:
    variables: tuple[VariableDecl, ...] = (VariableDecl(name='cur_state', lo=int(states['CLOSED']), hi=int(states['ESTABLISHED']),
                                                        initial=int(states['CLOSED']), scope=VariableScope.PROCESS),
                                           VariableDecl(name='counter', lo=0, hi=cfg.max_retrans, initial=0, scope=VariableScope.PROCESS))
    # Saturates one past the largest compared constant
    clocks: tuple[ClockDecl, ...] = (ClockDecl(name='timer', ceiling=cfg.T + 1),)
    return variables, clocks

def send_from() -> Assign:
    '''Every client send stamps its identity before the broadcast'''
    return Assign(target=var('last_sender'), value=param('id'))

def full_reset() -> tuple[UpdateAction, ...]:
    return (Assign(target=var('cur_state'), value=const('CLOSED')),
            Assign(target=var('counter'), value=lit(0)),
            ClockReset(clock='timer'))

def free(index: Expr) -> Expr:
    '''A TCB entry is available iff it is listening and has no peer'''
    return conj(eq(var(TCB, index, 'cur_state'), const('LISTEN')),
                eq(var(TCB, index, 'peer'), const('NONE')))

def owned_by(index: Expr, peer: Expr, state: str) -> Expr:
    return conj(eq(var(TCB, index, 'peer'), peer), eq(var(TCB, index, 'cur_state'), const(state)))

def release(index: Expr) -> tuple[UpdateAction, ...]:
    return (Assign(target=var(TCB, index, 'peer'), value=const('NONE')),
            Assign(target=var(TCB, index, 'cur_state'), value=const('LISTEN')))

def illegit_client_template(cfg: ScenarioConfig, channel: str) -> ProcessTemplate:
    '''Attacker: one location with a self-loop that keeps sending the opening message'''
    return ProcessTemplate(name=ILLEGIT_CLIENT,
                           parameters=client_parameters(cfg),
                           locations=(Location(name='IC0', initial=True),),
                           edges=(Edge(source='IC0', target='IC0', sync=SyncKind.SEND, channel=channel,
                                       update=(send_from(),), label='flood'),))

def instantiate(cfg: ScenarioConfig,
                templates: tuple[ProcessTemplate, ...],
                variables: tuple[RecordArrayDecl, VariableDecl, VariableDecl],
                channels: tuple[str, ...],
                constants: dict[str, int]) -> SystemDef:
    '''Server first, then legitimate clients 0..L-1, then illegitimate clients L..L+M-1'''
    processes: list[ProcessInstance] = [ProcessInstance(name=SERVER, template=SERVER)]
    processes.extend(ProcessInstance(name=f'{LEGIT_CLIENT}({client_id})', template=LEGIT_CLIENT, arguments={'id' : client_id})
                     for client_id in cfg.legitimate_ids)
    processes.extend(ProcessInstance(name=f'{ILLEGIT_CLIENT}({client_id})', template=ILLEGIT_CLIENT, arguments={'id' : client_id})
                     for client_id in cfg.illegitimate_ids)
    return SystemDef(templates=templates,
                     processes=tuple(processes),
                     variables=variables,
                     channels=tuple(Channel(name=name) for name in channels),
                     constants=constants,
                     client_ids=tuple(range(cfg.n_clients)),
                     legitimate_ids=cfg.legitimate_ids)

def requester_is_me() -> Expr:
    return eq(var('requester'), param('id'))

def reply_guard() -> Expr:
    '''Acknowledgement receive: within the retransmission budget and timeout, and addressed to this client'''
    return conj(le(var('counter'), const('MAX_RETRANS')), le(clock('timer'), const('T')), requester_is_me())

def retransmit_guard() -> Expr:
    return conj(eq(clock('timer'), const('T')), lt(var('counter'), const('MAX_RETRANS')))

def wait_invariant() -> Expr:
    '''Inferred from "no reply within T": a waiting client must act by the time its timer reaches T'''
    return le(clock('timer'), const('T'))
