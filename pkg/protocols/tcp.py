'''TCP three-way handshake: legitimate client, SYN-flooding client and server with a TCB backlog'''
from models.automata import Assign, ClockReset, Edge, Location, ProcessTemplate, SelectBinder, SystemDef
from models.expressions import add, const, eq, lit, param, var
from models.flags import LocationKind, SyncKind
from models.validation import ensure_valid

from protocols.common import (LEGIT_CLIENT, SELECT, SERVER, TCB, client_locals, client_parameters,
                              free, full_reset, global_declarations, illegit_client_template, instantiate, owned_by,
                              release, reply_guard, require_protocol, requester_is_me, retransmit_guard, scenario_constants,
                              send_from, wait_invariant)
from protocols.scenario import ScenarioConfig
from protocols.states import TCP_CHANNELS, Protocol, TcpState

__all__ = ('tcp_legit_client', 'tcp_server', 'build_tcp_system')

def tcp_legit_client(cfg: ScenarioConfig) -> ProcessTemplate:
    variables, clocks = client_locals(cfg, TcpState)
    return ProcessTemplate(
        name=LEGIT_CLIENT,
        parameters=client_parameters(cfg),
        locations=(Location(name='LC0', initial=True),
                   Location(name='LC1', invariant=wait_invariant()),
                   Location(name='LC2')),
        variables=variables,
        clocks=clocks,
        edges=(
            # Active open
            Edge(source='LC0', target='LC1', guard=eq(var('cur_state'), const('CLOSED')),
                 sync=SyncKind.SEND, channel='syn', label='open',
                 update=(send_from(), Assign(target=var('counter'), value=lit(0)), ClockReset(clock='timer'),
                         Assign(target=var('cur_state'), value=const('SYN_SENT')))),
            Edge(source='LC1', target='LC2', guard=reply_guard(),
                 sync=SyncKind.RECEIVE, channel='syn_ack', label='accepted',
                 update=(Assign(target=var('cur_state'), value=const('SYN_RECEIVED')),)),
            Edge(source='LC1', target='LC0', guard=requester_is_me(),
                 sync=SyncKind.RECEIVE, channel='reset_syn', label='refused', update=full_reset()),
            Edge(source='LC1', target='LC1', guard=retransmit_guard(),
                 sync=SyncKind.SEND, channel='syn', label='retransmit',
                 update=(send_from(), Assign(target=var('counter'), value=add(var('counter'), 1)), ClockReset(clock='timer'))),
            Edge(source='LC1', target='LC0', label='discard', update=full_reset()),
            # Complete or reject the handshake
            Edge(source='LC2', target='LC0', sync=SyncKind.SEND, channel='ack', label='confirm',
                 update=(send_from(), Assign(target=var('cur_state'), value=const('ESTABLISHED')))),
            Edge(source='LC2', target='LC0', sync=SyncKind.SEND, channel='reset_syn_ack', label='reject',
                 update=(send_from(), *full_reset())),
            Edge(source='LC2', target='LC0', label='discard', update=full_reset()),
            Edge(source='LC0', target='LC0', guard=eq(var('cur_state'), const('ESTABLISHED')),
                 sync=SyncKind.SEND, channel='end_conn', label='close',
                 update=(send_from(), *full_reset())),
        ))

def tcp_server(cfg: ScenarioConfig) -> ProcessTemplate:
    j = param(SELECT)
    select: SelectBinder = SelectBinder(name=SELECT, lo=0, hi=cfg.resources - 1)
    passive_open = tuple(update for index in range(cfg.resources)
                         for update in (Assign(target=var(TCB, index, 'cur_state'), value=const('LISTEN')),
                                        Assign(target=var(TCB, index, 'peer'), value=const('NONE'))))
    return ProcessTemplate(
        name=SERVER,
        locations=(Location(name='S0', kind=LocationKind.COMMITTED, initial=True),
                   Location(name='S1'),
                   Location(name='S2', kind=LocationKind.COMMITTED)),
        edges=(
            Edge(source='S0', target='S1', label='passive_open', update=passive_open),
            Edge(source='S1', target='S2', sync=SyncKind.RECEIVE, channel='syn', label='request',
                 update=(Assign(target=var('requester'), value=var('last_sender')),)),
            # Allocation happens on the first reply
            Edge(source='S2', target='S1', guard=free(j), select=select,
                 sync=SyncKind.SEND, channel='syn_ack', label='allocate',
                 update=(Assign(target=var(TCB, j, 'peer'), value=var('requester')),
                         Assign(target=var(TCB, j, 'cur_state'), value=const('SYN_RECEIVED')))),
            Edge(source='S2', target='S1', sync=SyncKind.SEND, channel='reset_syn', label='refuse'),
            Edge(source='S2', target='S1', label='discard',
                 update=(Assign(target=var('requester'), value=const('NONE')),)),
            Edge(source='S1', target='S1', guard=owned_by(j, var('last_sender'), 'SYN_RECEIVED'), select=select,
                 sync=SyncKind.RECEIVE, channel='ack', label='establish',
                 update=(Assign(target=var(TCB, j, 'cur_state'), value=const('ESTABLISHED')),)),
            Edge(source='S1', target='S1', guard=owned_by(j, var('last_sender'), 'SYN_RECEIVED'), select=select,
                 sync=SyncKind.RECEIVE, channel='reset_syn_ack', label='rejected', update=release(j)),
            # Condensed time-wait: any half-open entry may be reclaimed
            Edge(source='S1', target='S1', guard=eq(var(TCB, j, 'cur_state'), const('SYN_RECEIVED')), select=select,
                 label='time_out', update=release(j)),
            Edge(source='S1', target='S1', guard=owned_by(j, var('last_sender'), 'ESTABLISHED'), select=select,
                 sync=SyncKind.RECEIVE, channel='end_conn', label='closed', update=release(j)),
        ))

def build_tcp_system(cfg: ScenarioConfig) -> SystemDef:
    '''Server, `n_legit` legitimate clients and `n_illegit` SYN flooders sharing `resources` TCB entries.

    Raises:
        ConfigurationError: if the scenario is not a TCP scenario
        ModelValidationError: if the built system fails validation
    '''
    require_protocol(cfg, Protocol.TCP)
    return ensure_valid(instantiate(cfg,
                                    templates=(tcp_legit_client(cfg), illegit_client_template(cfg, 'syn'), tcp_server(cfg)),
                                    variables=global_declarations(cfg, TcpState, int(TcpState.CLOSED)),
                                    channels=TCP_CHANNELS,
                                    constants=scenario_constants(cfg, TcpState)))
