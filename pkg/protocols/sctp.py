'''SCTP four-way handshake: the server answers INIT statelessly and allocates only on a returned cookie'''
from models.automata import Assign, ClockReset, Edge, Location, ProcessTemplate, SelectBinder, SystemDef
from models.expressions import add, const, disj, eq, lit, param, var
from models.flags import LocationKind, SyncKind
from models.validation import ensure_valid

from protocols.common import (LEGIT_CLIENT, SELECT, SERVER, TCB, client_locals, client_parameters, free, full_reset,
                              global_declarations, illegit_client_template, instantiate, owned_by, release, reply_guard,
                              require_protocol, requester_is_me, retransmit_guard, scenario_constants, send_from,
                              wait_invariant)
from protocols.scenario import ScenarioConfig
from protocols.states import SCTP_CHANNELS, Protocol, SctpState

__all__ = ('sctp_legit_client', 'sctp_server', 'build_sctp_system')

def sctp_legit_client(cfg: ScenarioConfig) -> ProcessTemplate:
    variables, clocks = client_locals(cfg, SctpState)
    retransmit_update = (send_from(), Assign(target=var('counter'), value=add(var('counter'), 1)), ClockReset(clock='timer'))
    return ProcessTemplate(
        name=LEGIT_CLIENT,
        parameters=client_parameters(cfg),
        locations=(Location(name='LC0', initial=True),
                   Location(name='LC1', invariant=wait_invariant()),
                   Location(name='LC2', kind=LocationKind.COMMITTED),
                   Location(name='LC3', invariant=wait_invariant())),
        variables=variables,
        clocks=clocks,
        edges=(
            Edge(source='LC0', target='LC1', guard=eq(var('cur_state'), const('CLOSED')),
                 sync=SyncKind.SEND, channel='initiation', label='open',
                 update=(send_from(), Assign(target=var('counter'), value=lit(0)), ClockReset(clock='timer'),
                         Assign(target=var('cur_state'), value=const('COOKIE_WAIT')))),
            Edge(source='LC1', target='LC2', guard=reply_guard(),
                 sync=SyncKind.RECEIVE, channel='init_ack', label='cookie_received'),
            Edge(source='LC1', target='LC0', guard=requester_is_me(),
                 sync=SyncKind.RECEIVE, channel='abort_init', label='aborted', update=full_reset()),
            Edge(source='LC1', target='LC1', guard=retransmit_guard(),
                 sync=SyncKind.SEND, channel='initiation', label='retransmit', update=retransmit_update),
            Edge(source='LC1', target='LC0', label='discard', update=full_reset()),
            # Echo the cookie straight away
            Edge(source='LC2', target='LC3', sync=SyncKind.SEND, channel='cookie_echo', label='echo',
                 update=(send_from(), Assign(target=var('counter'), value=lit(0)), ClockReset(clock='timer'),
                         Assign(target=var('cur_state'), value=const('COOKIE_ECHOED')))),
            Edge(source='LC2', target='LC0', label='discard', update=full_reset()),
            Edge(source='LC3', target='LC0', guard=reply_guard(),
                 sync=SyncKind.RECEIVE, channel='cookie_ack', label='established',
                 update=(Assign(target=var('cur_state'), value=const('ESTABLISHED')),)),
            Edge(source='LC3', target='LC0', guard=requester_is_me(),
                 sync=SyncKind.RECEIVE, channel='abort_init', label='aborted', update=full_reset()),
            Edge(source='LC3', target='LC3', guard=retransmit_guard(),
                 sync=SyncKind.SEND, channel='cookie_echo', label='retransmit', update=retransmit_update),
            Edge(source='LC3', target='LC0', label='discard', update=full_reset()),
            Edge(source='LC0', target='LC0', guard=eq(var('cur_state'), const('ESTABLISHED')),
                 sync=SyncKind.SEND, channel='end_assoc', label='close',
                 update=(send_from(), *full_reset())),
        ))

def sctp_server(cfg: ScenarioConfig) -> ProcessTemplate:
    j = param(SELECT)
    select: SelectBinder = SelectBinder(name=SELECT, lo=0, hi=cfg.resources - 1)
    any_free = disj(*(free(lit(index)) for index in range(cfg.resources)))
    forget_requester = (Assign(target=var('requester'), value=const('NONE')),)
    return ProcessTemplate(
        name=SERVER,
        locations=(Location(name='S0', initial=True),
                   Location(name='S1', kind=LocationKind.COMMITTED),
                   Location(name='S2', kind=LocationKind.COMMITTED)),
        edges=(
            Edge(source='S0', target='S1', sync=SyncKind.RECEIVE, channel='initiation', label='request',
                 update=(Assign(target=var('requester'), value=var('last_sender')),)),
            # Stateless cookie reply: nothing is written to the TCB
            Edge(source='S1', target='S0', guard=any_free, sync=SyncKind.SEND, channel='init_ack', label='cookie'),
            Edge(source='S1', target='S0', sync=SyncKind.SEND, channel='abort_init', label='refuse'),
            Edge(source='S1', target='S0', label='discard', update=forget_requester),
            Edge(source='S0', target='S2', sync=SyncKind.RECEIVE, channel='cookie_echo', label='cookie_returned',
                 update=(Assign(target=var('requester'), value=var('last_sender')),)),
            Edge(source='S2', target='S0', guard=free(j), select=select,
                 sync=SyncKind.SEND, channel='cookie_ack', label='allocate',
                 update=(Assign(target=var(TCB, j, 'peer'), value=var('requester')),
                         Assign(target=var(TCB, j, 'cur_state'), value=const('ESTABLISHED')))),
            Edge(source='S2', target='S0', sync=SyncKind.SEND, channel='abort_init', label='refuse'),
            Edge(source='S2', target='S0', label='discard', update=forget_requester),
            Edge(source='S0', target='S0', guard=owned_by(j, var('last_sender'), 'ESTABLISHED'), select=select,
                 sync=SyncKind.RECEIVE, channel='end_assoc', label='closed', update=release(j)),
        ))

def build_sctp_system(cfg: ScenarioConfig) -> SystemDef:
    '''Server, `n_legit` legitimate clients and `n_illegit` INIT flooders sharing `resources` TCB entries.

    Raises:
        ConfigurationError: if the scenario is not an SCTP scenario
        ModelValidationError: if the built system fails validation
    '''
    require_protocol(cfg, Protocol.SCTP)
    return ensure_valid(instantiate(cfg,
                                    templates=(sctp_legit_client(cfg), illegit_client_template(cfg, 'initiation'), sctp_server(cfg)),
                                    variables=global_declarations(cfg, SctpState, int(SctpState.LISTEN)),
                                    channels=SCTP_CHANNELS,
                                    constants=scenario_constants(cfg, SctpState)))
