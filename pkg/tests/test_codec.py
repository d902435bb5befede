from collections import deque

import pytest

from models.errors import InternalCheckerError, StateDecodeError

from checker.compiled import CompiledSystem, compile_system
from checker.codec import StateCodec, decode, encode
from checker.semantics import SystemState, initial_state, successors

from protocols.dispatch import build_system
from protocols.scenario import ScenarioConfig

SAMPLE_SIZE: int = 10_000

def _sample(compiled: CompiledSystem, bound: int) -> list[SystemState]:
    start = initial_state(compiled)
    seen, pending, order = {start}, deque([start]), []
    while pending and len(order) < bound:
        state = pending.popleft()
        order.append(state)
        for _, successor in successors(compiled, state):
            if successor not in seen:
                seen.add(successor)
                pending.append(successor)
    return order

@pytest.fixture(scope='module')
def crowded_tcp() -> CompiledSystem:
    # Two legitimate clients, one flooder, three TCB entries
    return compile_system(build_system(ScenarioConfig.create(protocol='tcp', n_legit=2, n_illegit=1)))

def test_reachable_states_decode_to_themselves(crowded_tcp: CompiledSystem):
    codec = StateCodec(crowded_tcp)
    states = _sample(crowded_tcp, SAMPLE_SIZE)
    assert len(states) == SAMPLE_SIZE
    for state in states:
        key = codec.encode(state)
        assert len(key) == codec.width
        assert codec.decode(key) == state

def test_distinct_states_get_distinct_keys(crowded_tcp: CompiledSystem):
    codec = StateCodec(crowded_tcp)
    states = _sample(crowded_tcp, SAMPLE_SIZE)
    assert len({codec.encode(state) for state in states}) == len(states) == SAMPLE_SIZE

def test_desk_states_round_trip(desk_compiled: CompiledSystem):
    for state in _sample(desk_compiled, 500):
        assert decode(encode(desk_compiled, state), desk_compiled) == state

def test_negative_ranges_are_offset(tcp_compiled: CompiledSystem):
    # peers start at NONE = -1, the lowest value of their range
    state = initial_state(tcp_compiled)
    assert decode(encode(tcp_compiled, state), tcp_compiled) == state

def test_malformed_keys_are_rejected(tcp_compiled: CompiledSystem):
    codec = StateCodec(tcp_compiled)
    key = codec.encode(initial_state(tcp_compiled))
    with pytest.raises(StateDecodeError):
        codec.decode(key[:-1])
    with pytest.raises(StateDecodeError):
        codec.decode(bytes([255]) + key[1:])

def test_out_of_range_state_cannot_be_encoded(tcp_compiled: CompiledSystem):
    state = initial_state(tcp_compiled)
    broken = SystemState(state.locations, (-5,) + state.values[1:])
    with pytest.raises(InternalCheckerError):
        StateCodec(tcp_compiled).encode(broken)
