import random
from collections import deque

import pytest

from models.errors import ElaborationError
from models.flags import BooleanOperator, ComparisonOperator, PathQuantifier

from checker.compiled import CompiledSystem, compile_system
from checker.semantics import initial_state, successors

from protocols.dispatch import build_system
from protocols.properties import standard_properties
from protocols.scenario import ScenarioConfig

from query.ast import (AccessTerm, ArithTerm, BinaryPred, BoolConst, Comparison, IdsDomain, IntRange, IntTerm, NameTerm,
                       NotPred, PropertyAst, Quantified, QuantifierKind)
from query.elaboration import (ElaboratedProperty, GroundAnd, GroundCompare, GroundConst, GroundImply, GroundOr, IntConst,
                               SlotRead, elaborate, elaborate_text)
from query.grammar import parse_property

from tests.oracles import reference_property
from tests.test_parser import HALF_OPEN

@pytest.fixture(scope='module')
def two_by_three() -> CompiledSystem:
    return compile_system(build_system(ScenarioConfig.create(protocol='tcp', n_legit=2, n_illegit=0, resources=3)))

def test_half_open_expands_per_client_and_entry(two_by_three: CompiledSystem):
    ground = elaborate(parse_property(HALF_OPEN), two_by_three, legitimate_ids_only=True).predicate
    assert isinstance(ground, GroundAnd)
    assert len(ground.operands) == 2
    for client_id, implication in enumerate(ground.operands):
        assert isinstance(implication, GroundImply)
        assert implication.left == GroundCompare(op=ComparisonOperator.EQ,
                                                 left=SlotRead(slot=two_by_three.slot_of(1 + client_id, 'cur_state'),
                                                               name=f'Legit_Client({client_id}).cur_state'),
                                                 right=IntConst(value=4))
        assert isinstance(implication.right, GroundOr)
        assert len(implication.right.operands) == 3
        peer_check = implication.right.operands[2].operands[0]
        assert peer_check.left.name == 'tcb[2].peer'
        assert peer_check.right == IntConst(value=client_id)

def test_ids_covers_every_client_unless_restricted(tcp_compiled: CompiledSystem):
    text = 'E<> exists (i: ids) (Server.tcb[0].peer == i)'
    assert len(elaborate_text(text, tcp_compiled).predicate.operands) == 2
    assert len(elaborate_text(text, tcp_compiled, legitimate_ids_only=True).predicate.operands) == 1

@pytest.mark.parametrize('text, value', [('A[] forall (i: int[1,0]) (x == 1)', True),
                                         ('A[] exists (i: int[3,2]) (true)', False)])
def test_empty_domains(text: str, value: bool, tcp_compiled: CompiledSystem):
    prop = elaborate_text(text, tcp_compiled)
    assert prop.evaluate(initial_state(tcp_compiled).values) is value

def test_constant_comparisons_fold(tcp_compiled: CompiledSystem):
    assert elaborate_text('E<> RESOURCES - 1 == 1', tcp_compiled).predicate == GroundConst(value=True)

@pytest.mark.parametrize('text', [
    'E<> Server.tcb[5].peer == 0',
    'E<> Server.tcb[0].owner == 0',
    'E<> Nobody.cur_state == 0',
    'E<> Legit_Client(7).cur_state == 0',
    'E<> Server.tcb[requester].peer == 0',
    'E<> undefined == 0',
    'A[] forall (i: ids) (exists (i: ids) (true))',
    'A[] forall (T: ids) (true)',
    'E<> exists (i: int[0, requester]) (true)',
])
def test_unresolvable_properties(text: str, tcp_compiled: CompiledSystem):
    with pytest.raises(ElaborationError):
        elaborate_text(text, tcp_compiled)

def test_template_name_must_be_unambiguous(two_by_three: CompiledSystem, tcp_compiled: CompiledSystem):
    with pytest.raises(ElaborationError):
        elaborate_text('E<> Legit_Client.cur_state == 4', two_by_three)
    prop = elaborate_text('E<> Legit_Client.cur_state == 4', tcp_compiled)
    assert prop.predicate.left.name == 'Legit_Client(0).cur_state'

def test_elaborated_property_keeps_its_quantifier(tcp_compiled: CompiledSystem):
    prop = elaborate_text('A[] requester != 5', tcp_compiled)
    assert isinstance(prop, ElaboratedProperty)
    assert prop.quantifier is PathQuantifier.INVARIANT
    assert prop.evaluate(initial_state(tcp_compiled).values)


# Soundness against explicit quantifier iteration
def _states(compiled: CompiledSystem, bound: int) -> list:
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

def _term(rng: random.Random, scope: frozenset[str]):
    choices = [lambda : IntTerm(value=rng.randint(-1, 4)),
               lambda : NameTerm(name=rng.choice(('ESTABLISHED', 'CLOSED', 'NONE', 'LISTEN'))),
               lambda : NameTerm(name=rng.choice(('requester', 'last_sender'))),
               lambda : AccessTerm(process='Server', variable='tcb', index=IntTerm(value=rng.randint(0, 1)),
                                   field=rng.choice(('peer', 'cur_state')))]
    if 'j' in scope:
        choices.append(lambda : AccessTerm(process='Server', variable='tcb', index=NameTerm(name='j'),
                                           field=rng.choice(('peer', 'cur_state'))))
    if 'i' in scope:
        choices.append(lambda : NameTerm(name='i'))
        choices.append(lambda : AccessTerm(process='Legit_Client', argument=NameTerm(name='i'),
                                           variable=rng.choice(('cur_state', 'counter'))))
    term = rng.choice(choices)()
    if rng.random() < 0.2:
        term = ArithTerm(op=rng.choice(('+', '-')), left=term, right=IntTerm(value=1))
    return term

def _predicate(rng: random.Random, depth: int, scope: frozenset[str]):
    roll = rng.random()
    if depth == 0 or roll < 0.3:
        return Comparison(op=rng.choice(tuple(ComparisonOperator)), left=_term(rng, scope), right=_term(rng, scope))
    if roll < 0.4:
        return NotPred(operand=_predicate(rng, depth - 1, scope))
    unbound = [binder for binder in ('i', 'j') if binder not in scope]
    if roll < 0.65 and unbound:
        binder = rng.choice(unbound)
        domain = IdsDomain() if binder == 'i' else IntRange(lo=IntTerm(value=0),
                                                            hi=ArithTerm(op='-', left=NameTerm(name='RESOURCES'), right=IntTerm(value=1)))
        return Quantified(quantifier=rng.choice(tuple(QuantifierKind)), binder=binder, domain=domain,
                          body=_predicate(rng, depth - 1, scope | {binder}))
    if roll < 0.7:
        return BoolConst(value=rng.random() < 0.5)
    return BinaryPred(op=rng.choice(tuple(BooleanOperator)), left=_predicate(rng, depth - 1, scope),
                      right=_predicate(rng, depth - 1, scope))

def test_standard_properties_agree_with_reference(desk_compiled: CompiledSystem):
    system = desk_compiled.definition
    cfg = ScenarioConfig.create(protocol='tcp' if 'syn' in system.channel_names() else 'sctp',
                                n_legit=1, n_illegit=1, resources=2)
    states = _states(desk_compiled, 600)
    for standard in standard_properties(cfg.protocol, cfg).values():
        ast = parse_property(standard.text)
        prop = elaborate(ast, desk_compiled, standard.legitimate_ids_only)
        for state in states:
            valuation = desk_compiled.valuation(state.locations, state.values)
            assert prop.evaluate(state.values) == reference_property(system, valuation, ast, standard.legitimate_ids_only)

SAMPLED_STATES: int = 1000

@pytest.fixture(scope='module')
def crowded_samples() -> list[tuple[CompiledSystem, list]]:
    # Two legitimate clients, one flooder, three TCB entries
    samples = []
    for protocol in ('tcp', 'sctp'):
        compiled = compile_system(build_system(ScenarioConfig.create(protocol=protocol, n_legit=2, n_illegit=1)))
        samples.append((compiled, _states(compiled, SAMPLED_STATES)))
    return samples

@pytest.mark.parametrize('legitimate_ids_only', [False, True])
def test_generated_properties_agree_with_reference(crowded_samples: list[tuple[CompiledSystem, list]], legitimate_ids_only: bool):
    assert sum(len(states) for _, states in crowded_samples) >= SAMPLED_STATES
    rng = random.Random(97)
    for _ in range(60):
        ast = PropertyAst(quantifier=PathQuantifier.REACH, predicate=_predicate(rng, 4, frozenset()))
        for compiled, states in crowded_samples:
            # Legit_Client(i) only resolves for legitimate ids
            try:
                prop = elaborate(ast, compiled, legitimate_ids_only)
            except ElaborationError:
                assert not legitimate_ids_only
                continue
            for state in states:
                valuation = compiled.valuation(state.locations, state.values)
                assert prop.evaluate(state.values) == reference_property(compiled.definition, valuation, ast, legitimate_ids_only)
