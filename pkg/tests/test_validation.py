import pytest
from pydantic import ValidationError

from models.automata import (Assign, Channel, ClockDecl, Edge, Location, ParameterDecl, ProcessInstance, ProcessTemplate,
                             RecordArrayDecl, FieldDecl, SystemDef, VariableDecl)
from models.errors import ModelValidationError
from models.expressions import add, clock, conj, eq, le, lit, param, var
from models.flags import SyncKind, VariableScope
from models.validation import ensure_valid, validate_system

from tests.generators import random_system

def _system(*edges: Edge, locations: tuple[Location, ...] = (Location(name='A', initial=True), Location(name='B')),
            **overrides) -> SystemDef:
    template = ProcessTemplate(name='P',
                               parameters=(ParameterDecl(name='id', lo=0, hi=1),),
                               locations=locations,
                               edges=edges,
                               variables=(VariableDecl(name='v', lo=0, hi=3, initial=0, scope=VariableScope.PROCESS),),
                               clocks=(ClockDecl(name='c', ceiling=3),))
    fields = dict(templates=(template,),
                  processes=(ProcessInstance(name='P(0)', template='P', arguments={'id' : 0}),),
                  variables=(VariableDecl(name='arr', lo=0, hi=3, initial=0, size=2),
                             RecordArrayDecl(name='tcb', size=2, fields=(FieldDecl(name='peer', lo=-1, hi=1, initial=-1),))),
                  channels=(Channel(name='go'),),
                  constants={'TWO' : 2})
    fields.update(overrides)
    return SystemDef(**fields)

def _rules(system: SystemDef) -> set[str]:
    return {error.rule for error in validate_system(system)}

def test_well_formed_system_has_no_errors():
    system = _system(Edge(source='A', target='B', guard=conj(le(clock('c'), lit(2)), eq(var('arr', param('id')), lit(0))),
                          sync=SyncKind.SEND, channel='go', update=(Assign(target=var('v'), value=lit(3)),)))
    assert validate_system(system) == []
    assert ensure_valid(system) is system

def test_generated_systems_validate():
    for seed in range(25):
        assert validate_system(random_system(seed)) == []

@pytest.mark.parametrize('edge, rule', [
    (Edge(source='A', target='Z'), 'dangling-location'),
    (Edge(source='A', target='B', sync=SyncKind.SEND, channel='nowhere'), 'undeclared-channel'),
    (Edge(source='A', target='B', guard=eq(var('missing'), lit(0))), 'undeclared-name'),
    (Edge(source='A', target='B', guard=eq(var('arr', var('v')), lit(0))), 'computed-index'),
    (Edge(source='A', target='B', guard=eq(var('arr', lit(2)), lit(0))), 'index-range'),
    (Edge(source='A', target='B', guard=eq(var('tcb', lit(0)), lit(0))), 'field-access'),
    (Edge(source='A', target='B', guard=eq(clock('c'), var('v'))), 'clock-comparison'),
    (Edge(source='A', target='B', guard=le(clock('c'), lit(5))), 'clock-ceiling'),
    (Edge(source='A', target='B', guard=add(var('v'), lit(1))), 'type-mismatch'),
    (Edge(source='A', target='B', update=(Assign(target=var('v'), value=clock('c')),)), 'clock-comparison'),
])
def test_edge_rules(edge: Edge, rule: str):
    assert rule in _rules(_system(edge))

def test_invariant_must_be_clock_comparisons():
    locations = (Location(name='A', initial=True, invariant=eq(var('v'), lit(0))), Location(name='B'))
    assert 'invariant-form' in _rules(_system(locations=locations))

def test_exactly_one_initial_location():
    assert 'initial-location' in _rules(_system(locations=(Location(name='A'), Location(name='B'))))
    assert 'initial-location' in _rules(_system(locations=(Location(name='A', initial=True), Location(name='B', initial=True))))

def test_argument_outside_parameter_range():
    system = _system(processes=(ProcessInstance(name='P(5)', template='P', arguments={'id' : 5}),))
    assert 'parameter-binding' in _rules(system)

def test_duplicate_process_names():
    process = ProcessInstance(name='P(0)', template='P', arguments={'id' : 0})
    assert 'duplicate-name' in _rules(_system(processes=(process, process)))

def test_global_declared_per_process_is_rejected():
    system = _system(variables=(VariableDecl(name='arr', lo=0, hi=3, initial=0, size=2, scope=VariableScope.PROCESS),))
    assert 'scope-mismatch' in _rules(system)

def test_ensure_valid_raises_with_every_error():
    system = _system(Edge(source='A', target='Z'), Edge(source='A', target='B', sync=SyncKind.SEND, channel='nowhere'))
    with pytest.raises(ModelValidationError) as exc_info:
        ensure_valid(system)
    assert {error.rule for error in exc_info.value.errors} >= {'dangling-location', 'undeclared-channel'}
    assert 'undeclared-channel' in exc_info.value.description

def test_declaration_ranges_are_checked_on_construction():
    with pytest.raises(ValidationError):
        VariableDecl(name='v', lo=0, hi=3, initial=4)
    with pytest.raises(ValidationError):
        Edge(source='A', target='B', sync=SyncKind.SEND)
