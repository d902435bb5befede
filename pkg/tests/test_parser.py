import random

import pytest

from models.errors import PropertySyntaxError
from models.flags import ArithmeticOperator, BooleanOperator, ComparisonOperator, PathQuantifier

from query.ast import (AccessTerm, ArithTerm, BinaryPred, BoolConst, Comparison, IdsDomain, IntRange, IntTerm, NameTerm,
                       NotPred, PropertyAst, Quantified, QuantifierKind)
from query.grammar import parse_property
from query.printer import print_property

from tests.generators import random_property

HALF_OPEN = '''A[] forall (i:ids) (
  Legit_Client(i).cur_state == ESTABLISHED imply
    exists (j: int[0,(RESOURCES-1)])(
      Server.tcb[j].peer == i and Server.tcb[j].cur_state == ESTABLISHED
    )
)'''

HOGGING = '''E<> exists (i:ids) (
   forall (j: int[0,(RESOURCES-1)])(
      Server.tcb[j].peer == i and  Server.tcb[j].cur_state != CLOSED
   )
)'''

def _tcb(field: str) -> AccessTerm:
    return AccessTerm(process='Server', variable='tcb', index=NameTerm(name='j'), field=field)

def _eq(left, right, op: ComparisonOperator = ComparisonOperator.EQ) -> Comparison:
    return Comparison(op=op, left=left, right=right)

RESOURCE_RANGE = IntRange(lo=IntTerm(value=0),
                          hi=ArithTerm(op=ArithmeticOperator.SUB, left=NameTerm(name='RESOURCES'), right=IntTerm(value=1)))

def test_half_open_listing():
    expected = PropertyAst(
        quantifier=PathQuantifier.INVARIANT,
        predicate=Quantified(
            quantifier=QuantifierKind.FORALL, binder='i', domain=IdsDomain(),
            body=BinaryPred(op=BooleanOperator.IMPLY,
                            left=_eq(AccessTerm(process='Legit_Client', argument=NameTerm(name='i'), variable='cur_state'),
                                     NameTerm(name='ESTABLISHED')),
                            right=Quantified(quantifier=QuantifierKind.EXISTS, binder='j', domain=RESOURCE_RANGE,
                                             body=BinaryPred(op=BooleanOperator.AND,
                                                             left=_eq(_tcb('peer'), NameTerm(name='i')),
                                                             right=_eq(_tcb('cur_state'), NameTerm(name='ESTABLISHED')))))))
    assert parse_property(HALF_OPEN) == expected
    assert parse_property(HALF_OPEN).is_invariant

def test_hogging_listing():
    prop = parse_property(HOGGING)
    assert prop.quantifier is PathQuantifier.REACH
    outer = prop.predicate
    assert (outer.quantifier, outer.binder, outer.domain) == (QuantifierKind.EXISTS, 'i', IdsDomain())
    inner = outer.body
    assert (inner.quantifier, inner.binder, inner.domain) == (QuantifierKind.FORALL, 'j', RESOURCE_RANGE)
    assert inner.body == BinaryPred(op=BooleanOperator.AND,
                                    left=_eq(_tcb('peer'), NameTerm(name='i')),
                                    right=_eq(_tcb('cur_state'), NameTerm(name='CLOSED'), ComparisonOperator.NE))

@pytest.mark.parametrize('text', [HALF_OPEN, HOGGING])
def test_listings_round_trip(text: str):
    prop = parse_property(text)
    assert parse_property(print_property(prop)) == prop

def test_minimal_property_prints_back():
    assert print_property(parse_property('E<> true')) == 'E<> true'

def test_connective_precedence():
    prop = parse_property('E<> a[0] == 1 or b[0] == 2 and not c[0] == 3 imply d[0] == 4')
    a, b, c, d = (_eq(AccessTerm(variable=name, index=IntTerm(value=0)), IntTerm(value=value))
                  for name, value in (('a', 1), ('b', 2), ('c', 3), ('d', 4)))
    assert prop.predicate == BinaryPred(op=BooleanOperator.IMPLY,
                                        left=BinaryPred(op=BooleanOperator.OR, left=a,
                                                        right=BinaryPred(op=BooleanOperator.AND, left=b, right=NotPred(operand=c))),
                                        right=d)

def test_imply_is_right_associative_and_or_left():
    imply = parse_property('A[] true imply false imply true').predicate
    assert imply.right == BinaryPred(op=BooleanOperator.IMPLY, left=BoolConst(value=False), right=BoolConst(value=True))
    disjunction = parse_property('A[] true or false or true').predicate
    assert disjunction.left == BinaryPred(op=BooleanOperator.OR, left=BoolConst(value=True), right=BoolConst(value=False))

def test_symbolic_connectives():
    assert parse_property('A[] !x == 1 && y == 2 || true') == parse_property('A[] not x == 1 and y == 2 or true')

def test_arithmetic_is_left_associative():
    comparison = parse_property('E<> x[0] + 1 - y == -2').predicate
    assert comparison.left == ArithTerm(op=ArithmeticOperator.SUB,
                                        left=ArithTerm(op=ArithmeticOperator.ADD, left=AccessTerm(variable='x', index=IntTerm(value=0)),
                                                       right=IntTerm(value=1)),
                                        right=NameTerm(name='y'))
    assert comparison.right == IntTerm(value=-2)

@pytest.mark.parametrize('text', ['A[] E<> true', 'E<> FORALL (i: ids) (x[i] == 1)', 'E<>', 'A<> true', 'E<> x == ',
                                  'E<> forall (int: ids) (true)', 'E<> exists (i: int[0]) (true)'])
def test_malformed_properties(text: str):
    with pytest.raises(PropertySyntaxError) as exc_info:
        parse_property(text)
    assert exc_info.value.line == 1
    assert exc_info.value.column >= 1
    assert exc_info.value.code == 'query:syntax'

def test_nested_path_quantifier_is_reported_after_the_first():
    with pytest.raises(PropertySyntaxError) as exc_info:
        parse_property('A[] E<> true')
    assert exc_info.value.column >= 5

def test_errors_point_at_the_offending_line():
    with pytest.raises(PropertySyntaxError) as exc_info:
        parse_property('E<> x[0] == 1\n  and ?', line_offset=10)
    assert exc_info.value.line == 12

def test_unindexed_global_access_is_a_name():
    assert parse_property('E<> requester == 0').predicate.left == NameTerm(name='requester')

def test_generated_trees_round_trip():
    rng = random.Random(20231)
    for _ in range(1000):
        prop = random_property(rng)
        text = print_property(prop)
        assert parse_property(text) == prop, text
