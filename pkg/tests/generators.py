'''Seeded generators of small random systems and random property trees'''
import random
from typing import Any, Optional

from models.automata import (Assign, Channel, ClockDecl, ClockReset, Edge, FieldDecl, Location, ParameterDecl, ProcessInstance,
                             ProcessTemplate, RecordArrayDecl, SelectBinder, SystemDef, VariableDecl)
from models.expressions import TRUE, Expr, clock, conj, eq, ge, le, lt, ne, param, var, lit
from models.flags import (ArithmeticOperator, BooleanOperator, ComparisonOperator, LocationKind, PathQuantifier, SyncKind,
                          VariableScope)

from query.ast import (AccessTerm, ArithTerm, BinaryPred, BoolConst, Comparison, IdsDomain, IntRange, IntTerm, NameTerm,
                       NotPred, PropertyAst, Quantified, QuantifierKind)

__all__ = ('random_system', 'random_property')

CEILING: int = 3
CHANNELS: tuple[str, ...] = ('a', 'b')

# Every integer cell ranges over [0, 3], so literal and copy assignments never leave their range
_CELLS: tuple[tuple[str, Optional[str]], ...] = (('g', None), ('arr', 'index'), ('rec', 'field'), ('v', None))

def _cell(rng: random.Random, select: Optional[str]) -> Expr:
    name, shape = rng.choice(_CELLS)
    index: Expr = param(select) if select is not None and rng.random() < 0.5 else rng.choice((lit(0), lit(1), param('id')))
    if shape == 'index':
        return var(name, index)
    if shape == 'field':
        return var(name, index, rng.choice(('x', 'y')))
    return var(name)

def _guard(rng: random.Random, select: Optional[str]) -> Expr:
    atoms: list[Expr] = []
    for _ in range(rng.randint(0, 2)):
        if rng.random() < 0.3:
            atoms.append(rng.choice((le, lt, ge, eq))(clock('c'), lit(rng.randint(0, CEILING))))
        else:
            atoms.append(rng.choice((eq, ne, le, lt))(_cell(rng, select), lit(rng.randint(0, 3))))
    return conj(*atoms) if atoms else TRUE

def _updates(rng: random.Random, select: Optional[str]) -> tuple[Any, ...]:
    updates: list[Any] = []
    for _ in range(rng.randint(0, 2)):
        roll: float = rng.random()
        if roll < 0.2:
            updates.append(ClockReset(clock='c'))
        elif roll < 0.6:
            updates.append(Assign(target=_cell(rng, select), value=lit(rng.randint(0, 3))))
        else:
            updates.append(Assign(target=_cell(rng, select), value=_cell(rng, select)))
    return tuple(updates)

def _template(rng: random.Random, name: str) -> ProcessTemplate:
    count: int = rng.randint(2, 3)
    names: list[str] = [f'L{index}' for index in range(count)]
    locations: list[Location] = []
    for index, location_name in enumerate(names):
        kind: LocationKind = LocationKind.COMMITTED if index and rng.random() < 0.2 else LocationKind.NORMAL
        invariant: Expr = le(clock('c'), lit(rng.randint(1, CEILING))) if rng.random() < 0.3 else TRUE
        locations.append(Location(name=location_name, kind=kind, invariant=invariant, initial=index == 0))

    edges: list[Edge] = []
    for _ in range(rng.randint(2, 5)):
        select: Optional[SelectBinder] = SelectBinder(name='s', lo=0, hi=1) if rng.random() < 0.3 else None
        binder: Optional[str] = None if select is None else select.name
        sync: SyncKind = rng.choice((SyncKind.NONE, SyncKind.SEND, SyncKind.RECEIVE))
        edges.append(Edge(source=rng.choice(names),
                          target=rng.choice(names),
                          guard=_guard(rng, binder),
                          sync=sync,
                          channel=None if sync is SyncKind.NONE else rng.choice(CHANNELS),
                          update=_updates(rng, binder),
                          select=select))
    return ProcessTemplate(name=name,
                           parameters=(ParameterDecl(name='id', lo=0, hi=1),),
                           locations=tuple(locations),
                           edges=tuple(edges),
                           variables=(VariableDecl(name='v', lo=0, hi=3, initial=rng.randint(0, 3), scope=VariableScope.PROCESS),),
                           clocks=(ClockDecl(name='c', ceiling=CEILING),))

def random_system(seed: int) -> SystemDef:
    '''Two templates, three processes, a scalar, an array and a record array, all valid by construction'''
    rng: random.Random = random.Random(seed)
    templates: tuple[ProcessTemplate, ...] = (_template(rng, 'A'), _template(rng, 'B'))
    variables = (VariableDecl(name='g', lo=0, hi=3, initial=rng.randint(0, 3)),
                 VariableDecl(name='arr', lo=0, hi=3, initial=0, size=2),
                 RecordArrayDecl(name='rec', size=2, fields=(FieldDecl(name='x', lo=0, hi=3, initial=0),
                                                             FieldDecl(name='y', lo=0, hi=3, initial=1))))
    processes = (ProcessInstance(name='A(0)', template='A', arguments={'id' : 0}),
                 ProcessInstance(name='A(1)', template='A', arguments={'id' : 1}),
                 ProcessInstance(name='B(0)', template='B', arguments={'id' : 0}))
    return SystemDef(templates=templates,
                     processes=processes,
                     variables=variables,
                     channels=tuple(Channel(name=name) for name in CHANNELS),
                     constants={'ONE' : 1},
                     client_ids=(0, 1),
                     legitimate_ids=(0,))


# Property trees
_IDENTIFIERS: tuple[str, ...] = ('x', 'count', 'peer', 'cur_state', 'Server', 'Legit_Client', 'tcb', 'k', 'N')
_BINDERS: tuple[str, ...] = ('i', 'j', 'm')

def _term(rng: random.Random, depth: int) -> Any:
    roll: float = rng.random()
    if depth <= 0 or roll < 0.35:
        return IntTerm(value=rng.randint(0, 9)) if rng.random() < 0.5 else NameTerm(name=rng.choice(_IDENTIFIERS + _BINDERS))
    if roll < 0.7:
        shape: int = rng.randint(0, 2)
        index = _term(rng, depth - 1) if shape == 0 or rng.random() < 0.5 else None
        field: Optional[str] = rng.choice(('peer', 'cur_state')) if rng.random() < 0.4 else None
        if shape == 0:
            return AccessTerm(variable=rng.choice(_IDENTIFIERS), index=index, field=field)
        argument = _term(rng, depth - 1) if shape == 2 else None
        return AccessTerm(process=rng.choice(_IDENTIFIERS), argument=argument, variable=rng.choice(_IDENTIFIERS),
                          index=index, field=field)
    return ArithTerm(op=rng.choice(tuple(ArithmeticOperator)), left=_term(rng, depth - 1), right=_term(rng, depth - 1))

def _predicate(rng: random.Random, depth: int) -> Any:
    roll: float = rng.random()
    if depth <= 0 or roll < 0.25:
        if rng.random() < 0.15:
            return BoolConst(value=rng.random() < 0.5)
        return Comparison(op=rng.choice(tuple(ComparisonOperator)), left=_term(rng, 2), right=_term(rng, 2))
    if roll < 0.4:
        return NotPred(operand=_predicate(rng, depth - 1))
    if roll < 0.55:
        domain = IdsDomain() if rng.random() < 0.5 else IntRange(lo=_term(rng, 1), hi=_term(rng, 1))
        return Quantified(quantifier=rng.choice(tuple(QuantifierKind)), binder=rng.choice(_BINDERS), domain=domain,
                          body=_predicate(rng, depth - 1))
    return BinaryPred(op=rng.choice(tuple(BooleanOperator)), left=_predicate(rng, depth - 1), right=_predicate(rng, depth - 1))

def random_property(rng: random.Random, depth: int = 4) -> PropertyAst:
    return PropertyAst(quantifier=rng.choice(tuple(PathQuantifier)), predicate=_predicate(rng, depth))
