'''Pretty printer producing text that parses back to the same tree'''
from typing import Union

from models.flags import BooleanOperator

from query.ast import (AccessTerm, ArithTerm, BinaryPred, BoolConst, Comparison, Domain, IdsDomain, IntTerm, NameTerm,
                       NotPred, Predicate, PropertyAst, Quantified, Term)

__all__ = ('print_term', 'print_predicate', 'print_property')

def print_term(term: Term) -> str:
    if isinstance(term, IntTerm):
        return str(term.value)
    if isinstance(term, NameTerm):
        return term.name
    if isinstance(term, AccessTerm):
        text: str = ''
        if term.process is not None:
            text = term.process + (f'({print_term(term.argument)})' if term.argument is not None else '') + '.'
        text += term.variable
        if term.index is not None:
            text += f'[{print_term(term.index)}]'
        if term.field is not None:
            text += f'.{term.field}'
        return text
    # Left associative: only a compound right operand needs parentheses
    right: str = print_term(term.right)
    if isinstance(term.right, ArithTerm):
        right = f'({right})'
    return f'{print_term(term.left)} {term.op.value} {right}'

def _print_domain(domain: Domain) -> str:
    if isinstance(domain, IdsDomain):
        return 'ids'
    return f'int[{print_term(domain.lo)},{print_term(domain.hi)}]'

def _wrap(node: Predicate, parenthesize: bool) -> str:
    text: str = print_predicate(node)
    return f'({text})' if parenthesize else text

def print_predicate(predicate: Predicate) -> str:
    if isinstance(predicate, BoolConst):
        return 'true' if predicate.value else 'false'
    if isinstance(predicate, Comparison):
        return f'{print_term(predicate.left)} {predicate.op.value} {print_term(predicate.right)}'
    if isinstance(predicate, Quantified):
        return (f'{predicate.quantifier.value} ({predicate.binder}: {_print_domain(predicate.domain)}) '
                f'({print_predicate(predicate.body)})')
    if isinstance(predicate, NotPred):
        return 'not ' + _wrap(predicate.operand, predicate.operand.precedence < NotPred.precedence)

    precedence: int = predicate.precedence
    right_associative: bool = predicate.op is BooleanOperator.IMPLY
    left: str = _wrap(predicate.left, predicate.left.precedence < precedence
                      or (right_associative and predicate.left.precedence == precedence))
    right: str = _wrap(predicate.right, predicate.right.precedence < precedence
                       or (not right_associative and predicate.right.precedence == precedence))
    return f'{left} {predicate.op.value} {right}'

def print_property(prop: Union[PropertyAst, Predicate]) -> str:
    if isinstance(prop, PropertyAst):
        return f'{prop.quantifier.value} {print_predicate(prop.predicate)}'
    return print_predicate(prop)
