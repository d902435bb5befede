'''Graphviz DOT rendering of process templates'''
from typing import Iterator

from models.automata import Edge, ProcessTemplate, SystemDef
from models.expressions import BoolLit

__all__ = ('EXPORT_FORMATS', 'template_dot', 'system_dot')

EXPORT_FORMATS: tuple[str, ...] = ('dot',)

def _quote(text: str) -> str:
    return '"{}"'.format(text.replace('\\', '\\\\').replace('"', r'\"'))

def edge_annotation(edge: Edge) -> str:
    '''Guard, sync and update lines of an edge, omitting trivial parts'''
    lines: list[str] = []
    if edge.select is not None:
        lines.append(f'select {edge.select.name} : int[{edge.select.lo},{edge.select.hi}]')
    if not (isinstance(edge.guard, BoolLit) and edge.guard.value):
        lines.append(f'[{edge.guard}]')
    if edge.sync_label:
        lines.append(edge.sync_label)
    if edge.update:
        lines.append(', '.join(str(action) for action in edge.update))
    return '\n'.join(lines)

def template_dot(template: ProcessTemplate) -> Iterator[str]:
    '''One digraph per template: committed locations are drawn as double circles, the initial one is bold'''
    yield f'digraph {_quote(template.name)} {{\n'
    yield '  rankdir=LR;\n'
    yield f'  label={_quote(template.name)};\n'
    for location in template.locations:
        attributes: list[str] = [f'shape={"doublecircle" if location.committed else "circle"}']
        if location.initial:
            attributes.append('style=bold')
        label: str = location.name + ('\nC' if location.committed else '')
        if not (isinstance(location.invariant, BoolLit) and location.invariant.value):
            label += f'\n{location.invariant}'
        attributes.append(f'label={_quote(label)}')
        yield f'  {_quote(location.name)} [{" ".join(attributes)}];\n'
    for edge in template.edges:
        yield f'  {_quote(edge.source)} -> {_quote(edge.target)} [label={_quote(edge_annotation(edge))}];\n'
    yield '}\n'

def system_dot(system: SystemDef) -> dict[str, str]:
    '''DOT text keyed by template name, in template declaration order'''
    return {template.name : ''.join(template_dot(template)) for template in system.templates}
