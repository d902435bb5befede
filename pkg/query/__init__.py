'''Property language: syntax tree, parser, printer, elaboration and query files'''
