'''Argument parsing for the command line entrypoint'''
