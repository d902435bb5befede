'''Command line front end: check, trace and export sub-commands'''
