'''Entrypoint script: `python -m cli check|trace|export ...`'''
import sys

from cli.main import main

if __name__ == '__main__':
    sys.exit(main())
