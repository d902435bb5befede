'''Modelling vocabulary shared by the checker, the protocol builders, the query language and the CLI'''

from models.constants import load_constants
load_constants()
from models.constants import ENGINE_CONSTANTS
assert ENGINE_CONSTANTS
