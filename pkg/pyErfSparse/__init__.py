import logging

try:
    from . import nb_prox as kernels
except ImportError:
    from . import py_prox as kernels

from . import common
from .common import *

from . import penalty
from . import regularizers
from . import problems
from . import solver
from . import experiments

__version__ = "1.0"

logging.getLogger(__name__).addHandler(logging.NullHandler())
