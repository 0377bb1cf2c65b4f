from .analyzer import LogDiv, AnalysisOptions
from .functions import *  # noqa
import sys

__version__ = "0.1.0"
__author__ = "John Tocci"
__email__ = "john@johntocci.com"
__license__ = "MIT"
__description__ = "Logarithmic derivations, Bernstein-Sato polynomials and Spencer complexes of free divisors."

class _LogDivModule:
    def __call__(self, divisor, variables=None, options=None):
        return LogDiv(divisor, variables, options)

    def __getattr__(self, name):
        # Allow accessing functions like logdiv.classify
        try:
            return globals()[name]
        except KeyError:
            raise AttributeError(name) from None

sys.modules[__name__] = _LogDivModule()
