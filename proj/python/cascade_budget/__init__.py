"""Correct-cascade probabilities for sequential observational learning.

Closed-form and series evaluation of cascade probabilities, a seeded
Monte-Carlo oracle, and optimal allocation of a signal-quality
improvement budget.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"
