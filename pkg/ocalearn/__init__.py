"""
ocalearn - passive and active learning of deterministic real-time one-counter automata.
"""

import logging

# Package information
__version__ = "0.1.0"
__description__ = "RPNI, OPNI and OPNI-L learners for one-counter automata, with a benchmark harness"

logging.getLogger(__name__).addHandler(logging.NullHandler())
