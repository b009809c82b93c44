"""Streamlit pages"""

from . import squares as squares  # noqa: F401
from . import codes as codes  # noqa: F401
from . import bipartite as bipartite  # noqa: F401
from . import quadruples as quadruples  # noqa: F401
from . import oracles as oracles  # noqa: F401
