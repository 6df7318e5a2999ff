"""Chromatic numbers of Kneser-type hypergraphs and their random subhypergraphs.

Submodules:

- ``hypercore``: hypergraphs on ``[n]``, orderings, induced subhypergraphs, coloring
- ``kneser``: ``KG^r(H)``, Kneser and Schrijver graphs, ``K^r_{t..t}`` search
- ``alternation``: ``alt``, ``alt_r``, ``salt`` and the auxiliary hypergraph ``T``
- ``chromatic``: exact chromatic numbers and the lower bounds
- ``tucker``: Z_p-Tucker maps, lambda constructions and r-tuple witnesses
- ``verify``: exhaustive lemma sweeps
- ``randmc``: random subhypergraphs, Monte Carlo and the analytic tail bounds
- ``cli``: the ``kneserlab`` command
"""

from .hypercore import CapExceeded, ColoringBudgetExceeded, Hypergraph
from .kneser import KneserPower, kneser_graph, kneser_power, schrijver_graph

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "ColoringBudgetExceeded",
    "Hypergraph",
    "KneserPower",
    "kneser_graph",
    "kneser_power",
    "schrijver_graph",
    "__version__",
]
