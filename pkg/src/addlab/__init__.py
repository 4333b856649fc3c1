"""addlab: additive-structure algorithms and constant-delay 4-cycle enumeration.

Library layout:

* ``intset``          -- IntSet, energy, Sidon checks, relation search, naive 3SUM
* ``sumsets``         -- naive and output-sensitive sumsets, doubling constant
* ``hashing``         -- almost-linear almost-3-universal hash family
* ``behrend``         -- partition into 3-term-relation-free blocks
* ``bsg``             -- popular sums, corner subsets, verified BSG extraction
* ``small_doubling``  -- shift-cover decomposition and the tripartite solver
* ``energy_reduction``-- peel-to-moderate-energy driver
* ``sidon_reduction`` -- 3SUM -> relation-free 3SUM self-reduction
* ``cycles``          -- 4-cycle enumerators with an explicit step meter
* ``cli``             -- command-line front end and generators
"""

from .intset import (
    IntSet,
    EnergyReport,
    RelationWitness,
    additive_energy,
    find_relations,
    find_sidon_violation,
    is_sidon,
    read_set_file,
    representation_counts,
    solve_3sum_naive,
    write_set_file,
)
from .sumsets import doubling_constant, sumset, sumset_naive

__version__ = "0.1.0"
