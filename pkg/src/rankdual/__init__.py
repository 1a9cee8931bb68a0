"""Exact duality computations for rank-support partitions over finite chain rings."""

from .chainring import RingElem, RingSpec, parse_ring
from .cyclotomic import CycInt, cyc_root
from .duality import (KrawtchoukMatrix, Pairing, is_reflexive, krawtchouk, left_dual_partition,
                      mutually_dual, orthogonality_check, right_dual_partition)
from .errors import GuardExceeded, InconsistencyError
from .linalg import Submodule, howell_form, kernel, lattice, moebius_table, smith_form
from .macwilliams import Code, distribution, dual_code, macwilliams_verify
from .rankspace import (Partition, TupleSpace, partition_by_iso, partition_by_rank,
                        partition_by_support)
from .schemes import check_association_scheme, delta_partition, rank_partition

__version__ = "0.1.0"
