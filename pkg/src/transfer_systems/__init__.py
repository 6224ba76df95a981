"""Enumeration and counting of transfer systems on finite lattices."""

from .lattice import Lattice, MeetSemilattice, grid, grid_duality, make_chain, product, up_set, up_set_complement, validate
from .recursions import count_L, count_T, count_L_stratum, count_T_stratum, tam, schroder, antichain
from .transfer import TransferSystem, closure, dual, is_transfer_system, odot_compose, split, stats

__version__ = "0.1.0"
