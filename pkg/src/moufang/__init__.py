"""Finite Moufang loops: Cayley-table constructions, factor sets, code loops,
Chein doubles and closure search."""

from .catalog import builtin, read_table, write_table
from .chein import mg2, mg_theta_h
from .constructions import (
    apply,
    apply_cyclic,
    apply_dihedral,
    distance,
    find_cyclic_params,
    find_dihedral_params,
    find_params,
)
from .errors import MoufangError
from .explorer import closure, components
from .isomorphism import fingerprint, is_isomorphic
from .loop import LoopTable, validate_table

__version__ = "0.1.0"
