"""Finite-model toolkit for extended distributive contact lattices."""

from .edc import (
    AxiomReport,
    AxiomResult,
    EDCLattice,
    build_edc,
    check_core_axioms,
    check_extra_axiom,
    check_extra_axioms,
    check_mereotopological_axioms,
    dualize,
    rcc8_classify,
    rcc8_table,
)
from .errors import EDCError
from .lattice import Lattice, lattice_from_sets, powerset_lattice, validate_lattice
from .models import FiniteTopology, RelationalSystem, full_discrete_edc, rc_algebra, ro_algebra, sub_discrete_edc
from .points import build_point_space, enumerate_clans, enumerate_efilters, verify_topological_representation
from .representation import canonical_structure, verify_relational_representation

__version__ = "0.1.0"
