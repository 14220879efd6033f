"""Spherical buildings, support lattices, CAT(k) comparison geometry and R-trees."""

from .building import (
    SphericalBuilding,
    an_building,
    opposite_chambers,
    solomon_tits_basis,
    thickness_report,
    thin_building,
    verify_building_axioms,
    weak_join,
)
from .coxeter import CoxeterDiagram, CoxeterGroup, coxeter_complex
from .simplicial import (
    Chain,
    HomologyGroup,
    SimplicialComplex,
    homology,
    join,
    link,
    local_homology,
    sphere_complex,
    support,
    suspend_cycle,
)
from .support_lattice import SupportLattice, building_lattice, reconstruct

__all__ = [
    "Chain",
    "CoxeterDiagram",
    "CoxeterGroup",
    "HomologyGroup",
    "SimplicialComplex",
    "SphericalBuilding",
    "SupportLattice",
    "an_building",
    "building_lattice",
    "coxeter_complex",
    "homology",
    "join",
    "link",
    "local_homology",
    "opposite_chambers",
    "reconstruct",
    "solomon_tits_basis",
    "sphere_complex",
    "support",
    "suspend_cycle",
    "thickness_report",
    "thin_building",
    "verify_building_axioms",
    "weak_join",
]
