"""Delocalized twisted cohomology of global quotients with a gerbe."""
from .cyclotomic import CycloMatrix, CyclotomicField, CyclotomicNumber
from .delocalized import (
    DelocalizedResult,
    SectorRow,
    delocalized,
    delocalized_euler_characteristic,
    delocalized_untwisted_rational,
    sector_characters,
    sector_table,
)
from .gamma_complex import BrylinskiComplex, BrylinskiSector, GammaComplex, brylinski
