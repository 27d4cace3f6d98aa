"""Complex ellipsoids in C^n: extremal ellipsoids and numerical characterizations."""
from .bodies import (
    BodyOracle,
    ellipsoid_oracle,
    gen_non_j_invariant,
    gen_perturbed_ellipsoid,
    gen_random_ellipsoid,
    hull_oracle,
    lp_ball_oracle,
    polydisk_oracle,
    projection_oracle,
    section_oracle,
)
from .characterize import (
    CharacterizationReport,
    DiskFit,
    bombon_check,
    disk_sections_through_point,
    fit_disk,
    homothety_detect,
    projections_ellipsoid_sweep,
    sections_symmetric_sweep,
    symmetry_center,
)
from .ellipsoid import ComplexEllipsoid, ComplexLine, Disk, from_axes, line_section, polar, unit_ball
from .extremal import ConvergenceError, FlatInputError, SolverReport, maie_symmetric, mice, mice_centered

__version__ = "0.1.0"
