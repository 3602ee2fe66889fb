"""Numerical constraints on dominant self-rational maps of generic polarized K3 surfaces."""

__version__ = "0.1.0"

from .constraints import (
    BetaPartition,
    LambdaWitness,
    amerik_admits,
    amerik_bound,
    enumerate_beta_partitions,
    lambda_candidates,
    required_sum_sq,
    square_root_degree,
)
from .engine import (
    PROFILES,
    AdmissibilityTable,
    ConstraintProfile,
    FeasibilityVerdict,
    Reason,
    admissible_l,
    check,
    paper_table_report,
    witness_tree,
)
from .lattice import (
    BlowupContext,
    DivisorClass,
    PolarizedGenus,
    canonical_class,
    degree_from_pullback,
    intersect,
    pullback_polarization,
)
from .trees import ExceptionalTree, ShapeDescriptor, TreeNode, classify_shapes
