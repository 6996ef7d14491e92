"""Full-coded chromatic diagrams of planar point sets, with exact arithmetic."""
from .chroma import (
    ChromaticCode,
    Particle,
    ParticleKind,
    base,
    chrom_dist,
    classify_kind,
    code_dist,
    equi_base,
    equi_color,
    format_code,
    parse_code,
)
from .diagram import FullOACD, build_diagram
from .estimator import ChromaticDiagram, check_exact_points
from .exact_geom import GeneratorSet, Point2, validate_general_position
from .exceptions import (
    BadCode,
    DegenerateInput,
    InputError,
    InvariantViolation,
    KindMismatch,
    NotACell,
    NotAnEdge,
    OACDError,
)
from .topo import (
    Relation,
    RelationVerdict,
    c2e,
    c2v,
    cc_relation,
    conn,
    cscs_relation,
    e2v,
    e2v_2I,
    e2v_3I,
    ec_relation,
    ee_collinear,
    ee_joint,
    relate,
    vc_relation,
    ve_relation,
    ve_segmented,
    vv_relation,
)
from .verify import hidden_particles, rank_code_at, run_suite

__version__ = "0.1.0"
