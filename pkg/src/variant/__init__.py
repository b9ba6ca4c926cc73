"""Variety analytics for design concept spaces.

Quantifies how widely a set of alternative design concepts spreads: five
genealogy-tree indices over idea counts, plus a distance-based score
computed from the pairwise text similarity of seven-level concept
descriptions, with weighting, clustering, and dendrogram support.
"""

from .analysis import (
    BoxPlotStats,
    CurvePoint,
    Dendrogram,
    cluster,
    dendrogram,
    level_boxplot,
    testcase1_curve,
    testcase2_curve,
)
from .distance import (
    DistanceMatrix,
    LevelText,
    build_level_matrix,
    concat_level_text,
    cosine_distance,
)
from .embedding import (
    EmbeddingProvider,
    HashedBowEncoder,
    PrecomputedVectors,
    ServiceEmbeddingClient,
    make_provider,
)
from .levels import (
    LEVELS,
    AbstractionLevel,
    LevelWeights,
    default_weights,
    resolve_weights,
    uniform_weights,
)
from .rqid import (
    AssessmentResult,
    assess,
    concept_variety,
    level_variety,
    space_variety,
    weighted_concept_variety,
    weighted_distance_matrix,
)
from .spaces import (
    Concept,
    ConceptSpace,
    SapphireInstance,
    ValidationReport,
    validate_space,
)
from .treemetrics import (
    METRICS,
    TreeMetricScore,
    gsid_level,
    hhid_level,
    ihi_level,
    ihi_overall,
    nelson_variety,
    scale_to_unit,
    score_tree,
    shah_variety,
)
from .trees import GenealogyTree, IdeaNode, TreeLevel, tree_from_assignments

__version__ = "0.1.0"

__all__ = [
    "AbstractionLevel",
    "AssessmentResult",
    "BoxPlotStats",
    "Concept",
    "ConceptSpace",
    "CurvePoint",
    "Dendrogram",
    "DistanceMatrix",
    "EmbeddingProvider",
    "GenealogyTree",
    "HashedBowEncoder",
    "IdeaNode",
    "LEVELS",
    "LevelText",
    "LevelWeights",
    "METRICS",
    "PrecomputedVectors",
    "SapphireInstance",
    "ServiceEmbeddingClient",
    "TreeLevel",
    "TreeMetricScore",
    "ValidationReport",
    "assess",
    "build_level_matrix",
    "cluster",
    "concat_level_text",
    "concept_variety",
    "cosine_distance",
    "default_weights",
    "dendrogram",
    "gsid_level",
    "hhid_level",
    "ihi_level",
    "ihi_overall",
    "level_boxplot",
    "level_variety",
    "make_provider",
    "nelson_variety",
    "resolve_weights",
    "scale_to_unit",
    "score_tree",
    "shah_variety",
    "space_variety",
    "testcase1_curve",
    "testcase2_curve",
    "tree_from_assignments",
    "uniform_weights",
    "validate_space",
    "weighted_concept_variety",
    "weighted_distance_matrix",
]
