"""Executable checkers returning structured :class:`Verdict` objects."""
from .corpus import (AUTO_PARTITIONS, c0_examples, corpus_measures, half_line_measures)
from .identities import (carleman_identity, circle_cauchy, circle_isometry, circle_pv,
                         hilbert_eigenrelation, hilbert_identity, hilbert_involution_E1,
                         povzner)
from .membership import check_6alpha, check_C0, check_d1, check_d2
from .monotone import check_3alpha, check_S1, check_S2, check_S3
from .verdict import ConvexityPartition, Evidence, Verdict

__all__ = [
    "AUTO_PARTITIONS", "ConvexityPartition", "Evidence", "Verdict",
    "c0_examples", "corpus_measures", "half_line_measures",
    "carleman_identity", "circle_cauchy", "circle_isometry", "circle_pv",
    "hilbert_eigenrelation", "hilbert_identity", "hilbert_involution_E1", "povzner",
    "check_3alpha", "check_6alpha", "check_C0", "check_S1", "check_S2", "check_S3",
    "check_d1", "check_d2",
]
