"""Analysis and exhaustive generation of k-geodetic digraphs near the Moore bound."""

from .audit import (
    AuditVerdict,
    audit_all,
    audit_identical_neighbourhoods,
    audit_neighbourhood_lemma,
    audit_outlier_regularity,
    audit_pair_positions,
)
from .canon import CanonicalForm, canonical_digraph, canonical_form, canonical_labelling
from .digraph import (
    Digraph,
    GeodecityWitness,
    PairConfig,
    ball,
    build_pair_config,
    degree_profile,
    geodecity_witness,
    heuchenne_holds,
    is_diregular,
    is_k_geodetic,
    line_digraph,
    reverse,
    tier,
    unique_common_outneighbour_pairs,
)
from .formats import embedded_cages, emit_digraph, export_dot, parse_digraph
from .moore import (
    MooreReport,
    RepeatMultiset,
    classify,
    moore_bound,
    outlier_multiset,
    outlier_set,
    repeat_multiset,
)
from .search import SearchOutcome, SearchParams, certify_nonexistence, search, verify_result

__version__ = "0.1.0"
