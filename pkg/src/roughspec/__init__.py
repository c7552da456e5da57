"""Graph spectral clustering with boundary-document filtering and explanations.

The library takes a pairwise similarity matrix (built from text or
generated synthetically), embeds it through one of several Laplacian or
double-centering constructions, clusters the embedding with plain or
weighted k-means, and scores the result against ground truth. A
similarity-profile filter identifies boundary documents - items about
equally similar to everything - whose removal sharpens both the clustering
and its keyword explanations.
"""

from .simcore import (
    NumericalError,
    ValidationError,
    SimilarityMatrix,
    DegreeInfo,
    Embedding,
    Partition,
    EigenDecomposition,
    symmetric_eig,
    degree_info,
    read_similarity_csv,
    write_similarity_csv,
    read_embedding_csv,
    write_embedding_csv,
)
from .corpus import (
    Corpus,
    TermVectorSpace,
    ReducedSpace,
    read_corpus_jsonl,
    build_term_space,
    cosine_similarity,
    svd_reduce,
)
from .spectral import (
    LaplacianKind,
    SpectralOptions,
    combinatorial_laplacian,
    normalized_laplacian,
    random_walk_laplacian,
    kamvar_affinity,
    spectral_embed,
    MethodVariant,
    method_variant,
    svd_smooth_similarity,
)
from .gower import CenteredGram, double_center, k_embedding, m_embedding, b_embedding
from .kmeans import KMeansConfig, KMeansResult, kmeans, weighted_kmeans
from .roughfilter import (
    FilterProfile,
    similarity_profile,
    filter_boundary,
    suggest_threshold,
    write_profile_csv,
)
from .synthgen import GeneratorParams, generate, dataset_presets, add_noise_documents
from .evalx import (
    ConfusionMatrix,
    MatchScore,
    rcut,
    ncut,
    nrcut,
    confusion,
    match_and_score,
    EquivalenceReport,
    equivalence_diagnostic,
)
from .explain import ClusterExplanation, explain_clusters, explanation_drift
from .pipeline import (
    GSC_METHODS,
    embed_similarity,
    cluster_similarity,
    run_method_variant,
    filter_and_cluster,
)

__version__ = "0.1.0"
