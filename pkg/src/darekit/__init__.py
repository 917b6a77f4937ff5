"""Toolkit for finding, explaining, and rewriting exclusionary chat language."""

from .classify import (
    AttributeLabel,
    ClassifiedComment,
    LabelMethod,
    assign_computing_attributes,
    assign_identity_attributes,
    classified_to_record,
    classify_comment,
)
from .config import AppConfig, FieldMap, default_config, load_config
from .corpus import (
    CorpusFormat,
    CorpusSource,
    IngestDiagnostic,
    PipelineRun,
    config_digest,
    ingest,
    run_pipeline,
)
from .dare import (
    DareOutput,
    MergedSpan,
    RephraseEdit,
    RephraseStrategy,
    apply_edits,
    dare_assign,
    dare_detect,
    dare_eliminate,
    dare_process,
    dare_reveal,
    merge_spans,
    strip_annotations,
)
from .detect import (
    Comment,
    DetectionResult,
    FilterConfig,
    Sentence,
    code_regions,
    detect_offensive,
    filter_candidate,
    split_sentences,
)
from .errors import (
    DarekitError,
    DuplicateLexiconIdError,
    EmptyLexiconError,
    FixpointNotReachedError,
    InvalidEncodingError,
    NotOffensiveError,
    OverlapAfterMergeError,
    SchemaMismatchError,
    UnreadableSourceError,
    UnwritablePathError,
)
from .lexicon import (
    LexiconKind,
    MatcherBundle,
    MatchSpan,
    PhraseLexicon,
    PhraseMatcher,
    build_matchers,
    bundled_manifest_path,
    compile_matcher,
    find_matches,
    fold_char,
    is_boundary,
    is_word_char,
    load_lexicon,
    load_manifest,
    normalize_phrase,
)
from .report import (
    AttributeCounts,
    Heatmap,
    HeatmapCell,
    ProjectCounts,
    ProjectReport,
    ResultRecord,
    attribute_counts_to_dict,
    attribute_project_heatmap,
    export_report,
    heatmap_to_dict,
    load_exported,
    load_results,
    offences_per_attribute,
    offences_per_project,
    project_report_to_dict,
)
from .taxonomy import (
    COMPUTING_ATTRIBUTES,
    IDENTITY_ATTRIBUTES,
    TAXONOMY,
    AttributeId,
    Branch,
    Taxonomy,
)

__version__ = "0.1.0"
