"""Gibbs-sampled LDA for short texts, with coherence-based model selection."""

from ._core import (
    BucketHits,
    Corpus,
    DataError,
    DocTopicRow,
    Hyperparameters,
    PlantedCorpus,
    Scorer,
    SweepRow,
    TopicModel,
    TrainResult,
    UsageError,
    average_model_coherence,
    build_corpus,
    clean_text,
    coherence_sweep,
    default_stoplist,
    document_entropy,
    exclusivity,
    generate_corpus,
    load_checkpoint,
    mean_coherence,
    preprocess,
    read_documents,
    run_cli,
    save_checkpoint,
    select_k,
    set_log_level,
    stem,
    tokenize,
    top_words,
    topic_coherence,
    train,
)

__all__ = [name for name in dir() if not name.startswith("_")]
