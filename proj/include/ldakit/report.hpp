#pragma once

#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ldakit/corpus.hpp"
#include "ldakit/diagnostics.hpp"
#include "ldakit/estimate.hpp"
#include "ldakit/ingest.hpp"
#include "ldakit/selection.hpp"

namespace ldakit {

// printf %.6g: six significant digits, ties to even on the exact binary value.
std::string format_float(double value);

// RFC 4180 quoting when the field contains a comma, quote, CR or LF.
std::string csv_field(std::string_view field);

// Column layouts (every file starts with this header row):
//   assignments.csv  doc_id,prediction,confidence_topic_0..confidence_topic_{k-1}
//   diagnostics.csv  topic,coherence,avg_word_length,exclusivity,document_entropy,tokens,top_words
//   stats.csv        topic,min,max,mean,std
//   histogram.csv    confidence_topic,bin_lo,bin_hi,predicted_topic,count
//   counts.csv       topic,documents
//   sweep.csv        k,avg_coherence,wall_time_ms,seed
//   dropped.csv      doc_id,reason
void write_assignments_csv(std::ostream& out, std::span<const DocTopicRow> rows, std::uint32_t num_topics);
void write_diagnostics_csv(std::ostream& out, std::span<const TopicReport> reports);
void write_stats_csv(std::ostream& out, const ConfidenceStats& stats);
void write_histogram_csv(std::ostream& out, std::span<const ConfidenceHistogram> histograms);
void write_counts_csv(std::ostream& out, std::span<const std::uint64_t> counts);
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> sweep);
void write_dropped_csv(std::ostream& out, std::span<const DroppedDocument> dropped,
                       std::span<const IngestError> ingest_errors = {});

// {"topics": [{"topic": t, "tokens": n, "top_words": [{"word": w, "weight": phi, "count": c}, ...]}]}
void write_topics_json(std::ostream& out, std::span<const TopicReport> reports);

}  // namespace ldakit
