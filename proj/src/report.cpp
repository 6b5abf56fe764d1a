#include "ldakit/report.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace ldakit {

std::string format_float(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_assignments_csv(std::ostream& out, std::span<const DocTopicRow> rows, std::uint32_t num_topics) {
  out << "doc_id,prediction";
  for (std::uint32_t t = 0; t < num_topics; ++t) out << ",confidence_topic_" << t;
  out << '\n';
  for (const auto& row : rows) {
    out << csv_field(row.doc_id) << ',' << row.prediction;
    for (double c : row.confidences) out << ',' << format_float(c);
    out << '\n';
  }
}

void write_diagnostics_csv(std::ostream& out, std::span<const TopicReport> reports) {
  out << "topic,coherence,avg_word_length,exclusivity,document_entropy,tokens,top_words\n";
  for (const auto& r : reports) {
    std::string words;
    for (const auto& w : r.top_words) {
      if (!words.empty()) words.push_back(' ');
      words += w.word;
    }
    out << r.topic << ',' << format_float(r.coherence) << ',' << format_float(r.avg_word_length) << ','
        << format_float(r.exclusivity) << ',' << format_float(r.document_entropy) << ',' << r.tokens << ','
        << csv_field(words) << '\n';
  }
}

void write_stats_csv(std::ostream& out, const ConfidenceStats& stats) {
  out << "topic,min,max,mean,std\n";
  for (std::size_t t = 0; t < stats.size(); ++t) {
    const auto& s = stats[t];
    out << t << ',' << format_float(s.min) << ',' << format_float(s.max) << ',' << format_float(s.mean) << ','
        << format_float(s.std) << '\n';
  }
}

void write_histogram_csv(std::ostream& out, std::span<const ConfidenceHistogram> histograms) {
  out << "confidence_topic,bin_lo,bin_hi,predicted_topic,count\n";
  for (const auto& h : histograms) {
    for (std::size_t b = 0; b < h.num_bins(); ++b) {
      for (std::size_t p = 0; p < h.counts[b].size(); ++p) {
        out << h.topic << ',' << format_float(h.bin_lo(b)) << ',' << format_float(h.bin_hi(b)) << ',' << p << ','
            << h.counts[b][p] << '\n';
      }
    }
  }
}

void write_counts_csv(std::ostream& out, std::span<const std::uint64_t> counts) {
  out << "topic,documents\n";
  for (std::size_t t = 0; t < counts.size(); ++t) out << t << ',' << counts[t] << '\n';
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> sweep) {
  out << "k,avg_coherence,wall_time_ms,seed\n";
  for (const auto& row : sweep) {
    out << row.k << ',' << format_float(row.average_coherence) << ',' << format_float(row.wall_time_ms) << ','
        << row.seed << '\n';
  }
}

void write_dropped_csv(std::ostream& out, std::span<const DroppedDocument> dropped,
                       std::span<const IngestError> ingest_errors) {
  out << "doc_id,reason\n";
  for (const auto& e : ingest_errors) {
    out << csv_field(e.doc_id) << ',' << csv_field("line " + std::to_string(e.line) + ": " + e.message) << '\n';
  }
  for (const auto& d : dropped) out << csv_field(d.id) << ',' << csv_field(d.reason) << '\n';
}

void write_topics_json(std::ostream& out, std::span<const TopicReport> reports) {
  nlohmann::ordered_json topics = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json words = nlohmann::ordered_json::array();
    for (const auto& w : r.top_words) {
      words.push_back({{"word", w.word}, {"weight", w.weight}, {"count", w.count}});
    }
    topics.push_back({{"topic", r.topic}, {"tokens", r.tokens}, {"top_words", std::move(words)}});
  }
  nlohmann::ordered_json doc = {{"topics", std::move(topics)}};
  out << doc.dump(2) << '\n';
}

}  // namespace ldakit
