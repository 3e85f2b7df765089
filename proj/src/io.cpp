#include "newscov/io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace newscov {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void fail(const fs::path& file, const std::string& what) {
  throw std::runtime_error(file.string() + ": " + what);
}

std::ofstream open_out(const fs::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) fail(file, "cannot open for writing");
  return out;
}

std::ifstream open_in(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) fail(file, "cannot open for reading");
  return in;
}

void finish_write(std::ofstream& out, const fs::path& file) {
  out.flush();
  if (!out) fail(file, "write failed");
}

std::vector<std::string> split_fields(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = line.find(sep, start);
    if (at == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, at - start));
    start = at + 1;
  }
}

std::int64_t parse_int(const fs::path& file, const std::string& text) {
  std::int64_t value = 0;
  const auto* begin = text.data();
  const auto* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) fail(file, "bad integer: " + text);
  return value;
}

double parse_double(const fs::path& file, const std::string& text) {
  double value = 0.0;
  const auto* begin = text.data();
  const auto* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) fail(file, "bad number: " + text);
  return value;
}

Instant parse_time_field(const fs::path& file, const std::string& text) {
  const auto time = parse_instant(text);
  if (!time) fail(file, "bad timestamp: " + text);
  return *time;
}

void write_name_table(const fs::path& file,
                      const std::vector<std::string>& names) {
  auto out = open_out(file);
  for (std::size_t i = 0; i < names.size(); ++i) {
    out << i << '\t' << names[i] << '\n';
  }
  finish_write(out, file);
}

std::vector<std::string> read_name_table(const fs::path& file) {
  auto in = open_in(file);
  std::vector<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = split_fields(line, '\t');
    if (fields.size() != 2) fail(file, "expected index <TAB> name");
    if (parse_int(file, fields[0]) !=
        static_cast<std::int64_t>(names.size())) {
      fail(file, "indices must be dense and ascending");
    }
    names.push_back(fields[1]);
  }
  if (names.empty()) fail(file, "empty table");
  return names;
}

void write_matrix_le(const fs::path& file, const Eigen::MatrixXd& m) {
  auto out = open_out(file);
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const auto bits = std::bit_cast<std::uint64_t>(m.data()[i]);
    char bytes[8];
    for (int b = 0; b < 8; ++b) {
      bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xff);
    }
    out.write(bytes, 8);
  }
  finish_write(out, file);
}

Eigen::MatrixXd read_matrix_le(const fs::path& file, Eigen::Index rows,
                               Eigen::Index cols) {
  auto in = open_in(file);
  Eigen::MatrixXd m(rows, cols);
  char bytes[8];
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    if (!in.read(bytes, 8)) fail(file, "truncated matrix");
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) {
      bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[b]))
              << (8 * b);
    }
    m.data()[i] = std::bit_cast<double>(bits);
  }
  if (in.read(bytes, 1)) fail(file, "trailing bytes after matrix");
  return m;
}

nlohmann::json window_to_json(const TimeWindow& window) {
  return {{"start", format_instant(window.start)},
          {"end", format_instant(window.end)}};
}

TimeWindow window_from_json(const fs::path& file, const nlohmann::json& doc) {
  const auto start = parse_instant(doc.at("start").get<std::string>());
  const auto end = parse_instant(doc.at("end").get<std::string>());
  if (!start || !end) fail(file, "bad window timestamps");
  return TimeWindow{*start, *end};
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buffer, ptr);
}

nlohmann::json read_json(const fs::path& file) {
  auto in = open_in(file);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(file, e.what());
  }
  return doc;
}

void write_json(const fs::path& file, const nlohmann::json& doc) {
  auto out = open_out(file);
  out << doc.dump(2) << '\n';
  finish_write(out, file);
}

void save_dataset(const InteractionDataset& dataset, const fs::path& dir,
                  const nlohmann::json& extra_meta) {
  fs::create_directories(dir);
  write_name_table(dir / "sources.tsv", dataset.source_names());
  write_name_table(dir / "events.tsv", dataset.event_ids());

  {
    const fs::path file = dir / "interactions.tsv";
    auto out = open_out(file);
    for (const Interaction& it : dataset.interactions()) {
      out << it.source << '\t' << it.event << '\t' << format_instant(it.time)
          << '\n';
    }
    finish_write(out, file);
  }

  nlohmann::json meta = extra_meta;
  meta["window"] = window_to_json(dataset.window());
  meta["num_sources"] = dataset.num_sources();
  meta["num_events"] = dataset.num_events();
  meta["num_interactions"] = dataset.interactions().size();
  write_json(dir / "meta.json", meta);
}

InteractionDataset load_dataset(const fs::path& dir) {
  auto sources = read_name_table(dir / "sources.tsv");
  auto events = read_name_table(dir / "events.tsv");
  const nlohmann::json meta = read_json(dir / "meta.json");
  const TimeWindow window =
      window_from_json(dir / "meta.json", meta.at("window"));

  const fs::path file = dir / "interactions.tsv";
  auto in = open_in(file);
  std::vector<Interaction> interactions;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = split_fields(line, '\t');
    if (fields.size() != 3) fail(file, "expected three columns");
    interactions.push_back(
        Interaction{static_cast<std::int32_t>(parse_int(file, fields[0])),
                    static_cast<std::int32_t>(parse_int(file, fields[1])),
                    parse_time_field(file, fields[2])});
  }
  InteractionDataset dataset(std::move(sources), std::move(events),
                             std::move(interactions), window);
  if (meta.at("num_interactions").get<std::size_t>() !=
      dataset.interactions().size()) {
    fail(dir / "meta.json", "interaction count disagrees with data");
  }
  return dataset;
}

void save_split(const SplitPair& split, const fs::path& dir) {
  fs::create_directories(dir);
  save_dataset(split.train, dir / "train");

  {
    const fs::path file = dir / "eval.tsv";
    auto out = open_out(file);
    for (const EvalTriplet& t : split.eval.triplets) {
      out << t.source << '\t' << t.pos_event << '\t' << t.neg_event << '\n';
    }
    finish_write(out, file);
  }

  write_json(dir / "split.json",
             {{"seed", split.seed},
              {"holdout", window_to_json(split.holdout)},
              {"num_triplets", split.eval.triplets.size()},
              {"sources_without_holdout", split.sources_without_holdout},
              {"sources_skipped_sole_interaction",
               split.sources_skipped_sole_interaction},
              {"sources_skipped_full_coverage",
               split.sources_skipped_full_coverage}});
}

SplitPair load_split(const fs::path& dir) {
  SplitPair split;
  split.train = load_dataset(dir / "train");

  const nlohmann::json meta = read_json(dir / "split.json");
  split.seed = meta.at("seed").get<std::uint64_t>();
  split.eval.seed = split.seed;
  split.holdout = window_from_json(dir / "split.json", meta.at("holdout"));
  split.sources_without_holdout =
      meta.at("sources_without_holdout").get<std::size_t>();
  split.sources_skipped_sole_interaction =
      meta.at("sources_skipped_sole_interaction").get<std::size_t>();
  split.sources_skipped_full_coverage =
      meta.at("sources_skipped_full_coverage").get<std::size_t>();

  const fs::path file = dir / "eval.tsv";
  auto in = open_in(file);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = split_fields(line, '\t');
    if (fields.size() != 3) fail(file, "expected three columns");
    const EvalTriplet t{
        static_cast<std::int32_t>(parse_int(file, fields[0])),
        static_cast<std::int32_t>(parse_int(file, fields[1])),
        static_cast<std::int32_t>(parse_int(file, fields[2]))};
    if (t.source < 0 || t.source >= split.train.num_sources() ||
        t.pos_event < 0 || t.pos_event >= split.train.num_events() ||
        t.neg_event < 0 || t.neg_event >= split.train.num_events()) {
      fail(file, "triplet index out of range");
    }
    split.eval.triplets.push_back(t);
  }
  if (meta.at("num_triplets").get<std::size_t>() !=
      split.eval.triplets.size()) {
    fail(dir / "split.json", "triplet count disagrees with eval.tsv");
  }
  return split;
}

void save_model(const ModelBundle& bundle, const fs::path& dir) {
  if (static_cast<Eigen::Index>(bundle.source_names.size()) !=
          bundle.model.num_sources() ||
      static_cast<Eigen::Index>(bundle.event_ids.size()) !=
          bundle.model.num_events()) {
    throw std::invalid_argument("save_model: name tables disagree with model");
  }
  fs::create_directories(dir);

  nlohmann::json meta = bundle.meta;
  meta["k"] = bundle.model.k();
  meta["num_sources"] = bundle.model.num_sources();
  meta["num_events"] = bundle.model.num_events();
  write_json(dir / "model.json", meta);

  write_matrix_le(dir / "source_factors.bin", bundle.model.source_factors);
  write_matrix_le(dir / "event_factors.bin", bundle.model.event_factors);
  write_name_table(dir / "sources.tsv", bundle.source_names);
  write_name_table(dir / "events.tsv", bundle.event_ids);
}

ModelBundle load_model(const fs::path& dir) {
  ModelBundle bundle;
  bundle.meta = read_json(dir / "model.json");
  const auto k = bundle.meta.at("k").get<Eigen::Index>();
  const auto num_sources = bundle.meta.at("num_sources").get<Eigen::Index>();
  const auto num_events = bundle.meta.at("num_events").get<Eigen::Index>();
  if (k < 1 || num_sources < 1 || num_events < 1) {
    fail(dir / "model.json", "non-positive dimensions");
  }
  bundle.model.source_factors =
      read_matrix_le(dir / "source_factors.bin", k, num_sources);
  bundle.model.event_factors =
      read_matrix_le(dir / "event_factors.bin", k, num_events);
  bundle.source_names = read_name_table(dir / "sources.tsv");
  bundle.event_ids = read_name_table(dir / "events.tsv");
  if (static_cast<Eigen::Index>(bundle.source_names.size()) != num_sources ||
      static_cast<Eigen::Index>(bundle.event_ids.size()) != num_events) {
    fail(dir, "name tables disagree with model.json");
  }
  return bundle;
}

void save_selection(std::span<const SelectionRow> rows,
                    const fs::path& file) {
  auto out = open_out(file);
  out << "rank\tsource\tmmr_score\n";
  for (const SelectionRow& row : rows) {
    out << row.rank << '\t' << row.source_name << '\t'
        << format_double(row.mmr_score) << '\n';
  }
  finish_write(out, file);
}

std::vector<SelectionRow> load_selection(const fs::path& file) {
  auto in = open_in(file);
  std::string line;
  if (!std::getline(in, line)) fail(file, "empty selection file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "rank\tsource\tmmr_score") fail(file, "bad header");
  std::vector<SelectionRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = split_fields(line, '\t');
    if (fields.size() != 3) fail(file, "expected three columns");
    rows.push_back(
        SelectionRow{static_cast<std::int32_t>(parse_int(file, fields[0])),
                     fields[1], parse_double(file, fields[2])});
    if (rows.back().rank != static_cast<std::int32_t>(rows.size())) {
      fail(file, "ranks must be 1-based and dense");
    }
  }
  if (rows.empty()) fail(file, "no selection rows");
  return rows;
}

void save_lorenz(std::span<const LorenzPoint> points, const fs::path& file) {
  auto out = open_out(file);
  out << "population,mass\n";
  for (const LorenzPoint& p : points) {
    out << format_double(p.population) << ',' << format_double(p.mass)
        << '\n';
  }
  finish_write(out, file);
}

}  // namespace newscov
