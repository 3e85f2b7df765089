#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <span>
#include <string>
#include <vector>

#include "newscov/coverage_metrics.hpp"
#include "newscov/dataset.hpp"
#include "newscov/factor_model.hpp"

namespace newscov {

/// Shortest round-trip decimal form of a double, locale independent.
std::string format_double(double value);

nlohmann::json read_json(const std::filesystem::path& file);
/// Pretty-printed with sorted keys and a trailing newline; byte-stable for
/// equal inputs.
void write_json(const std::filesystem::path& file, const nlohmann::json& doc);

/// Dataset directory layout:
///   sources.tsv       index <TAB> name
///   events.tsv        index <TAB> id
///   interactions.tsv  source_index <TAB> event_index <TAB> iso8601 time
///   meta.json         window, counts, plus caller-supplied extras
void save_dataset(const InteractionDataset& dataset,
                  const std::filesystem::path& dir,
                  const nlohmann::json& extra_meta = nlohmann::json::object());
InteractionDataset load_dataset(const std::filesystem::path& dir);

/// Split directory layout: train/ (a dataset directory), eval.tsv with
/// source <TAB> positive <TAB> negative index triplets, split.json with the
/// seed, holdout window and skip counters.
void save_split(const SplitPair& split, const std::filesystem::path& dir);
SplitPair load_split(const std::filesystem::path& dir);

struct ModelBundle {
  FactorModel model;
  std::vector<std::string> source_names;  // column order of source_factors
  std::vector<std::string> event_ids;     // column order of event_factors
  nlohmann::json meta;                    // hyperparameters and run info
};

/// Model directory layout: model.json (dimensions plus meta),
/// source_factors.bin / event_factors.bin (column-major float64, little
/// endian), sources.tsv / events.tsv copied from the training data.
void save_model(const ModelBundle& bundle, const std::filesystem::path& dir);
ModelBundle load_model(const std::filesystem::path& dir);

struct SelectionRow {
  std::int32_t rank = 0;  // 1-based
  std::string source_name;
  double mmr_score = 0.0;
};

void save_selection(std::span<const SelectionRow> rows,
                    const std::filesystem::path& file);
std::vector<SelectionRow> load_selection(const std::filesystem::path& file);

void save_lorenz(std::span<const LorenzPoint> points,
                 const std::filesystem::path& file);

}  // namespace newscov
