#include "newscov/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "newscov/analysis.hpp"
#include "newscov/baselines.hpp"
#include "newscov/coverage_metrics.hpp"
#include "newscov/dataset.hpp"
#include "newscov/eval.hpp"
#include "newscov/io.hpp"
#include "newscov/selection.hpp"
#include "newscov/synth.hpp"
#include "newscov/training.hpp"

namespace newscov {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

CLI::Validator instant_validator() {
  return CLI::Validator(
      [](std::string& input) -> std::string {
        if (!parse_instant(input)) return "not a timestamp: " + input;
        return {};
      },
      "TIME");
}

Instant required_instant(const std::string& text) {
  const auto value = parse_instant(text);
  if (!value) throw std::runtime_error("bad timestamp: " + text);
  return *value;
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, ',')) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

/// Sources ordered by activity descending, ties to the lower index; the
/// shared rule for every "top N most active" subset.
std::vector<std::int32_t> top_active_sources(const InteractionDataset& dataset,
                                             std::int32_t top_n) {
  const Eigen::VectorXi activity = dataset.source_activity_counts();
  std::vector<std::int32_t> order(
      static_cast<std::size_t>(dataset.num_sources()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&activity](std::int32_t a, std::int32_t b) {
              if (activity[a] != activity[b]) return activity[a] > activity[b];
              return a < b;
            });
  order.resize(std::min<std::size_t>(order.size(),
                                     static_cast<std::size_t>(top_n)));
  return order;
}

void require_matching_sources(const ModelBundle& bundle,
                              const InteractionDataset& dataset,
                              const std::string& context) {
  if (bundle.source_names != dataset.source_names() ||
      bundle.event_ids != dataset.event_ids()) {
    throw std::runtime_error(context +
                             ": model and dataset index tables disagree");
  }
}

json metrics_json(const InteractionDataset& dataset,
                  std::span<const std::int32_t> selected,
                  const std::string& gini_universe,
                  std::span<const std::int32_t> retention_ns,
                  std::vector<LorenzPoint>* lorenz_out) {
  const CoverageProfile profile = coverage_profile(dataset, selected);
  std::vector<double> sample;
  if (gini_universe == "all") {
    sample.resize(static_cast<std::size_t>(profile.counts.size()));
    for (Eigen::Index e = 0; e < profile.counts.size(); ++e) {
      sample[static_cast<std::size_t>(e)] = profile.counts[e];
    }
  } else {
    sample = profile.positive_counts();
  }

  json retention = json::object();
  for (const std::int32_t n : retention_ns) {
    if (n > dataset.num_events()) {
      std::cerr << "warning: retention top_" << n << " clamped to "
                << dataset.num_events() << " events\n";
    }
    retention["top_" + std::to_string(n)] =
        top_event_retention(dataset, selected, n);
  }

  if (lorenz_out) *lorenz_out = lorenz_points(sample);
  return json{{"gini", gini(sample)},
              {"gini_universe", gini_universe},
              {"num_selected", selected.size()},
              {"ratio_events_articles", profile.events_per_article()},
              {"retention", retention},
              {"total_articles", profile.total_articles},
              {"unique_events", profile.unique_events}};
}

void emit_json(const json& doc, const std::string& out_file) {
  if (out_file.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    write_json(out_file, doc);
  }
}

struct IngestArgs {
  std::vector<std::string> inputs;
  std::string format = "gdelt";
  std::string window_start;
  std::string window_end;
  int min_events = 5;
  int min_sources = 5;
  bool strict = false;
  std::string out;
};

void run_ingest(const IngestArgs& args) {
  const MentionFormat format = args.format == "simple"
                                   ? MentionFormat::simple()
                                   : MentionFormat::gdelt();
  std::vector<MentionRecord> records;
  std::size_t lines_read = 0;
  std::size_t lines_skipped = 0;
  for (const std::string& input : args.inputs) {
    std::ifstream in(input, std::ios::binary);
    if (!in) throw std::runtime_error(input + ": cannot open");
    ParseResult parsed = parse_mentions(in, format, args.strict);
    lines_read += parsed.lines_read;
    lines_skipped += parsed.lines_skipped;
    records.insert(records.end(),
                   std::make_move_iterator(parsed.records.begin()),
                   std::make_move_iterator(parsed.records.end()));
  }

  const TimeWindow window{required_instant(args.window_start),
                          required_instant(args.window_end)};
  const InteractionDataset dataset =
      build_dataset(records, window, args.min_events, args.min_sources);
  save_dataset(dataset, args.out,
               {{"format", args.format},
                {"lines_read", lines_read},
                {"lines_skipped", lines_skipped},
                {"min_events", args.min_events},
                {"min_sources", args.min_sources}});
  std::cerr << "ingest: " << lines_read << " lines (" << lines_skipped
            << " skipped) -> " << dataset.num_sources() << " sources, "
            << dataset.num_events() << " events, "
            << dataset.interactions().size() << " interactions\n";
}

struct SplitArgs {
  std::string dataset;
  std::uint64_t seed = 1;
  std::string holdout_start;
  std::string holdout_end;
  std::string out;
};

void run_split(const SplitArgs& args) {
  const InteractionDataset dataset = load_dataset(args.dataset);
  TimeWindow holdout{dataset.window().end - 24 * 60 * 60,
                     dataset.window().end};
  if (!args.holdout_start.empty()) {
    holdout.start = required_instant(args.holdout_start);
  }
  if (!args.holdout_end.empty()) {
    holdout.end = required_instant(args.holdout_end);
  }

  const SplitPair split = split_leave_one_out(dataset, holdout, args.seed);
  if (split.eval.triplets.empty()) {
    std::cerr << "warning: no interactions in the holdout window; "
                 "evaluation set is empty\n";
  }
  save_split(split, args.out);
  std::cerr << "split: " << split.eval.triplets.size() << " eval triplets, "
            << split.train.interactions().size()
            << " train interactions; skipped " << split.sources_without_holdout
            << " without holdout, " << split.sources_skipped_sole_interaction
            << " sole-interaction, " << split.sources_skipped_full_coverage
            << " full-coverage\n";
}

struct TrainArgs {
  std::string dataset;
  TrainConfig config;
  std::string log_file;
  std::string out;
};

void run_train(const TrainArgs& args) {
  const InteractionDataset train_set = load_dataset(args.dataset);

  std::ofstream log_stream;
  if (!args.log_file.empty()) {
    log_stream.open(args.log_file, std::ios::binary);
    if (!log_stream) {
      throw std::runtime_error(args.log_file + ": cannot open");
    }
  }
  const EpochObserver observer = [&log_stream](const EpochDiag& diag,
                                               const FactorModel&) {
    json line{{"epoch", diag.epoch}, {"objective", diag.probe_objective}};
    // Wall time goes to stderr only; written artifacts stay byte-stable
    // across reruns.
    if (log_stream.is_open()) log_stream << line.dump() << '\n';
    line["seconds"] = diag.seconds;
    std::cerr << line.dump() << '\n';
  };

  const TrainResult result = train(train_set, args.config, observer);

  json meta{{"alpha", args.config.alpha},
            {"lambda", args.config.lambda},
            {"epochs", args.config.epochs},
            {"seed", args.config.seed},
            {"init_scale", args.config.init_scale},
            {"probe_size", args.config.probe_size}};
  if (!result.log.empty()) {
    meta["final_objective"] = result.log.back().probe_objective;
  }
  save_model(ModelBundle{result.model, train_set.source_names(),
                         train_set.event_ids(), meta},
             args.out);
}

struct EvalArgs {
  std::string model;
  std::string split;
  std::string baselines = "popularity,knn";
  std::int32_t knn_k = 10;
  std::uint64_t random_seed = 1;
  std::string out;
};

void run_eval(const EvalArgs& args) {
  const ModelBundle bundle = load_model(args.model);
  const SplitPair split = load_split(args.split);
  require_matching_sources(bundle, split.train, "eval");

  std::vector<std::unique_ptr<Scorer>> scorers;
  scorers.push_back(std::make_unique<ModelScorer>(bundle.model));
  for (const std::string& name : split_csv(args.baselines)) {
    if (name == "popularity") {
      scorers.push_back(std::make_unique<PopularityScorer>(split.train));
    } else if (name == "knn") {
      auto knn = std::make_unique<KnnScorer>(split.train, args.knn_k);
      if (knn->truncated()) {
        std::cerr << "warning: fewer than " << args.knn_k
                  << " neighbors available for some sources\n";
      }
      scorers.push_back(std::move(knn));
    } else if (name == "random") {
      scorers.push_back(std::make_unique<RandomScorer>(args.random_seed));
    } else {
      throw std::runtime_error("unknown baseline: " + name);
    }
  }

  json per_scorer = json::object();
  for (const auto& scorer : scorers) {
    const AucReport report = auc(*scorer, split.eval);
    per_scorer[scorer->name()] = {{"auc", report.auc},
                                  {"ties", report.ties}};
  }
  emit_json(json{{"scorers", per_scorer},
                 {"triplets", split.eval.triplets.size()}},
            args.out);
}

struct SelectArgs {
  std::string model;
  std::string dataset;
  SelectionConfig config;
  std::string gini_universe = "subset";
  std::vector<std::int32_t> retention;
  std::string out;
};

void run_select(const SelectArgs& args) {
  const ModelBundle bundle = load_model(args.model);
  const InteractionDataset dataset = load_dataset(args.dataset);
  require_matching_sources(bundle, dataset, "select");

  const SelectionResult result =
      mmr_select(bundle.model, relevance_scores(dataset), args.config);

  fs::create_directories(args.out);
  std::vector<SelectionRow> rows;
  rows.reserve(result.picks.size());
  for (std::size_t i = 0; i < result.picks.size(); ++i) {
    rows.push_back(SelectionRow{
        static_cast<std::int32_t>(i + 1),
        dataset.source_names()[static_cast<std::size_t>(result.picks[i])],
        result.scores[i]});
  }
  save_selection(rows, fs::path(args.out) / "selection.tsv");

  std::vector<LorenzPoint> lorenz;
  json metrics = metrics_json(dataset, result.picks, args.gini_universe,
                              args.retention, &lorenz);
  metrics["beta"] = args.config.beta;
  write_json(fs::path(args.out) / "metrics.json", metrics);
  save_lorenz(lorenz, fs::path(args.out) / "lorenz.csv");
  std::cerr << "select: " << result.picks.size() << " sources, gini "
            << format_double(metrics["gini"].get<double>()) << "\n";
}

struct MetricsArgs {
  std::string dataset;
  std::string selection;
  std::int32_t top_activity = 0;
  std::string gini_universe = "subset";
  std::vector<std::int32_t> retention;
  std::string lorenz_file;
  std::string out;
};

void run_metrics(const MetricsArgs& args) {
  const InteractionDataset dataset = load_dataset(args.dataset);

  std::vector<std::int32_t> selected;
  if (!args.selection.empty()) {
    for (const SelectionRow& row : load_selection(args.selection)) {
      const auto index = dataset.source_index(row.source_name);
      if (!index) {
        throw std::runtime_error("metrics: unknown source in selection: " +
                                 row.source_name);
      }
      selected.push_back(*index);
    }
  } else {
    selected = top_active_sources(dataset, args.top_activity);
  }

  std::vector<LorenzPoint> lorenz;
  const json metrics =
      metrics_json(dataset, selected, args.gini_universe, args.retention,
                   args.lorenz_file.empty() ? nullptr : &lorenz);
  if (!args.lorenz_file.empty()) save_lorenz(lorenz, args.lorenz_file);
  emit_json(metrics, args.out);
}

struct DistancesArgs {
  std::string model;
  std::string dataset;
  std::int32_t top_m = 1000;
  std::string out;
};

void run_distances(const DistancesArgs& args) {
  const ModelBundle bundle = load_model(args.model);

  std::vector<std::int32_t> subset;
  if (!args.dataset.empty()) {
    const InteractionDataset dataset = load_dataset(args.dataset);
    require_matching_sources(bundle, dataset, "distances");
    subset = top_active_sources(dataset, args.top_m);
  } else {
    subset.resize(std::min<std::size_t>(
        static_cast<std::size_t>(bundle.model.num_sources()),
        static_cast<std::size_t>(args.top_m)));
    std::iota(subset.begin(), subset.end(), 0);
  }

  const Eigen::VectorXd distances = pairwise_distances(bundle.model, subset);
  if (!args.out.empty()) {
    std::ofstream out(args.out, std::ios::binary);
    if (!out) throw std::runtime_error(args.out + ": cannot open");
    out << "source_a,source_b,distance\n";
    Eigen::Index at = 0;
    for (std::size_t i = 0; i + 1 < subset.size(); ++i) {
      for (std::size_t j = i + 1; j < subset.size(); ++j) {
        out << bundle.source_names[static_cast<std::size_t>(subset[i])] << ','
            << bundle.source_names[static_cast<std::size_t>(subset[j])] << ','
            << format_double(distances[at++]) << '\n';
      }
    }
    if (!out.flush()) throw std::runtime_error(args.out + ": write failed");
  }
  emit_json(json{{"max", distances.maxCoeff()},
                 {"mean", distances.mean()},
                 {"min", distances.minCoeff()},
                 {"num_pairs", distances.size()},
                 {"num_sources", subset.size()}},
            std::string());
}

struct CorrelateArgs {
  std::vector<std::string> models;
  std::vector<std::string> datasets;
  std::int32_t top_m = 1000;
  std::string out;
};

void run_correlate(const CorrelateArgs& args) {
  if (args.models.size() != args.datasets.size()) {
    throw std::runtime_error(
        "correlate: need one dataset per model, in the same order");
  }
  if (args.models.size() < 2) {
    throw std::runtime_error("correlate: need at least two models");
  }

  std::vector<ModelBundle> bundles;
  std::vector<WeekSources> weeks;
  for (std::size_t i = 0; i < args.models.size(); ++i) {
    bundles.push_back(load_model(args.models[i]));
    const InteractionDataset dataset = load_dataset(args.datasets[i]);
    require_matching_sources(bundles.back(), dataset, "correlate");
    weeks.push_back(
        WeekSources{dataset.source_names(), dataset.source_activity_counts()});
  }

  const std::vector<std::string> common = rank_common_sources(weeks);
  const auto m = static_cast<std::int32_t>(std::min<std::size_t>(
      static_cast<std::size_t>(args.top_m), common.size()));
  if (m < 2) {
    throw std::runtime_error("correlate: fewer than two common sources");
  }
  if (m < args.top_m) {
    std::cerr << "warning: only " << m << " common sources available\n";
  }

  json pairs = json::array();
  double sum_all = 0.0;
  double sum_consecutive = 0.0;
  std::size_t consecutive = 0;
  for (std::size_t i = 0; i + 1 < bundles.size(); ++i) {
    for (std::size_t j = i + 1; j < bundles.size(); ++j) {
      const double r = cross_week_correlation(
          bundles[i].model, bundles[i].source_names, bundles[j].model,
          bundles[j].source_names, common, m);
      pairs.push_back({{"a", i}, {"b", j}, {"pearson", r}});
      sum_all += r;
      if (j == i + 1) {
        sum_consecutive += r;
        ++consecutive;
      }
    }
  }
  emit_json(
      json{{"common_sources", common.size()},
           {"mean_all_pairs", sum_all / static_cast<double>(pairs.size())},
           {"mean_consecutive",
            sum_consecutive / static_cast<double>(consecutive)},
           {"pairs", pairs},
           {"top_m", m}},
      args.out);
}

struct SynthArgs {
  BlockSynthConfig config;
  std::string window_start = "2016-10-01T00:00:00Z";
  std::string raw_file;
  std::string out;
};

void run_synth(const SynthArgs& args) {
  BlockSynthConfig config = args.config;
  config.window_start = required_instant(args.window_start);

  if (!args.raw_file.empty()) {
    const auto records = synth_mentions(config);
    std::ofstream out(args.raw_file, std::ios::binary);
    if (!out) throw std::runtime_error(args.raw_file + ": cannot open");
    for (const MentionRecord& record : records) {
      out << record.event_id << '\t' << record.source_name << '\t'
          << format_instant(record.mention_time) << '\n';
    }
    if (!out.flush()) {
      throw std::runtime_error(args.raw_file + ": write failed");
    }
  }
  if (!args.out.empty()) {
    const InteractionDataset dataset = synth_dataset(config);
    save_dataset(dataset, args.out,
                 {{"generator", "block_synth"},
                  {"seed", config.seed},
                  {"within_block_prob", config.within_block_prob},
                  {"cross_block_prob", config.cross_block_prob},
                  {"source_blocks", config.source_blocks},
                  {"event_blocks", config.event_blocks},
                  {"min_events", config.min_events},
                  {"min_sources", config.min_sources}});
    std::cerr << "synth: " << dataset.num_sources() << " sources, "
              << dataset.num_events() << " events, "
              << dataset.interactions().size() << " interactions\n";
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"One-class source/event coverage toolkit: ingest mention "
               "logs, embed sources and events, rank by held-out AUC, and "
               "pick diverse source subsets."};
  app.require_subcommand(1);
  const auto is_time = instant_validator();

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand(
      "ingest", "Build a filtered interaction dataset from mention TSVs");
  ingest_cmd->add_option("--input", ingest.inputs, "Mention TSV file(s)")
      ->required();
  ingest_cmd->add_option("--format", ingest.format, "Input column layout")
      ->check(CLI::IsMember({"gdelt", "simple"}))
      ->capture_default_str();
  ingest_cmd
      ->add_option("--window-start", ingest.window_start,
                   "Keep mentions at or after this time")
      ->required()
      ->check(is_time);
  ingest_cmd
      ->add_option("--window-end", ingest.window_end,
                   "Keep mentions before this time")
      ->required()
      ->check(is_time);
  ingest_cmd
      ->add_option("--min-events", ingest.min_events,
                   "Drop sources covering fewer distinct events")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ingest_cmd
      ->add_option("--min-sources", ingest.min_sources,
                   "Drop events covered by fewer distinct sources")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ingest_cmd->add_flag("--strict", ingest.strict,
                       "Fail on the first malformed line");
  ingest_cmd->add_option("--out", ingest.out, "Output dataset directory")
      ->required();
  ingest_cmd->callback([&ingest] { run_ingest(ingest); });

  SplitArgs split;
  auto* split_cmd = app.add_subcommand(
      "split", "Hold out one interaction per source for evaluation");
  split_cmd->add_option("--dataset", split.dataset, "Dataset directory")
      ->required();
  split_cmd->add_option("--seed", split.seed, "Sampling seed")
      ->capture_default_str();
  split_cmd
      ->add_option("--holdout-start", split.holdout_start,
                   "Holdout window start (default: last 24h of the window)")
      ->check(is_time);
  split_cmd
      ->add_option("--holdout-end", split.holdout_end,
                   "Holdout window end (default: dataset window end)")
      ->check(is_time);
  split_cmd->add_option("--out", split.out, "Output split directory")
      ->required();
  split_cmd->callback([&split] { run_split(split); });

  TrainArgs train;
  auto* train_cmd = app.add_subcommand(
      "train", "Fit source/event embeddings with pairwise ranking SGD");
  train_cmd->add_option("--dataset", train.dataset,
                        "Training dataset directory (typically <split>/train)")
      ->required();
  train_cmd->add_option("--k", train.config.k, "Embedding dimension")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train_cmd->add_option("--alpha", train.config.alpha, "Learning rate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train_cmd->add_option("--lambda", train.config.lambda, "L2 shrinkage")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  train_cmd->add_option("--epochs", train.config.epochs, "Training epochs")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train_cmd->add_option("--seed", train.config.seed, "Init and sampling seed")
      ->capture_default_str();
  train_cmd
      ->add_option("--init-scale", train.config.init_scale,
                   "Stddev of Gaussian initialization")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train_cmd
      ->add_option("--probe", train.config.probe_size,
                   "Probe triplets for the per-epoch objective")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  train_cmd->add_option("--log", train.log_file,
                        "Also append per-epoch NDJSON diagnostics here");
  train_cmd->add_option("--out", train.out, "Output model directory")
      ->required();
  train_cmd->callback([&train] { run_train(train); });

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand(
      "eval", "Score the model and baselines on the held-out triplets");
  eval_cmd->add_option("--model", eval_args.model, "Model directory")
      ->required();
  eval_cmd->add_option("--split", eval_args.split, "Split directory")
      ->required();
  eval_cmd
      ->add_option("--baselines", eval_args.baselines,
                   "Comma-separated: popularity, knn, random (empty for none)")
      ->capture_default_str();
  eval_cmd->add_option("--knn-k", eval_args.knn_k, "Neighborhood size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  eval_cmd
      ->add_option("--random-seed", eval_args.random_seed,
                   "Seed for the random baseline")
      ->capture_default_str();
  eval_cmd->add_option("--out", eval_args.out,
                       "Report file (default: stdout)");
  eval_cmd->callback([&eval_args] { run_eval(eval_args); });

  SelectArgs select;
  auto* select_cmd = app.add_subcommand(
      "select", "Pick a diverse high-activity source subset and score it");
  select_cmd->add_option("--model", select.model, "Model directory")
      ->required();
  select_cmd
      ->add_option("--dataset", select.dataset,
                   "Dataset the relevance and coverage come from")
      ->required();
  select_cmd->add_option("--n", select.config.n, "Number of sources to pick")
      ->required()
      ->check(CLI::PositiveNumber);
  select_cmd
      ->add_option("--beta", select.config.beta,
                   "Relevance weight; 1 ranks purely by activity")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  select_cmd
      ->add_option("--epsilon", select.config.epsilon,
                   "Distance floor before inversion")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  select_cmd
      ->add_option("--gini-universe", select.gini_universe,
                   "Concentration over covered events only, or all events")
      ->check(CLI::IsMember({"subset", "all"}))
      ->capture_default_str();
  select_cmd->add_option("--retention", select.retention,
                         "Top-event cutoffs (default: 100 1000 5000)")
      ->check(CLI::PositiveNumber);
  select_cmd->add_option("--out", select.out, "Output directory")->required();
  select_cmd->callback([&select] {
    if (select.retention.empty()) select.retention = {100, 1000, 5000};
    run_select(select);
  });

  MetricsArgs metrics;
  auto* metrics_cmd = app.add_subcommand(
      "metrics", "Coverage metrics for an explicit source subset");
  metrics_cmd->add_option("--dataset", metrics.dataset, "Dataset directory")
      ->required();
  auto* sel_opt = metrics_cmd->add_option(
      "--selection", metrics.selection, "selection.tsv naming the subset");
  metrics_cmd
      ->add_option("--top-activity", metrics.top_activity,
                   "Use the N most active sources instead")
      ->check(CLI::PositiveNumber)
      ->excludes(sel_opt);
  metrics_cmd
      ->add_option("--gini-universe", metrics.gini_universe,
                   "Concentration over covered events only, or all events")
      ->check(CLI::IsMember({"subset", "all"}))
      ->capture_default_str();
  metrics_cmd->add_option("--retention", metrics.retention,
                          "Top-event cutoffs (default: 100 1000 5000)")
      ->check(CLI::PositiveNumber);
  metrics_cmd->add_option("--lorenz", metrics.lorenz_file,
                          "Also write the Lorenz curve CSV here");
  metrics_cmd->add_option("--out", metrics.out,
                          "Report file (default: stdout)");
  metrics_cmd->callback([&metrics] {
    if (metrics.selection.empty() && metrics.top_activity == 0) {
      throw CLI::RequiredError("--selection or --top-activity");
    }
    if (metrics.retention.empty()) metrics.retention = {100, 1000, 5000};
    run_metrics(metrics);
  });

  DistancesArgs distances;
  auto* distances_cmd = app.add_subcommand(
      "distances", "Pairwise embedding distance diagnostics");
  distances_cmd->add_option("--model", distances.model, "Model directory")
      ->required();
  distances_cmd->add_option(
      "--dataset", distances.dataset,
      "Restrict to the most active sources of this dataset");
  distances_cmd
      ->add_option("--top-m", distances.top_m, "Subset size cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  distances_cmd->add_option("--out", distances.out,
                            "Write per-pair distances CSV here");
  distances_cmd->callback([&distances] { run_distances(distances); });

  CorrelateArgs correlate;
  auto* correlate_cmd = app.add_subcommand(
      "correlate",
      "Pearson correlation of distance structure across models");
  correlate_cmd
      ->add_option("--model", correlate.models,
                   "Model directories, one per period")
      ->required();
  correlate_cmd
      ->add_option("--dataset", correlate.datasets,
                   "Matching dataset directories, same order")
      ->required();
  correlate_cmd
      ->add_option("--top-m", correlate.top_m,
                   "Common sources to compare, ranked by summed activity")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  correlate_cmd->add_option("--out", correlate.out,
                            "Report file (default: stdout)");
  correlate_cmd->callback([&correlate] { run_correlate(correlate); });

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand(
      "synth", "Generate a block-structured synthetic dataset");
  synth_cmd->add_option("--sources", synth.config.num_sources, "Sources")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth_cmd->add_option("--events", synth.config.num_events, "Events")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth_cmd
      ->add_option("--source-blocks", synth.config.source_blocks,
                   "Source community count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth_cmd
      ->add_option("--event-blocks", synth.config.event_blocks,
                   "Event community count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth_cmd
      ->add_option("--within", synth.config.within_block_prob,
                   "Mention probability inside a community")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  synth_cmd
      ->add_option("--cross", synth.config.cross_block_prob,
                   "Mention probability across communities")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  synth_cmd
      ->add_option("--window-start", synth.window_start, "Window start")
      ->check(is_time)
      ->capture_default_str();
  synth_cmd->add_option("--days", synth.config.window_days, "Window length")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth_cmd
      ->add_option("--min-events", synth.config.min_events,
                   "Filter threshold on sources")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth_cmd
      ->add_option("--min-sources", synth.config.min_sources,
                   "Filter threshold on events")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.config.seed, "Generator seed")
      ->capture_default_str();
  synth_cmd->add_option("--raw", synth.raw_file,
                        "Write unfiltered mentions TSV (simple layout) here");
  synth_cmd->add_option("--out", synth.out,
                        "Output dataset directory (filtered)");
  synth_cmd->callback([&synth] {
    if (synth.out.empty() && synth.raw_file.empty()) {
      throw CLI::RequiredError("--out or --raw");
    }
    run_synth(synth);
  });

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("newscov");
  for (const std::string& arg : args) argv.push_back(arg.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace newscov
