#include "harsanyi/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <set>

#include <CLI11.hpp>

#include "harsanyi/error.hpp"
#include "harsanyi/lattice_io.hpp"
#include "harsanyi/manifest.hpp"
#include "harsanyi/metrics.hpp"
#include "harsanyi/model_io.hpp"
#include "harsanyi/parallel.hpp"
#include "harsanyi/pipeline.hpp"
#include "harsanyi/report.hpp"
#include "harsanyi/scoring.hpp"
#include "harsanyi/toy.hpp"
#include "harsanyi/verify.hpp"

namespace harsanyi::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

// Options every command accepts.
struct Common {
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string out;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  cmd->add_option("--jobs", c.jobs, "Worker threads for per-sample work")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--out", c.out, std::string("Output directory (default: $") + kOutDirEnv + ")");
  cmd->add_option("--format", c.format, "Report format")
      ->check(CLI::IsMember({"csv", "jsonl", "json-lines"}))
      ->capture_default_str();
}

fs::path out_dir(const Common& c) {
  if (!c.out.empty()) return c.out;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
  return "harsanyi-out";
}

void require_file(const std::string& path, const char* what) {
  if (path.empty()) throw UsageError(std::string(what) + " is required");
  if (!fs::is_regular_file(path)) throw UsageError(std::string(what) + " not found: " + path);
}

void require_dir(const std::string& path, const char* what) {
  if (!fs::is_directory(path)) throw UsageError(std::string(what) + " is not a directory: " + path);
}

std::string sample_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "sample_%04zu", i);
  return buf;
}

// Sorted (stem, path) pairs of the files with the given extension.
std::vector<std::pair<std::string, fs::path>> list_files(const fs::path& dir, const std::string& ext) {
  std::vector<std::pair<std::string, fs::path>> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ext) {
      out.emplace_back(entry.path().stem().string(), entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct NamedVectors {
  std::vector<std::string> names;
  std::vector<InteractionVector> vectors;
};

NamedVectors read_vector_dir(const fs::path& dir) {
  require_dir(dir.string(), "vector directory");
  NamedVectors out;
  for (const auto& [stem, path] : list_files(dir, ".hivb")) {
    out.names.push_back(stem);
    out.vectors.push_back(io::decode_interactions(manifest::read_verified(path)));
  }
  if (out.names.empty()) throw UsageError("no .hivb files in " + dir.string());
  return out;
}

void require_aligned(const NamedVectors& a, const NamedVectors& b, const std::string& what) {
  if (a.names != b.names) throw UsageError("sample misalignment between vector sets: " + what);
  for (std::size_t i = 0; i < a.vectors.size(); ++i) {
    if (a.vectors[i].n() != b.vectors[i].n()) {
      throw UsageError("variable counts differ for sample " + a.names[i] + ": " + what);
    }
  }
}

// --- gen-toy ---------------------------------------------------------------

struct GenToyArgs {
  Common common;
  toy::ToyConfig config;
  bool force = false;
};

int cmd_gen_toy(const GenToyArgs& a, std::ostream& out) {
  toy::ToyConfig config = a.config;
  config.seed = a.common.seed;
  config.validate();
  const fs::path dir = out_dir(a.common);
  if (fs::exists(dir) && !a.force) throw UsageError("output directory " + dir.string() + " exists (use --force)");
  const toy::ToySuite suite = toy::generate_toy_suite(config);
  toy::write_toy_suite(suite, dir, a.force);
  out << "toy suite written to " << dir.string() << "\n"
      << "pretrain accuracy " << suite.pretrain_accuracy << ", probe accuracy " << suite.probe_accuracy
      << "\nfinal held-out accuracy: finetune " << suite.finetune_accuracy.back() << ", random "
      << suite.random_accuracy.back() << "\n";
  return kExitOk;
}

// --- train-probe -------------------------------------------------------------

struct TrainProbeArgs {
  Common common;
  std::string model, dataset;
  ProbeConfig config;
};

int cmd_train_probe(const TrainProbeArgs& a, std::ostream& out) {
  require_file(a.model, "--model");
  require_file(a.dataset, "--dataset");
  ProbeConfig config = a.config;
  config.seed = a.common.seed;
  const PortableModel model = io::model_from_text(manifest::read_verified(a.model));
  const Dataset data = io::dataset_from_text(manifest::read_verified(a.dataset));
  std::vector<std::vector<double>> features;
  std::vector<int> labels;
  for (const Sample& s : data.samples) {
    features.push_back(model.penultimate_features(s.flatten()));
    labels.push_back(s.label);
  }
  const ProbeClassifier probe = train_linear_probe(features, labels, config);
  manifest::ManifestWriter writer(out_dir(a.common), "train-probe");
  writer.set("params", {{"lr", config.lr}, {"epochs", config.epochs}, {"l2", config.l2}, {"seed", config.seed}});
  writer.write("probe.json", io::probe_to_text(probe));
  writer.finish();
  out << "probe training accuracy " << probe_accuracy(probe, features, labels) << "\n";
  return kExitOk;
}

// --- table -------------------------------------------------------------------

struct TableArgs {
  Common common;
  std::string model, dataset, scorer = "model", probe;
  int samples = 0;  // 0 means all
  bool csv = false;
};

int cmd_table(const TableArgs& a, std::ostream& out) {
  require_file(a.model, "--model");
  require_file(a.dataset, "--dataset");
  if (a.scorer == "probe" && a.probe.empty()) throw UsageError("--scorer probe requires --probe FILE");
  if (a.scorer == "probe") require_file(a.probe, "--probe");

  const PortableModel model = io::model_from_text(manifest::read_verified(a.model));
  const Dataset data = io::dataset_from_text(manifest::read_verified(a.dataset));
  std::optional<ProbeClassifier> probe;
  if (a.scorer == "probe") probe = io::probe_from_text(manifest::read_verified(a.probe));
  const Scorer scorer = probe ? Scorer::probe_head(*probe) : Scorer::model_head();
  try {
    check_variable_count(data.variable_count());
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  if (data.input_dim() != model.input_dim()) {
    throw UsageError("dataset input width does not match the model's input_dim");
  }

  const std::size_t count = a.samples > 0 ? std::min<std::size_t>(a.samples, data.samples.size())
                                          : data.samples.size();
  const BaselineVector baseline = data.effective_baseline();
  manifest::ManifestWriter writer(out_dir(a.common), "table");
  writer.set("params", {{"model", a.model}, {"dataset", a.dataset}, {"scorer", a.scorer},
                        {"probe", a.probe}, {"samples", count}});
  parallel_for(count, a.common.jobs, [&](std::size_t i) {
    const MaskedOutputTable table = build_masked_table(model, data.samples[i], baseline, scorer);
    writer.write(sample_name(i) + ".motb", io::encode_table(table));
    if (a.csv) writer.write(sample_name(i) + ".csv", io::table_to_csv(table));
  });
  writer.finish();
  out << "wrote " << count << " tables (n=" << data.variable_count() << ") to "
      << writer.dir().string() << "\n";
  return kExitOk;
}

// --- interactions ------------------------------------------------------------

struct InteractionsArgs {
  Common common;
  std::string tables;
  double tau_ratio = kDefaultTauRatio;
};

int cmd_interactions(const InteractionsArgs& a, std::ostream& out) {
  require_dir(a.tables, "--tables");
  if (!(a.tau_ratio > 0.0 && a.tau_ratio < 1.0)) throw UsageError("--tau-ratio must lie in (0, 1)");
  const auto files = list_files(a.tables, ".motb");
  if (files.empty()) throw UsageError("no .motb files in " + a.tables);
  const report::Format format = report::parse_format(a.common.format);

  manifest::ManifestWriter writer(out_dir(a.common), "interactions");
  writer.set("params", {{"tables", a.tables}, {"tau_ratio", a.tau_ratio}});
  std::vector<report::NamedSparsity> rows(files.size());
  parallel_for(files.size(), a.common.jobs, [&](std::size_t i) {
    const auto& [stem, path] = files[i];
    const InteractionVector iv = mobius_transform(io::decode_table(manifest::read_verified(path)));
    writer.write(stem + ".hivb", io::encode_interactions(iv));
    rows[i] = {stem, sparsity_report(iv, a.tau_ratio)};
  });
  writer.write("sparsity" + std::string(report::extension(format)), report::sparsity_table(rows, format));

  std::size_t salient_max = 0;
  double salient_sum = 0.0, residual_ratio_max = 0.0;
  for (const auto& r : rows) {
    salient_max = std::max(salient_max, r.report.salient_count);
    salient_sum += static_cast<double>(r.report.salient_count);
    residual_ratio_max = std::max(residual_ratio_max,
                                  r.report.residual_max / std::max(r.report.output_max, kAbsoluteFloor));
  }
  writer.set("summary", {{"samples", rows.size()},
                         {"tau_ratio", a.tau_ratio},
                         {"salient_mean", salient_sum / static_cast<double>(rows.size())},
                         {"salient_max", salient_max},
                         {"total_count", rows.front().report.total_count},
                         {"residual_over_output_max", residual_ratio_max}});
  writer.finish();
  out << "wrote " << rows.size() << " interaction vectors; salient per sample: mean "
      << salient_sum / static_cast<double>(rows.size()) << ", max " << salient_max << " of "
      << rows.front().report.total_count << "; worst residual/output " << residual_ratio_max << "\n";
  return kExitOk;
}

// --- decompose ---------------------------------------------------------------

struct DecomposeArgs {
  Common common;
  std::string pre, fine, rand;
  bool dump_subsets = false;
};

int cmd_decompose(const DecomposeArgs& a, std::ostream& out) {
  require_dir(a.pre, "--pre");
  require_dir(a.fine, "--fine");
  if (!a.rand.empty()) require_dir(a.rand, "--rand");
  const report::Format format = report::parse_format(a.common.format);
  const NamedVectors pre = read_vector_dir(a.pre);
  const NamedVectors fine = read_vector_dir(a.fine);
  require_aligned(pre, fine, "--pre vs --fine");
  std::optional<NamedVectors> rand;
  if (!a.rand.empty()) {
    rand = read_vector_dir(a.rand);
    require_aligned(pre, *rand, "--pre vs --rand");
  }

  std::vector<KnowledgeDecomposition> decomps;
  std::vector<LearnabilityRatio> ratios;
  for (std::size_t i = 0; i < pre.vectors.size(); ++i) {
    decomps.push_back(decompose(pre.vectors[i], fine.vectors[i], a.pre + "/" + pre.names[i],
                                a.fine + "/" + fine.names[i]));
    if (rand) ratios.push_back(learnability_ratio(pre.vectors[i], fine.vectors[i], rand->vectors[i]));
  }
  const OrderDecomposition od = order_decomposition(decomps);
  std::optional<RatioSummary> summary;
  if (rand) summary = summarize_ratios(ratios);

  const std::string ext(report::extension(format));
  manifest::ManifestWriter writer(out_dir(a.common), "decompose");
  writer.set("params", {{"pre", a.pre}, {"fine", a.fine}, {"rand", a.rand}, {"samples", decomps.size()}});
  writer.write("decomposition" + ext,
               report::order_decomposition_report(od, summary ? &*summary : nullptr, format));
  if (summary) writer.write("ratio" + ext, report::ratio_summary_report(*summary, format));
  if (a.dump_subsets) {
    std::vector<report::SubsetDumpRow> rows;
    for (std::size_t i = 0; i < decomps.size(); ++i) {
      rows.push_back({pre.names[i], &pre.vectors[i], &fine.vectors[i],
                      rand ? &rand->vectors[i] : nullptr, &decomps[i], rand ? &ratios[i] : nullptr});
    }
    writer.write("subsets" + ext, report::subset_dump(rows, format));
  }
  writer.finish();

  out << "decomposed " << decomps.size() << " samples (n=" << od.n << ")\n";
  if (summary) {
    out << "Ratio " << (summary->aggregate ? report::format_real(*summary->aggregate) : "undefined")
        << " (defined subsets " << summary->defined_count << ", excluded " << summary->excluded_count
        << ")\n";
  }
  return kExitOk;
}

// --- trajectory --------------------------------------------------------------

struct TrajectoryArgs {
  Common common;
  std::vector<std::string> finetune, random;
  std::string svg;
  bool salient_only = false;
  double tau_ratio = kDefaultTauRatio;
};

std::vector<TrajectoryRecord> series_from_dirs(const std::vector<std::string>& dirs,
                                               TrajectoryVariant variant,
                                               const TrajectoryOptions& options) {
  if (dirs.size() < 2) {
    throw UsageError(std::string("--") + std::string(variant_name(variant)) +
                     " needs at least two epoch directories");
  }
  std::vector<std::vector<InteractionVector>> per_epoch;
  std::optional<NamedVectors> first;
  for (const std::string& dir : dirs) {
    NamedVectors v = read_vector_dir(dir);
    if (first) require_aligned(*first, v, dir);
    else first = v;
    per_epoch.push_back(std::move(v.vectors));
  }
  return trajectory(per_epoch, variant, options);
}

int cmd_trajectory(const TrajectoryArgs& a, std::ostream& out) {
  if (a.finetune.empty() && a.random.empty()) {
    throw UsageError("give --finetune and/or --random epoch directories in epoch order");
  }
  const report::Format format = report::parse_format(a.common.format);
  const TrajectoryOptions options{a.salient_only, a.tau_ratio};
  std::vector<TrajectoryRecord> records;
  if (!a.finetune.empty()) {
    auto r = series_from_dirs(a.finetune, TrajectoryVariant::kFinetune, options);
    records.insert(records.end(), r.begin(), r.end());
  }
  if (!a.random.empty()) {
    auto r = series_from_dirs(a.random, TrajectoryVariant::kRandom, options);
    records.insert(records.end(), r.begin(), r.end());
  }
  manifest::ManifestWriter writer(out_dir(a.common), "trajectory");
  writer.set("params", {{"finetune", a.finetune}, {"random", a.random},
                        {"salient_only", a.salient_only}, {"tau_ratio", a.tau_ratio}});
  writer.write("trajectory" + std::string(report::extension(format)),
               report::trajectory_report(records, format));
  if (!a.svg.empty()) writer.write(a.svg, report::trajectory_svg(records));
  writer.finish();
  for (const auto& r : records) {
    out << variant_name(r.variant) << " epoch " << r.epoch << " jaccard "
        << report::format_real(r.similarity) << "\n";
  }
  return kExitOk;
}

// --- verify ------------------------------------------------------------------

struct VerifyArgs {
  Common common;
  int n_max = kVerifyMaxVariables;
  int trials = 20;
  bool inject_fault = false;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  VerifyOptions options;
  options.n_max = a.n_max;
  options.trials = a.trials;
  options.seed = a.common.seed;
  if (a.inject_fault) {
    // Negative control: perturb one dividend so the identities must fail.
    options.transform = [](const MaskedOutputTable& t) {
      const InteractionVector iv = mobius_transform(t);
      std::vector<double> v(iv.values().begin(), iv.values().end());
      v.back() += 1e-3 * (1.0 + std::abs(v.back()));
      return InteractionVector(iv.n(), std::move(v));
    };
  }
  const VerifyReport report = run_verification(options);
  out << report.to_text();
  return report.passed() ? kExitOk : kExitFailure;
}

// --- pipeline ----------------------------------------------------------------

struct PipelineArgs {
  Common common;
  std::string toy;
  int samples = 20;
  double tau_ratio = kDefaultTauRatio;
  bool salient_only = false;
};

int cmd_pipeline(const PipelineArgs& a, std::ostream& out) {
  require_dir(a.toy, "--toy");
  const report::Format format = report::parse_format(a.common.format);
  const toy::ToySuite suite = toy::read_toy_suite(a.toy);
  AnalysisOptions options{a.samples, a.tau_ratio, a.salient_only, a.common.jobs};
  const ToyAnalysis an = analyze_toy_suite(suite, options);

  const std::string ext(report::extension(format));
  manifest::ManifestWriter writer(out_dir(a.common), "pipeline");
  writer.set("params", {{"toy", a.toy}, {"samples", a.samples}, {"tau_ratio", a.tau_ratio},
                        {"salient_only", a.salient_only}});
  for (std::size_t s = 0; s < an.pretrain.size(); ++s) {
    writer.write("vectors/pretrain/" + sample_name(s) + ".hivb", io::encode_interactions(an.pretrain[s]));
    writer.write("vectors/finetune/" + sample_name(s) + ".hivb", io::encode_interactions(an.finetune[s]));
    writer.write("vectors/random/" + sample_name(s) + ".hivb", io::encode_interactions(an.random[s]));
  }
  writer.write("decomposition" + ext, report::order_decomposition_report(an.orders, &an.ratio_summary, format));
  writer.write("ratio" + ext, report::ratio_summary_report(an.ratio_summary, format));
  std::vector<TrajectoryRecord> records = an.finetune_trajectory;
  records.insert(records.end(), an.random_trajectory.begin(), an.random_trajectory.end());
  writer.write("trajectory" + ext, report::trajectory_report(records, format));
  writer.write("trajectory.svg", report::trajectory_svg(records));
  std::vector<report::NamedSparsity> rows;
  for (std::size_t s = 0; s < an.finetune_sparsity.size(); ++s) {
    rows.push_back({sample_name(s), an.finetune_sparsity[s]});
  }
  writer.write("sparsity_finetune" + ext, report::sparsity_table(rows, format));
  writer.finish();

  out << "analysed " << an.pretrain.size() << " samples from " << a.toy << "\n";
  out << "Ratio " << (an.ratio_summary.aggregate ? report::format_real(*an.ratio_summary.aggregate) : "undefined")
      << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Harsanyi interactions and knowledge-change metrics over masked model outputs"};
  app.name(args.empty() ? "harsanyi" : fs::path(args.front()).filename().string());
  app.require_subcommand(1);

  GenToyArgs gen;
  bool mean_baseline = false;
  auto* gen_cmd = app.add_subcommand("gen-toy", "Generate the pretrain/fine-tune/scratch toy suite");
  add_common(gen_cmd, gen.common);
  gen_cmd->add_option("--variables", gen.config.variables, "Input variables n (8..12)")->capture_default_str();
  gen_cmd->add_option("--classes", gen.config.classes, "Downstream classes (2..4)")->capture_default_str();
  gen_cmd->add_option("--epochs", gen.config.finetune_epochs, "Fine-tune / scratch epochs")->capture_default_str();
  gen_cmd->add_option("--train-samples", gen.config.train_samples)->capture_default_str();
  gen_cmd->add_option("--test-samples", gen.config.test_samples)->capture_default_str();
  gen_cmd->add_option("--pretrain-samples", gen.config.pretrain_samples)->capture_default_str();
  gen_cmd->add_option("--pretrain-epochs", gen.config.pretrain_epochs)->capture_default_str();
  gen_cmd->add_option("--noise", gen.config.noise, "Per-coordinate input noise")->capture_default_str();
  gen_cmd->add_option("--weight-decay", gen.config.weight_decay)->capture_default_str();
  gen_cmd->add_flag("--mean-baseline", mean_baseline, "Mask to the train-set mean instead of the zero slice");
  gen_cmd->add_flag("--force", gen.force, "Replace an existing output directory");

  TrainProbeArgs tp;
  auto* tp_cmd = app.add_subcommand("train-probe", "Train a linear probe on a model's penultimate features");
  add_common(tp_cmd, tp.common);
  tp_cmd->add_option("--model", tp.model, "Backbone model file")->required();
  tp_cmd->add_option("--dataset", tp.dataset, "Dataset file")->required();
  tp_cmd->add_option("--lr", tp.config.lr)->capture_default_str();
  tp_cmd->add_option("--epochs", tp.config.epochs)->capture_default_str();
  tp_cmd->add_option("--l2", tp.config.l2)->capture_default_str();

  TableArgs tb;
  auto* tb_cmd = app.add_subcommand("table", "Score all 2^n masked variants of each sample");
  add_common(tb_cmd, tb.common);
  tb_cmd->add_option("--model", tb.model, "Model file")->required();
  tb_cmd->add_option("--dataset", tb.dataset, "Dataset file")->required();
  tb_cmd->add_option("--scorer", tb.scorer, "Scoring head")
      ->check(CLI::IsMember({"model", "probe"}))
      ->capture_default_str();
  tb_cmd->add_option("--probe", tb.probe, "Probe file (required with --scorer probe)");
  tb_cmd->add_option("--samples", tb.samples, "Only the first N samples (0 = all)")->capture_default_str();
  tb_cmd->add_flag("--csv", tb.csv, "Also write the CSV debug form");

  InteractionsArgs ia;
  auto* ia_cmd = app.add_subcommand("interactions", "Harsanyi dividends and sparsity for table files");
  add_common(ia_cmd, ia.common);
  ia_cmd->add_option("--tables", ia.tables, "Directory of .motb files")->required();
  ia_cmd->add_option("--tau-ratio", ia.tau_ratio, "Salient threshold ratio")->capture_default_str();

  DecomposeArgs dc;
  auto* dc_cmd = app.add_subcommand("decompose", "Preserve/discard/new per order, optional learnability Ratio");
  add_common(dc_cmd, dc.common);
  dc_cmd->add_option("--pre", dc.pre, "Pretrain-side vector directory")->required();
  dc_cmd->add_option("--fine", dc.fine, "Fine-tuned vector directory")->required();
  dc_cmd->add_option("--rand", dc.rand, "From-scratch vector directory");
  dc_cmd->add_flag("--dump-subsets", dc.dump_subsets, "Write per-subset rows");

  TrajectoryArgs tr;
  auto* tr_cmd = app.add_subcommand("trajectory", "Jaccard similarity of each epoch to the final epoch");
  add_common(tr_cmd, tr.common);
  tr_cmd->add_option("--finetune", tr.finetune, "Fine-tune epoch vector directories, in epoch order");
  tr_cmd->add_option("--random", tr.random, "From-scratch epoch vector directories, in epoch order");
  tr_cmd->add_option("--svg", tr.svg, "Also write an SVG chart with this file name");
  tr_cmd->add_flag("--salient-only", tr.salient_only, "Restrict to subsets salient in the final vector");
  tr_cmd->add_option("--tau-ratio", tr.tau_ratio)->capture_default_str();

  VerifyArgs vf;
  auto* vf_cmd = app.add_subcommand("verify", "Run the randomized identity suite");
  add_common(vf_cmd, vf.common);
  vf_cmd->add_option("--n-max", vf.n_max, "Largest n to test (<= 12)")->capture_default_str();
  vf_cmd->add_option("--trials", vf.trials, "Random inputs per n")->capture_default_str();
  vf_cmd->add_flag("--inject-fault", vf.inject_fault)->group("");  // test hook

  PipelineArgs pl;
  auto* pl_cmd = app.add_subcommand("pipeline", "Full analysis of a generated toy suite");
  add_common(pl_cmd, pl.common);
  pl_cmd->add_option("--toy", pl.toy, "Toy suite directory")->required();
  pl_cmd->add_option("--samples", pl.samples, "Held-out samples to analyse")->capture_default_str();
  pl_cmd->add_option("--tau-ratio", pl.tau_ratio)->capture_default_str();
  pl_cmd->add_flag("--salient-only", pl.salient_only);

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) {
      gen.config.zero_baseline = !mean_baseline;
      return cmd_gen_toy(gen, out);
    }
    if (*tp_cmd) return cmd_train_probe(tp, out);
    if (*tb_cmd) return cmd_table(tb, out);
    if (*ia_cmd) return cmd_interactions(ia, out);
    if (*dc_cmd) return cmd_decompose(dc, out);
    if (*tr_cmd) return cmd_trajectory(tr, out);
    if (*vf_cmd) return cmd_verify(vf, out);
    if (*pl_cmd) return cmd_pipeline(pl, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace harsanyi::cli
