// Command-line front end: sweeps the two sufficiency tests over the channel
// mixing level, samples and intersects the compression/transmission rate
// regions, runs the desk-scale coset-code decoding demo, and searches for
// field embeddings of a source's target function. All outputs are
// deterministic files under --out-dir.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cqfc/classical_info.hpp"
#include "cqfc/coding.hpp"
#include "cqfc/cq_model.hpp"
#include "cqfc/errors.hpp"
#include "cqfc/io.hpp"
#include "cqfc/optimizer.hpp"
#include "cqfc/presets.hpp"
#include "cqfc/regions.hpp"
#include "json.hpp"

namespace {

namespace classical = cqfc::classical;
namespace coding = cqfc::coding;
namespace cq = cqfc::cq;
namespace io = cqfc::io;
namespace opt = cqfc::opt;
namespace presets = cqfc::presets;
namespace regions = cqfc::regions;
using ordered_json = nlohmann::ordered_json;

std::string fmt(double v) { return io::format_double(v); }

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw cqfc::validation_error("cannot write file: " + path.string());
  out << content;
  std::cout << "wrote " << path.string() << "\n";
}

void write_json(const std::filesystem::path& path, const ordered_json& j) {
  write_file(path, j.dump(2) + "\n");
}

std::filesystem::path prepare_out_dir(const std::string& out_dir) {
  std::filesystem::path p(out_dir);
  std::filesystem::create_directories(p);
  return p;
}

classical::SourceModel pick_source(const std::string& source_path) {
  if (source_path.empty()) return presets::skewed_pair_source();
  return io::load_source(source_path);
}

// Mean-symbol-value cost on the first sender's input.
opt::CostConstraint symbol_cost(int alphabet, double bound) {
  opt::CostConstraint c;
  c.weights.resize(static_cast<std::size_t>(alphabet));
  for (int x = 0; x < alphabet; ++x) c.weights[x] = static_cast<double>(x);
  c.bound = bound;
  return c;
}

struct SweepArgs {
  double eta_start = 0.0;
  double eta_stop = 0.5;
  double eta_step = 0.01;
  std::optional<double> cost;
  std::string out_dir = ".";
  std::string source_path;
};

struct SweepTrack {
  std::string csv = "eta,lhs_bits,rhs_bits,verdict\n";
  std::vector<double> etas;
  std::vector<double> margins;
  double lhs = 0.0;
  bool holds_first = false;
  bool holds_last = false;
};

void track(SweepTrack& t, double eta, const regions::ConditionReport& rep, bool first) {
  t.csv += fmt(eta) + "," + fmt(rep.lhs) + "," + fmt(rep.rhs) + "," +
           (rep.holds ? "true" : "false") + "\n";
  t.etas.push_back(eta);
  t.margins.push_back(rep.rhs - rep.lhs);
  t.lhs = rep.lhs;
  if (first) t.holds_first = rep.holds;
  t.holds_last = rep.holds;
}

// Sign changes of the sufficiency margin, located by linear interpolation
// between neighboring grid points.
std::vector<double> crossings(const SweepTrack& t) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < t.margins.size(); ++i) {
    const double a = t.margins[i];
    const double b = t.margins[i + 1];
    if ((a > 0.0) == (b > 0.0)) continue;
    out.push_back(t.etas[i] + (t.etas[i + 1] - t.etas[i]) * a / (a - b));
  }
  return out;
}

ordered_json track_json(const SweepTrack& t) {
  ordered_json j;
  j["lhs_bits"] = t.lhs;
  j["crossings"] = crossings(t);
  j["holds_first"] = t.holds_first;
  j["holds_last"] = t.holds_last;
  return j;
}

int run_sweep(const SweepArgs& args) {
  if (args.eta_step <= 0.0) throw cqfc::validation_error("eta-step must be positive");
  if (args.eta_stop < args.eta_start) {
    throw cqfc::validation_error("eta-stop must not be below eta-start");
  }
  const classical::SourceModel source = pick_source(args.source_path);
  if (!source.embedding().has_value()) {
    throw cqfc::validation_error("the sweep source needs a field embedding");
  }
  const int q = source.embedding()->q;

  std::optional<opt::CostConstraint> cost;
  if (args.cost.has_value()) cost = symbol_cost(q, *args.cost);

  SweepTrack unstructured, structured;
  const int count =
      static_cast<int>((args.eta_stop - args.eta_start) / args.eta_step + 1e-9) + 1;
  for (int i = 0; i < count; ++i) {
    const double eta = args.eta_start + i * args.eta_step;
    const cq::Cq2Channel channel = cq::parity_qubit_channel(eta);
    track(unstructured, eta, regions::unstructured_condition(source, channel, cost), i == 0);
    track(structured, eta, regions::structured_condition(source, channel, q, cost), i == 0);
  }

  const auto dir = prepare_out_dir(args.out_dir);
  write_file(dir / "unstructured_sweep.csv", unstructured.csv);
  write_file(dir / "structured_sweep.csv", structured.csv);

  ordered_json summary;
  summary["command"] = "sweep";
  summary["eta_start"] = args.eta_start;
  summary["eta_stop"] = args.eta_stop;
  summary["eta_step"] = args.eta_step;
  if (args.cost.has_value()) {
    summary["cost"] = *args.cost;
  } else {
    summary["cost"] = nullptr;
  }
  summary["unstructured"] = track_json(unstructured);
  summary["structured"] = track_json(structured);
  write_json(dir / "sweep_summary.json", summary);
  return 0;
}

struct RegionsArgs {
  double eta = 0.20;
  int samples = 2000;
  unsigned long long seed = 1;
  int q = 2;
  std::optional<double> cost;
  std::string out_dir = ".";
  std::string source_path;
  std::string channel_path;
};

std::string region_csv(const regions::SampledRegion& region) {
  std::string csv = "R,R1,R2,tag\n";
  for (const regions::RateTriple& p : region.points) {
    csv += fmt(p.r) + "," + fmt(p.r1) + "," + fmt(p.r2) + ",vertex\n";
  }
  for (const regions::RateTriple& p : region.hull) {
    csv += fmt(p.r) + "," + fmt(p.r1) + "," + fmt(p.r2) + ",hull\n";
  }
  return csv;
}

int run_regions(const RegionsArgs& args) {
  classical::SourceModel source = pick_source(args.source_path);
  // A source file without an embedding is still usable if one can be found.
  constexpr int kSearchCap = 7;
  bool searched = false;
  if (!source.embedding().has_value()) {
    const std::optional<classical::Embedding> found =
        classical::embed_search(source.f_table(), source.pmf(), kSearchCap);
    if (!found.has_value()) {
      throw cqfc::validation_error("no field embedding found up to q=" +
                                   std::to_string(kSearchCap));
    }
    source = classical::SourceModel(source.pmf(), source.f_table(), *found);
    searched = true;
  }
  const int q = searched ? source.embedding()->q : args.q;
  const cq::Cq2Channel channel = args.channel_path.empty()
                                     ? cq::parity_qubit_channel(args.eta)
                                     : io::load_channel(args.channel_path);
  regions::RegionConfig cfg;
  cfg.samples = args.samples;
  cfg.seed = args.seed;
  cfg.cost_bound = args.cost;

  const regions::SampledRegion chan = regions::channel_region(channel, q, cfg);
  const regions::SampledRegion src = regions::source_region(source, q, cfg);
  const regions::IntersectReport verdict = regions::regions_intersect(src, chan);

  const auto dir = prepare_out_dir(args.out_dir);
  write_file(dir / "channel_region.csv", region_csv(chan));
  write_file(dir / "source_region.csv", region_csv(src));

  ordered_json j;
  j["command"] = "regions";
  if (args.channel_path.empty()) {
    j["eta"] = args.eta;
  } else {
    j["eta"] = nullptr;
    j["channel_file"] = args.channel_path;
  }
  j["q"] = q;
  j["embedding_searched"] = searched;
  j["samples"] = args.samples;
  j["seed"] = args.seed;
  if (args.cost.has_value()) {
    j["cost"] = *args.cost;
  } else {
    j["cost"] = nullptr;
  }
  j["channel_points"] = chan.points.size();
  j["channel_hull"] = chan.hull.size();
  j["source_points"] = src.points.size();
  j["source_hull"] = src.hull.size();
  j["intersects"] = verdict.intersects;
  if (verdict.intersects) {
    j["witness"] = {{"R", verdict.witness.r}, {"R1", verdict.witness.r1},
                    {"R2", verdict.witness.r2}};
  } else {
    j["witness"] = nullptr;
  }
  write_json(dir / "regions_verdict.json", j);
  return 0;
}

struct SimulateArgs {
  double eta = 0.02;
  long long samples = 2000;
  unsigned long long seed = 1;
  std::string out_dir = ".";
  std::string channel_path;
};

int run_simulate(const SimulateArgs& args) {
  const cq::Cq2Channel channel = args.channel_path.empty()
                                     ? cq::parity_qubit_channel(args.eta)
                                     : io::load_channel(args.channel_path);
  const int n = 5;
  const std::vector<int> inner = {1, 1, 0, 1, 0};
  const std::vector<int> outer = {0, 1, 1, 0, 1};
  const coding::NestedCosetCode code1(2, n, inner, outer, {0, 0, 0, 0, 0});
  const coding::NestedCosetCode code2(2, n, inner, outer, {1, 0, 0, 0, 0});
  const coding::CosetReps reps1 = coding::select_coset_reps(code1, {0.5, 0.5}, 1.0);
  const coding::CosetReps reps2 = coding::select_coset_reps(code2, {0.5, 0.5}, 1.0);
  const coding::SumDecodeSetup setup =
      coding::build_channel_state(code1, code2, channel, reps1, reps2);
  const coding::SumMeasurement meas = coding::srm_decoder(setup.gamma);
  const double exact = coding::exact_error_probability(setup, meas);
  const coding::DecodeStats stats =
      coding::monte_carlo_error(setup, meas, args.samples, args.seed);

  ordered_json j;
  j["command"] = "simulate";
  if (args.channel_path.empty()) {
    j["eta"] = args.eta;
  } else {
    j["eta"] = nullptr;
    j["channel_file"] = args.channel_path;
  }
  j["trials"] = stats.trials;
  j["seed"] = args.seed;
  j["block_length"] = n;
  j["quantization_rows"] = code1.k();
  j["message_rows"] = code1.l();
  j["classes"] = setup.classes;
  j["exact_error"] = exact;
  j["errors"] = stats.errors;
  j["error_rate"] = stats.error_rate;
  j["wilson_low"] = stats.error_interval.low;
  j["wilson_high"] = stats.error_interval.high;
  ordered_json confusion = ordered_json::array();
  for (long long t = 0; t < setup.classes; ++t) {
    ordered_json row = ordered_json::array();
    for (long long o = 0; o <= setup.classes; ++o) {
      row.push_back(stats.confusion[static_cast<std::size_t>(t) * (setup.classes + 1) + o]);
    }
    confusion.push_back(row);
  }
  j["confusion"] = confusion;

  const auto dir = prepare_out_dir(args.out_dir);
  write_json(dir / "sim_report.json", j);
  return 0;
}

struct EmbedArgs {
  int q = 7;
  std::string out_dir = ".";
  std::string source_path;
};

int run_embed(const EmbedArgs& args) {
  const classical::SourceModel source =
      args.source_path.empty() ? presets::or_source() : io::load_source(args.source_path);
  const std::optional<classical::Embedding> found =
      classical::embed_search(source.f_table(), source.pmf(), args.q);

  ordered_json j;
  j["command"] = "embed";
  j["q_cap"] = args.q;
  j["found"] = found.has_value();
  if (found.has_value()) {
    j["q"] = found->q;
    j["h1"] = found->h1;
    j["h2"] = found->h2;
    j["g"] = found->g;
  } else {
    j["generic_prime"] = classical::generic_embedding_prime(
        source.pmf().shape()[0], source.pmf().shape()[1]);
  }
  const auto dir = prepare_out_dir(args.out_dir);
  write_json(dir / "embedding.json", j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rate regions and coding demos for computing a function of two "
               "correlated sources over a two-sender quantum channel"};
  app.require_subcommand(1);

  SweepArgs sweep;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "evaluate both sufficiency tests over a mixing-level grid");
  sweep_cmd->add_option("--eta-start", sweep.eta_start, "first mixing level")
      ->capture_default_str();
  sweep_cmd->add_option("--eta-stop", sweep.eta_stop, "last mixing level")->capture_default_str();
  sweep_cmd->add_option("--eta-step", sweep.eta_step, "grid spacing")->capture_default_str();
  sweep_cmd->add_option("--cost", sweep.cost, "mean-symbol-value cap on the first sender");
  sweep_cmd->add_option("--out-dir", sweep.out_dir, "output directory")->capture_default_str();
  sweep_cmd->add_option("--source", sweep.source_path, "source model file (default: packaged)");

  RegionsArgs reg;
  CLI::App* regions_cmd =
      app.add_subcommand("regions", "sample and intersect the rate regions");
  regions_cmd->add_option("--eta", reg.eta, "channel mixing level")->capture_default_str();
  regions_cmd->add_option("--samples", reg.samples, "sampling budget per region")
      ->capture_default_str();
  regions_cmd->add_option("--seed", reg.seed, "sampling seed")->capture_default_str();
  regions_cmd->add_option("--q", reg.q, "field size")->capture_default_str();
  regions_cmd->add_option("--cost", reg.cost, "mean-symbol-value cap on the first sender");
  regions_cmd->add_option("--out-dir", reg.out_dir, "output directory")->capture_default_str();
  regions_cmd->add_option("--source", reg.source_path, "source model file (default: packaged)");
  regions_cmd->add_option("--channel", reg.channel_path,
                          "channel file (default: parametric at --eta)");

  SimulateArgs sim;
  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "run the coset-code sum-decoding demo");
  simulate_cmd->add_option("--eta", sim.eta, "channel mixing level")->capture_default_str();
  simulate_cmd->add_option("--samples", sim.samples, "number of decoding trials")
      ->capture_default_str();
  simulate_cmd->add_option("--seed", sim.seed, "simulation seed")->capture_default_str();
  simulate_cmd->add_option("--out-dir", sim.out_dir, "output directory")->capture_default_str();
  simulate_cmd->add_option("--channel", sim.channel_path,
                           "channel file (default: parametric at --eta)");

  EmbedArgs emb;
  CLI::App* embed_cmd =
      app.add_subcommand("embed", "search for a field embedding of the target function");
  embed_cmd->add_option("--q", emb.q, "largest field size to try")->capture_default_str();
  embed_cmd->add_option("--out-dir", emb.out_dir, "output directory")->capture_default_str();
  embed_cmd->add_option("--source", emb.source_path, "source model file (default: packaged)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sweep_cmd->parsed()) return run_sweep(sweep);
    if (regions_cmd->parsed()) return run_regions(reg);
    if (simulate_cmd->parsed()) return run_simulate(sim);
    if (embed_cmd->parsed()) return run_embed(emb);
  } catch (const cqfc::resource_error& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const cqfc::validation_error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const cqfc::precondition_error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
