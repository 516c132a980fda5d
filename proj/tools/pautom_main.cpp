// Command-line front end: counting, enumeration, exact uniform sampling,
// spectra and the statistics experiments, with JSON/CSV output. Every
// random quantity is derived from an explicit seed (default 0) and the seed
// is echoed in output headers, so each table is regenerable from its
// command line.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pautom/json_io.hpp"
#include "pautom/parallel.hpp"
#include "pautom/sampling.hpp"
#include "pautom/spectral.hpp"
#include "pautom/statistics.hpp"
#include "pautom/tree_action.hpp"
#include "pautom/wreath.hpp"

namespace {

using namespace pautom;

constexpr int kExactSamplingComfortCap = 14;

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + out_path);
  f << text;
}

int cmd_count(int n, bool as_json) {
  const BigCount c = count_elements(n);
  if (as_json)
    std::cout << nlohmann::json{{"n", n}, {"count", c.get_str()}}.dump() << "\n";
  else
    std::cout << c.get_str() << "\n";
  return 0;
}

int cmd_enumerate(int n, bool force_cap) {
  check_enumeration_cap(n, force_cap ? n : kDefaultEnumerationCap);
  ElementStream stream(n);
  while (auto x = stream.next()) std::cout << element_to_json(*x).dump() << "\n";
  return 0;
}

int cmd_sample(int n, std::uint64_t count, std::uint64_t seed, bool entropy, bool approx,
               int workers) {
  if (entropy) {
    std::random_device rd;
    seed = (static_cast<std::uint64_t>(rd()) << 32) | rd();
  }
  if (n > kExactSamplingComfortCap && !approx)
    std::cerr << "warning: exact sampling at level " << n
              << " works but is slow; --approx switches to float weights\n";
  if (approx)
    std::cerr << "warning: approximate sampling biases rare top shapes at deep levels\n";
  const UniformSampler sampler(n, approx ? SampleMode::FloatApprox : SampleMode::Exact);
  std::cout << nlohmann::json{{"command", "sample"},
                              {"n", n},
                              {"count", count},
                              {"seed", seed},
                              {"mode", approx ? "approx" : "exact"}}
                   .dump()
            << "\n";
  std::vector<std::string> lines(count);
  parallel_for(count, workers, [&](std::uint64_t i) {
    lines[i] = element_to_json(sampler.sample_indexed(seed, i, static_cast<std::uint64_t>(n)))
                   .dump();
  });
  for (const std::string& l : lines) std::cout << l << "\n";
  return 0;
}

int cmd_spectrum(int n, const std::string& element_json, const std::string& file,
                 const std::string& mode, bool dense, bool with_matrix, bool eigenvalues) {
  std::string text = element_json;
  if (!file.empty()) {
    std::ifstream f(file);
    if (!f) throw std::runtime_error("cannot open element file: " + file);
    text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
  }
  const WreathElement x = element_from_string(text, n);
  const ActionMatrix a = action_matrix(x);
  if (dense) {
    for (const auto& row : a.dense()) {
      std::string line;
      for (std::size_t j = 0; j < row.size(); ++j)
        line += (j ? " " : "") + std::to_string(row[j]);
      std::cout << line << "\n";
    }
  }
  if (with_matrix) std::cout << matrix_to_json(a).dump() << "\n";
  if (mode == "oracle") {
    const auto ev = eigenvalues_dense_oracle(a);
    nlohmann::json evj = nlohmann::json::array();
    for (const auto& l : ev) evj.push_back({l.real(), l.imag()});
    std::cout << nlohmann::json{{"n", n}, {"mode", "oracle"}, {"eigenvalues", evj}}.dump()
              << "\n";
    return 0;
  }
  const SpectralMeasure m = spectral_measure(a);
  nlohmann::json out = measure_to_json(m);
  if (eigenvalues) {
    nlohmann::json evj = nlohmann::json::array();
    for (const auto& l : exact_eigenvalues(m)) evj.push_back({l.real(), l.imag()});
    out["eigenvalues"] = evj;
  }
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_verify(int n_cap, const std::string& out_path) {
  const VerificationReport rep = verify_suite(n_cap);
  write_output(report_to_json(rep).dump(2) + "\n", out_path);
  if (!rep.all_pass()) {
    std::cerr << "verification failed\n";
    return 1;
  }
  return 0;
}

int cmd_converge(int n_min, int n_max, std::uint64_t samples, std::uint64_t seed, int workers,
                 bool exhaustive, bool approx, const std::string& out_path) {
  ConvergenceConfig cfg;
  cfg.level_min = n_min;
  cfg.level_max = n_max;
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.workers = workers;
  cfg.exhaustive = exhaustive;
  cfg.mode = approx ? SampleMode::FloatApprox : SampleMode::Exact;
  const auto rows = convergence_experiment(cfg);
  write_output(convergence_csv(rows, cfg), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"toolkit for partial automorphisms of the binary rooted tree"};
  app.require_subcommand(1);

  int n = 1;
  bool as_json = false;
  auto* count = app.add_subcommand("count", "number of elements at a level");
  count->add_option("--n", n, "tree depth")->required()->check(CLI::Range(1, 64));
  count->add_flag("--json", as_json, "emit JSON instead of a bare number");

  int en_n = 1;
  bool force_cap = false;
  auto* enumerate = app.add_subcommand("enumerate", "stream every element as JSON lines");
  enumerate->add_option("--n", en_n, "tree depth")->required()->check(CLI::Range(1, 6));
  enumerate->add_flag("--force-cap", force_cap,
                      "enumerate past the default cap of 3 (counts explode)");

  int sa_n = 1, sa_workers = 1;
  std::uint64_t sa_count = 1, sa_seed = 0;
  bool sa_entropy = false, sa_approx = false;
  auto* sample = app.add_subcommand("sample", "exact uniform samples as JSON lines");
  sample->add_option("--n", sa_n, "tree depth")->required()->check(CLI::Range(1, 24));
  sample->add_option("--count", sa_count, "number of samples")->required();
  sample->add_option("--seed", sa_seed, "RNG seed (default 0, reproducible)");
  sample->add_flag("--entropy", sa_entropy, "seed from the OS entropy source");
  sample->add_flag("--approx", sa_approx, "float-weight sampling (approximate)");
  sample->add_option("--workers", sa_workers, "worker threads")->check(CLI::Range(1, 256));

  int sp_n = 1;
  std::string sp_element, sp_file, sp_mode = "exact";
  bool sp_dense = false, sp_matrix = false, sp_eigenvalues = false;
  auto* spectrum = app.add_subcommand("spectrum", "spectral measure of one element");
  spectrum->add_option("--n", sp_n, "tree depth")->required()->check(CLI::Range(1, 24));
  auto* sp_e = spectrum->add_option("--element", sp_element, "element as inline JSON");
  auto* sp_f = spectrum->add_option("--file", sp_file, "file holding the element JSON");
  sp_e->excludes(sp_f);
  spectrum->add_option("--mode", sp_mode, "exact (cycle structure) or oracle (dense solver)")
      ->check(CLI::IsMember({"exact", "oracle"}));
  spectrum->add_flag("--dense", sp_dense, "print the full 0/1 action matrix first");
  spectrum->add_flag("--matrix", sp_matrix, "print the sparse action matrix JSON");
  spectrum->add_flag("--eigenvalues", sp_eigenvalues, "include the explicit eigenvalue list");

  int ve_cap = 3;
  std::string ve_out;
  auto* verify = app.add_subcommand("verify", "exhaustive checks of the counting laws");
  verify->add_option("--n-cap", ve_cap, "largest level checked exhaustively (<= 3)")
      ->check(CLI::Range(1, 3));
  verify->add_option("--out", ve_out, "also write the JSON report here");

  int co_min = 1, co_max = 1, co_workers = 1;
  std::uint64_t co_samples = 10000, co_seed = 0;
  bool co_exhaustive = false, co_approx = false;
  std::string co_out;
  auto* converge = app.add_subcommand("converge", "spectral-mass decay experiment, CSV");
  converge->add_option("--n-min", co_min, "first level")->required()->check(CLI::Range(1, 24));
  converge->add_option("--n-max", co_max, "last level")->required()->check(CLI::Range(1, 24));
  converge->add_option("--samples", co_samples, "samples per level");
  converge->add_option("--seed", co_seed, "RNG seed (default 0)");
  converge->add_option("--workers", co_workers, "worker threads")->check(CLI::Range(1, 256));
  converge->add_flag("--exhaustive", co_exhaustive, "enumerate instead of sampling (n <= 3)");
  converge->add_flag("--approx", co_approx, "float-weight sampling (approximate)");
  converge->add_option("--out", co_out, "write the CSV here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (count->parsed()) return cmd_count(n, as_json);
    if (enumerate->parsed()) return cmd_enumerate(en_n, force_cap);
    if (sample->parsed())
      return cmd_sample(sa_n, sa_count, sa_seed, sa_entropy, sa_approx, sa_workers);
    if (spectrum->parsed()) {
      if (sp_element.empty() && sp_file.empty())
        throw std::runtime_error("spectrum needs --element or --file");
      return cmd_spectrum(sp_n, sp_element, sp_file, sp_mode, sp_dense, sp_matrix,
                          sp_eigenvalues);
    }
    if (verify->parsed()) return cmd_verify(ve_cap, ve_out);
    if (converge->parsed())
      return cmd_converge(co_min, co_max, co_samples, co_seed, co_workers, co_exhaustive,
                          co_approx, co_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
