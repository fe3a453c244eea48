#include "cli.h"

#include <cstdio>
#include <map>
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "glimpse/composer.h"
#include "glimpse/config.h"
#include "glimpse/error.h"
#include "glimpse/likelihood.h"
#include "glimpse/pipeline.h"
#include "glimpse/rsa.h"
#include "glimpse/segmenter.h"

namespace glimpse::cli {
namespace {

struct Options {
  std::string config_path;
  std::map<std::string, std::string> keys;     // --<dotted.key>
  std::map<std::string, std::string> aliases;  // short spellings
  bool random_baseline = false;
  bool ansi = false;
};

const std::map<std::string, std::string>& alias_targets() {
  static const std::map<std::string, std::string> kAliases = {
      {"input", "input.path"},     {"format", "input.format"},
      {"output", "output.dir"},    {"variant", "composer.variant"},
      {"seed", "eval.seed"},       {"iterations", "rsa.iterations"},
      {"scorer", "scorer.kind"},   {"candidates", "input.candidates"}};
  return kAliases;
}

void add_run_options(CLI::App* cmd, Options& opts) {
  cmd->add_option("-c,--config", opts.config_path, "key = value config file");
  for (const auto& [alias, key] : alias_targets()) {
    cmd->add_option("--" + alias, opts.aliases[alias], "same as --" + key);
  }
  cmd->add_option("-j,--jobs", opts.keys["jobs"], "submissions processed concurrently");
  for (const std::string& key : RunConfig::keys()) {
    if (key == "jobs") continue;
    cmd->add_option("--" + key, opts.keys[key])->group("Config keys");
  }
}

RunConfig build_config(const CLI::App* cmd, const Options& opts) {
  RunConfig cfg = opts.config_path.empty() ? RunConfig{} : load_run_config(opts.config_path);
  for (const auto& [alias, key] : alias_targets()) {
    if (cmd->count("--" + alias) > 0) cfg.set(key, opts.aliases.at(alias));
  }
  for (const auto& [key, value] : opts.keys) {
    const std::string flag = key == "jobs" ? "--jobs" : "--" + key;
    if (cmd->count(flag) > 0) cfg.set(key, value);
  }
  if (opts.random_baseline) cfg.set("eval.random_baseline", "true");
  return cfg;
}

void print_stat_row(std::ostream& out, const std::string& name, const Stat& s) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-20s %10.4f %10.4f\n", name.c_str(), s.mean, s.stddev);
  out << buf;
}

void print_report(std::ostream& out, const EvalReport& report) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-20s %10s %10s\n", "metric", "mean", "stddev");
  out << buf;
  print_stat_row(out, "discriminativeness", report.discriminativeness);
  print_stat_row(out, "disc_per_char", report.disc_per_char);
  if (report.rouge) {
    for (const auto& [name, stat] : *report.rouge) print_stat_row(out, name, stat);
  }
  out << "submissions: " << report.per_submission.size() << "\n";
}

void run_demo(const CLI::App* cmd, const Options& opts, std::ostream& out) {
  RunConfig cfg = build_config(cmd, opts);
  cfg.scorer.validate();
  cfg.rsa.validate();
  cfg.composer.validate();
  SubmissionGroup group = demo_group();
  CandidateSet cands = extract_candidates(group, cfg.segmenter);
  TruthMatrix matrix = score(group, cands, cfg.scorer);
  RsaResult rsa = run_rsa(matrix, cands, cfg.rsa);
  SummaryBundle bundle = compose_bundle(rsa, cands, group, cfg.composer);

  for (const Document& d : group.documents) out << d.id << ": " << d.text << "\n";
  out << "\n";
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-4s %10s %10s %10s  %s\n", "id", "L(r1|s)", "L(r2|s)",
                "unique", "text");
  out << buf;
  for (std::size_t s = 0; s < cands.size(); ++s) {
    std::snprintf(buf, sizeof buf, "%-4s %10.4f %10.4f %10.4f  ", cands[s].id.c_str(),
                  rsa.listener(0, s), rsa.listener(1, s), rsa.uniqueness[s]);
    out << buf << cands[s].text << "\n";
  }
  out << "\n";
  for (const PerDocSummary& s : bundle.per_doc) out << s.doc_id << " summary: " << s.text << "\n";
  out << "consensus (speaker): " << bundle.mds_speaker.text << "\n";
  out << "consensus (unique):  " << bundle.mds_unique.text << "\n";
  if (opts.ansi) out << "\n" << render_ansi(bundle, group);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discriminative multi-document summarization with RSA scoring", "glimpse"};
  app.require_subcommand(1);
  Options opts;

  CLI::App* score_cmd = app.add_subcommand("score", "write truth matrices and RSA results");
  CLI::App* summarize_cmd =
      app.add_subcommand("summarize", "write summary bundles and highlight pages");
  CLI::App* eval_cmd = app.add_subcommand("eval", "write the evaluation report");
  CLI::App* demo_cmd = app.add_subcommand("demo", "run the built-in two-review example");
  for (CLI::App* cmd : {score_cmd, summarize_cmd, eval_cmd, demo_cmd}) {
    add_run_options(cmd, opts);
  }
  summarize_cmd->add_flag("--ansi", opts.ansi, "also print highlights with terminal colors");
  demo_cmd->add_flag("--ansi", opts.ansi, "also print highlights with terminal colors");
  eval_cmd->add_flag("--random-baseline", opts.random_baseline,
                     "score random candidate picks instead of GLIMPSE summaries");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (demo_cmd->parsed()) {
      run_demo(demo_cmd, opts, out);
    } else if (score_cmd->parsed()) {
      auto written = cmd_score(build_config(score_cmd, opts));
      out << "wrote " << written.size() << " files\n";
    } else if (summarize_cmd->parsed()) {
      RunConfig cfg = build_config(summarize_cmd, opts);
      auto written = cmd_summarize(cfg);
      out << "wrote " << written.size() << " files\n";
      if (opts.ansi) {
        auto groups = load_corpus(cfg.input_path, cfg.input_format);
        ImportedBySubmission imported;
        if (!cfg.candidates_path.empty()) imported = load_imported_candidates(cfg.candidates_path);
        for (const auto& g : groups) {
          Analysis a = analyze(g, cfg, imported);
          SummaryBundle b = compose_bundle(a.rsa, a.candidates, a.group, cfg.composer);
          out << render_ansi(b, a.group);
        }
      }
    } else if (eval_cmd->parsed()) {
      print_report(out, cmd_eval(build_config(eval_cmd, opts)));
    }
  } catch (const ConfigError& e) {
    err << "glimpse: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "glimpse: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "glimpse: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace glimpse::cli
