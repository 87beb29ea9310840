#include "freshtab/backend.hpp"
#include "freshtab/config.hpp"
#include "freshtab/curator.hpp"
#include "freshtab/errors.hpp"
#include "freshtab/genharness.hpp"
#include "freshtab/judge.hpp"
#include "freshtab/pipeline.hpp"
#include "freshtab/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>

namespace {

// Stable exit-code contract (documented in the README):
//   0 success, 1 unexpected failure, 2 usage/config error,
//   3 domain pool shortfall, 4 network or backend failure.
constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitUsage = 2;
constexpr int kExitShortfall = 3;
constexpr int kExitNetwork = 4;

constexpr const char* kUserAgent =
    "freshtab/0.1 (table-to-text benchmark builder; polite batch harvester)";

struct GlobalFlags {
    std::string config_path;
    std::string cache_dir;
    std::optional<std::uint64_t> seed;
    bool offline = false;
    std::string out;
};

std::string sanitize_filename(std::string name) {
    for (char& c : name) {
        if (c == '/' || c == '\\' || c == ':') c = '-';
    }
    return name;
}

freshtab::CachedHttpClient make_client(const freshtab::PipelineConfig& cfg,
                                       const GlobalFlags& flags) {
    freshtab::CachedHttpClient::Options options;
    options.cache_dir = flags.cache_dir.empty() ? cfg.cache_dir : flags.cache_dir;
    options.offline = flags.offline;
    return freshtab::CachedHttpClient(freshtab::make_httplib_transport(kUserAgent),
                                      std::move(options));
}

void write_text(const std::string& path, const std::string& content) {
    freshtab::write_file_atomic(path, content);
}

int cmd_generate(const GlobalFlags& flags, const std::string& catalog_path, bool dry_run) {
    freshtab::PipelineConfig cfg = freshtab::load_config(flags.config_path);
    if (flags.seed) cfg.rng_seed = *flags.seed;
    if (!flags.cache_dir.empty()) cfg.cache_dir = flags.cache_dir;
    const freshtab::ConceptCatalog catalog = freshtab::load_catalog(catalog_path);
    freshtab::CachedHttpClient client = make_client(cfg, flags);

    freshtab::GenerateResult result =
        freshtab::run_generate(cfg, catalog, client, dry_run);

    if (dry_run) {
        std::cout << "dry run for " << freshtab::dataset_name(cfg) << "\n";
        std::cout << "domain      candidates  usable-tables\n";
        for (freshtab::Domain d : freshtab::kAllDomains) {
            std::cout << std::left << std::setw(12) << freshtab::domain_name(d)
                      << std::setw(12) << result.candidate_counts[d]
                      << result.pool_counts[d] << "\n";
        }
        for (const auto& failure : result.harvest.failures) {
            std::cout << "concept " << failure.concept_id << " failed: " << failure.error
                      << "\n";
        }
        return kExitOk;
    }

    const std::string out_path =
        flags.out.empty() ? sanitize_filename(result.manifest.name) + ".json" : flags.out;
    freshtab::save_manifest(result.manifest, out_path);
    result.ledger.outputs.push_back(out_path);
    const std::string ledger_path = out_path + ".ledger.json";
    result.ledger.outputs.push_back(ledger_path);
    write_text(ledger_path, freshtab::ledger_to_json(result.ledger));

    std::cout << "wrote " << out_path << " (" << result.manifest.entries.size()
              << " entries)\n";
    for (freshtab::Domain d : freshtab::kAllDomains) {
        std::cout << "  " << freshtab::domain_name(d) << ": "
                  << result.manifest.domain_counts.at(d) << "\n";
    }
    if (!result.harvest.failures.empty()) {
        std::cout << "partial harvest: " << result.harvest.failures.size()
                  << " concept(s) failed, see ledger\n";
    }
    return kExitOk;
}

std::unique_ptr<freshtab::LlmBackend> make_generation_backend(
    bool mock, const std::string& replay_path, const std::string& backend_url) {
    if (mock) return std::make_unique<freshtab::MockBackend>();
    if (!replay_path.empty()) {
        return std::make_unique<freshtab::ReplayBackend>(
            freshtab::ReplayBackend::load(replay_path));
    }
    if (backend_url.empty()) {
        throw freshtab::ConfigError(
            "choose a backend: --mock, --replay <file>, or --backend-url <url>");
    }
    freshtab::HttpChatBackend::Options options;
    options.base_url = backend_url;
    return std::make_unique<freshtab::HttpChatBackend>(std::move(options));
}

int cmd_insights(const GlobalFlags& flags, const std::string& benchmark_path,
                 const std::string& setup_text, const std::string& model,
                 double temperature, bool mock, const std::string& replay_path,
                 const std::string& record_path, const std::string& backend_url,
                 bool resume) {
    const freshtab::BenchmarkManifest manifest = freshtab::load_manifest(benchmark_path);
    const auto setup = freshtab::parse_setup(setup_text);
    if (!setup) throw freshtab::ConfigError("--setup must be 'direct' or 'choice'");

    std::unique_ptr<freshtab::LlmBackend> backend =
        make_generation_backend(mock, replay_path, backend_url);
    std::unique_ptr<freshtab::RecordingBackend> recorder;
    freshtab::LlmBackend* active = backend.get();
    if (!record_path.empty() && replay_path.empty()) {
        recorder = std::make_unique<freshtab::RecordingBackend>(*backend, record_path);
        active = recorder.get();
    }

    const std::string out_path =
        flags.out.empty() ? std::string("records.") + setup_text + ".jsonl" : flags.out;
    const std::string partial_path = out_path + ".partial";

    freshtab::RunOptions options;
    options.model = model;
    options.temperature = temperature;
    if (resume && std::filesystem::exists(partial_path)) {
        options.resume_from = freshtab::load_records(partial_path);
        std::cout << "resuming: " << options.resume_from.size() << " records already done\n";
    }
    std::ofstream partial(partial_path, std::ios::app);
    options.sink = [&partial](const freshtab::InsightRecord& record) {
        partial << freshtab::records_to_jsonl({record});
        partial.flush();
    };

    std::vector<freshtab::InsightRecord> records;
    try {
        records = *setup == freshtab::Setup::kDirect
                      ? freshtab::run_direct(manifest.entries, *active, manifest.config,
                                             options)
                      : freshtab::run_choice(manifest.entries, *active, manifest.config,
                                             options);
    } catch (const freshtab::BackendError& e) {
        partial.close();
        std::cerr << "backend failed mid-run: " << e.what() << "\n"
                  << "checkpoint kept at " << partial_path << "; rerun with --resume\n";
        return kExitNetwork;
    }
    partial.close();
    freshtab::save_records(records, out_path);
    std::filesystem::remove(partial_path);

    std::size_t failures = 0;
    for (const auto& record : records) {
        if (record.status != freshtab::RecordStatus::kOk) ++failures;
    }
    std::cout << "wrote " << out_path << " (" << records.size() << " records, " << failures
              << " empty/failed)\n";
    return kExitOk;
}

int cmd_evaluate(const GlobalFlags& flags, const std::string& records_path,
                 const std::string& benchmark_path, const std::string& group_by_text,
                 bool judge_mock, const std::string& judge_replay,
                 const std::string& judge_record, const std::string& judge_url,
                 const std::string& judge_model, const std::string& verdicts_path,
                 const std::string& compare_path, const std::string& external_path) {
    const auto records = freshtab::load_records(records_path);
    std::optional<freshtab::BenchmarkManifest> manifest;
    if (!benchmark_path.empty()) manifest = freshtab::load_manifest(benchmark_path);

    std::vector<std::string> group_by;
    if (!group_by_text.empty()) {
        std::string current;
        for (char c : group_by_text + ",") {
            if (c == ',') {
                if (!current.empty()) group_by.push_back(current);
                current.clear();
            } else {
                current += c;
            }
        }
    }

    const bool judging = judge_mock || !judge_replay.empty() || !judge_url.empty();
    std::vector<freshtab::JudgeVerdict> verdicts;
    if (!verdicts_path.empty()) {
        verdicts = freshtab::load_verdicts(verdicts_path);
    } else if (judging) {
        if (!manifest) {
            throw freshtab::ConfigError("judging needs --benchmark for the tables");
        }
        std::unique_ptr<freshtab::LlmBackend> backend =
            make_generation_backend(judge_mock, judge_replay, judge_url);
        std::unique_ptr<freshtab::RecordingBackend> recorder;
        freshtab::LlmBackend* active = backend.get();
        if (!judge_record.empty() && judge_replay.empty()) {
            recorder = std::make_unique<freshtab::RecordingBackend>(*backend, judge_record);
            active = recorder.get();
        }
        verdicts = freshtab::judge_records(records, *manifest, *active, judge_model);
    }

    freshtab::ExternalScores external;
    const freshtab::ExternalScores* external_ptr = nullptr;
    if (!external_path.empty()) {
        external = freshtab::load_external_scores(external_path);
        external_ptr = &external;
    }

    const auto reports = freshtab::aggregate_report(
        records, verdicts, manifest ? &*manifest : nullptr, group_by, external_ptr);

    const std::string prefix = flags.out.empty() ? std::string("report") : flags.out;
    write_text(prefix + ".csv", freshtab::report_to_csv(reports));
    write_text(prefix + ".json", freshtab::report_to_json(reports));
    std::cout << "wrote " << prefix << ".csv and " << prefix << ".json (" << reports.size()
              << " groups)\n";
    if (!verdicts.empty()) {
        const std::string verdicts_out = prefix + ".verdicts.jsonl";
        freshtab::save_verdicts(verdicts, verdicts_out);
        std::cout << "wrote " << verdicts_out << "\n";
    }

    if (!compare_path.empty()) {
        const auto records_b = freshtab::load_records(compare_path);
        std::vector<freshtab::JudgeVerdict> verdicts_b;
        if (judging && manifest) {
            std::unique_ptr<freshtab::LlmBackend> backend =
                make_generation_backend(judge_mock, judge_replay, judge_url);
            verdicts_b =
                freshtab::judge_records(records_b, *manifest, *backend, judge_model);
        }
        const std::string label_a =
            records.empty() ? records_path : records.front().benchmark;
        const std::string label_b =
            records_b.empty() ? compare_path : records_b.front().benchmark;
        const auto cells = freshtab::significance_matrix(label_a, records, verdicts,
                                                         label_b, records_b, verdicts_b);
        write_text(prefix + ".significance.csv", freshtab::significance_to_csv(cells));
        write_text(prefix + ".significance.json", freshtab::significance_to_json(cells));
        std::cout << "wrote " << prefix << ".significance.{csv,json}\n";
    }
    return kExitOk;
}

int cmd_schedule_next(const GlobalFlags& flags) {
    const freshtab::PipelineConfig cfg = freshtab::load_config(flags.config_path);
    const freshtab::PipelineConfig next = freshtab::next_window_config(cfg);
    const std::string yaml = freshtab::config_to_yaml(next);
    if (flags.out.empty()) {
        std::cout << yaml;
    } else {
        write_text(flags.out, yaml);
        std::cout << "wrote " << flags.out << " (" << freshtab::dataset_name(next) << ")\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FreshTab: fresh table-to-text benchmarks from Wikipedia, plus an LLM "
                 "insight-generation and evaluation harness"};
    app.require_subcommand(1);

    GlobalFlags flags;
    app.add_option("--config", flags.config_path, "Pipeline YAML config");
    app.add_option("--cache-dir", flags.cache_dir, "Override the config's cache directory");
    app.add_option("--seed", flags.seed, "Override the config's rng_seed");
    app.add_flag("--offline", flags.offline, "Serve everything from cache/replay; never "
                                             "touch the network");
    app.add_option("--out", flags.out, "Output path (or prefix for evaluate)");

    auto* generate = app.add_subcommand("generate", "Build a benchmark from fresh pages");
    std::string catalog_path = "data/concept_catalog.yaml";
    bool dry_run = false;
    generate->add_option("--catalog", catalog_path, "Concept catalog YAML");
    generate->add_flag("--dry-run", dry_run, "Print per-domain counts; write nothing");

    auto* insights = app.add_subcommand("insights", "Generate insights for a benchmark");
    std::string benchmark_path;
    std::string setup_text = "direct";
    std::string model = "mock";
    double temperature = 0.7;
    bool mock = false;
    std::string replay_path;
    std::string record_path;
    std::string backend_url;
    bool resume = false;
    insights->add_option("--benchmark", benchmark_path, "Benchmark manifest JSON")
        ->required();
    insights->add_option("--setup", setup_text, "direct | choice");
    insights->add_option("--model", model, "Model name sent to the backend");
    insights->add_option("--temperature", temperature, "Sampling temperature");
    insights->add_flag("--mock", mock, "Deterministic offline mock backend");
    insights->add_option("--replay", replay_path, "Replay file; run fully offline");
    insights->add_option("--record", record_path, "Record live replies to this file");
    insights->add_option("--backend-url", backend_url,
                         "Chat-completions base URL (token via FRESHTAB_API_TOKEN)");
    insights->add_flag("--resume", resume, "Continue from an aborted run's checkpoint");

    auto* evaluate = app.add_subcommand("evaluate", "Score an insights run");
    std::string records_path;
    std::string eval_benchmark;
    std::string group_by_text;
    bool judge_mock = false;
    std::string judge_replay;
    std::string judge_record;
    std::string judge_url;
    std::string judge_model = "judge";
    std::string verdicts_path;
    std::string compare_path;
    std::string external_path;
    evaluate->add_option("--records", records_path, "Records JSONL from 'insights'")
        ->required();
    evaluate->add_option("--benchmark", eval_benchmark, "Benchmark manifest JSON");
    evaluate->add_option("--group-by", group_by_text,
                         "Comma list of model,benchmark,setup,domain,operation");
    evaluate->add_flag("--judge-mock", judge_mock, "Deterministic mock judge");
    evaluate->add_option("--judge-replay", judge_replay, "Judge replay file (offline)");
    evaluate->add_option("--judge-record", judge_record, "Record judge replies here");
    evaluate->add_option("--judge-url", judge_url, "Judge chat-completions base URL");
    evaluate->add_option("--judge-model", judge_model, "Judge model name");
    evaluate->add_option("--verdicts", verdicts_path, "Reuse saved verdicts JSONL");
    evaluate->add_option("--compare", compare_path,
                         "Second records file; adds a significance matrix");
    evaluate->add_option("--external-scores", external_path,
                         "Scores from an externally run metric (JSON)");

    auto* schedule = app.add_subcommand(
        "schedule-next", "Emit the config for the next monthly window");
    (void)schedule;

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) {
            if (flags.config_path.empty()) {
                std::cerr << "generate requires --config\n";
                return kExitUsage;
            }
            return cmd_generate(flags, catalog_path, dry_run);
        }
        if (insights->parsed()) {
            if (flags.offline && replay_path.empty() && !mock) {
                std::cerr << "--offline insights need --replay or --mock\n";
                return kExitUsage;
            }
            return cmd_insights(flags, benchmark_path, setup_text, model, temperature, mock,
                                replay_path, record_path, backend_url, resume);
        }
        if (evaluate->parsed()) {
            if (flags.offline && !judge_url.empty()) {
                std::cerr << "--offline evaluate cannot use --judge-url\n";
                return kExitUsage;
            }
            return cmd_evaluate(flags, records_path, eval_benchmark, group_by_text,
                                judge_mock, judge_replay, judge_record, judge_url,
                                judge_model, verdicts_path, compare_path, external_path);
        }
        if (schedule->parsed()) {
            if (flags.config_path.empty()) {
                std::cerr << "schedule-next requires --config\n";
                return kExitUsage;
            }
            return cmd_schedule_next(flags);
        }
    } catch (const freshtab::ShortfallError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitShortfall;
    } catch (const freshtab::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const freshtab::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const freshtab::BackendError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNetwork;
    } catch (const freshtab::NetworkError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNetwork;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOther;
    }
    return kExitUsage;
}
