// Command-line entry point: wires the cipher, dataset, gateway, scoring, and
// statistics modules into a file-based pipeline. Every stage reads the files
// the previous stage wrote; all randomness flows through --seed.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "conlang/dataset.hpp"
#include "conlang/gateway.hpp"
#include "conlang/stats.hpp"

using namespace conlang;

namespace {

Json read_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open: " + path);
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded()) throw MalformedFile("unparseable JSON: " + path);
    return j;
}

std::vector<Json> read_jsonl(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open: " + path);
    std::vector<Json> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        Json j = Json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw MalformedFile(path + ": bad JSON on line " + std::to_string(line_no));
        rows.push_back(std::move(j));
    }
    return rows;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open for writing: " + path);
    return out;
}

Matrix matrix_flag(const std::string& s) { return matrix_from_string(s); }

int cmd_gen_key(const std::string& resources, const std::string& matrix_s, const std::string& id,
                std::uint64_t seed, const std::string& out_path) {
    const ResourcePack pack = load_resource_pack(resources);
    const Matrix matrix = matrix_flag(matrix_s);
    const auto& inv = pack.inventory_for(matrix);
    KeyInventory key_inv{inv.clear_alphabet, inv.consonants, inv.vowels};
    const KeyRecord rec = make_key_record(key_inv, id, matrix, Purpose::Test, seed);
    const std::string text = key_record_to_json(rec).dump(2) + "\n";
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        open_out(out_path) << text;
    }
    std::cerr << "seed: " << seed << "\n";
    return 0;
}

KeyRecord load_key_record(const std::string& path) { return key_record_from_json(read_json(path)); }

int cmd_encipher(const std::string& key_path, const std::string& text) {
    const KeyRecord rec = load_key_record(key_path);
    std::cout << encipher_segment(rec.key, text) << "\n";
    return 0;
}

int cmd_decipher(const std::string& key_path, const std::string& text) {
    const KeyRecord rec = load_key_record(key_path);
    std::cout << decipher_segment(rec.key, text) << "\n";
    return 0;
}

int cmd_build_testset(const std::string& resources, std::uint64_t seed,
                      const std::string& out_dir) {
    const ResourcePack pack = load_resource_pack(resources);
    std::filesystem::create_directories(out_dir);
    const auto records = make_test_key_records(pack, seed);
    save_keys(out_dir + "/keys.jsonl", records);
    const KeyStore store(records);
    const auto instances = build_test_set(pack, store);
    const auto files = write_test_set_files(out_dir, instances);
    std::cout << records.size() << " base instances\n"
              << instances.size() << " instances\n"
              << files.size() << " dataset files in " << out_dir << "\n";
    std::cerr << "seed: " << seed << "\n";
    return 0;
}

int cmd_build_course(const std::string& resources, std::uint64_t seed, const std::string& course,
                     const std::string& out_path) {
    const ResourcePack pack = load_resource_pack(resources);
    const CourseSpec* spec = nullptr;
    for (const auto& c : pack.courses)
        if (c.name == course) spec = &c;
    if (!spec) throw InsufficientResources("unknown course: " + course);
    const auto instances = build_training_course(pack, *spec, seed);
    write_dataset(out_path, instances);
    std::cout << instances.size() << " training instances -> " << out_path << "\n";
    std::cerr << "seed: " << seed << "\n";
    return 0;
}

int cmd_vary_grammar(const std::string& resources, const std::string& matrix_s,
                     std::uint64_t seed) {
    const ResourcePack pack = load_resource_pack(resources);
    std::cout << vary_grammar_excerpt(pack.grammar_for(matrix_flag(matrix_s)), seed);
    std::cerr << "seed: " << seed << "\n";
    return 0;
}

int cmd_run_eval(const std::string& dataset_path, const std::string& out_path,
                 const std::string& log_path, int parallelism, double temperature,
                 int max_tokens) {
    GatewayConfig cfg = gateway_config_from_env();
    cfg.log_path = log_path;

    std::vector<InferenceRequest> requests;
    for (const auto& row : read_jsonl(dataset_path)) {
        InferenceRequest req;
        req.instance_id = row.at("instance_id").get<std::string>();
        req.model_id = cfg.model_id;
        req.system_prompt = row.at("system_prompt").get<std::string>();
        req.user_prompt = row.at("prompt").get<std::string>();
        req.temperature = temperature;
        req.max_tokens = max_tokens;
        requests.push_back(std::move(req));
    }

    const auto results = run_batch(cfg, requests, parallelism);
    auto out = open_out(out_path);
    std::size_t ok = 0;
    for (const auto& res : results) {
        Json j;
        j["instance_id"] = res.instance_id;
        j["completion"] = res.completion ? Json(*res.completion) : Json(nullptr);
        j["error"] = res.error ? Json(*res.error) : Json(nullptr);
        j["attempt_count"] = res.attempt_count;
        out << j.dump() << "\n";
        if (res.ok()) ++ok;
    }
    std::cout << ok << "/" << results.size() << " completions -> " << out_path << "\n";
    return 0;
}

struct ScoredRow {
    Judgment judgment;
    CellKey cell;
    std::string base_instance_id;
    std::string matrix_view;
};

ScoredRow scored_row_from_json(const Json& j) {
    ScoredRow row;
    row.judgment = judgment_from_json(j);
    row.cell.partition = j.at("partition").get<std::string>();
    row.cell.modality = j.at("modality").get<std::string>();
    row.cell.direction = j.at("direction").get<std::string>();
    row.cell.cot = j.at("cot").get<bool>();
    if (j.contains("matrix") && !j.at("matrix").is_null())
        row.cell.matrix = j.at("matrix").get<std::string>();
    row.base_instance_id = j.value("base_instance_id", "");
    row.matrix_view = j.value("matrix_view", "");
    return row;
}

void print_accuracy_table(const std::map<CellKey, CellStats>& table) {
    for (const auto& [cell, stats] : table) {
        CellKey untagged = cell;
        untagged.matrix.reset();
        std::cout << untagged.label() << "  " << stats.mean << "  (n=" << stats.count << ")\n";
    }
}

int cmd_score(const std::string& dataset_path, const std::string& results_path,
              const std::string& out_path) {
    std::map<std::string, Json> dataset;
    for (auto& row : read_jsonl(dataset_path)) {
        const std::string id = row.at("instance_id").get<std::string>();
        dataset[id] = std::move(row);
    }

    auto out = open_out(out_path);
    std::vector<JudgedInstance> judged;
    for (const auto& res : read_jsonl(results_path)) {
        const std::string id = res.at("instance_id").get<std::string>();
        auto it = dataset.find(id);
        if (it == dataset.end()) throw MalformedFile("result for unknown instance: " + id);
        const Json& inst = it->second;

        const std::string completion =
            res.contains("completion") && !res.at("completion").is_null()
                ? res.at("completion").get<std::string>()
                : "";
        std::optional<std::string> ad_order;
        if (!inst.at("ad_order_error_reference").is_null())
            ad_order = inst.at("ad_order_error_reference").get<std::string>();
        const std::string partition = inst.at("partition").get<std::string>();

        const Judgment j =
            judge_completion(id, completion, inst.at("reference").get<std::string>(), ad_order,
                             is_latin_partition(partition));

        Json rec = judgment_to_json(j);
        rec["partition"] = partition;
        rec["modality"] = inst.at("modality");
        rec["direction"] = inst.at("direction");
        rec["cot"] = inst.at("cot");
        rec["matrix"] = inst.at("matrix");
        rec["matrix_view"] = inst.value("matrix_view", "");
        rec["base_instance_id"] = inst.value("base_instance_id", "");
        out << rec.dump() << "\n";

        JudgedInstance ji;
        ji.cell = {partition, inst.at("modality").get<std::string>(),
                   inst.at("direction").get<std::string>(), inst.at("cot").get<bool>(),
                   std::nullopt};
        ji.score = j.score;
        judged.push_back(ji);
    }
    std::cout << judged.size() << " judgments -> " << out_path << "\n";
    print_accuracy_table(aggregate_accuracy(judged));
    return 0;
}

int cmd_stats(const std::string& judgments_path, const std::string& axis, bool breakdown) {
    std::vector<ScoredRow> rows;
    for (const auto& j : read_jsonl(judgments_path)) rows.push_back(scored_row_from_json(j));

    std::vector<JudgedInstance> untagged;
    for (const auto& row : rows) {
        JudgedInstance ji;
        ji.cell = row.cell;
        ji.cell.matrix.reset();
        ji.score = row.judgment.score;
        untagged.push_back(ji);
    }
    std::cout << "accuracy by cell:\n";
    print_accuracy_table(aggregate_accuracy(untagged));

    // Align instances across conditions by their residual identity, then
    // compute the pairwise Cohen's d matrix over the chosen axis.
    auto axis_value = [&](const ScoredRow& r) -> std::string {
        if (axis == "modality") return r.cell.modality;
        if (axis == "direction") return r.cell.direction;
        if (axis == "cot") return r.cell.cot ? "cot" : "spontaneous";
        if (axis == "partition") return r.cell.partition;
        throw MalformedFile("unknown axis: " + axis);
    };
    auto residual = [&](const ScoredRow& r) {
        std::string key = r.base_instance_id + "|" + r.matrix_view;
        if (axis != "partition") key += "|" + r.cell.partition;
        if (axis != "modality") key += "|" + r.cell.modality;
        if (axis != "direction") key += "|" + r.cell.direction;
        if (axis != "cot") key += std::string("|") + (r.cell.cot ? "c" : "s");
        return key;
    };
    std::map<std::string, std::map<std::string, double>> by_condition;
    for (const auto& row : rows) by_condition[axis_value(row)][residual(row)] = row.judgment.score;

    std::vector<std::pair<std::string, std::vector<double>>> conditions;
    for (const auto& [label, scores] : by_condition) {
        std::vector<double> values;
        for (const auto& [res, score] : scores) values.push_back(score);  // residual-sorted
        conditions.emplace_back(label, std::move(values));
    }
    const EffectReport report = effect_matrix(conditions);
    std::cout << "\neffect matrix (axis: " << axis << ")\n";
    for (std::size_t i = 0; i < report.conditions.size(); ++i) {
        std::cout << report.conditions[i];
        for (double d : report.matrix[i]) std::cout << "\t" << d;
        std::cout << "\n";
    }

    if (breakdown) {
        std::vector<JudgedInstance> french_rows;
        for (const auto& row : rows) {
            if (!row.cell.matrix ||
                (*row.cell.matrix != "french" && *row.cell.matrix != "reversed_french"))
                continue;
            JudgedInstance ji;
            ji.cell = row.cell;
            ji.score = row.judgment.score;
            french_rows.push_back(ji);
        }
        const MatrixBreakdown mb = matrix_breakdown(french_rows);
        std::cout << "\ncomposite French cells (mean of true/reversed):\n";
        print_accuracy_table(mb.composite);
    }
    return 0;
}

int cmd_ci_experiment(const std::string& judgments_path, std::size_t n_keys,
                      std::size_t n_resamples, std::uint64_t seed) {
    // Offline protocol: each base instance's judged scores form an empirical
    // pool; re-encipherment runs are simulated by seeded draws from the pool.
    std::map<std::string, std::vector<double>> pools;
    for (const auto& j : read_jsonl(judgments_path)) {
        const ScoredRow row = scored_row_from_json(j);
        const std::string base = row.base_instance_id.empty()
                                     ? row.judgment.instance_id
                                     : row.base_instance_id;
        pools[base].push_back(row.judgment.score);
    }
    if (pools.empty()) throw MalformedFile("no judgments in " + judgments_path);

    std::vector<std::string> ids;
    std::vector<std::vector<double>> pool_list;
    std::vector<Rng> draws;
    for (const auto& [id, pool] : pools) {
        ids.push_back(id);
        pool_list.push_back(pool);
        draws.emplace_back(derive_seed(seed, id));
    }
    auto runner = [&](std::size_t i, std::size_t) {
        return pool_list[i][draws[i].below(pool_list[i].size())];
    };
    const CiExperimentReport report =
        ci_width_experiment(ids, runner, n_keys, derive_seed(seed, "bootstrap"), n_resamples);
    for (const auto& w : report.per_instance)
        std::cout << w.instance_id << "\tmean=" << w.mean << "\tbootstrap_width="
                  << w.bootstrap_width << "\tnormal_width=" << w.normal_width << "\n";
    std::cout << "width mode (0.1 bins): " << report.width_mode << "\n";
    std::cerr << "seed: " << seed << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cryptographic conlang dataset toolkit"};
    app.require_subcommand(1);

    std::string resources = "resources", matrix = "french", id = "cli-key";
    std::string key_path, text, out_path, dataset_path, results_path, judgments_path;
    std::string log_path = "raw_log.jsonl", course, axis = "modality";
    std::uint64_t seed = 0;
    int parallelism = 8, max_tokens = 1300;
    double temperature = 0.05;
    std::size_t n_keys = 200, n_resamples = 10000;
    bool breakdown = false;

    auto* gen_key = app.add_subcommand("gen-key", "Generate one cipher key record");
    gen_key->add_option("--resources", resources);
    gen_key->add_option("--matrix", matrix)->check(CLI::IsMember({"french", "reversed_french", "latin"}));
    gen_key->add_option("--id", id);
    gen_key->add_option("--seed", seed)->required();
    gen_key->add_option("--out", out_path);

    auto* encipher = app.add_subcommand("encipher", "Encipher text under a key record");
    encipher->add_option("--key", key_path)->required();
    encipher->add_option("--text", text)->required();

    auto* decipher = app.add_subcommand("decipher", "Decipher text under a key record");
    decipher->add_option("--key", key_path)->required();
    decipher->add_option("--text", text)->required();

    auto* build_testset = app.add_subcommand("build-testset", "Build the 24-variant test set");
    build_testset->add_option("--resources", resources);
    build_testset->add_option("--seed", seed)->required();
    build_testset->add_option("--out", out_path)->required();

    auto* build_course = app.add_subcommand("build-course", "Build one training course");
    build_course->add_option("--resources", resources);
    build_course->add_option("--seed", seed)->required();
    build_course->add_option("--course", course)->required();
    build_course->add_option("--out", out_path)->required();

    auto* vary = app.add_subcommand("vary-grammar", "Emit one varied grammar rendering");
    vary->add_option("--resources", resources);
    vary->add_option("--matrix", matrix)->check(CLI::IsMember({"french", "reversed_french", "latin"}));
    vary->add_option("--seed", seed)->required();

    auto* run_eval = app.add_subcommand("run-eval", "Run a dataset through the inference gateway");
    run_eval->add_option("--dataset", dataset_path)->required();
    run_eval->add_option("--out", out_path)->required();
    run_eval->add_option("--log", log_path);
    run_eval->add_option("--parallelism", parallelism);
    run_eval->add_option("--temperature", temperature);
    run_eval->add_option("--max-tokens", max_tokens);

    auto* score = app.add_subcommand("score", "Judge completions against references");
    score->add_option("--dataset", dataset_path)->required();
    score->add_option("--results", results_path)->required();
    score->add_option("--out", out_path)->required();

    auto* stats = app.add_subcommand("stats", "Accuracy table and effect matrix");
    stats->add_option("--judgments", judgments_path)->required();
    stats->add_option("--axis", axis)->check(CLI::IsMember({"modality", "direction", "cot", "partition"}));
    stats->add_flag("--matrix-breakdown", breakdown);

    auto* ci = app.add_subcommand("ci-experiment", "Per-instance CI width experiment");
    ci->add_option("--judgments", judgments_path)->required();
    ci->add_option("--n-keys", n_keys);
    ci->add_option("--resamples", n_resamples);
    ci->add_option("--seed", seed)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen_key->parsed()) return cmd_gen_key(resources, matrix, id, seed, out_path);
        if (encipher->parsed()) return cmd_encipher(key_path, text);
        if (decipher->parsed()) return cmd_decipher(key_path, text);
        if (build_testset->parsed()) return cmd_build_testset(resources, seed, out_path);
        if (build_course->parsed()) return cmd_build_course(resources, seed, course, out_path);
        if (vary->parsed()) return cmd_vary_grammar(resources, matrix, seed);
        if (run_eval->parsed())
            return cmd_run_eval(dataset_path, out_path, log_path, parallelism, temperature,
                                max_tokens);
        if (score->parsed()) return cmd_score(dataset_path, results_path, out_path);
        if (stats->parsed()) return cmd_stats(judgments_path, axis, breakdown);
        if (ci->parsed()) return cmd_ci_experiment(judgments_path, n_keys, n_resamples, seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
