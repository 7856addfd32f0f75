// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Runs entirely offline against the shipped resource pack and an
// in-process mock inference server.
#include <atomic>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <thread>

#include <httplib.h>

#include "conlang/dataset.hpp"
#include "conlang/gateway.hpp"
#include "conlang/stats.hpp"

using namespace conlang;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": " << what;
    if (!detail.empty()) std::cout << " [" << detail << "]";
    std::cout << std::endl;
    if (!ok) ++failures;
}

void run(int criterion, const std::string& what, const std::function<std::string()>& body) {
    try {
        report(criterion, what, true, body());
    } catch (const std::exception& e) {
        report(criterion, what, false, e.what());
    }
}

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg) {
    if (!cond) throw Failure(msg);
}

ResourcePack& pack() {
    static ResourcePack p = load_resource_pack(CONLANG_RESOURCE_DIR);
    return p;
}

std::string random_cleartext(Rng& rng, const Alphabet& sigma, std::size_t min_len = 5,
                             std::size_t max_len = 60) {
    static const std::u32string punct = U",;:.!? '-";
    std::u32string out;
    const std::size_t len = min_len + rng.below(max_len - min_len);
    for (std::size_t i = 0; i < len; ++i) {
        if (rng.below(6) == 0) {
            out.push_back(punct[rng.below(punct.size())]);
        } else {
            char32_t c = sigma.characters[rng.below(sigma.size())];
            if (rng.below(4) == 0) c = utf8::to_upper(c);
            out.push_back(c);
        }
    }
    return utf8::encode(out);
}

CipherKey random_key(Rng& rng, const LanguageInventory& inv) {
    const Scheme scheme =
        rng.below(2) == 0 ? Scheme::SubstitutionOnly : Scheme::SubstitutionWithReversal;
    return generate_key(inv.clear_alphabet, inv.consonants, inv.vowels, scheme, rng.next());
}

// Mock chat-completion server with a canned completion per prompt.
class MockServer {
public:
    MockServer() {
        server_.Post("/v1/chat/completions", [this](const httplib::Request& req,
                                                    httplib::Response& res) {
            const int now = ++in_flight_;
            int peak = peak_.load();
            while (now > peak && !peak_.compare_exchange_weak(peak, now)) {
            }
            Json body = Json::parse(req.body);
            const std::string user = body["messages"][1]["content"];
            std::string reply_text;
            {
                std::lock_guard<std::mutex> lock(mu_);
                auto it = canned_.find(user);
                reply_text = it != canned_.end()
                                 ? it->second
                                 : "<translation>" + user + "</translation>";
            }
            std::this_thread::sleep_for(std::chrono::milliseconds(1));
            Json reply;
            reply["choices"] = Json::array(
                {Json{{"message", Json{{"role", "assistant"}, {"content", reply_text}}}}});
            res.set_content(reply.dump(), "application/json");
            --in_flight_;
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~MockServer() {
        server_.stop();
        thread_.join();
    }
    void preload(const std::string& prompt, const std::string& completion) {
        std::lock_guard<std::mutex> lock(mu_);
        canned_[prompt] = completion;
    }
    std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }
    int peak() const { return peak_.load(); }

private:
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
    std::atomic<int> in_flight_{0};
    std::atomic<int> peak_{0};
    std::mutex mu_;
    std::map<std::string, std::string> canned_;
};

std::string segment_of(const PromptInstance& inst) {
    static const std::string head = "Here is the text segment you must translate:\n";
    const auto at = inst.prompt_text.find(head);
    require(at != std::string::npos, "prompt missing segment block");
    const auto start = at + head.size();
    const auto end = inst.prompt_text.find("\n\n", start);
    require(end != std::string::npos, "prompt segment block unterminated");
    return inst.prompt_text.substr(start, end - start);
}

}  // namespace

int main() {
    run(1, "cipher round trip, 10^4 random (key, text) pairs under 5 s", [] {
        const auto start = Clock::now();
        Rng rng(101);
        const auto& inv = pack().french_inventory;
        for (int i = 0; i < 10000; ++i) {
            const CipherKey key = random_key(rng, inv);
            const std::string clear = random_cleartext(rng, inv.clear_alphabet);
            const std::string lowered = utf8::to_lower_utf8(clear);
            require(decipher_segment(key, encipher_segment(key, clear)) == lowered,
                    "round trip mismatch at pair " + std::to_string(i));
        }
        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        require(secs < 5.0, "took " + std::to_string(secs) + " s");
        return std::to_string(secs) + " s";
    });

    run(2, "transposition fixtures bit-exact", [] {
        require(reverse_sentence("The quick, brown fox.") == "xof nworb, kciuq eht.",
                "reverse_sentence fixture");
        require(reverse_words("The quick, brown fox.") == "eht kciuq, nworb xof.",
                "reverse_words fixture");
        return std::string();
    });

    run(3, "unique decodability fuzz, 10^5 cleartext pairs", [] {
        Rng rng(202);
        const auto& inv = pack().french_inventory;
        std::size_t ambiguous_keys = 0;
        for (int k = 0; k < 100; ++k) {
            const CipherKey key = random_key(rng, inv);
            // a digram-opening consonant serving as a monogram image would
            // make greedy parsing ambiguous
            std::set<char32_t> openers(key.digram_consonants.begin(),
                                       key.digram_consonants.end());
            for (const auto& [clear, image] : key.mapping)
                if (!image.digram && openers.count(image.first)) ++ambiguous_keys;
            for (int i = 0; i < 1000; ++i) {
                const std::string a = random_cleartext(rng, inv.clear_alphabet);
                const std::string b = random_cleartext(rng, inv.clear_alphabet);
                const std::string ca = encipher_segment(key, a);
                const std::string cb = encipher_segment(key, b);
                if (utf8::to_lower_utf8(a) != utf8::to_lower_utf8(b))
                    require(ca != cb, "ciphertext collision");
                require(decipher_segment(key, ca) == utf8::to_lower_utf8(a),
                        "ambiguous parse of stream a");
                require(decipher_segment(key, cb) == utf8::to_lower_utf8(b),
                        "ambiguous parse of stream b");
            }
        }
        require(ambiguous_keys == 0, "digram-opener reused as monogram image");
        return std::string("100 keys x 1000 pairs, 0 ambiguous");
    });

    // Shared across criteria 4 and 5.
    static std::vector<KeyRecord> key_records;
    static std::vector<PromptInstance> test_set;

    run(4, "dataset counts: 1400 bases, 33600 instances, 400 Latin / 1000 French", [] {
        key_records = make_test_key_records(pack(), 424242);
        const KeyStore store(key_records);
        test_set = build_test_set(pack(), store);
        require(key_records.size() == 1400, "base count");
        require(test_set.size() == 33600, "instance count");
        std::map<std::string, std::set<std::string>> bases_by_partition;
        std::size_t latin = 0, french = 0;
        for (const auto& rec : key_records)
            (rec.matrix == Matrix::Latin ? latin : french) += 1;
        for (const auto& inst : test_set)
            bases_by_partition[inst.partition].insert(inst.base_instance_id);
        require(latin == 400 && french == 1000, "matrix split");
        require(bases_by_partition.size() == 14, "partition count");
        for (const auto& [p, bases] : bases_by_partition)
            require(bases.size() == 100, "partition " + p + " size");
        return std::string();
    });

    run(5, "key consistency across all 24 variants, full test set", [] {
        require(!test_set.empty(), "criterion 4 must build the test set first");
        const auto start = Clock::now();
        const KeyStore store(key_records);
        std::map<std::string, std::set<std::string>> cleartexts;
        std::map<std::string, std::size_t> variant_counts;
        for (const auto& inst : test_set) {
            const CipherKey& key = store.get(inst.key_ref).key;
            const std::string conlang_span =
                inst.direction == "eng_to_art" ? inst.reference : segment_of(inst);
            cleartexts[inst.base_instance_id].insert(decipher_segment(key, conlang_span));
            variant_counts[inst.base_instance_id]++;
        }
        for (const auto& [base, clears] : cleartexts) {
            require(variant_counts[base] == 24, base + " variant count");
            require(clears.size() == 1, base + " deciphered to " +
                                            std::to_string(clears.size()) + " cleartexts");
        }
        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        require(secs < 60.0, "took " + std::to_string(secs) + " s");
        return std::to_string(secs) + " s";
    });

    run(6, "scoring matches expectations on a 500-case synthetic suite", [] {
        Rng rng(303);
        const std::vector<std::string> words = {"les",  "jolis", "chats", "noirs",
                                                "nous", "avons", "tous",  "vus"};
        for (int i = 0; i < 500; ++i) {
            std::vector<std::string> ref_words;
            const std::size_t n = 2 + rng.below(5);
            for (std::size_t w = 0; w < n; ++w) ref_words.push_back(words[rng.below(words.size())]);
            std::string reference;
            for (const auto& w : ref_words) reference += (reference.empty() ? "" : " ") + w;
            const std::string ad_order = reference + " bis";

            const int kind = static_cast<int>(rng.below(5));
            std::string completion;
            bool bag = false;
            int expected = 0;
            if (kind == 0) {  // exact, with case/spacing noise
                completion = "<translation>  " + reference + ". </translation>";
                completion[14] = static_cast<char>(std::toupper(completion[14]));
                expected = 100;
            } else if (kind == 1) {  // adjective-order half credit
                completion = "<translation>" + ad_order + "</translation>";
                expected = 50;
            } else if (kind == 2) {  // bag-of-words permutation
                bag = true;
                auto shuffled = ref_words;
                rng.shuffle(shuffled);
                completion = "<translation>";
                for (const auto& w : shuffled) completion += w + " ";
                completion += "</translation>";
                expected = 100;
            } else if (kind == 3) {  // miss
                completion = "<translation>" + reference + " extra</translation>";
                expected = 0;
            } else {  // unparseable
                completion = reference;
                expected = 0;
            }
            const Judgment j = judge_completion("case-" + std::to_string(i), completion,
                                                reference, ad_order, bag);
            require(j.score == expected, "case " + std::to_string(i) + " kind " +
                                             std::to_string(kind) + ": got " +
                                             std::to_string(j.score) + " expected " +
                                             std::to_string(expected));
        }
        return std::string();
    });

    run(7, "statistics oracles: pooled-SD d, antisymmetry, composite identity", [] {
        Rng rng(404);
        for (int t = 0; t < 100; ++t) {
            std::vector<double> a, b;
            const std::size_t na = 3 + rng.below(40), nb = 3 + rng.below(40);
            for (std::size_t i = 0; i < na; ++i) a.push_back(rng.real() * 100.0);
            for (std::size_t i = 0; i < nb; ++i) b.push_back(rng.real() * 100.0);
            long double ma = 0, mb = 0;
            for (double x : a) ma += x;
            for (double x : b) mb += x;
            ma /= static_cast<long double>(na);
            mb /= static_cast<long double>(nb);
            long double ss = 0;
            for (double x : a) ss += (x - ma) * (x - ma);
            for (double x : b) ss += (x - mb) * (x - mb);
            const long double pooled =
                std::sqrt(ss / static_cast<long double>(na + nb - 2));
            const double by_hand = static_cast<double>((ma - mb) / pooled);
            require(std::abs(cohens_d(a, b) - by_hand) < 1e-12, "pooled-SD mismatch");

            std::vector<std::pair<std::string, std::vector<double>>> conds;
            std::vector<double> c;
            for (std::size_t i = 0; i < na; ++i) c.push_back(rng.real() * 100.0);
            std::vector<double> d(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(na));
            conds.emplace_back("a", a);
            conds.emplace_back("c", c);
            conds.emplace_back("d", d);
            const auto rep = effect_matrix(conds);
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j)
                    require(std::abs(rep.matrix[i][j] + rep.matrix[j][i]) < 1e-12,
                            "antisymmetry");
        }
        require(composite_cell(70.0, 62.0) == 66.0, "published composite cell");

        // exact composite identity on a synthetic 50/50 matrix split
        std::vector<JudgedInstance> rows;
        CellKey cell{"1", "W_G", "eng_to_art", true, std::nullopt};
        for (int i = 0; i < 10; ++i) {
            JudgedInstance t{cell, i < 7 ? 100 : 0};
            t.cell.matrix = "french";
            rows.push_back(t);
            JudgedInstance r{cell, i < 3 ? 100 : 0};
            r.cell.matrix = "reversed_french";
            rows.push_back(r);
        }
        const auto mb2 = matrix_breakdown(rows);
        CellKey plain = cell;
        require(mb2.composite.at(plain).mean == composite_cell(70.0, 30.0),
                "synthetic composite identity");
        return std::string();
    });

    run(8, "CI widths: bootstrap vs analytic within 10% at n_keys = 200", [] {
        const std::vector<std::string> ids = {"b1", "b2", "b3", "b4", "b5", "b6"};
        const std::vector<double> ps = {0.15, 0.3, 0.45, 0.6, 0.75, 0.9};
        std::vector<Rng> rngs;
        for (std::size_t i = 0; i < ids.size(); ++i) rngs.emplace_back(500 + i);
        auto runner = [&](std::size_t i, std::size_t) {
            return rngs[i].real() < ps[i] ? 100.0 : 0.0;
        };
        const auto rep = ci_width_experiment(ids, runner, 200, 1, 10000);
        for (const auto& w : rep.per_instance) {
            const double rel = std::abs(w.bootstrap_width - w.normal_width) / w.normal_width;
            require(rel < 0.10, w.instance_id + " relative gap " + std::to_string(rel));
        }
        return std::string();
    });

    run(9, "gateway: 1000 requests, parallelism 8, replay equals live", [] {
        MockServer server;
        const std::string log_path =
            (std::filesystem::temp_directory_path() / "acceptance-raw.jsonl").string();
        std::remove(log_path.c_str());
        GatewayConfig cfg;
        cfg.base_url = server.url();
        cfg.model_id = "mock-model";
        cfg.log_path = log_path;

        std::vector<InferenceRequest> requests(1000);
        for (std::size_t i = 0; i < requests.size(); ++i) {
            requests[i].instance_id = "r" + std::to_string(i);
            requests[i].system_prompt = kSystemPrompt;
            requests[i].user_prompt = "prompt " + std::to_string(i);
        }
        const auto results = run_batch(cfg, requests, 8);
        require(results.size() == 1000, "result count");
        require(server.peak() <= 8, "in-flight peak " + std::to_string(server.peak()));
        require(server.peak() >= 2, "pool never ran concurrently");
        for (std::size_t i = 0; i < results.size(); ++i) {
            require(results[i].ok(), "request failed");
            require(results[i].instance_id == requests[i].instance_id, "order");
        }

        const auto replayed = replay_log(log_path);
        require(replayed.size() == 1000, "replay count");
        std::map<std::string, std::string> live, replay;
        for (const auto& r : results) live[r.instance_id] = *r.completion;
        for (const auto& r : replayed) replay[r.instance_id] = *r.completion;
        std::string live_scored, replay_scored;
        for (const auto& [id, c] : live)
            live_scored +=
                judgment_to_json(judge_completion(id, c, "x", std::nullopt, false)).dump() + "\n";
        for (const auto& [id, c] : replay)
            replay_scored +=
                judgment_to_json(judge_completion(id, c, "x", std::nullopt, false)).dump() + "\n";
        require(live_scored == replay_scored, "replay scoring diverged");
        std::remove(log_path.c_str());
        return std::string("peak in-flight " + std::to_string(server.peak()));
    });

    run(10, "end-to-end smoke: mock-server run yields shaped tables", [] {
        require(!test_set.empty(), "criterion 4 must build the test set first");
        // one slice: five bases from a French and five from a Latin partition,
        // every variant, answered correctly 80% of the time
        std::vector<const PromptInstance*> slice;
        for (const auto& inst : test_set) {
            if (inst.matrix_view != "true") continue;
            const bool wanted =
                (inst.partition == "2m" || inst.partition == "8a") &&
                inst.base_instance_id.back() < '5' &&
                inst.base_instance_id[inst.base_instance_id.size() - 2] == '0' &&
                inst.base_instance_id[inst.base_instance_id.size() - 3] == '0';
            if (wanted) slice.push_back(&inst);
        }
        require(slice.size() == 120, "slice size " + std::to_string(slice.size()));

        MockServer server;
        Rng rng(606);
        std::vector<InferenceRequest> requests;
        for (const auto* inst : slice) {
            const std::string answer =
                rng.below(5) == 0 ? "not even close" : inst->reference;
            server.preload(inst->prompt_text, "<translation>" + answer + "</translation>");
            InferenceRequest req;
            req.instance_id = inst->instance_id;
            req.model_id = "mock-model";
            req.system_prompt = inst->system_prompt;
            req.user_prompt = inst->prompt_text;
            requests.push_back(std::move(req));
        }
        GatewayConfig cfg;
        cfg.base_url = server.url();
        cfg.model_id = "mock-model";
        const auto results = run_batch(cfg, requests, 8);
        require(results.size() == slice.size(), "batch size");

        std::vector<JudgedInstance> judged;
        std::map<std::string, std::map<std::string, double>> by_modality;
        for (std::size_t i = 0; i < results.size(); ++i) {
            const PromptInstance& inst = *slice[i];
            require(results[i].ok(), "mock request failed");
            const Judgment j = judge_completion(
                inst.instance_id, *results[i].completion, inst.reference,
                inst.ad_order_error_reference, is_latin_partition(inst.partition));
            JudgedInstance ji;
            ji.cell = {inst.partition, inst.modality, inst.direction, inst.cot, std::nullopt};
            ji.score = j.score;
            judged.push_back(ji);
            by_modality[inst.modality][inst.base_instance_id + "|" + inst.direction + "|" +
                                       (inst.cot ? "c" : "s")] = j.score;
        }

        // shaped accuracy table: 2 partitions x 3 modalities x 2 directions x 2 cot
        const auto table = aggregate_accuracy(judged);
        require(table.size() == 24, "accuracy cells " + std::to_string(table.size()));
        for (const auto& [cell, stats] : table) {
            require(stats.count == 5, "cell population");
            require(stats.mean >= 0.0 && stats.mean <= 100.0, "cell range");
        }

        // shaped effect matrix over modalities
        std::vector<std::pair<std::string, std::vector<double>>> conds;
        for (const auto& [mod, scores] : by_modality) {
            std::vector<double> values;
            for (const auto& [k, v] : scores) values.push_back(v);
            conds.emplace_back(mod, std::move(values));
        }
        const auto rep = effect_matrix(conds);
        require(rep.conditions.size() == 3, "modalities in matrix");
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                require(std::abs(rep.matrix[i][j] + rep.matrix[j][i]) < 1e-12,
                        "effect matrix antisymmetry");
        return std::string("24 accuracy cells, 3x3 effect matrix");
    });

    if (failures == 0) {
        std::cout << "ALL CRITERIA PASSED" << std::endl;
        return 0;
    }
    std::cout << failures << " CRITERIA FAILED" << std::endl;
    return 1;
}
