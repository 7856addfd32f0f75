#pragma once

#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "conlang/cipher.hpp"
#include "conlang/errors.hpp"
#include "conlang/rng.hpp"

namespace conlang {

enum class Matrix { French, ReversedFrench, Latin };

inline std::string to_string(Matrix m) {
    switch (m) {
        case Matrix::French: return "french";
        case Matrix::ReversedFrench: return "reversed_french";
        case Matrix::Latin: return "latin";
    }
    throw Error("unknown matrix");
}

inline Matrix matrix_from_string(std::string_view s) {
    if (s == "french") return Matrix::French;
    if (s == "reversed_french") return Matrix::ReversedFrench;
    if (s == "latin") return Matrix::Latin;
    throw MalformedFile("unknown matrix: " + std::string(s));
}

inline Scheme scheme_for_matrix(Matrix m) {
    return m == Matrix::ReversedFrench ? Scheme::SubstitutionWithReversal
                                       : Scheme::SubstitutionOnly;
}

enum class Purpose { Train, Test };

inline std::string to_string(Purpose p) { return p == Purpose::Train ? "train" : "test"; }

inline Purpose purpose_from_string(std::string_view s) {
    if (s == "train") return Purpose::Train;
    if (s == "test") return Purpose::Test;
    throw MalformedFile("unknown purpose: " + std::string(s));
}

struct KeyRecord {
    std::string instance_id;
    Matrix matrix = Matrix::French;
    Purpose purpose = Purpose::Test;
    CipherKey key;

    bool operator==(const KeyRecord&) const = default;

    void validate() const {
        if (key.scheme != scheme_for_matrix(matrix))
            throw Error("matrix/scheme mismatch for " + instance_id);
        key.validate();
    }
};

// The inventory keys are drawn from. The cipher-side consonant/vowel pools
// intentionally exceed the clear alphabet so code points look foreign.
struct KeyInventory {
    Alphabet clear_alphabet;
    std::u32string consonants;
    std::u32string vowels;
};

inline KeyRecord make_key_record(const KeyInventory& inv, std::string instance_id, Matrix matrix,
                                 Purpose purpose, std::uint64_t master_seed) {
    KeyRecord rec;
    rec.instance_id = std::move(instance_id);
    rec.matrix = matrix;
    rec.purpose = purpose;
    rec.key = generate_key(inv.clear_alphabet, inv.consonants, inv.vowels,
                           scheme_for_matrix(matrix), derive_seed(master_seed, rec.instance_id));
    return rec;
}

// One key per base instance, shared by every prompt variant of that instance.
// Seeds are derived per id, so regeneration is order-independent.
inline std::vector<KeyRecord> assign_test_keys(
    const KeyInventory& inv, const std::vector<std::pair<std::string, Matrix>>& base_instances,
    std::uint64_t master_seed) {
    std::set<std::string> seen;
    std::vector<KeyRecord> records;
    records.reserve(base_instances.size());
    for (const auto& [id, matrix] : base_instances) {
        if (!seen.insert(id).second) throw DuplicateId("duplicate base instance id: " + id);
        records.push_back(make_key_record(inv, id, matrix, Purpose::Test, master_seed));
    }
    return records;
}

// A fresh key per training instance.
inline std::vector<KeyRecord> assign_train_keys(const KeyInventory& inv,
                                                const std::string& id_prefix,
                                                std::size_t instance_count, Matrix matrix,
                                                std::uint64_t master_seed) {
    std::vector<KeyRecord> records;
    records.reserve(instance_count);
    for (std::size_t i = 0; i < instance_count; ++i) {
        records.push_back(make_key_record(inv, id_prefix + "-" + std::to_string(i), matrix,
                                          Purpose::Train, master_seed));
    }
    return records;
}

inline Json key_record_to_json(const KeyRecord& rec) {
    Json j;
    j["instance_id"] = rec.instance_id;
    j["matrix"] = to_string(rec.matrix);
    j["purpose"] = to_string(rec.purpose);
    j["key"] = key_to_json(rec.key);
    return j;
}

inline KeyRecord key_record_from_json(const Json& j) {
    KeyRecord rec;
    try {
        rec.instance_id = j.at("instance_id").get<std::string>();
        rec.matrix = matrix_from_string(j.at("matrix").get<std::string>());
        rec.purpose = purpose_from_string(j.at("purpose").get<std::string>());
        rec.key = key_from_json(j.at("key"));
    } catch (const Json::exception& e) {
        throw MalformedFile(std::string("bad key record: ") + e.what());
    }
    return rec;
}

inline void save_keys(const std::string& path, const std::vector<KeyRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open for writing: " + path);
    for (const auto& rec : records) out << key_record_to_json(rec).dump() << '\n';
    out.flush();
    if (!out) throw IoFailure("write failed: " + path);
}

inline std::vector<KeyRecord> load_keys(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open for reading: " + path);
    std::vector<KeyRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Json j = Json::parse(line, nullptr, false);
        if (j.is_discarded()) throw MalformedFile("unparseable key record in " + path);
        records.push_back(key_record_from_json(j));
    }
    return records;
}

// In-memory index over key records, used when rendering datasets.
class KeyStore {
public:
    explicit KeyStore(std::vector<KeyRecord> records) : records_(std::move(records)) {
        for (std::size_t i = 0; i < records_.size(); ++i) {
            if (!index_.emplace(records_[i].instance_id, i).second)
                throw DuplicateId("duplicate key record id: " + records_[i].instance_id);
        }
    }

    const KeyRecord& get(const std::string& instance_id) const {
        auto it = index_.find(instance_id);
        if (it == index_.end()) throw Error("no key for instance: " + instance_id);
        return records_[it->second];
    }

    const std::vector<KeyRecord>& records() const { return records_; }

private:
    std::vector<KeyRecord> records_;
    std::map<std::string, std::size_t> index_;
};

}  // namespace conlang
