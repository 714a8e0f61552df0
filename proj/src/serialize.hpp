#pragma once
// Canonical JSON artifacts: UTF-8, sorted keys, top-level version + kind,
// field elements as fixed-width little-endian lowercase hex, permutations
// as 1-based image tables. Readers validate structure and invariants and
// name the offending field on failure.

#include <string>

#include "json.hpp"

#include "aedh.hpp"
#include "attack.hpp"
#include "defense.hpp"

namespace aelab {

using json = nlohmann::json;

inline constexpr int kArtifactVersion = 1;

// dump with trailing newline; indent < 0 means compact
std::string dump_json(const json& j, int indent = 2);

json field_to_json(const Field& F);
Field field_from_json(const json& j);

json mat_to_json(const Field& F, const Mat& m);
Mat mat_from_json(const Field& F, const json& j, const char* ctx);

json perm_to_json(const Perm& p);
Perm perm_from_json(const json& j, const char* ctx);

json pair_to_json(const Field& F, const EMultPair& p);
EMultPair pair_from_json(const Field& F, const json& j, const char* ctx);

json braid_to_json(const Braid& w);  // letters only
Braid braid_from_json(int n, const json& j, const char* ctx);

json index_word_to_json(const IndexWord& w);
IndexWord index_word_from_json(const json& j, const char* ctx);

json system_to_json(const SystemParams& S);
SystemParams system_from_json(const json& j);

json privkey_to_json(const SystemParams& S, const PrivateKey& k);
PrivateKey privkey_from_json(const json& j, Field* field_out = nullptr,
                             int* n_out = nullptr);

json pubkey_to_json(const SystemParams& S, const PublicKey& k);
PublicKey pubkey_from_json(const json& j, Field* field_out = nullptr,
                           int* n_out = nullptr);

json secret_to_json(const SystemParams& S, const SharedSecret& k);
SharedSecret secret_from_json(const json& j);

json attack_result_to_json(const Field& F, const AttackResult& r,
                           bool include_timings);

json attack_config_to_json(const AttackConfig& a);
// missing fields keep the base's values
AttackConfig attack_config_from_json(const json& j,
                                     AttackConfig base = AttackConfig{});

json defense_set_to_json(const HighOrderPermSet& set);
HighOrderPermSet defense_set_from_json(const json& j);

json order_stats_to_json(const OrderStats& st);

// file helpers; read throws invalid_argument naming the path
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// requires j.kind == kind and j.version == kArtifactVersion
void check_kind(const json& j, const char* kind);

}  // namespace aelab
