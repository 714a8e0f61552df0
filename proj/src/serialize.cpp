#include "serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace aelab {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw std::invalid_argument(what);
}

const json& need(const json& j, const char* key, const char* ctx) {
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "' in " + ctx);
  return *it;
}

int need_int(const json& j, const char* key, const char* ctx) {
  const json& v = need(j, key, ctx);
  if (!v.is_number_integer() && !v.is_number_unsigned())
    bad(std::string("field '") + key + "' in " + ctx + " must be an integer");
  return v.get<int>();
}

uint64_t need_u64(const json& j, const char* key, const char* ctx) {
  const json& v = need(j, key, ctx);
  if (!v.is_number_integer() && !v.is_number_unsigned())
    bad(std::string("field '") + key + "' in " + ctx + " must be an integer");
  return v.get<uint64_t>();
}

std::string need_str(const json& j, const char* key, const char* ctx) {
  const json& v = need(j, key, ctx);
  if (!v.is_string())
    bad(std::string("field '") + key + "' in " + ctx + " must be a string");
  return v.get<std::string>();
}

const json& need_array(const json& j, const char* key, const char* ctx) {
  const json& v = need(j, key, ctx);
  if (!v.is_array())
    bad(std::string("field '") + key + "' in " + ctx + " must be an array");
  return v;
}

felem elem_from_json(const Field& F, const json& v, const char* ctx) {
  if (!v.is_string()) bad(std::string("element in ") + ctx + " must be a hex string");
  try {
    return F.from_hex(v.get<std::string>());
  } catch (const std::exception& e) {
    bad(std::string("bad element in ") + ctx + ": " + e.what());
  }
}

}  // namespace

std::string dump_json(const json& j, int indent) {
  return j.dump(indent) + "\n";
}

void check_kind(const json& j, const char* kind) {
  std::string k = need_str(j, "kind", kind);
  if (k != kind) bad(std::string("expected kind '") + kind + "', found '" + k + "'");
  int v = need_int(j, "version", kind);
  if (v != kArtifactVersion)
    bad(std::string("unsupported version ") + std::to_string(v) + " for " + kind);
}

json field_to_json(const Field& F) {
  return json{{"p", F.p()}, {"m", F.m()}, {"reduction", F.reduction()}};
}

Field field_from_json(const json& j) {
  int p = need_int(j, "p", "field");
  int m = need_int(j, "m", "field");
  const json& red = need_array(j, "reduction", "field");
  std::vector<uint8_t> poly;
  for (const json& c : red) {
    if (!c.is_number_integer() && !c.is_number_unsigned())
      bad("field 'reduction' entries must be integers");
    poly.push_back(c.get<uint8_t>());
  }
  try {
    return Field(p, m, std::move(poly));
  } catch (const std::exception& e) {
    bad(std::string("bad field spec: ") + e.what());
  }
}

json mat_to_json(const Field& F, const Mat& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows; ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols; ++c) row.push_back(F.to_hex(m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_from_json(const Field& F, const json& j, const char* ctx) {
  if (!j.is_array() || j.empty()) bad(std::string(ctx) + " must be a nonempty array");
  int rows = static_cast<int>(j.size());
  int cols = static_cast<int>(j[0].size());
  Mat m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      bad(std::string(ctx) + " rows must have equal length");
    for (int c = 0; c < cols; ++c) m.at(r, c) = elem_from_json(F, row[c], ctx);
  }
  return m;
}

json perm_to_json(const Perm& p) {
  json a = json::array();
  for (int32_t v : p.img) a.push_back(v + 1);  // 1-based on the wire
  return a;
}

Perm perm_from_json(const json& j, const char* ctx) {
  if (!j.is_array() || j.empty()) bad(std::string(ctx) + " must be a nonempty array");
  Perm p;
  for (const json& v : j) {
    if (!v.is_number_integer() && !v.is_number_unsigned())
      bad(std::string(ctx) + " entries must be integers");
    p.img.push_back(v.get<int32_t>() - 1);
  }
  if (!perm_is_valid(p)) bad(std::string(ctx) + " is not a permutation");
  return p;
}

json pair_to_json(const Field& F, const EMultPair& p) {
  return json{{"matrix", mat_to_json(F, p.matrix)}, {"perm", perm_to_json(p.perm)}};
}

EMultPair pair_from_json(const Field& F, const json& j, const char* ctx) {
  EMultPair p;
  p.matrix = mat_from_json(F, need(j, "matrix", ctx), ctx);
  p.perm = perm_from_json(need(j, "perm", ctx), ctx);
  if (p.matrix.rows != p.matrix.cols || p.matrix.rows != p.perm.n())
    bad(std::string(ctx) + ": matrix and perm sizes disagree");
  return p;
}

json braid_to_json(const Braid& w) {
  return json(w.letters);
}

Braid braid_from_json(int n, const json& j, const char* ctx) {
  if (!j.is_array()) bad(std::string(ctx) + " must be an array of letters");
  Braid w;
  w.n = n;
  for (const json& v : j) {
    if (!v.is_number_integer())
      bad(std::string(ctx) + " letters must be integers");
    w.letters.push_back(v.get<int32_t>());
  }
  if (!braid_is_valid(w)) bad(std::string(ctx) + " has letters outside 1..n-1");
  return w;
}

json index_word_to_json(const IndexWord& w) {
  json a = json::array();
  for (auto [i, s] : w) a.push_back(json::array({i, s}));
  return a;
}

IndexWord index_word_from_json(const json& j, const char* ctx) {
  if (!j.is_array()) bad(std::string(ctx) + " must be an array");
  IndexWord w;
  for (const json& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer())
      bad(std::string(ctx) + " entries must be [index, sign] pairs");
    int32_t s = e[1].get<int32_t>();
    if (s != 1 && s != -1) bad(std::string(ctx) + " signs must be +-1");
    w.emplace_back(e[0].get<int32_t>(), s);
  }
  return w;
}

namespace {

json conjugates_to_json(const ConjugateSet& cs) {
  json a = json::array();
  for (const Braid& w : cs.words) a.push_back(braid_to_json(w));
  return a;
}

ConjugateSet conjugates_from_json(int n, const json& j, const char* ctx) {
  if (!j.is_array() || j.empty())
    bad(std::string(ctx) + " must be a nonempty array of braid words");
  ConjugateSet cs;
  cs.n = n;
  for (const json& e : j) {
    Braid w = braid_from_json(n, e, ctx);
    cs.perms.push_back(permutation_of(w));
    cs.words.push_back(std::move(w));
  }
  return cs;
}

}  // namespace

json system_to_json(const SystemParams& S) {
  return json{{"version", kArtifactVersion},
              {"kind", "system-params"},
              {"field", field_to_json(S.field)},
              {"n", S.n},
              {"m0", mat_to_json(S.field, S.m0)},
              {"tvalues", [&] {
                 json a = json::array();
                 for (felem t : S.tvalues.values) a.push_back(S.field.to_hex(t));
                 return a;
               }()},
              {"alice_conjugates", conjugates_to_json(S.alice_conjugates)},
              {"bob_conjugates", conjugates_to_json(S.bob_conjugates)},
              {"z_length", S.z_length}};
}

SystemParams system_from_json(const json& j) {
  check_kind(j, "system-params");
  SystemParams S;
  S.field = field_from_json(need(j, "field", "system-params"));
  S.n = need_int(j, "n", "system-params");
  if (S.n < 2) bad("field 'n' in system-params must be >= 2");
  S.m0 = mat_from_json(S.field, need(j, "m0", "system-params"), "m0");
  if (S.m0.rows != S.n || S.m0.cols != S.n) bad("m0 must be n x n");
  if (!mat_inv(S.field, S.m0)) bad("m0 must be invertible");
  const json& tv = need_array(j, "tvalues", "system-params");
  std::vector<felem> t;
  for (const json& v : tv) t.push_back(elem_from_json(S.field, v, "tvalues"));
  try {
    S.tvalues = TValues(std::move(t));
  } catch (const std::exception& e) {
    bad(std::string("bad tvalues: ") + e.what());
  }
  if (S.tvalues.n() != S.n) bad("tvalues length must equal n");
  S.alice_conjugates = conjugates_from_json(
      S.n, need(j, "alice_conjugates", "system-params"), "alice_conjugates");
  S.bob_conjugates = conjugates_from_json(
      S.n, need(j, "bob_conjugates", "system-params"), "bob_conjugates");
  S.z_length = need_int(j, "z_length", "system-params");
  // published conjugates must commute pairwise under E-mult
  EMultPair id = emult_identity(S.n);
  for (const Braid& a : S.alice_conjugates.words)
    for (const Braid& b : S.bob_conjugates.words) {
      EMultPair ab = emult(S.field, id, braid_concat(a, b), S.tvalues);
      EMultPair ba = emult(S.field, id, braid_concat(b, a), S.tvalues);
      if (!(ab == ba)) bad("conjugate sets do not commute under E-multiplication");
    }
  return S;
}

json privkey_to_json(const SystemParams& S, const PrivateKey& k) {
  json coeffs = json::array();
  for (felem c : k.poly_coeffs) coeffs.push_back(S.field.to_hex(c));
  return json{{"version", kArtifactVersion},
              {"kind", "private-key"},
              {"field", field_to_json(S.field)},
              {"n", S.n},
              {"side", k.side},
              {"poly_coeffs", coeffs},
              {"conjugate_word", index_word_to_json(k.conjugate_word)},
              {"braid", braid_to_json(k.braid)}};
}

PrivateKey privkey_from_json(const json& j, Field* field_out, int* n_out) {
  check_kind(j, "private-key");
  Field F = field_from_json(need(j, "field", "private-key"));
  int n = need_int(j, "n", "private-key");
  PrivateKey k;
  k.side = need_str(j, "side", "private-key");
  if (k.side != "alice" && k.side != "bob")
    bad("field 'side' in private-key must be alice or bob");
  for (const json& c : need_array(j, "poly_coeffs", "private-key"))
    k.poly_coeffs.push_back(elem_from_json(F, c, "poly_coeffs"));
  if (k.poly_coeffs.empty()) bad("poly_coeffs must be nonempty");
  k.conjugate_word =
      index_word_from_json(need(j, "conjugate_word", "private-key"), "conjugate_word");
  k.braid = braid_from_json(n, need(j, "braid", "private-key"), "braid");
  if (field_out) *field_out = F;
  if (n_out) *n_out = n;
  return k;
}

json pubkey_to_json(const SystemParams& S, const PublicKey& k) {
  return json{{"version", kArtifactVersion},
              {"kind", "public-key"},
              {"field", field_to_json(S.field)},
              {"n", S.n},
              {"pair", pair_to_json(S.field, k.pair)}};
}

PublicKey pubkey_from_json(const json& j, Field* field_out, int* n_out) {
  check_kind(j, "public-key");
  Field F = field_from_json(need(j, "field", "public-key"));
  int n = need_int(j, "n", "public-key");
  PublicKey k{pair_from_json(F, need(j, "pair", "public-key"), "pair")};
  if (k.pair.perm.n() != n) bad("public-key pair size must equal n");
  if (field_out) *field_out = F;
  if (n_out) *n_out = n;
  return k;
}

json secret_to_json(const SystemParams& S, const SharedSecret& k) {
  return json{{"version", kArtifactVersion},
              {"kind", "shared-secret"},
              {"field", field_to_json(S.field)},
              {"n", S.n},
              {"pair", pair_to_json(S.field, k.pair)}};
}

SharedSecret secret_from_json(const json& j) {
  check_kind(j, "shared-secret");
  Field F = field_from_json(need(j, "field", "shared-secret"));
  return SharedSecret{pair_from_json(F, need(j, "pair", "shared-secret"), "pair")};
}

json attack_result_to_json(const Field& F, const AttackResult& r,
                           bool include_timings) {
  json stats{{"samples_drawn", r.stats.samples_drawn},
             {"order_passed", r.stats.order_passed},
             {"dim_trace", r.stats.dim_trace},
             {"peak_basis_bytes", r.stats.peak_basis_bytes}};
  if (include_timings) {
    json t = json::array();
    for (const StageTiming& st : r.stats.timings)
      t.push_back(json{{"stage", st.stage}, {"wall_ms", st.wall_ms}});
    stats["timings"] = std::move(t);
  }
  json out{{"version", kArtifactVersion},
           {"kind", "attack-result"},
           {"recovered", r.recovered},
           {"stats", std::move(stats)}};
  if (r.recovered) {
    out["k"] = pair_to_json(F, r.K);
    out["provenance"] = json{{"ctilde", mat_to_json(F, r.ctilde)},
                             {"atilde", mat_to_json(F, r.atilde)},
                             {"alpha_prime", mat_to_json(F, r.alpha_prime)},
                             {"a_word", index_word_to_json(r.a_word)}};
  } else {
    out["failed_stage"] = r.failed_stage;
    out["reason"] = r.reason;
  }
  return out;
}

json attack_config_to_json(const AttackConfig& a) {
  return json{{"word_len_max", a.word_len_max},
              {"order_cap", a.order_cap},
              {"stall_threshold", a.stall_threshold},
              {"sample_budget", a.sample_budget},
              {"stage1_budget", a.stage1_budget},
              {"invertible_budget", a.invertible_budget}};
}

AttackConfig attack_config_from_json(const json& j, AttackConfig base) {
  AttackConfig a = base;
  a.word_len_max = j.value("word_len_max", a.word_len_max);
  a.order_cap = j.value("order_cap", a.order_cap);
  a.stall_threshold = j.value("stall_threshold", a.stall_threshold);
  a.sample_budget = j.value("sample_budget", a.sample_budget);
  a.stage1_budget = j.value("stage1_budget", a.stage1_budget);
  a.invertible_budget = j.value("invertible_budget", a.invertible_budget);
  return a;
}

json defense_set_to_json(const HighOrderPermSet& set) {
  json supports = json::array();
  for (const auto& blk : set.supports) {
    json b = json::array();
    for (int32_t p : blk) b.push_back(p + 1);  // 1-based points
    supports.push_back(std::move(b));
  }
  json rhos = json::array();
  for (const Perm& r : set.rhos) rhos.push_back(perm_to_json(r));
  return json{{"version", kArtifactVersion},
              {"kind", "defense-set"},
              {"n", set.n},
              {"k", set.k},
              {"budget", json{{"n", set.budget.n},
                              {"primes", set.budget.primes},
                              {"p_max", set.budget.p_max},
                              {"order_product", set.budget.order_product}}},
              {"supports", std::move(supports)},
              {"rhos", std::move(rhos)}};
}

HighOrderPermSet defense_set_from_json(const json& j) {
  check_kind(j, "defense-set");
  HighOrderPermSet set;
  set.n = need_int(j, "n", "defense-set");
  set.k = need_int(j, "k", "defense-set");
  const json& b = need(j, "budget", "defense-set");
  set.budget.n = need_int(b, "n", "budget");
  for (const json& p : need_array(b, "primes", "budget"))
    set.budget.primes.push_back(p.get<int>());
  set.budget.p_max = need_int(b, "p_max", "budget");
  set.budget.order_product = need_u64(b, "order_product", "budget");
  for (const json& blk : need_array(j, "supports", "defense-set")) {
    std::vector<int32_t> pts;
    for (const json& p : blk) pts.push_back(p.get<int32_t>() - 1);
    set.supports.push_back(std::move(pts));
  }
  for (const json& r : need_array(j, "rhos", "defense-set"))
    set.rhos.push_back(perm_from_json(r, "rhos"));
  for (const Perm& r : set.rhos) {
    if (r.n() != set.n) bad("rhos must act on n points");
    if (perm_order(r) != set.budget.order_product)
      bad("rho order does not match the budget product");
  }
  return set;
}

json order_stats_to_json(const OrderStats& st) {
  json hist = json::object();
  for (auto [order, count] : st.histogram) hist[std::to_string(order)] = count;
  return json{{"samples", st.samples},
              {"histogram", std::move(hist)},
              {"threshold_asym", st.threshold_asym},
              {"frac_gt_n", st.frac_gt_n},
              {"frac_gt_asym", st.frac_gt_asym}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const std::exception& e) {
    bad("malformed JSON in " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) bad("cannot write file: " + path);
  out << text;
  if (!out) bad("write failed: " + path);
}

}  // namespace aelab
