// aelab — command-line front end for the algebraic eraser laboratory.
// Talks to the core exclusively through the public C API in aelab.h.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "aelab.h"
#include "json.hpp"

using nlohmann::json;

namespace {

int g_indent = 2;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int fail(ae_status st, const char* err) {
  std::cerr << "error: " << err << "\n";
  return static_cast<int>(st);
}

int fail_io(const std::string& what) {
  std::cerr << "error: " << what << "\n";
  return static_cast<int>(AE_ERR_USAGE);
}

// Parse an artifact file; on failure report and return a nonzero exit code.
int load_artifact(const std::string& path, ae_artifact** out) {
  auto text = read_file(path);
  if (!text) return fail_io("cannot read " + path);
  char err[AE_ERR_LEN] = {0};
  ae_status st = ae_artifact_parse(text->c_str(), out, err);
  if (st != AE_OK) return fail(st, err);
  return 0;
}

int emit_artifact(const ae_artifact* a, const std::string& out_path) {
  char err[AE_ERR_LEN] = {0};
  char* text = nullptr;
  ae_status st = ae_artifact_dump(a, g_indent, &text, err);
  if (st != AE_OK) return fail(st, err);
  int rc = 0;
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (out)
      out << text;
    else
      rc = fail_io("cannot write " + out_path);
  }
  ae_string_free(text);
  return rc;
}

struct ArtifactGuard {
  ae_artifact* a = nullptr;
  ~ArtifactGuard() { ae_artifact_free(a); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"algebraic eraser key agreement, attack and defense laboratory"};
  app.set_version_flag("--version", std::string(ae_version()));
  app.add_option("--json-indent", g_indent, "indent for JSON output (0 = compact)")
      ->capture_default_str();
  app.require_subcommand(1);
  int rc = 0;

  // ---- setup ----
  {
    auto* c = app.add_subcommand("setup", "generate public system parameters");
    auto n = std::make_shared<int>(8);
    auto q = std::make_shared<uint32_t>(32);
    auto k = std::make_shared<int>(4);
    auto l = std::make_shared<int>(4);
    auto bwl = std::make_shared<int>(0);
    auto zl = std::make_shared<int>(0);
    auto seed = std::make_shared<uint64_t>(1);
    auto out = std::make_shared<std::string>("-");
    c->add_option("--n", *n, "braid strand count")->capture_default_str();
    c->add_option("--q", *q, "field size (prime power)")->capture_default_str();
    c->add_option("--k", *k, "alice conjugate count")->capture_default_str();
    c->add_option("--l", *l, "bob conjugate count")->capture_default_str();
    c->add_option("--base-word-len", *bwl, "conjugate base word length (0 = default)");
    c->add_option("--z-len", *zl, "cloaking word length (0 = default)");
    c->add_option("--seed", *seed, "rng seed")->capture_default_str();
    c->add_option("-o,--out", *out, "output file (- for stdout)");
    c->callback([=, &rc] {
      ArtifactGuard sys;
      char err[AE_ERR_LEN] = {0};
      ae_status st = ae_setup(*n, *q, *k, *l, *bwl, *zl, *seed, &sys.a, err);
      rc = (st != AE_OK) ? fail(st, err) : emit_artifact(sys.a, *out);
    });
  }

  // ---- keygen ----
  {
    auto* c = app.add_subcommand("keygen", "generate a private key");
    auto sys_path = std::make_shared<std::string>();
    auto side = std::make_shared<std::string>();
    auto wl = std::make_shared<int>(0);
    auto deg = std::make_shared<int>(0);
    auto seed = std::make_shared<uint64_t>(1);
    auto out = std::make_shared<std::string>("-");
    c->add_option("--system", *sys_path, "system artifact")->required();
    c->add_option("--side", *side, "alice or bob")->required();
    c->add_option("--word-len", *wl, "conjugate product length (0 = default)");
    c->add_option("--poly-deg", *deg, "polynomial degree bound (0 = default)");
    c->add_option("--seed", *seed, "rng seed")->capture_default_str();
    c->add_option("-o,--out", *out, "output file (- for stdout)");
    c->callback([=, &rc] {
      ArtifactGuard sys, priv;
      if ((rc = load_artifact(*sys_path, &sys.a)) != 0) return;
      char err[AE_ERR_LEN] = {0};
      ae_status st =
          ae_keygen(sys.a, side->c_str(), *wl, *deg, *seed, &priv.a, err);
      rc = (st != AE_OK) ? fail(st, err) : emit_artifact(priv.a, *out);
    });
  }

  // ---- pubkey ----
  {
    auto* c = app.add_subcommand("pubkey", "derive the public key of a private key");
    auto sys_path = std::make_shared<std::string>();
    auto priv_path = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>("-");
    c->add_option("--system", *sys_path, "system artifact")->required();
    c->add_option("--priv", *priv_path, "private key artifact")->required();
    c->add_option("-o,--out", *out, "output file (- for stdout)");
    c->callback([=, &rc] {
      ArtifactGuard sys, priv, pub;
      if ((rc = load_artifact(*sys_path, &sys.a)) != 0) return;
      if ((rc = load_artifact(*priv_path, &priv.a)) != 0) return;
      char err[AE_ERR_LEN] = {0};
      ae_status st = ae_pubkey(sys.a, priv.a, &pub.a, err);
      rc = (st != AE_OK) ? fail(st, err) : emit_artifact(pub.a, *out);
    });
  }

  // ---- shared ----
  {
    auto* c = app.add_subcommand("shared", "compute the shared secret");
    auto sys_path = std::make_shared<std::string>();
    auto priv_path = std::make_shared<std::string>();
    auto pub_path = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>("-");
    c->add_option("--system", *sys_path, "system artifact")->required();
    c->add_option("--priv", *priv_path, "own private key artifact")->required();
    c->add_option("--pub", *pub_path, "counterparty public key artifact")->required();
    c->add_option("-o,--out", *out, "output file (- for stdout)");
    c->callback([=, &rc] {
      ArtifactGuard sys, priv, pub, sec;
      if ((rc = load_artifact(*sys_path, &sys.a)) != 0) return;
      if ((rc = load_artifact(*priv_path, &priv.a)) != 0) return;
      if ((rc = load_artifact(*pub_path, &pub.a)) != 0) return;
      char err[AE_ERR_LEN] = {0};
      ae_status st = ae_shared(sys.a, priv.a, pub.a, &sec.a, err);
      rc = (st != AE_OK) ? fail(st, err) : emit_artifact(sec.a, *out);
    });
  }

  // ---- attack ----
  {
    auto* c = app.add_subcommand("attack", "run the shared-secret recovery attack");
    auto sys_path = std::make_shared<std::string>();
    auto pa_path = std::make_shared<std::string>();
    auto pb_path = std::make_shared<std::string>();
    auto scenario = std::make_shared<std::string>("full-public");
    auto seed = std::make_shared<uint64_t>(1);
    auto timings = std::make_shared<bool>(false);
    auto wlm = std::make_shared<int>(10);
    auto ocap = std::make_shared<int>(0);
    auto stall = std::make_shared<int>(25);
    auto sbudget = std::make_shared<int64_t>(100000);
    auto s1budget = std::make_shared<int64_t>(200000);
    auto out = std::make_shared<std::string>("-");
    c->add_option("--system", *sys_path, "system artifact")->required();
    c->add_option("--pub-a", *pa_path, "alice public key artifact")->required();
    c->add_option("--pub-b", *pb_path, "bob public key artifact");
    c->add_option("--scenario", *scenario, "full-public or withheld-pub-b")
        ->check(CLI::IsMember({"full-public", "withheld-pub-b"}))
        ->capture_default_str();
    c->add_option("--seed", *seed, "rng seed")->capture_default_str();
    c->add_flag("--timings", *timings, "include wall-clock timings in the report");
    c->add_option("--word-len-max", *wlm, "max generator word length in precompute")
        ->capture_default_str();
    c->add_option("--order-cap", *ocap, "permutation order cap (0 = n)");
    c->add_option("--stall-threshold", *stall, "samples without growth before stop")
        ->capture_default_str();
    c->add_option("--sample-budget", *sbudget, "precompute sample budget")
        ->capture_default_str();
    c->add_option("--stage1-budget", *s1budget, "meet-in-the-middle node budget")
        ->capture_default_str();
    c->add_option("-o,--out", *out, "output file (- for stdout)");
    c->callback([=, &rc] {
      ArtifactGuard sys, pa, pb, res;
      if ((rc = load_artifact(*sys_path, &sys.a)) != 0) return;
      if ((rc = load_artifact(*pa_path, &pa.a)) != 0) return;
      bool withheld = (*scenario == "withheld-pub-b");
      if (!withheld) {
        if (pb_path->empty()) {
          rc = fail_io("--pub-b is required unless --scenario withheld-pub-b");
          return;
        }
        if ((rc = load_artifact(*pb_path, &pb.a)) != 0) return;
      }
      json cfg{{"word_len_max", *wlm},
               {"order_cap", *ocap},
               {"stall_threshold", *stall},
               {"sample_budget", *sbudget},
               {"stage1_budget", *s1budget}};
      std::string cfg_text = cfg.dump();
      char err[AE_ERR_LEN] = {0};
      int recovered = 0;
      ae_status st = ae_attack(sys.a, pa.a, withheld ? nullptr : pb.a,
                               cfg_text.c_str(), *seed, *timings ? 1 : 0, &res.a,
                               &recovered, err);
      if (st != AE_OK) {
        rc = fail(st, err);
        return;
      }
      rc = emit_artifact(res.a, *out);
      if (rc == 0)
        std::cerr << (recovered ? "attack recovered the shared secret\n"
                                : "attack did not recover the shared secret\n");
    });
  }

  // ---- defend ----
  {
    auto* c = app.add_subcommand(
        "defend", "build high-order permutations and measure order statistics");
    auto n = std::make_shared<int>(32);
    auto k = std::make_shared<int>(4);
    auto wl = std::make_shared<int>(10);
    auto samples = std::make_shared<int64_t>(10000);
    auto seed = std::make_shared<uint64_t>(1);
    auto literal = std::make_shared<bool>(false);
    auto sys_path = std::make_shared<std::string>();
    auto sys_out = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>("-");
    c->add_option("--n", *n, "permutation degree / strand count")
        ->capture_default_str();
    c->add_option("--k", *k, "number of defended conjugates")->capture_default_str();
    c->add_option("--word-len", *wl, "max word length for order sampling")
        ->capture_default_str();
    c->add_option("--samples", *samples, "order-statistics sample count")
        ->capture_default_str();
    c->add_option("--seed", *seed, "rng seed")->capture_default_str();
    c->add_flag("--literal-budget", *literal,
                "use the looser prime budget reading (may exceed n)");
    c->add_option("--emit-system", *sys_path,
                  "existing system artifact to re-band with defended conjugates");
    c->add_option("--system-out", *sys_out, "output file for the defended system");
    c->add_option("-o,--out", *out, "output file for the report (- for stdout)");
    c->callback([=, &rc] {
      ArtifactGuard sys, rep, sys2;
      bool emit_sys = !sys_path->empty();
      if (emit_sys && sys_out->empty()) {
        rc = fail_io("--emit-system requires --system-out");
        return;
      }
      if (emit_sys && (rc = load_artifact(*sys_path, &sys.a)) != 0) return;
      char err[AE_ERR_LEN] = {0};
      ae_status st =
          ae_defend(*n, *k, *wl, *samples, *seed, *literal ? 1 : 0,
                    emit_sys ? sys.a : nullptr, &rep.a,
                    emit_sys ? &sys2.a : nullptr, err);
      if (st != AE_OK) {
        rc = fail(st, err);
        return;
      }
      if ((rc = emit_artifact(rep.a, *out)) != 0) return;
      if (emit_sys) rc = emit_artifact(sys2.a, *sys_out);
    });
  }

  // ---- experiment ----
  {
    auto* c = app.add_subcommand("experiment", "run a batch of protocol/attack trials");
    auto cfg_path = std::make_shared<std::string>();
    auto n = std::make_shared<int>(0);
    auto q = std::make_shared<int64_t>(0);
    auto k = std::make_shared<int>(0);
    auto l = std::make_shared<int>(0);
    auto trials = std::make_shared<int>(0);
    auto dist = std::make_shared<std::string>();
    auto scenario = std::make_shared<std::string>();
    auto seed = std::make_shared<int64_t>(-1);
    auto wl = std::make_shared<int>(0);
    auto timings = std::make_shared<bool>(false);
    auto threads = std::make_shared<int>(0);
    auto out = std::make_shared<std::string>("-");
    c->add_option("--config", *cfg_path, "experiment config JSON file");
    c->add_option("--n", *n, "braid strand count");
    c->add_option("--q", *q, "field size (prime power)");
    c->add_option("--k", *k, "alice conjugate count");
    c->add_option("--l", *l, "bob conjugate count");
    c->add_option("--trials", *trials, "number of trials");
    c->add_option("--distribution", *dist, "standard or high-order")
        ->check(CLI::IsMember({"standard", "high-order"}));
    c->add_option("--scenario", *scenario, "full-public or withheld-pub-b")
        ->check(CLI::IsMember({"full-public", "withheld-pub-b"}));
    c->add_option("--seed", *seed, "base rng seed");
    c->add_option("--word-len", *wl, "private conjugate product length");
    c->add_flag("--timings", *timings, "include wall-clock timings in the report");
    c->add_option("--threads", *threads, "worker threads (0 = auto)");
    c->add_option("-o,--out", *out, "output file (- for stdout)");
    c->callback([=, &rc] {
      json cfg = json::object();
      if (!cfg_path->empty()) {
        auto text = read_file(*cfg_path);
        if (!text) {
          rc = fail_io("cannot read " + *cfg_path);
          return;
        }
        try {
          cfg = json::parse(*text);
        } catch (const std::exception& e) {
          rc = fail_io(*cfg_path + ": " + e.what());
          return;
        }
      }
      if (*n > 0) cfg["n"] = *n;
      if (*q > 0) cfg["q"] = *q;
      if (*k > 0) cfg["k"] = *k;
      if (*l > 0) cfg["l"] = *l;
      if (*trials > 0) cfg["trials"] = *trials;
      if (!dist->empty()) cfg["distribution"] = *dist;
      if (!scenario->empty()) cfg["scenario"] = *scenario;
      if (*seed >= 0) cfg["seed"] = *seed;
      if (*wl > 0) cfg["word_len"] = *wl;
      if (*timings) cfg["include_timings"] = true;
      if (*threads > 0) cfg["threads"] = *threads;
      std::string cfg_text = cfg.dump();
      ArtifactGuard rep;
      char err[AE_ERR_LEN] = {0};
      ae_status st = ae_experiment(cfg_text.c_str(), &rep.a, err);
      rc = (st != AE_OK) ? fail(st, err) : emit_artifact(rep.a, *out);
    });
  }

  // ---- verify ----
  {
    auto* c = app.add_subcommand("verify", "run built-in invariant suites");
    auto suite = std::make_shared<std::string>();
    auto seed = std::make_shared<uint64_t>(1);
    c->add_option("--suite", *suite,
                  "one of field, braid, emult, protocol, subspace, defense "
                  "(default: all)");
    c->add_option("--seed", *seed, "rng seed")->capture_default_str();
    c->callback([=, &rc] {
      char err[AE_ERR_LEN] = {0};
      char* text = nullptr;
      int failures = 0;
      ae_status st = ae_verify(suite->empty() ? nullptr : suite->c_str(), *seed,
                               &text, &failures, err);
      if (st != AE_OK) {
        rc = fail(st, err);
        return;
      }
      std::cout << text;
      ae_string_free(text);
      rc = failures > 0 ? static_cast<int>(AE_ERR_DOMAIN) : 0;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(AE_ERR_USAGE);
  }
  return rc;
}
