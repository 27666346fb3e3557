// Copyright 2026 The qtad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "qtad/emit.hpp"
#include "qtad/oracle.hpp"
#include "qtad/selftest.hpp"

namespace {

using namespace qtad;

struct SessionFlags {
    std::string message;
    int bits = 0;
    std::string attack = "none";
    std::string q = "0";
    std::string eta = "0";
    std::string transits = "outbound";
    double alpha = 0.01;
    long n_min = 8;
    std::string checkpoint = "doubling";
    long max_pairs = 0;
    bool payload_check = false;
    double delta = 1.0;
    double t1 = 0.0;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "both";
};

void add_session_flags(CLI::App* cmd, SessionFlags* flags) {
    cmd->add_option("--message", flags->message, "Bit string to transmit, e.g. 0110");
    cmd->add_option("--bits", flags->bits,
                    "Length of a random message derived from the seed");
    cmd->add_option("--attack", flags->attack, "none|projective|weak|intercept")
        ->check(CLI::IsMember({"none", "projective", "weak", "intercept"}));
    cmd->add_option("--q", flags->q, "Measurement rate in [0,1]; accepts 0.25 or 1/4");
    cmd->add_option("--eta", flags->eta, "Weak-measurement strength in [0,1]");
    cmd->add_option("--transits", flags->transits, "outbound|both")
        ->check(CLI::IsMember({"outbound", "both"}));
    cmd->add_option("--alpha", flags->alpha, "Step-6 rejection level (default 0.01)");
    cmd->add_option("--nmin", flags->n_min,
                    "Pairs required before the frequency test runs (default 8)");
    cmd->add_option("--checkpoint", flags->checkpoint,
                    "Frequency-test schedule: doubling|every-even")
        ->check(CLI::IsMember({"every-even", "doubling"}));
    cmd->add_option("--max-pairs", flags->max_pairs,
                    "Stop after this many pairs (0 = until the message is done)");
    cmd->add_flag("--payload-check", flags->payload_check,
                  "Abort when a detected particle carries the wrong bit");
    cmd->add_option("--delta", flags->delta, "Round-trip time (timestamps only)");
    cmd->add_option("--t1", flags->t1, "Transmission start time");
    cmd->add_option("--seed", flags->seed, "Base seed");
    cmd->add_option("--out", flags->out, "Output directory");
    cmd->add_option("--format", flags->format, "jsonl|csv|both")
        ->check(CLI::IsMember({"jsonl", "csv", "both"}));
}

AttackStrategy attack_from_flags(const SessionFlags& flags) {
    double q = to_double(parse_rational(flags.q));
    double eta = to_double(parse_rational(flags.eta));
    TransitPolicy policy = flags.transits == "both" ? TransitPolicy::BothTransits
                                                    : TransitPolicy::OutboundOnly;
    if (flags.attack == "none") return AttackStrategy::none();
    if (flags.attack == "projective") return AttackStrategy::projective_presence(q, policy);
    if (flags.attack == "weak") return AttackStrategy::weak_presence(eta, policy);
    return AttackStrategy::intercept_read(q, policy);
}

SessionConfig session_from_flags(const SessionFlags& flags) {
    SessionConfig config;
    if (!flags.message.empty() && flags.bits > 0) {
        throw ConfigError("--message and --bits are mutually exclusive");
    }
    config.message =
        flags.message.empty() ? random_message(flags.bits > 0 ? flags.bits : 16, flags.seed)
                              : flags.message;
    config.attack = attack_from_flags(flags);
    config.alpha = flags.alpha;
    config.n_min = flags.n_min;
    config.checkpoint = flags.checkpoint == "doubling" ? CheckpointPolicy::Doubling
                                                       : CheckpointPolicy::EveryEven;
    config.payload_check = flags.payload_check;
    config.delta = flags.delta;
    config.t1 = flags.t1;
    config.max_pairs = flags.max_pairs;
    config.validate();
    return config;
}

void ensure_out_dir(const std::string& out) {
    std::error_code ec;
    std::filesystem::create_directories(out, ec);
    if (ec) throw IoError("cannot create output directory: " + out);
}

int cmd_simulate(const SessionFlags& flags) {
    SessionConfig config = session_from_flags(flags);
    Transcript transcript = run_session(config, flags.seed);

    std::cout << "round  t        bit  device  bob    C D  tracy      delivered\n";
    for (const RoundOutcome& r : transcript.rounds) {
        std::printf("%5ld  %-7.6g  %d    %-6s  %-5s  %d %d  %-9s  %s\n", r.round_index,
                    r.timestamp, r.bit_sent, r.mirrored ? "mirror" : "read",
                    r.bob == BobOutcome::Mirrored ? "-"
                    : r.bob == BobOutcome::Epsilon ? "eps"
                    : r.bob == BobOutcome::Bit1    ? "bit1"
                                                   : "bit0",
                    r.detector.c_fired ? 1 : 0, r.detector.d_fired ? 1 : 0,
                    r.tracy_outbound.found == Found::Yes     ? "found"
                    : r.tracy_outbound.found == Found::No    ? "not_found"
                                                             : "-",
                    r.bit_delivered ? "yes" : "");
    }
    SessionSummary summary = summarize_session(transcript, 0, flags.seed, config);
    std::cout << "verdict: " << verdict_name(transcript.verdict)
              << "  reason: " << abort_reason_name(transcript.abort_reason)
              << "  rounds: " << summary.rounds_used << "  pairs: " << summary.pairs_tested
              << "\ndelivered: " << transcript.delivered_message
              << "\ntracy estimate: " << format_double12(summary.tracy_estimate)
              << " (true " << summary.true_transmissions << ")\n";

    if (!flags.out.empty()) {
        ensure_out_dir(flags.out);
        if (flags.format != "csv") {
            write_transcript_jsonl(flags.out + "/transcript.jsonl", transcript);
        }
        if (flags.format != "jsonl") {
            write_transcript_csv(flags.out + "/transcript.csv", transcript);
        }
        ExperimentResult single;
        single.sessions.push_back(summary);
        write_sessions_jsonl(flags.out + "/session.jsonl", single);
    }
    return transcript.verdict == Verdict::Completed ? 0 : 1;
}

int cmd_experiment(const SessionFlags& flags, long sessions, int threads,
                   const std::vector<std::string>& sweep_q,
                   const std::vector<std::string>& sweep_eta) {
    ExperimentConfig config;
    config.base = session_from_flags(flags);
    config.num_sessions = sessions;
    config.seed = flags.seed;
    config.threads = threads;

    std::vector<double> qs, etas;
    for (const std::string& text : sweep_q) qs.push_back(to_double(parse_rational(text)));
    for (const std::string& text : sweep_eta) {
        etas.push_back(to_double(parse_rational(text)));
    }
    if (qs.empty()) qs.push_back(config.base.attack.q);
    if (etas.empty()) etas.push_back(config.base.attack.eta);
    if (qs.size() > 1 || etas.size() > 1) {
        for (double q : qs) {
            for (double eta : etas) config.sweep.push_back(SweepPoint{q, eta});
        }
    }
    config.validate();

    ExperimentResult result = run_experiment(config);

    for (const AggregateRow& row : result.aggregates) {
        std::cout << "q=" << format_double12(row.q) << " eta=" << format_double12(row.eta)
                  << " sessions=" << row.sessions << " detection_rate="
                  << format_double12(row.detection_rate)
                  << " mean_detection_latency_pairs="
                  << format_double12(row.mean_detection_latency_pairs)
                  << " rounds_per_bit="
                  << format_double12(row.mean_rounds_per_delivered_bit) << "\n";
    }

    std::string out = flags.out.empty() ? "out" : flags.out;
    ensure_out_dir(out);
    if (flags.format != "csv") write_sessions_jsonl(out + "/sessions.jsonl", result);
    if (flags.format != "jsonl") {
        write_aggregate_csv(out + "/aggregate.csv", result);
        write_curves_csv(out + "/curves.csv", result);
    }
    return 0;
}

int cmd_oracle(const SessionFlags& flags, bool as_json) {
    // Reference mode: rates go in as exact rationals, not through a double.
    OracleAttack attack;
    attack.kind = attack_from_flags(flags).kind;
    attack.q = parse_rational(flags.q);
    attack.eta = parse_rational(flags.eta);
    attack.transits = flags.transits == "both" ? TransitPolicy::BothTransits
                                               : TransitPolicy::OutboundOnly;
    ExactDistribution dist = oracle_pair_distribution(attack);

    if (as_json) {
        std::cout << "{\"exact\":" << (dist.is_exact() ? "true" : "false")
                  << ",\"error_bound\":" << format_double12(dist.error_bound)
                  << ",\"tuples\":[";
        bool first = true;
        for (int i = 0; i < kPairTupleCount; ++i) {
            if (dist.p[i] == 0.0) continue;
            if (!first) std::cout << ",";
            first = false;
            std::cout << "{\"c1\":" << ((i >> 3) & 1) << ",\"c2\":" << ((i >> 2) & 1)
                      << ",\"d1\":" << ((i >> 1) & 1) << ",\"d2\":" << (i & 1)
                      << ",\"p\":" << format_double12(dist.p[i]);
            if (dist.is_exact()) {
                std::cout << ",\"exact\":\"" << to_string((*dist.exact)[i]) << "\"";
            }
            std::cout << "}";
        }
        std::cout << "],\"off_support_mass\":" << format_double12(dist.off_support_mass())
                  << ",\"mirror_d_mass\":" << format_double12(dist.mirror_d)
                  << ",\"read_success_mass\":" << format_double12(dist.read_success)
                  << "}\n";
        return 0;
    }

    std::cout << "pair tuple (C1,C2,D1,D2) probabilities:\n";
    for (int i = 0; i < kPairTupleCount; ++i) {
        if (dist.p[i] == 0.0) continue;
        std::printf("  (%d,%d,%d,%d)  %-14.12g", (i >> 3) & 1, (i >> 2) & 1, (i >> 1) & 1,
                    i & 1, dist.p[i]);
        if (dist.is_exact()) std::cout << "  = " << to_string((*dist.exact)[i]);
        std::cout << "\n";
    }
    std::cout << "off-support mass: " << format_double12(dist.off_support_mass());
    if (dist.is_exact()) {
        std::cout << " = " << to_string(dist.off_support_mass_exact());
    }
    std::cout << "\nmirrored-round D mass: " << format_double12(dist.mirror_d)
              << "\nread-round success mass: " << format_double12(dist.read_success)
              << "\n";
    if (!dist.is_exact()) {
        std::cout << "note: irrational weak-measurement strength; values are floating\n"
                     "point with per-entry error below "
                  << format_double12(dist.error_bound) << "\n";
    }
    return 0;
}

int cmd_selftest() {
    int failures = run_selftest([](const std::string& line) { std::cout << line << "\n"; });
    std::cout << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
    return failures == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator for a quantum protocol that detects traffic analysis"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an INI-style key=value file");

    SessionFlags sim_flags;
    CLI::App* simulate = app.add_subcommand("simulate", "Run one session and print it");
    simulate->fallthrough();
    add_session_flags(simulate, &sim_flags);

    SessionFlags exp_flags;
    long sessions = 100;
    int threads = 1;
    std::vector<std::string> sweep_q, sweep_eta;
    CLI::App* experiment =
        app.add_subcommand("experiment", "Monte Carlo over many sessions, with sweeps");
    experiment->fallthrough();
    add_session_flags(experiment, &exp_flags);
    experiment->add_option("--sessions", sessions, "Sessions per sweep point");
    experiment->add_option("--threads", threads, "Worker threads");
    experiment->add_option("--sweep-q", sweep_q, "q values, e.g. --sweep-q 0 0.25 0.5 1")
        ->expected(-1);
    experiment->add_option("--sweep-eta", sweep_eta, "eta values")->expected(-1);

    SessionFlags oracle_flags;
    bool oracle_json = false;
    CLI::App* oracle =
        app.add_subcommand("oracle", "Exact pair distribution for an attack");
    oracle->fallthrough();
    add_session_flags(oracle, &oracle_flags);
    oracle->add_flag("--json", oracle_json, "Emit a single JSON object");

    CLI::App* selftest = app.add_subcommand("selftest", "Run the invariant suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return cmd_simulate(sim_flags);
        if (experiment->parsed()) {
            return cmd_experiment(exp_flags, sessions, threads, sweep_q, sweep_eta);
        }
        if (oracle->parsed()) return cmd_oracle(oracle_flags, oracle_json);
        if (selftest->parsed()) return cmd_selftest();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
