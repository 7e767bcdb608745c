#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "qmce/attacks.hpp"
#include "qmce/serialize.hpp"

using namespace qmce;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitDecoding = 3;
constexpr int kExitCap = 4;

std::string read_hex_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open: " + path);
    std::string hex;
    in >> hex;
    return hex;
}

void write_hex_file(const std::string& path, const std::string& hex) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);
    out << hex << '\n';
}

struct KeygenArgs {
    unsigned m = 10;
    unsigned t = 50;
    std::uint64_t seed = 1;
    std::size_t message_bits = 0;  // 0: use the full dimension
    std::string out_public, out_private;
};

int cmd_keygen(const KeygenArgs& a) {
    const GoppaCode code = goppa_generate(a.m, a.t, Rng::derive(a.seed, 0));
    const std::optional<std::size_t> mb =
        a.message_bits ? std::optional<std::size_t>(a.message_bits) : std::nullopt;
    const McElieceKeyPair key = keygen(code, Rng::derive(a.seed, 1), mb);
    write_json_atomic(a.out_public, public_key_to_json(key));
    write_json_atomic(a.out_private, private_key_to_json(key));
    std::cout << "n=" << key.n() << " k=" << key.k() << " t=" << key.t << '\n';
    return kExitOk;
}

struct CryptArgs {
    std::string key_path, in_path, out_path;
    std::uint64_t seed = 1;
};

int cmd_encrypt(const CryptArgs& a) {
    const PublicKey pk = public_key_from_json(read_json(a.key_path));
    const BitVec m = BitVec::from_hex(read_hex_file(a.in_path), pk.g.rows());
    // Only the cipher leaves this process; the error vector is discarded.
    const Encrypted enc = encrypt(pk.g, pk.t, m, a.seed);
    write_hex_file(a.out_path, enc.c.to_hex());
    return kExitOk;
}

int cmd_decrypt(const CryptArgs& a) {
    const McElieceKeyPair key = keypair_from_private_json(read_json(a.key_path));
    const BitVec c = BitVec::from_hex(read_hex_file(a.in_path), key.n());
    write_hex_file(a.out_path, decrypt(key, c).to_hex());
    return kExitOk;
}

struct QdemoArgs {
    std::string scheme = "twice";
    std::size_t qubits = 2;
    std::uint64_t seed = 1;
    std::string out_path;
};

int cmd_qdemo(const QdemoArgs& a) {
    ExperimentReport rep;
    if (a.scheme == "once") {
        if (a.qubits < 1 || a.qubits > 8)
            throw DimensionError("qdemo: once scheme supports 1..8 qubits");
        const McElieceKeyPair key =
            keygen(goppa_generate(4, 2, Rng::derive(a.seed, 0)), Rng::derive(a.seed, 1), a.qubits);
        const QuantumState psi = QuantumState::random_state(a.qubits, Rng::derive(a.seed, 2));
        rep = distribution_attack_experiment(key, psi, Rng::derive(a.seed, 3));
    } else if (a.scheme == "twice") {
        const TwiceKeyPair keys = make_toy_twice_keys(Rng::derive(a.seed, 0), a.qubits);
        const QuantumState psi = QuantumState::random_state(a.qubits, Rng::derive(a.seed, 2));
        rep = distribution_attack_experiment(keys, psi, Rng::derive(a.seed, 3));
    } else {
        throw DimensionError("qdemo: scheme must be once or twice");
    }
    if (!a.out_path.empty()) write_json_atomic(a.out_path, rep.to_json());
    std::cout << "scheme=" << a.scheme
              << " tv_computational=" << rep.results.at("tv_computational").get<double>()
              << " tv_hadamard=" << rep.results.at("tv_hadamard").get<double>()
              << " roundtrip_fidelity=" << rep.results.at("roundtrip_fidelity").get<double>()
              << '\n';
    return kExitOk;
}

struct AttackArgs {
    std::string strategy = "greedy";
    bool replicate = false;
    std::size_t n = 0, k = 0;
    unsigned m = 10;
    unsigned t = 50;
    std::size_t columns = 0;
    std::size_t trials = 10000;
    std::uint64_t budget = 10000;
    std::size_t restarts = 1;
    std::uint64_t seed = 1;
    bool allow_long = false;
    std::string out_path;
};

int cmd_attack(const AttackArgs& a) {
    const SearchStrategy strategy = strategy_from_name(a.strategy);
    ExperimentReport rep;
    if (a.replicate && strategy == SearchStrategy::Exhaustive) {
        const std::size_t n = a.n ? a.n : 60;
        const std::size_t k = a.k ? a.k : 30;
        rep = replicate_small_exhaustive(n, k, a.columns ? a.columns : k, a.seed, a.allow_long);
        std::cout << "fraction(weight<=1)="
                  << rep.results.at("coset_leader_weight_le_1_fraction").get<double>() << '\n';
        if (rep.results.contains("paper_target"))
            std::cout << "z vs 2%=" << rep.results.at("paper_target").at("z").get<double>()
                      << " consistent_3_sigma="
                      << rep.results.at("paper_target").at("consistent_3_sigma").get<bool>()
                      << '\n';
    } else if (a.replicate && strategy == SearchStrategy::Greedy) {
        rep = replicate_greedy_full(a.m, a.t, a.columns ? a.columns : 50, a.seed, a.restarts);
        std::cout << "mean_weight=" << rep.results.at("mean_weight").get<double>()
                  << " parity_delta="
                  << rep.results.at("parity_delta_from_half_at_mean").get<double>() << '\n';
    } else if (a.replicate) {
        throw DimensionError("attack: --replicate supports exhaustive and greedy only");
    } else {
        if (a.n == 0 || a.k == 0) throw DimensionError("attack: --n and --k are required");
        BitRecoveryOptions opt;
        opt.random_budget = a.budget;
        opt.greedy_restarts = a.restarts;
        rep = bit_recovery_experiment(a.n, a.k, a.t, strategy, a.trials, a.seed, opt);
        std::cout << "mean_weight=" << rep.results.at("mean_weight").get<double>()
                  << " max_abs_z=" << rep.results.at("max_abs_z").get<double>()
                  << " within_3_sigma=" << rep.results.at("within_3_sigma").get<bool>() << '\n';
    }
    if (!a.out_path.empty()) write_json_atomic(a.out_path, rep.to_json());
    return kExitOk;
}

struct ParityArgs {
    std::size_t n = 1024, t = 50, w = 225;
};

int cmd_parity(const ParityArgs& a) {
    const ParityProbability p = parity_zero_prob(a.n, a.t, a.w);
    std::cout << "Pr[e.e_i = 0] for n=" << p.n << " t=" << p.t << " w=" << p.w << '\n'
              << "exact = " << boost::multiprecision::numerator(p.probability) << " / "
              << boost::multiprecision::denominator(p.probability) << '\n';
    std::cout.precision(17);
    std::cout << "value = " << p.value << '\n'
              << "delta_from_half = " << p.delta_from_half << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum McEliece twice-encryption experiments"};
    app.require_subcommand(1);

    KeygenArgs kg;
    CLI::App* keygen_cmd = app.add_subcommand("keygen", "Generate a McEliece key pair");
    keygen_cmd->add_option("--m", kg.m, "Field extension degree (n = 2^m)")->required();
    keygen_cmd->add_option("--t", kg.t, "Error capacity")->required();
    keygen_cmd->add_option("--seed", kg.seed, "PRNG seed")->required();
    keygen_cmd->add_option("--message-bits", kg.message_bits, "Shorten to this message length");
    keygen_cmd->add_option("--out-public", kg.out_public, "Public key file")->required();
    keygen_cmd->add_option("--out-private", kg.out_private, "Private key file")->required();

    CryptArgs enc;
    CLI::App* encrypt_cmd = app.add_subcommand("encrypt", "Encrypt a hex message file");
    encrypt_cmd->add_option("--public", enc.key_path, "Public key file")->required();
    encrypt_cmd->add_option("--in", enc.in_path, "Message file (hex, k bits)")->required();
    encrypt_cmd->add_option("--seed", enc.seed, "PRNG seed")->required();
    encrypt_cmd->add_option("--out", enc.out_path, "Cipher file (hex, n bits)")->required();

    CryptArgs dec;
    CLI::App* decrypt_cmd = app.add_subcommand("decrypt", "Decrypt a hex cipher file");
    decrypt_cmd->add_option("--private", dec.key_path, "Private key file")->required();
    decrypt_cmd->add_option("--in", dec.in_path, "Cipher file (hex, n bits)")->required();
    decrypt_cmd->add_option("--out", dec.out_path, "Message file (hex, k bits)")->required();

    QdemoArgs qd;
    CLI::App* qdemo_cmd = app.add_subcommand("qdemo", "Quantum scheme demo with attacker view");
    qdemo_cmd->add_option("--scheme", qd.scheme, "once | twice")->required();
    qdemo_cmd->add_option("--qubits", qd.qubits, "Message qubit count");
    qdemo_cmd->add_option("--seed", qd.seed, "PRNG seed")->required();
    qdemo_cmd->add_option("--out", qd.out_path, "Report file (JSON)");

    AttackArgs at;
    CLI::App* attack_cmd = app.add_subcommand("attack", "Low-weight coset search experiments");
    attack_cmd->add_option("--strategy", at.strategy, "exhaustive | random | greedy")->required();
    attack_cmd->add_flag("--replicate", at.replicate, "Run the replication harness");
    attack_cmd->add_option("--n", at.n, "Code length (generic instance)");
    attack_cmd->add_option("--k", at.k, "Code dimension (generic instance)");
    attack_cmd->add_option("--m", at.m, "Field degree for greedy replication");
    attack_cmd->add_option("--t", at.t, "Error weight");
    attack_cmd->add_option("--columns", at.columns, "Columns to search");
    attack_cmd->add_option("--trials", at.trials, "Monte Carlo trials");
    attack_cmd->add_option("--budget", at.budget, "Random-search budget");
    attack_cmd->add_option("--restarts", at.restarts, "Greedy restarts");
    attack_cmd->add_option("--seed", at.seed, "PRNG seed")->required();
    attack_cmd->add_flag("--allow-long", at.allow_long, "Permit 2^25..2^30 enumerations");
    attack_cmd->add_option("--out", at.out_path, "Report file (JSON)");

    ParityArgs pa;
    CLI::App* parity_cmd = app.add_subcommand("parity", "Exact Pr[e.e_i = 0]");
    parity_cmd->add_option("--n", pa.n, "Vector length")->required();
    parity_cmd->add_option("--t", pa.t, "Error weight")->required();
    parity_cmd->add_option("--w", pa.w, "Column weight")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*keygen_cmd) return cmd_keygen(kg);
        if (*encrypt_cmd) return cmd_encrypt(enc);
        if (*decrypt_cmd) return cmd_decrypt(dec);
        if (*qdemo_cmd) return cmd_qdemo(qd);
        if (*attack_cmd) return cmd_attack(at);
        if (*parity_cmd) return cmd_parity(pa);
    } catch (const DecodingFailure& e) {
        std::cerr << "decoding failure: " << e.what() << '\n';
        return kExitDecoding;
    } catch (const CapExceeded& e) {
        std::cerr << "resource cap: " << e.what() << '\n';
        return kExitCap;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitOk;
}
