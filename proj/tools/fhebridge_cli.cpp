// Command-line front end: benchmark runs with JSON/CSV reports, bridging
// conversions with cost printouts, lattice key generation, and gate tables.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fhebridge/fhebridge.hpp"

namespace {

using namespace fhebridge;

constexpr int kCliNoiseBudget = 1 << 20;  // ample headroom; counts are the story
constexpr std::uint64_t kModToWordRefusal = 1ULL << 12;

struct BenchOptions {
    std::string benchmark = "pks";
    std::string mode = "both";
    std::string backend = "plain";
    int bits = 8;
    std::uint64_t t = 65537;
    std::size_t slots = 1;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "json";
    int noise_budget = kCliNoiseBudget;
    std::size_t lat_n = 64;
    std::uint64_t lat_q = 1ULL << 50;
    double lat_sigma = 3.2;
    std::string keys;  // path prefix of previously generated lattice keys
    std::string config_path;
};

// Flat key=value run configuration; command-line flags win over file values.
void apply_config(BenchOptions& opt, const CLI::App& sub) {
    std::ifstream is(opt.config_path);
    if (!is) throw std::runtime_error("cannot open config file " + opt.config_path);
    auto overridden = [&](const std::string& flag) { return sub.count(flag) > 0; };
    std::string line;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t\r"));
            s.erase(s.find_last_not_of(" \t\r") + 1);
            return s;
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        if (key == "benchmark" && !overridden("--benchmark")) opt.benchmark = value;
        else if (key == "mode" && !overridden("--mode")) opt.mode = value;
        else if (key == "backend" && !overridden("--backend")) opt.backend = value;
        else if (key == "bits" && !overridden("--bits")) opt.bits = std::stoi(value);
        else if (key == "t" && !overridden("--t")) opt.t = std::stoull(value);
        else if (key == "slots" && !overridden("--slots")) opt.slots = std::stoull(value);
        else if (key == "seed" && !overridden("--seed")) opt.seed = std::stoull(value);
        else if (key == "out" && !overridden("--out")) opt.out = value;
        else if (key == "format" && !overridden("--format")) opt.format = value;
        else if (key == "noise-budget" && !overridden("--noise-budget"))
            opt.noise_budget = std::stoi(value);
        else if (key == "lat-n" && !overridden("--lat-n")) opt.lat_n = std::stoull(value);
        else if (key == "lat-q" && !overridden("--lat-q")) opt.lat_q = std::stoull(value);
        else if (key == "lat-sigma" && !overridden("--lat-sigma"))
            opt.lat_sigma = std::stod(value);
        else if (key == "benchmark" || key == "mode" || key == "backend" || key == "bits" ||
                 key == "t" || key == "slots" || key == "seed" || key == "out" ||
                 key == "format" || key == "noise-budget" || key == "lat-n" || key == "lat-q" ||
                 key == "lat-sigma")
            ;  // flag took precedence
        else
            throw std::runtime_error("unknown config key: " + key);
    }
}

std::vector<BenchmarkId> parse_benchmarks(const std::string& name) {
    if (name == "all")
        return {BenchmarkId::fib, BenchmarkId::logreg, BenchmarkId::max,
                BenchmarkId::mux, BenchmarkId::pks, BenchmarkId::sor};
    if (name == "fib") return {BenchmarkId::fib};
    if (name == "log") return {BenchmarkId::logreg};
    if (name == "max") return {BenchmarkId::max};
    if (name == "mux") return {BenchmarkId::mux};
    if (name == "pks") return {BenchmarkId::pks};
    if (name == "sor") return {BenchmarkId::sor};
    throw CLI::ValidationError("benchmark", "unknown benchmark " + name);
}

BenchRecord make_record(const BenchOptions& opt, BenchmarkId id, BenchMode mode) {
    BenchRecord r;
    r.benchmark = to_string(id);
    r.mode = to_string(mode);
    r.bits = opt.bits;
    r.t = opt.t;
    r.slots = opt.backend == "lattice" ? 1 : opt.slots;
    r.backend = opt.backend;
    return r;
}

template <HomomorphicBackend B>
void fill_record(BenchRecord& r, B& ctx, const BenchmarkSpec& spec) {
    BenchResult res = run_benchmark(ctx, spec);
    r.ct_adds = res.cost.ct_adds;
    r.ct_mults = res.cost.ct_mults;
    r.pt_ops = res.cost.pt_ops;
    r.mult_depth = res.cost.max_mult_depth;
    r.wall_ms = res.wall_ms;
    r.amortized_ms = res.amortized_ms;
    r.output_digest = digest_string(fnv1a64(res.flattened()));
    if (res.corrupted) r.error = "decryption corrupted (noise budget exhausted)";
}

void write_report(const std::string& path, const std::string& format,
                  const std::vector<BenchRecord>& records,
                  const nlohmann::ordered_json& comparisons) {
    if (path.empty()) return;
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    if (format == "csv") {
        os << csv_header() << '\n';
        for (const auto& r : records) os << to_csv_row(r) << '\n';
    } else {
        nlohmann::ordered_json doc;
        doc["records"] = nlohmann::ordered_json::array();
        for (const auto& r : records) doc["records"].push_back(to_json(r));
        if (!comparisons.empty()) doc["comparisons"] = comparisons;
        os << doc.dump(2) << '\n';
    }
}

int cmd_bench(const BenchOptions& opt) {
    std::vector<BenchMode> modes;
    if (opt.mode == "bit")
        modes = {BenchMode::bit};
    else if (opt.mode == "bridged")
        modes = {BenchMode::bridged};
    else if (opt.mode == "both")
        modes = {BenchMode::bit, BenchMode::bridged};
    else
        throw CLI::ValidationError("mode", "unknown mode " + opt.mode);

    bool failed = false;
    std::vector<BenchRecord> records;
    nlohmann::ordered_json comparisons = nlohmann::ordered_json::array();

    for (BenchmarkId id : parse_benchmarks(opt.benchmark)) {
        for (BenchMode mode : modes) {
            BenchRecord r = make_record(opt, id, mode);
            BenchmarkSpec spec{id, mode, opt.bits, opt.seed};
            try {
                if (opt.backend == "lattice") {
                    if (!opt.keys.empty()) {
                        LatticeBackend ctx(lattice::load_secret_key(opt.keys + ".sk"),
                                           lattice::load_public_key(opt.keys + ".pk"),
                                           opt.seed + 1);
                        r.t = ctx.plain_modulus();
                        fill_record(r, ctx, spec);
                    } else {
                        lattice::LatticeParams lp{opt.lat_n, opt.lat_q, opt.t, opt.lat_sigma};
                        LatticeBackend ctx(lp, opt.seed + 1);
                        fill_record(r, ctx, spec);
                    }
                } else if (opt.backend == "plain") {
                    BackendParams bp{opt.t, opt.slots, opt.noise_budget};
                    PlainBackend ctx(bp, opt.seed);
                    fill_record(r, ctx, spec);
                } else {
                    throw std::invalid_argument("unknown backend " + opt.backend);
                }
            } catch (const std::exception& e) {
                r.error = e.what();
            }
            if (r.error) failed = true;
            std::cout << to_json(r).dump() << '\n';
            records.push_back(std::move(r));
        }
        if (modes.size() == 2) {
            const auto& bit = records[records.size() - 2];
            const auto& bridged = records.back();
            nlohmann::ordered_json c{{"benchmark", bit.benchmark},
                                     {"bits", bit.bits},
                                     {"ct_mults_bit", bit.ct_mults},
                                     {"ct_mults_bridged", bridged.ct_mults},
                                     {"mult_depth_bit", bit.mult_depth},
                                     {"mult_depth_bridged", bridged.mult_depth}};
            if (bridged.ct_mults > 0)
                c["ct_mult_ratio"] = static_cast<double>(bit.ct_mults) /
                                     static_cast<double>(bridged.ct_mults);
            comparisons.push_back(c);
            std::cout << "comparison " << c.dump() << '\n';
        }
    }
    write_report(opt.out, opt.format, records, comparisons);
    return failed ? 1 : 0;
}

struct ConvertOptions {
    std::string direction = "u2m";
    int bits = 8;
    std::uint64_t t = 65537;
    std::int64_t value = 0;
    bool force = false;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_convert(const ConvertOptions& opt) {
    if ((opt.direction == "m2u" || opt.direction == "m2i") && opt.t > kModToWordRefusal &&
        !opt.force) {
        std::cerr << "refusing " << opt.direction << " with t = " << opt.t
                  << ": the linear search runs t exponentiations and is impractical for "
                     "large plaintext moduli (pass --force to run anyway)\n";
        return 2;
    }

    PlainBackend ctx(BackendParams{opt.t, 1, kCliNoiseBudget}, opt.seed);
    std::size_t s = static_cast<std::size_t>(opt.bits);
    CostReport before = ctx.meter_snapshot();
    std::int64_t result = 0;

    if (opt.direction == "u2m") {
        auto w = encrypt_word(ctx, static_cast<std::uint64_t>(opt.value), s);
        result = static_cast<std::int64_t>(ctx.decrypt(uint_to_mod_ct(ctx, w)).values[0]);
    } else if (opt.direction == "i2m") {
        auto w = encrypt_word(ctx, detail::mask_bits(static_cast<std::uint64_t>(opt.value), s), s);
        result = static_cast<std::int64_t>(ctx.decrypt(int_to_mod_ct(ctx, w)).values[0]);
    } else if (opt.direction == "m2u") {
        auto x = ctx.encrypt({opt.value});
        result = static_cast<std::int64_t>(
            decrypt_word(ctx, mod_to_uint_word(ctx, x, s)).values[0]);
    } else if (opt.direction == "m2i") {
        auto x = ctx.encrypt({opt.value});
        result = detail::sign_extend(decrypt_word(ctx, mod_to_int_word(ctx, x, s)).values[0], s);
    } else {
        throw CLI::ValidationError("direction", "unknown direction " + opt.direction);
    }

    CostReport d = ctx.meter_snapshot().delta_since(before);
    std::cout << opt.direction << " bits=" << opt.bits << " t=" << opt.t
              << " value=" << opt.value << " -> " << result << "\n"
              << "ct_adds=" << d.ct_adds << " ct_mults=" << d.ct_mults << " pt_ops=" << d.pt_ops
              << " mult_depth=" << d.max_mult_depth << " add_depth=" << d.max_add_depth << "\n";
    if (!opt.out.empty()) {
        nlohmann::ordered_json j{{"direction", opt.direction}, {"bits", opt.bits},
                                 {"t", opt.t},                 {"value", opt.value},
                                 {"result", result},           {"ct_adds", d.ct_adds},
                                 {"ct_mults", d.ct_mults},     {"pt_ops", d.pt_ops},
                                 {"mult_depth", d.max_mult_depth}};
        std::ofstream os(opt.out);
        if (!os) throw std::runtime_error("cannot open " + opt.out);
        os << j.dump(2) << '\n';
    }
    return 0;
}

struct KeygenOptions {
    std::size_t n = 64;
    std::uint64_t q = 1ULL << 40;
    std::uint64_t t = 17;
    double sigma = 3.2;
    std::uint64_t seed = 0;
    std::string out = "key";
};

int cmd_keygen(const KeygenOptions& opt) {
    lattice::LatticeParams params{opt.n, opt.q, opt.t, opt.sigma};
    auto [sk, pk] = lattice::keygen(params, opt.seed);
    lattice::save_secret_key(opt.out + ".sk", sk);
    lattice::save_public_key(opt.out + ".pk", pk);
    std::cout << "wrote " << opt.out << ".sk and " << opt.out << ".pk (n=" << opt.n
              << " q=" << opt.q << " t=" << opt.t << ")\n";
    return 0;
}

struct GatesOptions {
    std::uint64_t t = 65537;
    std::string out;
};

int cmd_gates(const GatesOptions& opt) {
    PlainBackend ctx(BackendParams{opt.t, 1, kCliNoiseBudget});
    nlohmann::ordered_json table = nlohmann::ordered_json::array();

    auto run_gate = [&](const std::string& name, int arity, auto&& fn) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        CostReport cost{};
        for (int combo = 0; combo < (1 << arity); ++combo) {
            std::vector<Bit<PlainBackend>> in;
            for (int k = arity - 1; k >= 0; --k) in.push_back(encrypt_bit(ctx, (combo >> k) & 1));
            CostReport before = ctx.meter_snapshot();
            Bit<PlainBackend> out = fn(in);
            cost = ctx.meter_snapshot().delta_since(before);
            std::string bits;
            for (int k = arity - 1; k >= 0; --k) bits += static_cast<char>('0' + ((combo >> k) & 1));
            rows.push_back({{"in", bits}, {"out", ctx.decrypt(out.ct).values[0]}});
        }
        nlohmann::ordered_json entry{{"gate", name},
                                     {"ct_mults", cost.ct_mults},
                                     {"ct_adds", cost.ct_adds},
                                     {"pt_ops", cost.pt_ops},
                                     {"rows", rows}};
        table.push_back(entry);
        std::cout << name << ": ct_mults=" << cost.ct_mults << " ct_adds=" << cost.ct_adds
                  << " pt_ops=" << cost.pt_ops << " |";
        for (const auto& row : rows)
            std::cout << ' ' << row["in"].get<std::string>() << "->"
                      << row["out"].get<std::uint64_t>();
        std::cout << '\n';
    };

    using BitP = Bit<PlainBackend>;
    run_gate("AND", 2, [&](const std::vector<BitP>& v) { return gate_and(ctx, v[0], v[1]); });
    run_gate("NAND", 2, [&](const std::vector<BitP>& v) { return gate_nand(ctx, v[0], v[1]); });
    run_gate("OR", 2, [&](const std::vector<BitP>& v) { return gate_or(ctx, v[0], v[1]); });
    run_gate("NOR", 2, [&](const std::vector<BitP>& v) { return gate_nor(ctx, v[0], v[1]); });
    run_gate("XOR", 2, [&](const std::vector<BitP>& v) { return gate_xor(ctx, v[0], v[1]); });
    run_gate("XNOR", 2, [&](const std::vector<BitP>& v) { return gate_xnor(ctx, v[0], v[1]); });
    run_gate("NOT", 1, [&](const std::vector<BitP>& v) { return gate_not(ctx, v[0]); });
    run_gate("MUX", 3, [&](const std::vector<BitP>& v) { return gate_mux(ctx, v[0], v[1], v[2]); });

    if (!opt.out.empty()) {
        std::ofstream os(opt.out);
        if (!os) throw std::runtime_error("cannot open " + opt.out);
        os << table.dump(2) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bridged bit-level/modular homomorphic arithmetic toolkit"};
    app.require_subcommand(1);

    BenchOptions bench;
    auto* sb = app.add_subcommand("bench", "run data-oblivious benchmarks and report costs");
    sb->add_option("--config", bench.config_path, "flat key=value run configuration");
    sb->add_option("--benchmark", bench.benchmark, "fib|log|max|mux|pks|sor|all");
    sb->add_option("--mode", bench.mode, "bit|bridged|both");
    sb->add_option("--backend", bench.backend, "plain|lattice");
    sb->add_option("--bits", bench.bits, "word width (4, 8 or 16)");
    sb->add_option("--t", bench.t, "plaintext modulus");
    sb->add_option("--slots", bench.slots, "batching slots (plain backend)");
    sb->add_option("--seed", bench.seed, "instance seed")->envname("FHEBRIDGE_SEED");
    sb->add_option("--out", bench.out, "report file path");
    sb->add_option("--format", bench.format, "json|csv");
    sb->add_option("--noise-budget", bench.noise_budget, "simulated noise budget (plain backend)");
    sb->add_option("--lat-n", bench.lat_n, "lattice ring degree");
    sb->add_option("--lat-q", bench.lat_q, "lattice ciphertext modulus");
    sb->add_option("--lat-sigma", bench.lat_sigma, "lattice error stddev");
    sb->add_option("--keys", bench.keys, "load lattice keys from <prefix>.sk/.pk");

    ConvertOptions convert;
    auto* sc = app.add_subcommand("convert", "run one bridging conversion and print its cost");
    sc->add_option("--direction", convert.direction, "u2m|i2m|m2u|m2i")->required();
    sc->add_option("--bits", convert.bits, "word width");
    sc->add_option("--t", convert.t, "plaintext modulus");
    sc->add_option("--value", convert.value, "input value (residue for m2u/m2i)")->required();
    sc->add_flag("--force", convert.force, "run m2u/m2i even for large t");
    sc->add_option("--seed", convert.seed, "context seed")->envname("FHEBRIDGE_SEED");
    sc->add_option("--out", convert.out, "JSON result path");

    KeygenOptions keygen;
    auto* sk = app.add_subcommand("keygen", "generate toy lattice keys");
    sk->add_option("--n", keygen.n, "ring degree");
    sk->add_option("--q", keygen.q, "ciphertext modulus");
    sk->add_option("--t", keygen.t, "plaintext modulus");
    sk->add_option("--sigma", keygen.sigma, "error stddev");
    sk->add_option("--seed", keygen.seed, "key seed")->envname("FHEBRIDGE_SEED");
    sk->add_option("--out", keygen.out, "output path prefix")->required();

    GatesOptions gates;
    auto* sg = app.add_subcommand("gates", "dump gate truth tables with per-gate costs");
    sg->add_option("--t", gates.t, "plaintext modulus");
    sg->add_option("--out", gates.out, "JSON table path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sb->parsed()) {
            if (!bench.config_path.empty()) apply_config(bench, *sb);
            return cmd_bench(bench);
        }
        if (sc->parsed()) return cmd_convert(convert);
        if (sk->parsed()) return cmd_keygen(keygen);
        if (sg->parsed()) return cmd_gates(gates);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
