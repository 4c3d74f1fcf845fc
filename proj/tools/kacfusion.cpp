// kacfusion: fusion (Verlinde) algebras of affine Kac-Moody algebras.
//
// Subcommands: fusion, twisted, quotient, modular, check, sweep.
// Exit codes: 0 success, 1 conjecture violation found, 2 usage or runtime error.

#include "kacfusion/kacfusion.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace kf = kacfusion;

namespace {

constexpr const char* kCodeVersion = "kacfusion-0.1.0";

struct CommonArgs {
    std::string type;
    long long level = 0;
    std::string level_range;
    std::string out;
    std::string format = "json";
    std::vector<std::string> checks;
    int jobs = 1;
    std::string beta;
    long long max_cells = 4096;
};

void emit(const CommonArgs& args, const kf::Json& report, const std::string& csv = "") {
    if (args.format == "csv" && !csv.empty()) {
        if (args.out.empty()) std::cout << csv;
        else kf::write_text(args.out, csv);
        return;
    }
    std::string text = report.dump(2) + "\n";
    if (args.out.empty()) std::cout << text;
    else kf::write_text(args.out, text);
}

kf::FiniteWeight parse_beta(const std::string& s, int rank) {
    kf::RatVec labels;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) labels.push_back(kf::rat_from_string(tok));
    if (static_cast<int>(labels.size()) != rank)
        throw kf::OutOfRange("--beta needs " + std::to_string(rank) + " entries");
    return kf::FiniteWeight{labels};
}

bool has_check(const CommonArgs& args, const std::string& name) {
    for (const auto& c : args.checks)
        if (c == name) return true;
    return false;
}

// Run one named check against one (type, level) cell. Returns (report, violation?).
std::pair<kf::Json, bool> run_check(const std::string& check, const kf::AffineAlgebraData& data,
                                    long long level, const kf::VerlindeOptions& opt) {
    kf::Json j;
    bool violation = false;
    if (check == "grading") {
        if (!data.is_untwisted()) throw kf::UntwistedType("grading check applies to untwisted types");
        auto rep = kf::check_grading(kf::verlinde_algebra(data, level, opt));
        j = kf::to_json(rep);
        violation = !rep.holds;
    } else if (check == "sign_twist") {
        if (!data.is_a2even_type())
            throw kf::UnknownType("sign_twist check applies to A_{2l}~2 types");
        auto rep = kf::sign_twist_check(kf::twisted_verlinde(data, level, opt));
        j = kf::to_json(rep);
        violation = rep.applicable && !rep.conjecture_holds;
    } else if (check == "two_thirds") {
        const kf::AffineAlgebraData& host =
            data.is_untwisted() || data.is_a2even_type() ? data : kf::transpose(data);
        auto rep = kf::two_thirds_check(kf::hong_quotient(host, level, opt));
        j = kf::to_json(rep);
        violation = rep.applicable && !rep.holds;
    } else if (check == "assoc") {
        auto alg = data.is_untwisted() ? kf::verlinde_algebra(data, level, opt)
                                       : kf::twisted_verlinde(data, level, opt);
        bool ok = kf::check_associativity(alg);
        j["holds"] = ok;
        violation = !ok;
    } else if (check == "relations") {
        auto ma = kf::modular_action(data, level);
        j = kf::Json::object();
        for (const auto& [k, v] : ma.relations_residuals) j[k] = kf::round_sig(v);
    } else if (check == "cor58") {
        const kf::AffineAlgebraData& host =
            data.is_untwisted() || data.is_a2even_type() ? data : kf::transpose(data);
        j["max_residual"] = kf::round_sig(kf::cor58_check(host, level));
    } else {
        throw kf::UnknownType("unknown check '" + check + "'");
    }
    return {j, violation};
}

int cmd_fusion(const CommonArgs& args) {
    const auto& data = kf::affine_data(args.type);
    kf::FusionAlgebra alg = data.is_untwisted()
                                ? kf::verlinde_algebra(data, args.level, {args.jobs, true})
                                : kf::twisted_verlinde(data, args.level, {args.jobs, true});
    kf::Json j = kf::to_json(alg);
    bool violation = false;
    for (const auto& c : args.checks) {
        auto [rep, bad] = run_check(c, data, args.level, {args.jobs, true});
        j["checks"][c] = rep;
        violation = violation || bad;
    }
    emit(args, j, kf::tensor_to_csv(alg.tensor));
    return violation ? 1 : 0;
}

int cmd_twisted(const CommonArgs& args) {
    const auto& data = kf::affine_data(args.type);
    if (data.is_untwisted()) throw kf::UntwistedType(args.type + " is untwisted; use `fusion`");
    kf::FusionAlgebra alg = kf::twisted_verlinde(data, args.level, {args.jobs, true});
    kf::Json j = kf::to_json(alg);
    bool violation = false;
    for (const auto& c : args.checks) {
        auto [rep, bad] = run_check(c, data, args.level, {args.jobs, true});
        j["checks"][c] = rep;
        violation = violation || bad;
    }
    emit(args, j, kf::tensor_to_csv(alg.tensor));
    return violation ? 1 : 0;
}

int cmd_quotient(const CommonArgs& args) {
    const auto& named = kf::affine_data(args.type);
    // the Verlinde algebra of a twisted type is quotiented on its transpose side
    const auto& host = named.is_untwisted() || named.is_a2even_type() ? named : kf::transpose(named);
    kf::QuotientAlgebra q = kf::hong_quotient(host, args.level, {args.jobs, true});
    kf::Json j = kf::to_json(q);
    j["named_type"] = kf::to_string(named.atype);
    bool violation = false;
    if (has_check(args, "two_thirds")) {
        auto rep = kf::two_thirds_check(q);
        j["checks"]["two_thirds"] = kf::to_json(rep);
        violation = rep.applicable && !rep.holds;
    }
    emit(args, j, kf::tensor_to_csv(q.tensor));
    return violation ? 1 : 0;
}

int cmd_modular(const CommonArgs& args) {
    const auto& data = kf::affine_data(args.type);
    kf::ModularAction ma = kf::modular_action(data, args.level);
    kf::Json j = kf::to_json(ma);
    for (const auto& c : args.checks) {
        if (c == "relations") continue; // already reported
        if (c == "cor58") {
            const auto& host = data.is_untwisted() || data.is_a2even_type() ? data : kf::transpose(data);
            j["checks"]["cor58"]["max_residual"] = kf::round_sig(kf::cor58_check(host, args.level));
        } else if (c == "pairing") {
            kf::FiniteWeight beta = args.beta.empty()
                                        ? kf::FiniteWeight::zero(data.rank)
                                        : parse_beta(args.beta, data.rank);
            kf::Json p;
            p["beta_valid"] = kf::validate_beta(data, args.level, data.atype.r, beta);
            p["scalar_magnitude"] =
                kf::round_sig(kf::pairing_scalar_magnitude(data, args.level, data.atype.r));
            auto basis = kf::enum_weights(data, args.level, kf::WeightVariant::Pupper_k);
            kf::Cplx val =
                kf::pairing_r(data, args.level, data.atype.r, basis.finite(0), basis.finite(0));
            p["vacuum_pairing"] = kf::Json::array(
                {kf::round_sig(val.real()), kf::round_sig(val.imag())});
            j["checks"]["pairing"] = p;
        } else {
            throw kf::UnknownType("unknown modular check '" + c + "'");
        }
    }
    emit(args, j);
    return 0;
}

int cmd_check(const CommonArgs& args) {
    const auto& data = kf::affine_data(args.type);
    kf::Json j;
    bool violation = false;
    for (const auto& c : args.checks) {
        auto [rep, bad] = run_check(c, data, args.level, {args.jobs, true});
        j[c] = rep;
        violation = violation || bad;
    }
    emit(args, j);
    return violation ? 1 : 0;
}

std::pair<long long, long long> parse_range(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos) throw kf::OutOfRange("--level-range wants A..B");
    return {std::stoll(s.substr(0, dots)), std::stoll(s.substr(dots + 2))};
}

int cmd_sweep(const CommonArgs& args) {
    auto [lo, hi] = args.level_range.empty() ? std::make_pair<long long, long long>(1, 0)
                                             : parse_range(args.level_range);
    std::vector<std::string> types;
    {
        std::stringstream ss(args.type);
        std::string tok;
        while (std::getline(ss, tok, ',')) types.push_back(tok);
    }
    long long cells = static_cast<long long>(types.size()) * std::max<long long>(0, hi - lo + 1) *
                      static_cast<long long>(args.checks.size());
    if (cells > args.max_cells)
        throw kf::OutOfRange("sweep of " + std::to_string(cells) + " cells exceeds --max-cells");

    std::string manifest_path = (args.out.empty() ? std::string("sweep") : args.out) + ".manifest.json";
    kf::Json manifest;
    manifest["code_version"] = kCodeVersion;
    manifest["cells"] = kf::Json::object();
    {
        std::ifstream in(manifest_path);
        if (in) {
            kf::Json prev;
            in >> prev;
            if (prev.value("code_version", "") == kCodeVersion) manifest = prev;
        }
    }

    kf::Json report;
    report["code_version"] = kCodeVersion;
    report["cells"] = kf::Json::array();
    bool violation = false;
    for (const auto& tname : types)
        for (long long k = lo; k <= hi; ++k)
            for (const auto& c : args.checks) {
                std::string key = tname + "|" + std::to_string(k) + "|" + c;
                kf::Json cell;
                cell["type"] = tname;
                cell["level"] = k;
                cell["check"] = c;
                if (manifest["cells"].contains(key)) {
                    cell["result"] = manifest["cells"][key];
                    cell["cached"] = true;
                } else {
                    kf::Json result;
                    try {
                        auto [rep, bad] = run_check(c, kf::affine_data(tname), k, {args.jobs, true});
                        result["report"] = rep;
                        result["violation"] = bad;
                    } catch (const kf::Error& e) {
                        result["error"] = e.what();
                        result["violation"] = false;
                    }
                    manifest["cells"][key] = result;
                    kf::write_text(manifest_path, manifest.dump(2) + "\n");
                    cell["result"] = result;
                    cell["cached"] = false;
                }
                violation = violation || cell["result"].value("violation", false);
                report["cells"].push_back(cell);
            }
    emit(args, report);
    return violation ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fusion algebras of affine Kac-Moody algebras"};
    app.require_subcommand(1);

    CommonArgs args;
    auto add_common = [&](CLI::App* sub, bool needs_level) {
        sub->add_option("--type", args.type, "affine type, e.g. A2~1, A5~2, D4~3")->required();
        auto* lvl = sub->add_option("--level", args.level, "positive integer level");
        if (needs_level) lvl->required();
        sub->add_option("--level-range", args.level_range, "sweep levels A..B");
        sub->add_option("--out", args.out, "output path (stdout if omitted)");
        sub->add_option("--format", args.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--checks,--check", args.checks, "named property suites")->delimiter(',');
        sub->add_option("--jobs", args.jobs, "worker threads for table construction");
        sub->add_option("--beta", args.beta, "rational label vector for pairing checks");
        sub->add_option("--max-cells", args.max_cells, "sweep cell-count cap");
    };

    auto* fusion = app.add_subcommand("fusion", "fusion table of an algebra at a level");
    add_common(fusion, true);
    auto* twisted = app.add_subcommand("twisted", "twisted Verlinde algebra");
    add_common(twisted, true);
    auto* quotient = app.add_subcommand("quotient", "Hong quotient algebra");
    add_common(quotient, true);
    auto* modular = app.add_subcommand("modular", "congruence-subgroup action and identities");
    add_common(modular, true);
    auto* check = app.add_subcommand("check", "run property suites, exit 1 on violation");
    add_common(check, true);
    auto* sweep = app.add_subcommand("sweep", "run checks over a level range, resumable");
    add_common(sweep, false);

    CLI11_PARSE(app, argc, argv);
    try {
        if (fusion->parsed()) return cmd_fusion(args);
        if (twisted->parsed()) return cmd_twisted(args);
        if (quotient->parsed()) return cmd_quotient(args);
        if (modular->parsed()) return cmd_modular(args);
        if (check->parsed()) return cmd_check(args);
        if (sweep->parsed()) return cmd_sweep(args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
