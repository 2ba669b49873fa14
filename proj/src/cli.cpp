#include "c2f/cli.hpp"

#include "c2f/isotropy.hpp"
#include "c2f/uinvariant.hpp"

#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace c2f {

namespace {

using njson = nlohmann::ordered_json;

std::string vec_str(const std::vector<Elem>& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].str();
    }
    return s + ")";
}

SearchConfig config_for(const Command& cmd, const CliOptions& opt) {
    SearchConfig cfg;
    cfg.monomial_deg = opt.monomial_deg;
    long long budget = cmd.budget.value_or(opt.budget);
    if (budget > 0) cfg.max_candidates = budget;
    return cfg;
}

struct Emitter {
    njson doc;
    int exit_code = 0;

    Emitter(const Command& cmd, const char* name, const CliOptions& opt) {
        doc["command"] = name;
        doc["field"] = cmd.field ? cmd.field->spec() : "";
        doc["verdict"] = "";
        seed_ = cmd.seed.value_or(opt.seed);
        budget_ = cmd.budget.value_or(opt.budget);
    }
    void finish(const CliOptions& opt, std::chrono::steady_clock::time_point t0) {
        doc["seed"] = seed_;
        doc["budget"] = budget_;
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        doc["elapsed_ms"] = opt.stable_time ? 0 : static_cast<long long>(ms);
    }
    std::uint64_t seed_ = 0;
    long long budget_ = -1;
};

std::vector<std::string> split_steps(const std::string& ser) {
    std::vector<std::string> out;
    std::istringstream is(ser);
    std::string line;
    while (std::getline(is, line))
        if (!line.empty()) out.push_back(line);
    return out;
}

// search for a zero of the split Albert form attached to (alpha, beta, gamma,
// delta); p = 2 goes through the quadratic model
std::optional<AlbertWitness> find_split_albert_zero(const Elem& alpha, const Elem& beta,
                                                    const Elem& gamma, const Elem& delta,
                                                    const SearchConfig& cfg) {
    SplitWitness sp = lemma_new_split(alpha, beta);
    const FieldPtr& F = alpha.field();
    AlbertPForm A = albert_form(F->p, sp.alpha1, sp.alpha2, gamma, delta);
    LinkageVerdict v = linked_separably(A, cfg);
    if (v.kind == LinkKind::Yes && v.witness) return v.witness;
    return std::nullopt;
}

}  // namespace

CliResult run_command_line(const std::string& line, const CliOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    CliResult out;
    try {
        FieldPtr default_field;
        if (!opt.field_flag.empty()) default_field = parse_field(opt.field_flag);
        Command cmd = parse_command(line, default_field);
        SearchConfig cfg = config_for(cmd, opt);
        Rng rng(cmd.seed.value_or(opt.seed));

        switch (cmd.kind) {
            case Command::Kind::FieldInfo: {
                Emitter em(cmd, "info", opt);
                em.doc["verdict"] = "ok";
                em.doc["witness"] = "characteristic " + std::to_string(cmd.field->p) +
                                    (cmd.field->has_laurent_layer() ? ", complete layers present"
                                                                    : "");
                em.finish(opt, t0);
                out.json = em.doc.dump();
                out.exit_code = em.exit_code;
                return out;
            }
            case Command::Kind::Arf: {
                Emitter em(cmd, "arf", opt);
                ArfResult a = arf(*cmd.form);  // throws on singular input
                em.doc["verdict"] = a.cls == ArfClass::Trivial   ? "trivial"
                                    : a.cls == ArfClass::NonTrivial ? "nontrivial"
                                                                    : "unknown";
                em.doc["witness"] = a.representative.str();
                if (a.cls == ArfClass::Unknown) em.exit_code = 2;
                em.finish(opt, t0);
                out.json = em.doc.dump();
                out.exit_code = em.exit_code;
                return out;
            }
            case Command::Kind::Witt: {
                Emitter em(cmd, "witt", opt);
                WittDecomposition d = witt_decompose(*cmd.form, cfg);
                std::string verdict = "witt_index " + std::to_string(d.witt_index) +
                                      ", kernel dim " +
                                      std::to_string(cmd.form->dim() - 2 * d.witt_index);
                if (!d.index_certified) verdict += " (partial)";
                em.doc["verdict"] = verdict;
                if (!d.hyperbolic_pairs.empty())
                    em.doc["witness"] = vec_str(d.hyperbolic_pairs.front().first);
                em.exit_code = d.index_certified ? 0 : 2;
                em.finish(opt, t0);
                out.json = em.doc.dump();
                out.exit_code = em.exit_code;
                return out;
            }
            case Command::Kind::Isotropy: {
                Emitter em(cmd, "isotropy", opt);
                IsotropyVerdict v = isotropy_decide(*cmd.form, cfg);
                switch (v.kind) {
                    case IsotropyVerdict::Kind::Isotropic:
                        em.doc["verdict"] = "isotropic";
                        em.doc["witness"] = vec_str(v.witness);
                        break;
                    case IsotropyVerdict::Kind::Anisotropic:
                        em.doc["verdict"] = v.proof == AnisoProof::ResidueDescent
                                                ? "anisotropic (residue descent)"
                                                : "anisotropic (exhaustive)";
                        break;
                    case IsotropyVerdict::Kind::Unknown:
                        em.doc["verdict"] = "unknown";
                        em.exit_code = 2;
                        break;
                }
                em.finish(opt, t0);
                out.json = em.doc.dump();
                out.exit_code = em.exit_code;
                return out;
            }
            case Command::Kind::Albert: {
                Emitter em(cmd, "albert", opt);
                AlbertPForm A = albert_form(cmd.field->p, cmd.elems[0], cmd.elems[1], cmd.elems[2],
                                            cmd.elems[3]);
                if (cmd.field->p == 2) {
                    QuadraticForm q = cmd.pure ? pure_part_quadratic(A) : albert_to_quadratic(A);
                    em.doc["verdict"] = "ok";
                    em.doc["witness"] = q.str();
                } else {
                    em.doc["verdict"] = "ok";
                    em.doc["witness"] = std::string(cmd.pure ? "pure part of " : "") +
                                        "Albert p-form, evaluation-only at p > 2";
                }
                em.finish(opt, t0);
                out.json = em.doc.dump();
                out.exit_code = em.exit_code;
                return out;
            }
            case Command::Kind::Linkage: {
                Emitter em(cmd, "linkage", opt);
                AlbertPForm A = albert_form(cmd.field->p, cmd.elems[0], cmd.elems[1], cmd.elems[2],
                                            cmd.elems[3]);
                LinkageVerdict v =
                    cmd.inseparable ? linked_inseparably(A, cfg) : linked_separably(A, cfg);
                switch (v.kind) {
                    case LinkKind::Yes: {
                        em.doc["verdict"] = "yes";
                        if (v.witness)
                            em.doc["witness"] = v.witness->x.str() + " " + v.witness->y.str() + " " +
                                                v.witness->z.str();
                        if (v.pure_witness)
                            em.doc["witness"] = v.pure_witness->x.str() + " " +
                                                v.pure_witness->y.str() + " " + v.pure_witness->z.str();
                        break;
                    }
                    case LinkKind::No: em.doc["verdict"] = "no (" + v.note + ")"; break;
                    case LinkKind::NoEvidence:
                        em.doc["verdict"] = "no-evidence";
                        em.exit_code = 2;
                        break;
                }
                em.finish(opt, t0);
                out.json = em.doc.dump();
                out.exit_code = em.exit_code;
                return out;
            }
            case Command::Kind::PfisterHyp: {
                Emitter em(cmd, "pfisterhyp", opt);
                auto idx = witt_index_of(*cmd.form);
                if (!idx) {
                    em.doc["verdict"] = "unknown";
                    em.exit_code = 2;
                } else if (2 * *idx == cmd.form->dim()) {
                    em.doc["verdict"] = "hyperbolic";
                } else {
                    em.doc["verdict"] = "not hyperbolic (witt_index " + std::to_string(*idx) + ")";
                }
                em.finish(opt, t0);
                out.json = em.doc.dump();
                out.exit_code = em.exit_code;
                return out;
            }
            case Command::Kind::H4Reduce: {
                Emitter em(cmd, "h4reduce", opt);
                auto w = find_split_albert_zero(cmd.elems[0], cmd.elems[1], cmd.elems[2],
                                                cmd.elems[3], cfg);
                WpResult wa = wp_solve(cmd.elems[0]);
                if (!w && wa.kind != WpKind::ExactWitness) {
                    em.doc["verdict"] = "unknown (no zero of the split Albert form found)";
                    em.exit_code = 2;
                } else {
                    AlbertWitness witness =
                        w ? *w
                          : AlbertWitness{asext_zero(cmd.elems[0]),
                                          asext_zero(lemma_new_split(cmd.elems[0], cmd.elems[1]).alpha1),
                                          asext_zero(lemma_new_split(cmd.elems[0], cmd.elems[1]).alpha2)};
                    Derivation d = reduce_h4(cmd.elems[0], cmd.elems[1], cmd.elems[2], cmd.elems[3],
                                             witness);
                    CheckReport rep = check_derivation(d);
                    if (!rep.ok) throw std::logic_error("emitted derivation failed its own check: " + rep.reason);
                    em.doc["verdict"] = "zero-certified";
                    em.doc["steps"] = split_steps(serialize(d));
                }
                em.finish(opt, t0);
                out.json = em.doc.dump();
                out.exit_code = em.exit_code;
                return out;
            }
            case Command::Kind::H3Reduce: {
                Emitter em(cmd, "h3reduce", opt);
                AlbertPForm A = albert_form(cmd.field->p, cmd.elems[0], cmd.elems[0], cmd.elems[1],
                                            cmd.elems[2]);
                LinkageVerdict v = linked_inseparably(A, cfg);
                WpResult wa = wp_solve(cmd.elems[0]);
                if (v.kind != LinkKind::Yes && wa.kind != WpKind::ExactWitness) {
                    em.doc["verdict"] = "unknown (no zero of the pure part found)";
                    em.exit_code = 2;
                } else {
                    PureWitness w = v.pure_witness
                                        ? *v.pure_witness
                                        : PureWitness{Elem::zero(cmd.field), asext_zero(cmd.elems[0]),
                                                      asext_zero(cmd.elems[0])};
                    Derivation d = reduce_h3_pure(cmd.elems[0], cmd.elems[1], cmd.elems[2], w);
                    CheckReport rep = check_derivation(d);
                    if (!rep.ok) throw std::logic_error("emitted derivation failed its own check: " + rep.reason);
                    em.doc["verdict"] = "zero-certified";
                    em.doc["steps"] = split_steps(serialize(d));
                }
                em.finish(opt, t0);
                out.json = em.doc.dump();
                out.exit_code = em.exit_code;
                return out;
            }
            case Command::Kind::SubAlbert: {
                Emitter em(cmd, "subalbert", opt);
                SubalbertReport rep = subalbert_extract(cmd.elems[0], cmd.elems[1], cmd.elems[2],
                                                        cmd.elems[3], cfg);
                em.doc["verdict"] = rep.all_pass() ? "albert-subform-verified" : "FAILED";
                em.doc["witness"] = rep.psi.str();
                if (!rep.all_pass()) em.exit_code = 1;
                em.finish(opt, t0);
                out.json = em.doc.dump();
                out.exit_code = em.exit_code;
                return out;
            }
            case Command::Kind::UInvariant: {
                Emitter em(cmd, "u", opt);
                UReport rep = u_invariant(cmd.field, cmd.seed.value_or(opt.seed));
                em.doc["verdict"] = rep.exact ? "exact" : "bounds";
                em.doc["witness"] = rep.lower_witness_text;
                njson bounds;
                bounds["lower"] = rep.lower;
                if (rep.upper) bounds["upper"] = *rep.upper;
                bounds["exact"] = rep.exact;
                bounds["upper_rule"] = rep.upper_rule;
                em.doc["bounds"] = bounds;
                if (!rep.exact) em.exit_code = 2;
                em.finish(opt, t0);
                out.json = em.doc.dump();
                out.exit_code = em.exit_code;
                return out;
            }
        }
        throw std::logic_error("unhandled command");
    } catch (const ParseError& pe) {
        njson doc;
        doc["command"] = "error";
        doc["field"] = opt.field_flag;
        doc["verdict"] = std::string("parse error: ") + pe.what();
        if (!pe.expected.empty()) {
            std::string exp;
            for (const auto& e : pe.expected) exp += (exp.empty() ? "" : ", ") + e;
            doc["verdict"] = doc["verdict"].get<std::string>() + " (expected: " + exp + ")";
        }
        doc["seed"] = opt.seed;
        doc["budget"] = opt.budget;
        doc["elapsed_ms"] = 0;
        out.json = doc.dump();
        out.exit_code = 1;
        return out;
    } catch (const std::exception& ex) {
        njson doc;
        doc["command"] = "error";
        doc["field"] = opt.field_flag;
        doc["verdict"] = std::string("error: ") + ex.what();
        doc["seed"] = opt.seed;
        doc["budget"] = opt.budget;
        doc["elapsed_ms"] = 0;
        out.json = doc.dump();
        out.exit_code = 1;
        return out;
    }
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    CliOptions opt;
    std::vector<std::string> positional;
    bool batch = false;
    for (size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        auto next = [&]() -> std::string {
            if (i + 1 >= args.size()) {
                std::cerr << "missing value for " << a << "\n";
                std::exit(1);
            }
            return args[++i];
        };
        if (a == "--field") opt.field_flag = next();
        else if (a == "--seed") opt.seed = std::stoull(next());
        else if (a == "--budget") opt.budget = std::stoll(next());
        else if (a == "--deg") opt.monomial_deg = std::stoi(next());
        else if (a == "--stable-json") opt.stable_time = true;
        else if (a == "--json") { /* JSON is the only output format */ }
        else if (a == "batch" && positional.empty()) batch = true;
        else positional.push_back(a);
    }
    if (batch) {
        if (positional.size() != 1) {
            std::cerr << "usage: c2f batch <file> [--field SPEC] [--seed N] [--budget N]\n";
            return 1;
        }
        std::ifstream in(positional[0]);
        if (!in) {
            std::cerr << "cannot open " << positional[0] << "\n";
            return 1;
        }
        std::string line;
        int worst = 0;
        std::cout << "[";
        bool first = true;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            CliResult r = run_command_line(line, opt);
            if (!first) std::cout << ",";
            std::cout << "\n" << r.json;
            first = false;
            worst = std::max(worst, r.exit_code);
        }
        std::cout << "\n]\n";
        return worst;
    }
    if (positional.empty()) {
        std::cerr << "usage: c2f <command> [args] [@ \"<field>\"] [--field SPEC] [--seed N] "
                     "[--budget N] [--json]\n"
                     "       c2f batch <file>\n"
                     "commands: info arf witt isotropy albert linkage pfisterhyp h4reduce "
                     "h3reduce subalbert u\n";
        return 1;
    }
    std::string line;
    for (size_t i = 0; i < positional.size(); ++i) {
        if (i) line += " ";
        bool needs_quotes = positional[i].find(' ') != std::string::npos ||
                            positional[i].find('|') != std::string::npos;
        line += needs_quotes ? "\"" + positional[i] + "\"" : positional[i];
    }
    CliResult r = run_command_line(line, opt);
    std::cout << r.json << "\n";
    return r.exit_code;
}

}  // namespace c2f
