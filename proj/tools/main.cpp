#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "g2cm/harness.hpp"

namespace {

using namespace g2cm;

// <curve> arguments accept either a path to a one-line JSON file or an
// inline JSON object {"label":..., "p":..., "f":[c0..c4]}.
CurveSpec load_curve_arg(const std::string& arg) {
    std::string text = arg;
    if (!arg.empty() && arg[0] != '{') {
        std::ifstream in(arg);
        if (!in) throw Error("cannot open curve file: " + arg);
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
        // allow corpus files: take the first non-blank line
        std::istringstream lines(text);
        std::string line;
        while (std::getline(lines, line)) {
            if (line.find_first_not_of(" \t\r\n") != std::string::npos) {
                text = line;
                break;
            }
        }
    }
    return curve_spec_from_json(text);
}

int run_analyze(const std::string& curve_arg, const ScanConfig& cfg) {
    CurveSpec spec = load_curve_arg(curve_arg);
    GenusTwoCurve C = spec.build();
    CurveAnalysis a = analyze_curve(C, cfg.count_budget);
    std::cout << "curve " << spec.label << ": y^2 = " << C.f.str() << " over F_"
              << C.base->characteristic().get_str() << "\n";
    std::cout << "weil polynomial P(X) = " << a.P.str() << "\n";
    std::cout << "|J(F_p)| = P(1) = " << a.order.get_str() << "\n";
    std::cout << "cm field: " << galois_type_name(a.galois)
              << (a.primitive ? " (primitive)" : " (not primitive)") << ", disc(P) = "
              << a.disc.get_str() << "\n";
    EllSplit split = eligible_ell_candidates(a.P, cfg.ell_max);
    std::cout << "odd prime factors of P(1) up to " << cfg.ell_max << ":";
    for (u64 ell : split.ells) std::cout << " " << ell;
    if (split.oversized > 1) std::cout << " (oversized cofactor " << split.oversized.get_str() << ")";
    std::cout << "\n";
    for (u64 ell : split.ells) {
        HypothesisReport h = check_hypotheses(a.P, ell);
        std::cout << "  ell=" << ell << ": " << h.overall;
        if (h.eligible()) {
            unsigned k = multiplicative_order(a.P.p, ell);
            std::cout << " k=" << k;
            try {
                unsigned kappa = full_embedding_degree(a.P, ell);
                std::cout << " kappa=" << kappa;
            } catch (const CapExceeded&) {
                std::cout << " kappa>10000";
            }
        }
        std::cout << "\n";
    }
    return 0;
}

int run_scan(const std::string& corpus_path, const std::string& out_path,
             const std::string& summary_path, const ScanConfig& cfg) {
    std::ifstream corpus(corpus_path);
    if (!corpus) {
        std::cerr << "cannot open corpus: " << corpus_path << "\n";
        return 3;
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "cannot open output: " << out_path << "\n";
        return 3;
    }
    std::ofstream summary;
    std::ostream* summary_ptr = nullptr;
    if (!summary_path.empty()) {
        summary.open(summary_path);
        if (!summary) {
            std::cerr << "cannot open summary: " << summary_path << "\n";
            return 3;
        }
        summary_ptr = &summary;
    }
    return scan(corpus, out, summary_ptr, cfg, &std::cerr);
}

int run_pairing_check(const std::string& curve_arg, u64 ell, const ScanConfig& cfg) {
    CurveSpec spec = load_curve_arg(curve_arg);
    GenusTwoCurve C = spec.build();
    WeilPolynomial P = weil_polynomial(C, cfg.count_budget);
    HypothesisReport h = check_hypotheses(P, ell);
    std::cout << "hypotheses: " << h.overall << "\n";
    if (!h.eligible()) return 0;
    unsigned kappa = full_embedding_degree(P, ell);
    if (kappa > cfg.max_kappa) {
        std::cout << "kappa = " << kappa << " exceeds --max-kappa\n";
        return 0;
    }
    SeedStream seed = SeedStream(cfg.seed).fork(spec.label + "#pairing-check");
    BasisOutcome out = torsion_basis(C, ell, kappa, seed.fork("basis"), cfg.torsion);
    if (!out.basis) {
        std::cout << "torsion basis construction stalled at rank " << out.certified_rank << "\n";
        return 2;
    }
    const TorsionBasis& B = *out.basis;
    SeedStream rng = seed.fork("axioms");
    const PairingContext& ctx = B.ctx;
    bool ok = true;
    // anti-symmetry and ell-th power triviality on the basis points
    for (const MumfordDivisor& b : B.pts) {
        FieldElement self = weil(ctx, b, b, rng);
        ok &= self == ctx.E->one();
    }
    for (int i = 0; i < 4; ++i) {
        FieldElement z = weil(ctx, B.pts[i], B.pts[(i + 1) % 4], rng);
        ok &= field_pow(z, Int(static_cast<unsigned long>(ell))) == ctx.E->one();
    }
    // bilinearity samples
    for (int t = 0; t < 8; ++t) {
        u64 a = 1 + rng.below(ell - 1);
        const MumfordDivisor& x = B.pts[rng.below(4)];
        const MumfordDivisor& y = B.pts[rng.below(4)];
        FieldElement lhs = weil(ctx, scalar_mul(C, x, Int(static_cast<unsigned long>(a))), y, rng);
        FieldElement rhs = field_pow(weil(ctx, x, y, rng), Int(static_cast<unsigned long>(a)));
        ok &= lhs == rhs;
    }
    bool gram_ok = matl_det(B.gram) != 0;
    std::cout << "ell = " << ell << ", kappa = " << kappa << "\n";
    std::cout << "basis: 4 points, gram nonsingular: " << (gram_ok ? "yes" : "NO") << "\n";
    std::cout << "pairing axioms (anti-symmetry, mu_ell values, bilinearity): "
              << (ok ? "pass" : "FAIL") << "\n";
    return (ok && gram_ok) ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"genus-2 Jacobian pairing and torsion analyzer"};
    app.require_subcommand(1);

    ScanConfig cfg;
    u64 seed = 0;
    unsigned max_kappa = 64, m_max = 64;
    u64 ell_max = 8192;
    long long enum_bound = 1000000;
    app.add_option("--seed", seed, "PRNG seed (default 0)");
    app.add_option("--max-kappa", max_kappa, "largest full embedding degree handled");
    app.add_option("--ell-max", ell_max, "largest torsion prime considered");
    app.add_option("--m-max", m_max, "largest extension degree m in part (i) rows");
    app.add_option("--enum-bound", enum_bound, "point-counting enumeration budget");

    std::string curve_arg, corpus_path, out_path, summary_path;
    u64 ell = 0;

    CLI::App* analyze = app.add_subcommand("analyze", "print P, |J|, CM classification");
    analyze->add_option("curve", curve_arg, "curve JSON (inline or file)")->required();

    CLI::App* scan_cmd = app.add_subcommand("scan", "verify the corpus and write reports");
    scan_cmd->add_option("--corpus", corpus_path, "corpus JSONL file")->required();
    scan_cmd->add_option("--out", out_path, "report JSONL output")->required();
    scan_cmd->add_option("--summary", summary_path, "summary CSV output");

    CLI::App* pc = app.add_subcommand("pairing-check", "exercise the pairings on one curve");
    pc->add_option("curve", curve_arg, "curve JSON (inline or file)")->required();
    pc->add_option("--ell", ell, "torsion prime")->required();

    CLI11_PARSE(app, argc, argv);

    cfg.seed = seed;
    cfg.max_kappa = max_kappa;
    cfg.ell_max = ell_max;
    cfg.m_max = m_max;
    cfg.count_budget = Int(static_cast<long>(enum_bound));

    try {
        if (app.got_subcommand(analyze)) return run_analyze(curve_arg, cfg);
        if (app.got_subcommand(scan_cmd)) return run_scan(corpus_path, out_path, summary_path, cfg);
        if (app.got_subcommand(pc)) return run_pairing_check(curve_arg, ell, cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
