#include "g2cm/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace g2cm {

using ordered_json = nlohmann::ordered_json;

GenusTwoCurve CurveSpec::build() const {
    std::vector<Int> c(f_low.begin(), f_low.end());
    c.push_back(1);
    return curve_new(p, c);
}

QuarticPolynomial weil_as_quartic(const WeilPolynomial& P) {
    return QuarticPolynomial{-P.a1, P.a2, -P.p * P.a1, P.p * P.p};
}

bool TheoremRecord::has_violation() const {
    for (const TheoremRow& r : rows)
        if (r.verdict == "VIOLATION") return true;
    if (weil_nondeg_over_k.has_value() && !*weil_nondeg_over_k) return true;
    if (uv_nondeg == "false") return true;
    return false;
}

HypothesisReport check_hypotheses(const WeilPolynomial& P, u64 ell) {
    HypothesisReport h;
    h.ell_odd = (ell % 2 == 1) && ell > 1 && is_prime_u64(ell);
    Int order = P.order();
    h.ell_divides_order = h.ell_odd && mod_u64(order, ell) == 0;
    h.ell_not_p = mod_u64(P.p, ell) != 0;
    h.ell_not_p_minus_1 = mod_u64(P.p - 1, ell) != 0;
    QuarticPolynomial q = weil_as_quartic(P);
    h.p_irreducible = is_irreducible_quartic(q);
    h.unramified = h.p_irreducible ? ell_ramification(q, ell) : Ramification::Indeterminate;
    if (h.p_irreducible) {
        GaloisType t = classify_galois(q);
        h.primitive_cm = (t == GaloisType::C4 || t == GaloisType::D4_or_NonGalois);
    }
    if (!h.ell_odd)
        h.overall = (ell == 2) ? "Skipped(EllEven)" : "Skipped(EllNotOddPrime)";
    else if (!h.ell_not_p)
        h.overall = "Skipped(EllDividesP)";
    else if (!h.ell_divides_order)
        h.overall = "Skipped(EllDoesNotDivideOrder)";
    else if (!h.ell_not_p_minus_1)
        h.overall = "Skipped(EllDividesPMinus1)";
    else if (!h.p_irreducible)
        h.overall = "Skipped(PNotIrreducible)";
    else if (!h.primitive_cm)
        h.overall = "Skipped(NotPrimitive)";
    else if (h.unramified != Ramification::Unramified)
        h.overall = "Skipped(RamificationIndeterminate)";
    else
        h.overall = "Eligible";
    return h;
}

namespace {

bool divides_pm_minus_1(const Int& p, unsigned m, u64 ell) {
    Int ell_i(static_cast<unsigned long>(ell));
    Int pm;
    mpz_powm_ui(pm.get_mpz_t(), p.get_mpz_t(), m, ell_i.get_mpz_t());
    return pm == 1;
}

QuarticPolynomial quartic_from_charpoly(const std::array<Int, 5>& c) {
    return QuarticPolynomial{c[3], c[2], c[1], c[0]};
}

bool charpoly_squarefree_mod_ell(const MatL& Mm) {
    FieldRef F = Field::prime_field(Int(static_cast<unsigned long>(Mm.ell)));
    auto c = matl_charpoly(Mm);
    Poly pb = Poly::from_u64(F, {c[0], c[1], c[2], c[3], c[4]});
    return poly_gcd(pb, pb.derivative()).deg() == 0;
}

}  // namespace

TheoremRecord analyze_instance(const std::string& label, const GenusTwoCurve& C,
                               const WeilPolynomial& P, u64 ell, const ScanConfig& cfg) {
    TheoremRecord rec;
    rec.label = label;
    rec.ell = ell;
    rec.hypotheses = check_hypotheses(P, ell);
    rec.status = rec.hypotheses.overall;
    if (!rec.hypotheses.eligible()) return rec;

    SeedStream seed = SeedStream(cfg.seed).fork(label + "#" + std::to_string(ell));
    try {
        rec.k = multiplicative_order(P.p, ell);
        unsigned kappa = 0;
        try {
            kappa = full_embedding_degree(P, ell);
        } catch (const CapExceeded&) {
            rec.status = "Skipped(KappaTooLarge)";
            return rec;
        }
        if (kappa > cfg.max_kappa) {
            rec.kappa = kappa;
            rec.status = "Skipped(KappaTooLarge)";
            return rec;
        }
        rec.kappa = kappa;
        if (kappa % rec.k != 0)
            throw Error("full embedding degree is not a multiple of the embedding degree");

        BasisOutcome out = torsion_basis(C, ell, kappa, seed.fork("basis"), cfg.torsion);
        if (!out.basis) {
            unsigned tr = ratio_twist_rank(P, ell, kappa);
            if (tr < 4) {
                std::ostringstream os;
                os << "Tate-ratio pairing degenerate on J[ell] (twist rank " << tr
                   << "); basis not certifiable";
                throw PairingFailure(os.str());
            }
            throw SamplingBudgetExceeded("full torsion basis not reached at kappa");
        }
        const TorsionBasis& B = *out.basis;
        SeedStream prng = seed.fork("pairings");
        FrobeniusMatrix M = frobenius_matrix(B, P, prng);

        rec.rows = verify_theorem_i(P, M, ell, std::min(2 * kappa, cfg.m_max));
        rec.weil_nondeg_over_k = verify_theorem_ii(B, M, rec.k, prng);
        SeedStream urng = seed.fork("uv");
        auto uv = verify_uv(B, M, urng, cfg.torsion.samples);
        rec.uv_nondeg = uv.has_value() ? (*uv ? "true" : "false") : "NotApplicable";
    } catch (const Error& e) {
        rec.status = std::string("Error(") + e.what() + ")";
        return rec;
    }
    return rec;
}

std::vector<TheoremRow> verify_theorem_i(const WeilPolynomial& P, const FrobeniusMatrix& M,
                                         u64 ell, unsigned m_top) {
    std::vector<TheoremRow> rows;
    MatL Mm = MatL::identity(ell);
    Mat4 Cm;
    for (unsigned i = 0; i < 4; ++i)
        for (unsigned j = 0; j < 4; ++j) Cm[i][j] = (i == j) ? 1 : 0;
    Mat4 C1 = companion_int(P);
    for (unsigned m = 1; m <= m_top; ++m) {
        Mm = matl_mul(Mm, M.M);
        Cm = mat4_mul(Cm, C1);
        TheoremRow row;
        row.m = m;
        row.rank = 4 - matl_rank(matl_sub(Mm, MatL::identity(ell)));
        row.ell_divides_pm_minus_1 = divides_pm_minus_1(P.p, m, ell);
        MatL M2m = matl_mul(Mm, Mm);
        row.omega_is_one = Mm == MatL::identity(ell);
        row.omega_sq_is_one = M2m == MatL::identity(ell);
        row.pm_irreducible = is_irreducible_quartic(quartic_from_charpoly(mat4_charpoly(Cm)));
        row.pbar_m_squarefree = charpoly_squarefree_mod_ell(Mm);
        if (row.omega_sq_is_one) {
            row.verdict = "NotApplicable";
        } else {
            bool bicyclic = row.rank == 2;
            row.verdict =
                (bicyclic == row.ell_divides_pm_minus_1) ? "ConfirmsTheoremI" : "VIOLATION";
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

// generator of the basis span for a mod-ell coordinate vector
static MumfordDivisor materialize(const TorsionBasis& B, const std::array<u64, 4>& w) {
    const GenusTwoCurve& C = B.ctx.C;
    MumfordDivisor g = mumford_identity(B.ctx.W);
    for (int i = 0; i < 4; ++i) {
        if (w[i] == 0) continue;
        g = cantor_add(C, g, scalar_mul(C, B.pts[i], Int(static_cast<unsigned long>(w[i]))));
    }
    return g;
}

bool verify_theorem_ii(const TorsionBasis& B, const FrobeniusMatrix& M, unsigned k,
                       SeedStream& rng) {
    // generators of J(F_{p^k})[ell] pulled back through the basis,
    // nondegeneracy measured with fresh pairing evaluations
    u64 ell = B.ell;
    MatL Mk = matl_pow(M.M, Int(static_cast<unsigned long>(k)));
    auto kernel = matl_kernel(matl_sub(Mk, MatL::identity(ell)));
    unsigned r = static_cast<unsigned>(kernel.size());
    std::vector<MumfordDivisor> gens;
    for (const auto& w : kernel) {
        MumfordDivisor g = materialize(B, w);
        MumfordDivisor probe = g;
        for (unsigned j = 0; j < k; ++j) probe = frobenius_map(probe);
        if (!(probe == g)) throw Error("generator is not rational over F_{p^k}");
        gens.push_back(std::move(g));
    }
    return nondegenerate_on(B.ctx, gens, gens, r, r, B.zeta, rng);
}

std::optional<bool> verify_uv(const TorsionBasis& B, const FrobeniusMatrix& M, SeedStream& rng,
                              unsigned sample_budget) {
    u64 ell = B.ell;
    const GenusTwoCurve& C = B.ctx.C;
    unsigned k = multiplicative_order(C.base->characteristic(), ell);
    if (omega_conditions(M, k).omega_is_one) return std::nullopt;

    // U = J(F_p)[ell] from an actual F_p-rational sample, V = ker(phi - p)
    // pulled back through the basis; both must be lines in this regime
    auto kerU = matl_kernel(matl_sub(M.M, MatL::identity(ell)));
    u64 p_mod = mod_u64(C.base->characteristic(), ell);
    auto kerV = matl_kernel(matl_sub(M.M, MatL::scalar(ell, p_mod)));
    if (kerU.size() != 1 || kerV.size() != 1) return false;

    WeilPolynomial P = weil_polynomial(C);
    Int N1 = P.order();
    unsigned v1 = valuation(N1, ell);
    Int cof = N1;
    for (unsigned i = 0; i < v1; ++i) cof /= static_cast<unsigned long>(ell);
    auto u_pt = sample_ell_torsion_point(C, C.base, ell, cof, v1, rng, sample_budget);
    if (!u_pt) throw SamplingBudgetExceeded("no F_p-rational ell-torsion point");
    MumfordDivisor U = embed_divisor(*u_pt, B.ctx.W);
    MumfordDivisor V = materialize(B, kerV[0]);
    return nondegenerate_on(B.ctx, {U}, {V}, 1, 1, B.zeta, rng);
}

EllSplit eligible_ell_candidates(const WeilPolynomial& P, u64 ell_max) {
    EllSplit out;
    Int n = P.order();
    if (n < 0) n = -n;
    while (n != 0 && mod_u64(n, 2) == 0) n /= 2;  // even part is out of scope
    for (u64 ell = 3; ell <= ell_max && n > 1; ell += 2) {
        if (!is_prime_u64(ell)) continue;
        if (mod_u64(n, ell) != 0) continue;
        out.ells.push_back(ell);
        while (mod_u64(n, ell) == 0) n /= static_cast<unsigned long>(ell);
    }
    out.oversized = n;
    return out;
}

// ---------------------------------------------------------------- reports

namespace {

ordered_json hypotheses_to_json(const HypothesisReport& h) {
    ordered_json j;
    j["ell_odd"] = h.ell_odd;
    j["ell_divides_order"] = h.ell_divides_order;
    j["ell_not_p"] = h.ell_not_p;
    j["ell_not_p_minus_1"] = h.ell_not_p_minus_1;
    j["unramified"] = h.unramified == Ramification::Unramified ? "Unramified" : "Indeterminate";
    j["p_irreducible"] = h.p_irreducible;
    j["primitive_cm"] = h.primitive_cm;
    j["end_ring"] = h.end_ring;
    j["overall"] = h.overall;
    return j;
}

HypothesisReport hypotheses_from_json(const ordered_json& j) {
    HypothesisReport h;
    h.ell_odd = j.at("ell_odd").get<bool>();
    h.ell_divides_order = j.at("ell_divides_order").get<bool>();
    h.ell_not_p = j.at("ell_not_p").get<bool>();
    h.ell_not_p_minus_1 = j.at("ell_not_p_minus_1").get<bool>();
    h.unramified = j.at("unramified").get<std::string>() == "Unramified"
                       ? Ramification::Unramified
                       : Ramification::Indeterminate;
    h.p_irreducible = j.at("p_irreducible").get<bool>();
    h.primitive_cm = j.at("primitive_cm").get<bool>();
    h.end_ring = j.at("end_ring").get<std::string>();
    h.overall = j.at("overall").get<std::string>();
    return h;
}

}  // namespace

std::string record_to_json(const TheoremRecord& r) {
    ordered_json j;
    j["label"] = r.label;
    j["ell"] = r.ell;
    j["k"] = r.k;
    j["kappa"] = r.kappa;
    j["status"] = r.status;
    j["hypotheses"] = hypotheses_to_json(r.hypotheses);
    ordered_json rows = ordered_json::array();
    for (const TheoremRow& row : r.rows) {
        ordered_json q;
        q["m"] = row.m;
        q["rank"] = row.rank;
        q["ell_divides_pm_minus_1"] = row.ell_divides_pm_minus_1;
        q["omega_is_one"] = row.omega_is_one;
        q["omega_sq_is_one"] = row.omega_sq_is_one;
        q["pm_irreducible"] = row.pm_irreducible;
        q["pbar_m_squarefree"] = row.pbar_m_squarefree;
        q["verdict"] = row.verdict;
        rows.push_back(std::move(q));
    }
    j["rows"] = std::move(rows);
    if (r.weil_nondeg_over_k.has_value())
        j["weil_nondeg_over_k"] = *r.weil_nondeg_over_k;
    else
        j["weil_nondeg_over_k"] = nullptr;
    j["uv_nondeg"] = r.uv_nondeg;
    return j.dump();
}

TheoremRecord record_from_json(const std::string& line) {
    ordered_json j = ordered_json::parse(line);
    TheoremRecord r;
    r.label = j.at("label").get<std::string>();
    r.ell = j.at("ell").get<u64>();
    r.k = j.at("k").get<unsigned>();
    r.kappa = j.at("kappa").get<unsigned>();
    r.status = j.at("status").get<std::string>();
    r.hypotheses = hypotheses_from_json(j.at("hypotheses"));
    for (const auto& q : j.at("rows")) {
        TheoremRow row;
        row.m = q.at("m").get<unsigned>();
        row.rank = q.at("rank").get<unsigned>();
        row.ell_divides_pm_minus_1 = q.at("ell_divides_pm_minus_1").get<bool>();
        row.omega_is_one = q.at("omega_is_one").get<bool>();
        row.omega_sq_is_one = q.at("omega_sq_is_one").get<bool>();
        row.pm_irreducible = q.at("pm_irreducible").get<bool>();
        row.pbar_m_squarefree = q.at("pbar_m_squarefree").get<bool>();
        row.verdict = q.at("verdict").get<std::string>();
        r.rows.push_back(std::move(row));
    }
    if (!j.at("weil_nondeg_over_k").is_null())
        r.weil_nondeg_over_k = j.at("weil_nondeg_over_k").get<bool>();
    r.uv_nondeg = j.at("uv_nondeg").get<std::string>();
    return r;
}

std::string summary_csv_header() { return "label,ell,k,kappa,n_confirms,n_not_applicable,status"; }

std::string summary_csv_row(const TheoremRecord& r) {
    unsigned confirms = 0, na = 0;
    for (const TheoremRow& row : r.rows) {
        if (row.verdict == "ConfirmsTheoremI") ++confirms;
        if (row.verdict == "NotApplicable") ++na;
    }
    std::ostringstream os;
    os << r.label << "," << r.ell << "," << r.k << "," << r.kappa << "," << confirms << "," << na
       << "," << r.status;
    return os.str();
}

CurveSpec curve_spec_from_json(const std::string& line) {
    ordered_json j = ordered_json::parse(line);
    CurveSpec spec;
    spec.label = j.at("label").get<std::string>();
    spec.p = Int(static_cast<long>(j.at("p").get<long long>()));
    const auto& f = j.at("f");
    if (!f.is_array() || f.size() != 5)
        throw Error("corpus entry: f must list the 5 low coefficients");
    for (size_t i = 0; i < 5; ++i) spec.f_low[i] = Int(static_cast<long>(f[i].get<long long>()));
    if (j.contains("cm_note")) spec.cm_note = j.at("cm_note").get<std::string>();
    return spec;
}

std::vector<CurveSpec> load_corpus(std::istream& in) {
    std::vector<CurveSpec> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        out.push_back(curve_spec_from_json(line));
    }
    return out;
}

CurveAnalysis analyze_curve(const GenusTwoCurve& C, const Int& count_budget) {
    CurveAnalysis a{weil_polynomial(C, count_budget), 0, GaloisType::NotIrreducible, false, 0};
    a.order = a.P.order();
    QuarticPolynomial q = weil_as_quartic(a.P);
    a.galois = classify_galois(q);
    a.primitive = a.galois == GaloisType::C4 || a.galois == GaloisType::D4_or_NonGalois;
    a.disc = discriminant(q);
    return a;
}

int scan(std::istream& corpus, std::ostream& report, std::ostream* summary,
         const ScanConfig& cfg, std::ostream* diagnostics) {
    std::vector<CurveSpec> specs;
    try {
        specs = load_corpus(corpus);
    } catch (const std::exception& e) {
        if (diagnostics) *diagnostics << "corpus error: " << e.what() << "\n";
        return 3;
    }

    struct Instance {
        std::string label;
        std::optional<GenusTwoCurve> C;
        std::optional<WeilPolynomial> P;
        u64 ell = 0;
        std::string pre_error;  // curve-level failure
        Int oversized = 1;
    };
    std::vector<Instance> instances;
    for (const CurveSpec& spec : specs) {
        try {
            GenusTwoCurve C = spec.build();
            WeilPolynomial P = weil_polynomial(C, cfg.count_budget);
            EllSplit split = eligible_ell_candidates(P, cfg.ell_max);
            for (u64 ell : split.ells)
                instances.push_back(Instance{spec.label, C, P, ell, "", 1});
            if (split.oversized > 1)
                instances.push_back(Instance{spec.label, C, P, 0, "", split.oversized});
        } catch (const std::exception& e) {
            instances.push_back(Instance{spec.label, std::nullopt, std::nullopt, 0,
                                         std::string(e.what()), 1});
        }
    }

    unsigned threads = cfg.threads;
    if (threads == 0) {
        if (const char* env = std::getenv("G2CM_THREADS")) {
            long v = std::atol(env);
            if (v > 0) threads = static_cast<unsigned>(v);
        }
    }
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, std::max<size_t>(instances.size(), 1));

    std::vector<TheoremRecord> records(instances.size());
    std::atomic<size_t> next{0};
    std::atomic<bool> violated{false};
    auto worker = [&]() {
        while (!violated.load()) {
            size_t i = next.fetch_add(1);
            if (i >= instances.size()) break;
            const Instance& inst = instances[i];
            TheoremRecord rec;
            rec.label = inst.label;
            rec.ell = inst.ell;
            if (!inst.pre_error.empty()) {
                rec.status = "Error(" + inst.pre_error + ")";
            } else if (inst.ell == 0) {
                rec.status = "Skipped(EllTooLarge)";
                rec.ell = fits_u64(inst.oversized) ? to_u64(inst.oversized) : 0;
            } else {
                try {
                    rec = analyze_instance(inst.label, *inst.C, *inst.P, inst.ell, cfg);
                } catch (const std::exception& e) {
                    rec.status = std::string("Error(") + e.what() + ")";
                }
            }
            if (rec.has_violation()) violated.store(true);
            records[i] = std::move(rec);
        }
    };
    {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    size_t done = std::min(next.load(), instances.size());
    std::vector<TheoremRecord> emitted(records.begin(), records.begin() + done);
    std::stable_sort(emitted.begin(), emitted.end(),
                     [](const TheoremRecord& a, const TheoremRecord& b) {
                         if (a.label != b.label) return a.label < b.label;
                         return a.ell < b.ell;
                     });
    for (const TheoremRecord& r : emitted) report << record_to_json(r) << "\n";
    if (summary) {
        *summary << summary_csv_header() << "\n";
        for (const TheoremRecord& r : emitted) *summary << summary_csv_row(r) << "\n";
    }
    bool any_violation = false;
    for (const TheoremRecord& r : emitted) any_violation |= r.has_violation();
    if (any_violation) {
        if (diagnostics) *diagnostics << "VIOLATION recorded; aborting scan\n";
        return 2;
    }
    return 0;
}

}  // namespace g2cm
