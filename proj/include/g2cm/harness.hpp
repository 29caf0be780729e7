#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "g2cm/cmfield.hpp"
#include "g2cm/torsion.hpp"

namespace g2cm {

struct CurveSpec {
    std::string label;
    Int p;
    std::array<Int, 5> f_low;  // c0..c4 of the monic quintic
    std::optional<std::string> cm_note;

    GenusTwoCurve build() const;
};

struct HypothesisReport {
    bool ell_odd = false;
    bool ell_divides_order = false;
    bool ell_not_p = false;
    bool ell_not_p_minus_1 = false;
    Ramification unramified = Ramification::Indeterminate;
    bool p_irreducible = false;
    bool primitive_cm = false;
    std::string end_ring = "Assumed(EndIsMaximal)";
    std::string overall;  // "Eligible" or "Skipped(<Reason>)"

    bool eligible() const { return overall == "Eligible"; }
    bool operator==(const HypothesisReport&) const = default;
};

struct TheoremRow {
    unsigned m = 0;
    unsigned rank = 0;
    bool ell_divides_pm_minus_1 = false;
    bool omega_is_one = false;
    bool omega_sq_is_one = false;
    bool pm_irreducible = false;      // integer charpoly of Frobenius^m
    bool pbar_m_squarefree = false;   // its reduction mod ell
    std::string verdict;  // ConfirmsTheoremI | NotApplicable | VIOLATION

    bool operator==(const TheoremRow&) const = default;
};

struct TheoremRecord {
    std::string label;
    u64 ell = 0;
    unsigned k = 0;
    unsigned kappa = 0;
    std::string status;  // Eligible | Skipped(<Reason>) | Error(<what>)
    HypothesisReport hypotheses;
    std::vector<TheoremRow> rows;
    std::optional<bool> weil_nondeg_over_k;
    std::string uv_nondeg = "NotApplicable";  // "true" | "false" | "NotApplicable"

    bool has_violation() const;
    bool operator==(const TheoremRecord&) const = default;
};

struct ScanConfig {
    u64 seed = 0;
    unsigned max_kappa = 64;
    u64 ell_max = 8192;
    unsigned m_max = 64;
    Int count_budget = Int(1000000);  // p^m cap for the counting loops
    unsigned threads = 0;             // 0: G2CM_THREADS or hardware
    TorsionBudgets torsion;
};

// Hypothesis gate for one (curve, ell); never promotes Indeterminate
// ramification to Eligible.
HypothesisReport check_hypotheses(const WeilPolynomial& P, u64 ell);

// Full verification for one eligible (curve, ell): Frobenius matrix,
// per-m rows, Weil nondegeneracy over the embedding-degree field and the
// U x V check. Skips / errors are recorded in the status field.
TheoremRecord analyze_instance(const std::string& label, const GenusTwoCurve& C,
                               const WeilPolynomial& P, u64 ell, const ScanConfig& cfg);

// One row per m in 1..m_top: rank of J(F_{p^m})[ell] from the matrix,
// divisibility, the omega flags and the verdict.
std::vector<TheoremRow> verify_theorem_i(const WeilPolynomial& P, const FrobeniusMatrix& M,
                                         u64 ell, unsigned m_top);

// Weil nondegeneracy on J(F_{p^k})[ell] x J(F_{p^k})[ell], measured with
// fresh pairing evaluations on generators pulled back through the basis.
bool verify_theorem_ii(const TorsionBasis& B, const FrobeniusMatrix& M, unsigned k,
                       SeedStream& rng);

// Nondegeneracy on U x V with U = J(F_p)[ell] and V = ker(phi - p) in
// J[ell]; nullopt when omega_k = 1 (V degenerates).
std::optional<bool> verify_uv(const TorsionBasis& B, const FrobeniusMatrix& M, SeedStream& rng,
                              unsigned sample_budget = 1000);

// odd prime factors of P(1) up to ell_max, plus the leftover cofactor
// (1 when everything factored)
struct EllSplit {
    std::vector<u64> ells;
    Int oversized = 1;
};
EllSplit eligible_ell_candidates(const WeilPolynomial& P, u64 ell_max);

// JSON Lines record I/O (schema round-trips)
std::string record_to_json(const TheoremRecord& r);
TheoremRecord record_from_json(const std::string& line);
std::string summary_csv_header();
std::string summary_csv_row(const TheoremRecord& r);

// corpus JSONL: {"label": str, "p": int, "f": [c0..c4]}
CurveSpec curve_spec_from_json(const std::string& line);
std::vector<CurveSpec> load_corpus(std::istream& in);

// Scans the corpus, writes one record per (curve, ell) sorted by
// (label, ell), optionally a summary CSV. Returns the process exit code:
// 0 clean, 2 on any VIOLATION, 3 on I/O or config errors.
int scan(std::istream& corpus, std::ostream& report, std::ostream* summary,
         const ScanConfig& cfg, std::ostream* diagnostics = nullptr);

struct CurveAnalysis {
    WeilPolynomial P;
    Int order;  // |J(F_p)| = P(1)
    GaloisType galois;
    bool primitive;
    Int disc;
};
CurveAnalysis analyze_curve(const GenusTwoCurve& C, const Int& count_budget);

QuarticPolynomial weil_as_quartic(const WeilPolynomial& P);

}  // namespace g2cm
