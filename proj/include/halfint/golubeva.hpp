#pragma once

// The ternary representation problem n = x^2 + y^2 + 6 P z^2 in positive
// integers: threshold evaluation, a two-squares witness finder (factorization
// criterion plus Cornacchia descent and composition), the solver, grid scans,
// and the gamma thresholds with the mixed-power representability scanner.

#include <optional>
#include <string>
#include <vector>

#include "halfint/arith.hpp"
#include "halfint/bigint.hpp"

namespace halfint::golubeva {

struct ThresholdCheck {
    u64 n = 0;
    u64 P = 0;
    double eps = 0.0;
    u64 t = 1;  // n = t v^2, t squarefree (v absorbs the whole square part)
    u64 v = 1;
    bool min_condition = false;       // P^{1+eps} <= min of the three terms
    std::string binding_term;         // which of the three terms attains the min
    double margin = 0.0;              // log(min term) - (1+eps) log P
    bool sufficient_condition = false;  // n v^{28/3} > P^{17+eps}
    double sufficient_margin = 0.0;
};

ThresholdCheck threshold_check(u64 n, u64 P, double eps);

// Witness x^2 + y^2 = m with x, y >= 1 (x <= y), if one exists.
std::optional<std::pair<u64, u64>> sum_two_squares_witness(u64 m);

struct Witness {
    u64 x = 0, y = 0, z = 0;
};

// First witness of n = x^2 + y^2 + 6 P z^2 with x, y, z >= 1, by increasing z.
std::optional<Witness> solve(u64 n, u64 P);

struct ScanRecord {
    u64 n = 0;
    u64 t = 1, v = 1;
    bool threshold_pass = false;
    bool sufficient_pass = false;
    std::string binding_term;
    double margin = 0.0;
    bool solvable = false;
    std::optional<Witness> witness;
    double error_shape = 0.0;  // v^{1/2} (t^{13/28} P^{3/28} + t^{7/16} P^{3/16} + t^{1/4} P^{1/4})
    std::optional<u64> r_exact;
    std::optional<double> siegel;
};

struct ScanSummary {
    u64 admissible = 0;
    u64 threshold_passing = 0;
    u64 solvable_all = 0;
    u64 solvable_threshold_passing = 0;
};

struct GolubevaScan {
    std::vector<ScanRecord> records;
    ScanSummary summary;
};

// Scan gcd(n, 6P) = 1 over [n_min, n_max] (range at most 10^6). with_counts
// additionally tabulates r(q, n) and the Siegel main term per record.
GolubevaScan scan(u64 P, u64 n_min, u64 n_max, double eps = 0.01, bool with_counts = false,
                  int jobs = 1);

// gamma(k) = prod (1 - 1/k_i); gamma_tilde(k) = (1 - 1/k_t) prod_{i<=t-2} (1 - 1/k_i).
BigRat gamma(const std::vector<u64>& exponents);
BigRat gamma_tilde(const std::vector<u64>& exponents);

struct MixedWitness {
    u64 x1 = 0, x2 = 0, x3 = 0, x4 = 0;  // squares and cubes
    std::vector<u64> y;                   // y_j^{k_j}
};

// x1^2 + x2^2 + x3^3 + x4^3 + sum y_j^{k_j} = n with every variable >= 1.
std::optional<MixedWitness> mixed_power_representable(u64 n, const std::vector<u64>& exponents);

}  // namespace halfint::golubeva
