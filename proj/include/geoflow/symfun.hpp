#pragma once

// Symmetric speed functions f(lambda_1..lambda_n) expressed over the
// elementary symmetric polynomials S0..Sn plus the builtins `harmonic`
// (= Sn/S(n-1), the harmonic mean) and `mean` (= S1/n). Symmetry is
// structural: only symmetric primitives can appear, so every parsed
// expression is symmetric by construction.
//
// Grammar (EBNF):
//   expr    := term (("+"|"-") term)*
//   term    := factor (("*"|"/") factor)*
//   factor  := atom ("^" integer)?
//   atom    := number | symbol | builtin | "(" expr ")" | "-" atom
//   symbol  := "S" integer          (0 <= index <= 32)
//   builtin := "harmonic" | "mean"
//   number  := decimal literal
//
// Power exponents are integers with |e| <= 16. A zero literal appearing
// directly as a divisor is rejected at parse time.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "geoflow/constants.hpp"
#include "geoflow/errors.hpp"

namespace geoflow {

enum class NodeKind { Number, Symbol, Builtin, Add, Sub, Mul, Div, Pow, Neg };
enum class BuiltinFn { Harmonic, Mean };

struct ExprNode {
    NodeKind kind;
    double number = 0.0;       // Number
    int symbol_index = 0;      // Symbol
    BuiltinFn builtin{};       // Builtin
    int exponent = 0;          // Pow
    std::unique_ptr<ExprNode> lhs;  // left child / sole child of Pow, Neg
    std::unique_ptr<ExprNode> rhs;  // right child of binary ops
    std::size_t begin = 0;     // byte span in the source text
    std::size_t end = 0;
};

// Immutable parsed speed function. Copies share the AST.
struct SpeedExpr {
    std::shared_ptr<const ExprNode> root;
    std::string source;  // original text, kept for error context

    // Largest symbol index appearing in the expression (-1 if none).
    int max_symbol_index() const;
    // True if the expression is exactly the `harmonic` builtin.
    bool is_harmonic() const;
};

SpeedExpr parse_speed(std::string_view text);

// Canonical text form; reparsing it yields a structurally identical AST.
std::string pretty_print(const SpeedExpr& expr);

// Structural AST equality (numbers compared exactly).
bool same_ast(const SpeedExpr& a, const SpeedExpr& b);

// Elementary symmetric values S0..Sn of the given principal curvatures,
// computed by the one-pass coefficient recurrence of prod_i (x + lambda_i).
// Entries are sorted ascending internally, so any permutation of the input
// produces bit-identical output. Templated so the same code path yields dual
// derivatives; see eval_speed_with / grad_speed.
template <class T>
std::vector<T> eval_elementary_t(std::vector<T> lambda) {
    const std::size_t n = lambda.size();
    for (auto& x : lambda) {
        if (x == T(0.0)) x = T(0.0);  // normalize -0 so sorting is canonical
    }
    std::sort(lambda.begin(), lambda.end());
    std::vector<T> s(n + 1, T(0.0));
    s[0] = T(1.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t m = i + 1; m >= 1; --m) {
            s[m] = s[m] + lambda[i] * s[m - 1];
        }
    }
    return s;
}

std::vector<double> eval_elementary(const std::vector<double>& lambda);

// Value of the speed function at lambda. Permutation invariant bit-for-bit
// (only S-values enter). Throws EvalError on division by zero (naming the
// offending subexpression) or when a symbol index exceeds n.
double eval_speed(const SpeedExpr& expr, const std::vector<double>& lambda);

// Gradient dF/dlambda_i via forward-mode dual arithmetic (exact to roundoff).
std::vector<double> grad_speed(const SpeedExpr& expr, const std::vector<double>& lambda);

enum class Parabolicity { Parabolic, BackwardsParabolic, FirstOrder, Indefinite };

struct ParabolicityReport {
    Parabolicity verdict;
    double min_gradient;      // extrema of dF/dlambda_i over all valid samples
    double max_gradient;
    int samples_requested;
    int samples_evaluated;    // samples that evaluated without error
    int samples_errored;      // skipped (counted) samples
    std::uint64_t seed;       // recorded so the report is reproducible
};

// Samples `samples` points deterministically (seeded xorshift-free mt19937_64
// with an explicit bit-to-double mapping) from the box
// lambda_i in [0.05, 20]^n and classifies the flow by the sign pattern of the
// sampled gradient: all |g| <= 1e-9 => first-order; min > 0 => parabolic;
// max < 0 => backwards-parabolic; otherwise indefinite.
ParabolicityReport check_parabolic(const SpeedExpr& expr, int n, int samples,
                                   std::uint64_t seed = kDefaultSeed);

namespace detail {

// Uniform double in [0,1) from the top 53 bits of a 64-bit word; used instead
// of std::uniform_real_distribution for cross-platform determinism.
inline double u01_from_bits(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace detail

}  // namespace geoflow
