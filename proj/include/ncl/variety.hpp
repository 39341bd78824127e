#pragma once

// Schemes of finite type over F_q as disjoint unions of affine charts.

#include "ncl/ff.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ncl {

/// Tuples enumerated per chart and degree before EnumerationTooLarge.
inline constexpr std::uint64_t kDefaultPointBudget = 100'000'000;

struct Term {
    std::vector<int> exps;
    std::uint32_t coeff;  // code in the base field
};

/// Polynomial over the base field in a fixed number of variables.
class Polynomial {
public:
    Polynomial(FqField base, int nvars);
    static Polynomial constant(const FqField& base, int nvars, std::int64_t c);
    static Polynomial variable(const FqField& base, int nvars, int i);
    static Polynomial from_terms(const FqField& base, int nvars, const std::vector<Term>& terms);

    const FqField& base() const { return base_; }
    int nvars() const { return nvars_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree_in(int var) const;

    Polynomial operator+(const Polynomial& b) const;
    Polynomial operator-(const Polynomial& b) const;
    Polynomial operator*(const Polynomial& b) const;
    Polynomial pow(int k) const;
    bool operator==(const Polynomial& b) const { return nvars_ == b.nvars_ && terms_ == b.terms_; }

    /// Same polynomial in more variables (new ones appended).
    Polynomial with_vars(int nvars) const;
    /// Value at a point of an extension of the base (coordinates as codes of `field`).
    std::uint32_t eval(const FqField& field, const std::uint32_t* x) const;

    std::string to_string() const;

private:
    FqField base_;
    int nvars_;
    std::vector<Term> terms_;  // sorted by exponent vector, nonzero coefficients
    void normalize();
};

inline bool operator==(const Term& a, const Term& b) { return a.exps == b.exps && a.coeff == b.coeff; }

/// The last chart variable y satisfies y^r = f(x) over the other variables.
struct KummerFiber {
    int r;
    Polynomial f;
};

struct Chart {
    int nvars = 0;
    std::vector<Polynomial> eqs;
    std::vector<Polynomial> neqs;
    std::optional<KummerFiber> fiber;
    /// Variables the enumeration ranges over (nvars minus the fiber variable).
    int base_vars() const { return fiber ? nvars - 1 : nvars; }
    /// The fiber equation made explicit (for brute-force cross-checks).
    Chart explicit_form() const;
};

struct Scheme {
    FqField base;
    std::vector<Chart> charts;
    std::string name;
};

/// "A1", "Gm", "P1", "point(d)".
Scheme scheme_builtin(const std::string& name, const FqField& base);
Scheme scheme_affine(const FqField& base, int nvars, std::vector<Polynomial> eqs, std::vector<Polynomial> neqs,
                     std::string name = "");
Scheme scheme_disjoint_union(const Scheme& a, const Scheme& b);
/// (U, Z) = ({cut != 0}, {cut = 0}); single-chart schemes only.
std::pair<Scheme, Scheme> scheme_open_closed_split(const Scheme& s, const Polynomial& cut);
/// Y = {y^r = f} over every chart of X.
Scheme scheme_kummer_cover(const Scheme& x, int r, const Polynomial& f);
bool scheme_is_zero_dimensional(const Scheme& s);

/// Minimal polynomial over the base of the smallest-code element of exact degree d.
Polynomial degree_d_irreducible(const FqField& base, int d);

std::uint64_t scheme_point_counts(const Scheme& s, int n, std::uint64_t budget = kDefaultPointBudget);
std::vector<std::uint64_t> scheme_point_counts_upto(const Scheme& s, int n_max,
                                                    std::uint64_t budget = kDefaultPointBudget);

struct ClosedPoint {
    int degree = 1;
    int chart = 0;
    /// F_{q^degree} over the scheme's base.
    FqField field;
    /// Lexicographically smallest orbit element, as codes of `field`.
    std::vector<std::uint32_t> rep;

    /// rep, F(rep), ..., F^{d-1}(rep) with F the q-power map.
    std::vector<std::vector<std::uint32_t>> orbit() const;
};

/// Closed points of exact degree d in deterministic order (chart, then representative).
void scheme_for_each_closed_point(const Scheme& s, int d, const std::function<void(const ClosedPoint&)>& fn,
                                  std::uint64_t budget = kDefaultPointBudget);
std::vector<ClosedPoint> scheme_closed_points(const Scheme& s, int max_deg,
                                              std::uint64_t budget = kDefaultPointBudget);

/// Worker count for enumeration (NCL_THREADS or hardware concurrency by default).
void set_thread_count(unsigned n);
unsigned thread_count();

} // namespace ncl
