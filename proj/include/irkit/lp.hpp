#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "irkit/rational.hpp"

namespace irkit {

enum class Sense { le, ge, eq };

// Optimize c.x subject to rows a_i.x (sense_i) b_i and x >= 0.
struct LinearProgram {
    std::vector<std::vector<Rational>> a;
    std::vector<Sense> sense;
    std::vector<Rational> b;
    std::vector<Rational> c;
    bool maximize = true;

    std::size_t rows() const { return a.size(); }
    std::size_t cols() const { return c.size(); }

    void add_row(std::vector<Rational> row, Sense s, Rational rhs)
    {
        if (row.size() != c.size()) throw InvalidArgument("LP row has the wrong width");
        a.push_back(std::move(row));
        sense.push_back(s);
        b.push_back(std::move(rhs));
    }
};

enum class LpStatus { optimal, infeasible, unbounded };

inline const char* to_string(LpStatus s)
{
    return s == LpStatus::optimal ? "optimal" : s == LpStatus::infeasible ? "infeasible" : "unbounded";
}

// For a maximization the dual is min b.y with A^T y >= c, y >= 0 on <= rows,
// y <= 0 on >= rows and y free on = rows. Minimization flips every inequality.
struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    Rational value;
    std::vector<Rational> x;
    std::vector<Rational> y;
    std::size_t pivots = 0;
};

inline bool verify_lp_solution(const LinearProgram& lp, const LpSolution& s, std::string* why = nullptr)
{
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    if (s.status != LpStatus::optimal) return fail("not an optimal solution");
    if (s.x.size() != lp.cols() || s.y.size() != lp.rows()) return fail("dimension mismatch");
    for (const auto& v : s.x)
        if (sgn(v) < 0) return fail("negative primal variable");
    Rational cx = 0, by = 0;
    for (std::size_t j = 0; j < lp.cols(); ++j) cx += lp.c[j] * s.x[j];
    for (std::size_t i = 0; i < lp.rows(); ++i) {
        Rational lhs = 0;
        for (std::size_t j = 0; j < lp.cols(); ++j) lhs += lp.a[i][j] * s.x[j];
        if ((lp.sense[i] == Sense::le && lhs > lp.b[i]) || (lp.sense[i] == Sense::ge && lhs < lp.b[i]) ||
            (lp.sense[i] == Sense::eq && lhs != lp.b[i]))
            return fail("primal row " + std::to_string(i) + " violated");
        int want = lp.sense[i] == Sense::eq ? 0 : ((lp.sense[i] == Sense::le) == lp.maximize ? 1 : -1);
        if (want * sgn(s.y[i]) < 0) return fail("dual sign wrong on row " + std::to_string(i));
        by += lp.b[i] * s.y[i];
    }
    for (std::size_t j = 0; j < lp.cols(); ++j) {
        Rational aty = 0;
        for (std::size_t i = 0; i < lp.rows(); ++i) aty += lp.a[i][j] * s.y[i];
        if (lp.maximize ? aty < lp.c[j] : aty > lp.c[j]) return fail("dual column " + std::to_string(j) + " violated");
    }
    if (cx != s.value || by != s.value) return fail("primal and dual objectives differ");
    return true;
}

namespace detail {

// Dense two-phase tableau simplex over exact rationals with Bland's rule.
class Simplex {
public:
    explicit Simplex(const LinearProgram& lp) : lp_(lp) {}

    LpSolution solve()
    {
        build();
        LpSolution out;
        // Phase 1: maximize minus the sum of artificials.
        std::vector<Rational> cost(ncols_, 0);
        for (std::size_t j = art_begin_; j < ncols_; ++j) cost[j] = -1;
        set_objective(cost);
        if (!iterate(true)) throw std::logic_error("phase one cannot be unbounded");
        if (sgn(obj_rhs_) != 0) {
            out.status = LpStatus::infeasible;
            out.pivots = pivots_;
            return out;
        }
        drive_out_artificials();
        std::vector<Rational> c2(ncols_, 0);
        for (std::size_t j = 0; j < n_; ++j) c2[j] = lp_.maximize ? lp_.c[j] : -lp_.c[j];
        set_objective(c2);
        if (!iterate(false)) {
            out.status = LpStatus::unbounded;
            out.pivots = pivots_;
            return out;
        }
        out.status = LpStatus::optimal;
        out.pivots = pivots_;
        out.x.assign(n_, 0);
        for (std::size_t r = 0; r < t_.size(); ++r)
            if (basis_[r] < n_) out.x[basis_[r]] = t_[r][ncols_];
        Rational z = -obj_rhs_;
        out.value = lp_.maximize ? z : -z;
        out.y.assign(m_, 0);
        for (std::size_t i = 0; i < m_; ++i) {
            Rational yi = unit_sign_[i] > 0 ? -obj_[unit_col_[i]] : obj_[unit_col_[i]];
            if (flipped_[i]) yi = -yi;
            out.y[i] = lp_.maximize ? yi : -yi;
        }
        std::string why;
        if (!verify_lp_solution(lp_, out, &why)) throw std::logic_error("simplex certificate failed: " + why);
        return out;
    }

private:
    void build()
    {
        m_ = lp_.rows();
        n_ = lp_.cols();
        flipped_.assign(m_, false);
        std::vector<Sense> sense(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            sense[i] = lp_.sense[i];
            if (sgn(lp_.b[i]) < 0) {
                flipped_[i] = true;
                if (sense[i] != Sense::eq) sense[i] = sense[i] == Sense::le ? Sense::ge : Sense::le;
            }
        }
        std::size_t slacks = 0, arts = 0;
        for (auto s : sense) {
            if (s != Sense::eq) ++slacks;
            if (s != Sense::le) ++arts;
        }
        art_begin_ = n_ + slacks;
        ncols_ = art_begin_ + arts;
        t_.assign(m_, std::vector<Rational>(ncols_ + 1, 0));
        basis_.assign(m_, 0);
        unit_col_.assign(m_, 0);
        unit_sign_.assign(m_, 1);
        std::size_t s = n_, a = art_begin_;
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) t_[i][j] = flipped_[i] ? -lp_.a[i][j] : lp_.a[i][j];
            t_[i][ncols_] = flipped_[i] ? -lp_.b[i] : lp_.b[i];
            if (sense[i] == Sense::le) {
                t_[i][s] = 1;
                basis_[i] = unit_col_[i] = s++;
            } else if (sense[i] == Sense::ge) {
                t_[i][s] = -1;
                unit_col_[i] = s++;
                unit_sign_[i] = -1;
                t_[i][a] = 1;
                basis_[i] = a++;
            } else {
                t_[i][a] = 1;
                basis_[i] = unit_col_[i] = a++;
            }
        }
    }

    void set_objective(const std::vector<Rational>& cost)
    {
        cost_ = cost;
        obj_ = cost;
        obj_rhs_ = 0;
        for (std::size_t r = 0; r < t_.size(); ++r) {
            const Rational& cb = cost[basis_[r]];
            if (sgn(cb) == 0) continue;
            for (std::size_t j = 0; j < ncols_; ++j)
                if (sgn(t_[r][j])) obj_[j] -= cb * t_[r][j];
            obj_rhs_ -= cb * t_[r][ncols_];
        }
    }

    void pivot(std::size_t r, std::size_t col)
    {
        ++pivots_;
        Rational p = t_[r][col];
        for (auto& x : t_[r])
            if (sgn(x)) x /= p;
        for (std::size_t i = 0; i < t_.size(); ++i) {
            if (i == r || sgn(t_[i][col]) == 0) continue;
            Rational f = t_[i][col];
            for (std::size_t j = 0; j <= ncols_; ++j)
                if (sgn(t_[r][j])) t_[i][j] -= f * t_[r][j];
        }
        if (sgn(obj_[col])) {
            Rational f = obj_[col];
            for (std::size_t j = 0; j < ncols_; ++j)
                if (sgn(t_[r][j])) obj_[j] -= f * t_[r][j];
            obj_rhs_ -= f * t_[r][ncols_];
        }
        basis_[r] = col;
    }

    // Returns false when unbounded.
    bool iterate(bool phase_one)
    {
        const std::size_t limit = phase_one ? ncols_ : art_begin_;
        while (true) {
            std::size_t enter = limit;
            for (std::size_t j = 0; j < limit; ++j)
                if (sgn(obj_[j]) > 0) {
                    enter = j;
                    break;
                }
            if (enter == limit) return true;
            std::size_t leave = t_.size();
            Rational best;
            for (std::size_t r = 0; r < t_.size(); ++r) {
                if (sgn(t_[r][enter]) <= 0) continue;
                Rational ratio = t_[r][ncols_] / t_[r][enter];
                if (leave == t_.size() || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave == t_.size()) return false;
            pivot(leave, enter);
        }
    }

    void drive_out_artificials()
    {
        for (std::size_t r = 0; r < t_.size();) {
            if (basis_[r] < art_begin_) {
                ++r;
                continue;
            }
            std::size_t col = art_begin_;
            for (std::size_t j = 0; j < art_begin_; ++j)
                if (sgn(t_[r][j])) {
                    col = j;
                    break;
                }
            if (col < art_begin_) {
                pivot(r, col);
                ++r;
                continue;
            }
            // Redundant row. Duals are still read from the unit columns, which
            // remain valid because tableau rows are combinations of all original rows.
            t_.erase(t_.begin() + r);
            basis_.erase(basis_.begin() + r);
        }
    }

    const LinearProgram& lp_;
    std::size_t m_ = 0, n_ = 0, ncols_ = 0, art_begin_ = 0;
    std::vector<std::vector<Rational>> t_;
    std::vector<Rational> obj_, cost_;
    Rational obj_rhs_;
    std::vector<std::size_t> basis_, unit_col_;
    std::vector<int> unit_sign_;
    std::vector<bool> flipped_;
    std::size_t pivots_ = 0;
};

} // namespace detail

inline LpSolution solve_lp(const LinearProgram& lp)
{
    for (const auto& row : lp.a)
        if (row.size() != lp.cols()) throw InvalidArgument("LP row has the wrong width");
    if (lp.sense.size() != lp.rows() || lp.b.size() != lp.rows()) throw InvalidArgument("LP dimensions disagree");
    return detail::Simplex(lp).solve();
}

} // namespace irkit
