#include "degenwave/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace degenwave {

double powdiff(double u0, double u1, double p) {
    if (u0 < 0.0 || u1 < 0.0)
        throw std::domain_error("powdiff: negative base");
    if (u0 > u1) return -powdiff(u1, u0, p);
    if (u0 == u1) return 0.0;
    if (u0 == 0.0) {
        if (p <= 0.0)
            throw std::domain_error("powdiff: divergent endpoint, p <= 0 at u = 0");
        return std::pow(u1, p) / p;
    }
    if (p == 0.0) return std::log(u1 / u0);
    // factor out the larger power so expm1 carries the relative part;
    // the direct expm1(p log u) difference cancels when both powers are tiny
    if (p > 0.0)
        return std::pow(u1, p) * -std::expm1(p * std::log(u0 / u1)) / p;
    return std::pow(u0, p) * std::expm1(p * std::log(u1 / u0)) / p;
}

namespace {

constexpr double kRelTol = 1e-12;

std::vector<double> pad_row(const std::vector<double>& row, std::size_t n) {
    std::vector<double> out(n, 0.0);
    std::copy(row.begin(), row.end(), out.begin());
    return out;
}

}  // namespace

PiecewisePoly::PiecewisePoly(std::vector<double> breakpoints,
                             std::vector<std::vector<double>> coeffs,
                             double ref)
    : breaks_(std::move(breakpoints)), coeffs_(std::move(coeffs)), ref_(ref) {
    if (breaks_.size() < 2)
        throw std::invalid_argument("PiecewisePoly: need at least two breakpoints");
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
        if (!(breaks_[i] < breaks_[i + 1]))
            throw std::invalid_argument("PiecewisePoly: breakpoints not increasing");
    if (coeffs_.size() + 1 != breaks_.size())
        throw std::invalid_argument("PiecewisePoly: piece count mismatch");
    const double span = breaks_.back() - breaks_.front();
    if (breaks_.front() < ref_ - kRelTol * span)
        throw std::invalid_argument("PiecewisePoly: domain extends left of ref");
    for (auto& row : coeffs_)
        if (row.empty()) row.push_back(0.0);
}

PiecewisePoly PiecewisePoly::constant(double lo, double hi, double value, double ref) {
    return PiecewisePoly({lo, hi}, {{value}}, ref);
}

PiecewisePoly PiecewisePoly::zero(double lo, double hi, double ref) {
    return constant(lo, hi, 0.0, ref);
}

PiecewisePoly PiecewisePoly::linear(double lo, double hi, double value_lo,
                                    double value_hi, double ref) {
    const double slope = (value_hi - value_lo) / (hi - lo);
    return PiecewisePoly({lo, hi}, {{value_lo - slope * (lo - ref), slope}}, ref);
}

PiecewisePoly PiecewisePoly::step(std::vector<double> breakpoints,
                                  std::vector<double> values, double ref) {
    if (values.size() + 1 != breakpoints.size())
        throw std::invalid_argument("PiecewisePoly::step: size mismatch");
    std::vector<std::vector<double>> rows;
    rows.reserve(values.size());
    for (double v : values) rows.push_back({v});
    return PiecewisePoly(std::move(breakpoints), std::move(rows), ref);
}

PiecewisePoly PiecewisePoly::interpolant(const std::vector<double>& nodes,
                                         const std::vector<double>& values,
                                         double ref) {
    if (nodes.size() != values.size())
        throw std::invalid_argument("PiecewisePoly::interpolant: size mismatch");
    std::vector<std::vector<double>> rows;
    rows.reserve(nodes.size() - 1);
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double slope = (values[i + 1] - values[i]) / (nodes[i + 1] - nodes[i]);
        rows.push_back({values[i] - slope * (nodes[i] - ref), slope});
    }
    return PiecewisePoly(nodes, std::move(rows), ref);
}

int PiecewisePoly::degree() const {
    std::size_t d = 0;
    for (const auto& row : coeffs_) d = std::max(d, row.size());
    return static_cast<int>(d) - 1;
}

int PiecewisePoly::piece_index(double x) const {
    const double span = hi() - lo();
    if (x < lo() - kRelTol * span || x > hi() + kRelTol * span)
        throw std::domain_error("PiecewisePoly: point outside domain");
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    auto i = static_cast<int>(it - breaks_.begin()) - 1;
    return std::clamp(i, 0, pieces() - 1);
}

double PiecewisePoly::eval(double x) const {
    const auto& row = coeffs_[static_cast<std::size_t>(piece_index(x))];
    const double u = x - ref_;
    double v = 0.0;
    for (auto it = row.rbegin(); it != row.rend(); ++it) v = v * u + *it;
    return v;
}

double PiecewisePoly::integral(double a, double b) const {
    const double span = hi() - lo();
    if (a > b) throw std::domain_error("PiecewisePoly::integral: a > b");
    if (a < lo() - kRelTol * span || b > hi() + kRelTol * span)
        throw std::domain_error("PiecewisePoly::integral: bounds outside domain");
    double total = 0.0;
    for (int i = 0; i < pieces(); ++i) {
        const double s0 = std::max(a, breaks_[static_cast<std::size_t>(i)]);
        const double s1 = std::min(b, breaks_[static_cast<std::size_t>(i) + 1]);
        if (s0 >= s1) continue;
        const auto& row = coeffs_[static_cast<std::size_t>(i)];
        for (std::size_t k = 0; k < row.size(); ++k)
            if (row[k] != 0.0)
                total += row[k] * powdiff(s0 - ref_, s1 - ref_,
                                          static_cast<double>(k) + 1.0);
    }
    return total;
}

double PiecewisePoly::integral_times_linear(double a, double b, double va,
                                            double vb) const {
    if (a >= b) return 0.0;
    const double slope = (vb - va) / (b - a);
    const double l0 = va - slope * (a - ref_);
    const double span = hi() - lo();
    if (a < lo() - kRelTol * span || b > hi() + kRelTol * span)
        throw std::domain_error("PiecewisePoly::integral_times_linear: bounds outside domain");
    double total = 0.0;
    for (int i = 0; i < pieces(); ++i) {
        const double s0 = std::max(a, breaks_[static_cast<std::size_t>(i)]);
        const double s1 = std::min(b, breaks_[static_cast<std::size_t>(i) + 1]);
        if (s0 >= s1) continue;
        const auto& row = coeffs_[static_cast<std::size_t>(i)];
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (row[k] == 0.0) continue;
            const double kk = static_cast<double>(k);
            total += row[k] * l0 * powdiff(s0 - ref_, s1 - ref_, kk + 1.0);
            total += row[k] * slope * powdiff(s0 - ref_, s1 - ref_, kk + 2.0);
        }
    }
    return total;
}

double PiecewisePoly::weighted_integral(double mu, double a, double b) const {
    const double span = hi() - lo();
    if (a > b) throw std::domain_error("PiecewisePoly::weighted_integral: a > b");
    if (a < lo() - kRelTol * span || b > hi() + kRelTol * span)
        throw std::domain_error("PiecewisePoly::weighted_integral: bounds outside domain");
    if (a < ref_ - kRelTol * span)
        throw std::domain_error("PiecewisePoly::weighted_integral: bound left of ref");
    double total = 0.0;
    for (int i = 0; i < pieces(); ++i) {
        double s0 = std::max(a, breaks_[static_cast<std::size_t>(i)]);
        const double s1 = std::min(b, breaks_[static_cast<std::size_t>(i) + 1]);
        if (s0 >= s1) continue;
        if (s0 - ref_ < 0.0) s0 = ref_;
        const auto& row = coeffs_[static_cast<std::size_t>(i)];
        for (std::size_t k = 0; k < row.size(); ++k)
            if (row[k] != 0.0)
                total += row[k] * powdiff(s0 - ref_, s1 - ref_,
                                          static_cast<double>(k) + 1.0 - mu);
    }
    return total;
}

PiecewisePoly PiecewisePoly::antiderivative(double anchor) const {
    const double span = hi() - lo();
    if (anchor < lo() - kRelTol * span || anchor > hi() + kRelTol * span)
        throw std::domain_error("PiecewisePoly::antiderivative: anchor outside domain");
    std::vector<std::vector<double>> rows(coeffs_.size());
    // raw antiderivatives without constants
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        rows[i].assign(coeffs_[i].size() + 1, 0.0);
        for (std::size_t k = 0; k < coeffs_[i].size(); ++k)
            rows[i][k + 1] = coeffs_[i][k] / (static_cast<double>(k) + 1.0);
    }
    auto eval_row = [this](const std::vector<double>& row, double x) {
        const double u = x - ref_;
        double v = 0.0;
        for (auto it = row.rbegin(); it != row.rend(); ++it) v = v * u + *it;
        return v;
    };
    // stitch constants for continuity across pieces
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double x = breaks_[i];
        rows[i][0] += eval_row(rows[i - 1], x) - eval_row(rows[i], x);
    }
    PiecewisePoly out(breaks_, std::move(rows), ref_);
    const double shift = out.eval(anchor);
    for (auto& row : out.coeffs_) row[0] -= shift;
    return out;
}

PiecewisePoly PiecewisePoly::combine(const PiecewisePoly& other, double sign) const {
    if (ref_ != other.ref_)
        throw std::invalid_argument("PiecewisePoly: mixed shifted bases");
    const double span = hi() - lo();
    if (std::abs(lo() - other.lo()) > kRelTol * span ||
        std::abs(hi() - other.hi()) > kRelTol * span)
        throw std::invalid_argument("PiecewisePoly: domain mismatch");
    std::vector<double> merged;
    merged.reserve(breaks_.size() + other.breaks_.size());
    std::merge(breaks_.begin(), breaks_.end(), other.breaks_.begin(),
               other.breaks_.end(), std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end(),
                             [span](double x, double y) {
                                 return std::abs(x - y) <= kRelTol * span;
                             }),
                 merged.end());
    std::vector<std::vector<double>> rows;
    rows.reserve(merged.size() - 1);
    for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
        const double mid = 0.5 * (merged[i] + merged[i + 1]);
        const auto& ra = coeffs_[static_cast<std::size_t>(piece_index(mid))];
        const auto& rb = other.coeffs_[static_cast<std::size_t>(other.piece_index(mid))];
        const std::size_t n = std::max(ra.size(), rb.size());
        auto row = pad_row(ra, n);
        const auto rbp = pad_row(rb, n);
        for (std::size_t k = 0; k < n; ++k) row[k] += sign * rbp[k];
        rows.push_back(std::move(row));
    }
    return PiecewisePoly(std::move(merged), std::move(rows), ref_);
}

PiecewisePoly PiecewisePoly::operator+(const PiecewisePoly& other) const {
    return combine(other, 1.0);
}

PiecewisePoly PiecewisePoly::operator-(const PiecewisePoly& other) const {
    return combine(other, -1.0);
}

PiecewisePoly PiecewisePoly::operator*(const PiecewisePoly& other) const {
    if (ref_ != other.ref_)
        throw std::invalid_argument("PiecewisePoly: mixed shifted bases");
    const double span = hi() - lo();
    if (std::abs(lo() - other.lo()) > kRelTol * span ||
        std::abs(hi() - other.hi()) > kRelTol * span)
        throw std::invalid_argument("PiecewisePoly: domain mismatch");
    std::vector<double> merged;
    merged.reserve(breaks_.size() + other.breaks_.size());
    std::merge(breaks_.begin(), breaks_.end(), other.breaks_.begin(),
               other.breaks_.end(), std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end(),
                             [span](double x, double y) {
                                 return std::abs(x - y) <= kRelTol * span;
                             }),
                 merged.end());
    std::vector<std::vector<double>> rows;
    rows.reserve(merged.size() - 1);
    for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
        const double mid = 0.5 * (merged[i] + merged[i + 1]);
        const auto& ra = coeffs_[static_cast<std::size_t>(piece_index(mid))];
        const auto& rb = other.coeffs_[static_cast<std::size_t>(other.piece_index(mid))];
        std::vector<double> row(ra.size() + rb.size() - 1, 0.0);
        for (std::size_t p = 0; p < ra.size(); ++p)
            for (std::size_t q = 0; q < rb.size(); ++q)
                row[p + q] += ra[p] * rb[q];
        rows.push_back(std::move(row));
    }
    return PiecewisePoly(std::move(merged), std::move(rows), ref_);
}

PiecewisePoly PiecewisePoly::scaled(double factor) const {
    PiecewisePoly out = *this;
    for (auto& row : out.coeffs_)
        for (auto& c : row) c *= factor;
    return out;
}

PiecewisePoly PiecewisePoly::plus_constant(double value) const {
    PiecewisePoly out = *this;
    for (auto& row : out.coeffs_) row[0] += value;
    return out;
}

}  // namespace degenwave
