#include "msch/poset.hpp"

#include "msch/error.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace msch {

FinitePoset::FinitePoset(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& le_pairs,
                         std::vector<std::string> labels)
    : n_(n), le_(n * n, 0), labels_(std::move(labels)) {
    if (labels_.empty())
        for (std::size_t i = 0; i < n; ++i) labels_.push_back(std::to_string(i));
    if (labels_.size() != n) throw Error(ErrorCode::InvalidArgument, "label count does not match point count");
    for (std::size_t i = 0; i < n; ++i) le_[i * n + i] = 1;
    for (auto [x, y] : le_pairs) {
        if (x >= n || y >= n) throw Error(ErrorCode::InvalidArgument, "order relation names a missing point");
        le_[x * n + y] = 1;
    }
    // Warshall
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (le_[i * n + k])
                for (std::size_t j = 0; j < n; ++j)
                    if (le_[k * n + j]) le_[i * n + j] = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (le_[i * n + j] && le_[j * n + i])
                throw Error(ErrorCode::InvalidArgument, "order relation is not antisymmetric");

    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (!less(x, y)) continue;
            bool cover = true;
            for (std::size_t z = 0; z < n && cover; ++z)
                if (less(x, z) && less(z, y)) cover = false;
            if (cover) covers_.emplace_back(x, y);
        }

    // a linear extension: sort by number of strict predecessors
    std::vector<std::size_t> below(n, 0);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (less(y, x)) ++below[x];
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return below[a] < below[b]; });
    height_.assign(n, 0);
    for (auto x : order)
        for (std::size_t y = 0; y < n; ++y)
            if (less(y, x)) height_[x] = std::max(height_[x], height_[y] + 1);
}

std::vector<std::size_t> FinitePoset::height_order() const {
    std::vector<std::size_t> order(n_);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
        return height_[a] != height_[b] ? height_[a] < height_[b] : a < b;
    });
    return order;
}

std::vector<std::size_t> FinitePoset::lower_covers(std::size_t y) const {
    std::vector<std::size_t> out;
    for (auto [a, b] : covers_)
        if (b == y) out.push_back(a);
    return out;
}

std::vector<std::size_t> FinitePoset::upper_covers(std::size_t x) const {
    std::vector<std::size_t> out;
    for (auto [a, b] : covers_)
        if (a == x) out.push_back(b);
    return out;
}

PointSet FinitePoset::maximal() const {
    PointSet out;
    for (std::size_t x = 0; x < n_; ++x)
        if (upper_covers(x).empty()) out.push_back(x);
    return out;
}

PointSet FinitePoset::minimal() const {
    PointSet out;
    for (std::size_t x = 0; x < n_; ++x)
        if (lower_covers(x).empty()) out.push_back(x);
    return out;
}

std::size_t FinitePoset::dimension() const {
    std::size_t d = 0;
    for (auto h : height_) d = std::max(d, h);
    return d;
}

PointSet FinitePoset::down_set(std::size_t x) const {
    PointSet out;
    for (std::size_t y = 0; y < n_; ++y)
        if (leq(y, x)) out.push_back(y);
    return out;
}

PointSet FinitePoset::strict_down_set(std::size_t x) const {
    PointSet out;
    for (std::size_t y = 0; y < n_; ++y)
        if (less(y, x)) out.push_back(y);
    return out;
}

PointSet FinitePoset::up_set(std::size_t x) const {
    PointSet out;
    for (std::size_t y = 0; y < n_; ++y)
        if (leq(x, y)) out.push_back(y);
    return out;
}

bool FinitePoset::is_open(const PointSet& u) const {
    std::vector<char> in(n_, 0);
    for (auto x : u) {
        if (x >= n_) return false;
        in[x] = 1;
    }
    for (auto y : u)
        for (std::size_t x = 0; x < n_; ++x)
            if (leq(x, y) && !in[x]) return false;
    return true;
}

std::vector<PointSet> FinitePoset::opens() const {
    // Down-sets correspond to antichains; enumerate by including points in
    // height order and keeping closure under going down.
    std::vector<PointSet> out;
    auto order = height_order();
    std::vector<char> in(n_, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == order.size()) {
            PointSet s;
            for (std::size_t x = 0; x < n_; ++x)
                if (in[x]) s.push_back(x);
            out.push_back(std::move(s));
            return;
        }
        std::size_t x = order[k];
        rec(k + 1);
        bool ok = true;
        for (std::size_t y = 0; y < n_ && ok; ++y)
            if (less(y, x) && !in[y]) ok = false;
        if (ok) {
            in[x] = 1;
            rec(k + 1);
            in[x] = 0;
        }
    };
    rec(0);
    std::sort(out.begin(), out.end(), [](const PointSet& a, const PointSet& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

std::optional<std::size_t> FinitePoset::meet(std::size_t x, std::size_t y) const {
    return meet(PointSet{x, y});
}

std::optional<std::size_t> FinitePoset::meet(const PointSet& xs) const {
    std::vector<std::size_t> lower;
    for (std::size_t z = 0; z < n_; ++z) {
        bool ok = true;
        for (auto x : xs)
            if (!leq(z, x)) {
                ok = false;
                break;
            }
        if (ok) lower.push_back(z);
    }
    for (auto g : lower) {
        bool top = true;
        for (auto z : lower)
            if (!leq(z, g)) {
                top = false;
                break;
            }
        if (top) return g;
    }
    return std::nullopt;
}

PointSet FinitePoset::common_lower_maxima(std::size_t x, std::size_t y) const {
    PointSet lower;
    for (std::size_t z = 0; z < n_; ++z)
        if (leq(z, x) && leq(z, y)) lower.push_back(z);
    PointSet out;
    for (auto z : lower) {
        bool maximal = true;
        for (auto w : lower)
            if (less(z, w)) maximal = false;
        if (maximal) out.push_back(z);
    }
    return out;
}

bool FinitePoset::is_meet_semilattice() const {
    for (std::size_t x = 0; x < n_; ++x)
        for (std::size_t y = x + 1; y < n_; ++y)
            if (!meet(x, y)) return false;
    return true;
}

std::optional<std::size_t> FinitePoset::least() const {
    for (std::size_t x = 0; x < n_; ++x) {
        bool ok = true;
        for (std::size_t y = 0; y < n_; ++y)
            if (!leq(x, y)) ok = false;
        if (ok) return x;
    }
    return std::nullopt;
}

std::optional<std::size_t> FinitePoset::greatest() const {
    for (std::size_t x = 0; x < n_; ++x) {
        bool ok = true;
        for (std::size_t y = 0; y < n_; ++y)
            if (!leq(y, x)) ok = false;
        if (ok) return x;
    }
    return std::nullopt;
}

std::vector<PointSet> FinitePoset::components() const {
    std::vector<std::size_t> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (auto [a, b] : covers_) parent[find(a)] = find(b);
    std::vector<PointSet> out;
    std::vector<long> slot(n_, -1);
    for (std::size_t x = 0; x < n_; ++x) {
        std::size_t r = find(x);
        if (slot[r] < 0) {
            slot[r] = static_cast<long>(out.size());
            out.emplace_back();
        }
        out[static_cast<std::size_t>(slot[r])].push_back(x);
    }
    return out;
}

FinitePoset FinitePoset::induced(const PointSet& points) const {
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < points.size(); ++i) {
        labels.push_back(labels_[points[i]]);
        for (std::size_t j = 0; j < points.size(); ++j)
            if (i != j && leq(points[i], points[j])) rel.emplace_back(i, j);
    }
    return FinitePoset(points.size(), rel, labels);
}

bool FinitePoset::operator==(const FinitePoset& other) const { return n_ == other.n_ && le_ == other.le_; }

std::string FinitePoset::to_string() const {
    std::ostringstream out;
    out << n_ << " points";
    for (auto [a, b] : covers_) out << "; " << labels_[a] << " < " << labels_[b];
    return out.str();
}

FinitePoset product_poset(const FinitePoset& p, const FinitePoset& q) {
    std::size_t m = q.size();
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    std::vector<std::string> labels;
    for (std::size_t x = 0; x < p.size(); ++x)
        for (std::size_t y = 0; y < m; ++y) labels.push_back("(" + p.label(x) + ", " + q.label(y) + ")");
    for (auto [a, b] : p.covers())
        for (std::size_t y = 0; y < m; ++y) rel.emplace_back(a * m + y, b * m + y);
    for (auto [a, b] : q.covers())
        for (std::size_t x = 0; x < p.size(); ++x) rel.emplace_back(x * m + a, x * m + b);
    return FinitePoset(p.size() * m, rel, labels);
}

std::optional<std::vector<std::size_t>> poset_isomorphism(const FinitePoset& p, const FinitePoset& q) {
    std::size_t n = p.size();
    if (q.size() != n || p.covers().size() != q.covers().size()) return std::nullopt;
    std::vector<std::size_t> map(n, n);
    std::vector<char> used(n, 0);
    auto pord = p.height_order();
    std::function<bool(std::size_t)> rec = [&](std::size_t k) {
        if (k == n) return true;
        std::size_t x = pord[k];
        for (std::size_t y = 0; y < n; ++y) {
            if (used[y] || p.height(x) != q.height(y)) continue;
            bool ok = true;
            for (std::size_t j = 0; j < k && ok; ++j) {
                std::size_t z = pord[j];
                if (p.leq(z, x) != q.leq(map[z], y) || p.leq(x, z) != q.leq(y, map[z])) ok = false;
            }
            if (!ok) continue;
            map[x] = y;
            used[y] = 1;
            if (rec(k + 1)) return true;
            used[y] = 0;
        }
        map[x] = n;
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return map;
}

SeparationCertificate separation_certificate(const FinitePoset& p) {
    SeparationCertificate cert;
    auto maxs = p.maximal();
    for (std::size_t i = 0; i < maxs.size(); ++i)
        for (std::size_t j = i + 1; j < maxs.size(); ++j)
            if (p.common_lower_maxima(maxs[i], maxs[j]).size() > 1) {
                cert.separated = false;
                cert.witness = std::make_pair(maxs[i], maxs[j]);
                return cert;
            }
    return cert;
}

} // namespace msch
