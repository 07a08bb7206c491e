#include "msch/rewriting.hpp"

#include "msch/error.hpp"

#include <algorithm>
#include <deque>

namespace msch {

int term_compare(const Exponents& a, const Exponents& b) {
    Exponent da = exp_degree(a), db = exp_degree(b);
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    return 0;
}

namespace {

bool divides(const Exponents& d, const Exponents& x) {
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] > x[i]) return false;
    return true;
}

bool overlap(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return true;
    return false;
}

Exponents lcm(const Exponents& a, const Exponents& b) {
    Exponents c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = std::max(a[i], b[i]);
    return c;
}

struct Completer {
    const CompletionOptions& options;
    std::vector<Rule> rules;
    std::vector<char> alive;
    std::deque<std::pair<Exponents, Exponents>> equations;
    std::deque<std::pair<std::size_t, std::size_t>> pairs;
    std::size_t examined = 0;

    Exponents reduce(Exponents x) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t r = 0; r < rules.size(); ++r) {
                if (!alive[r] || !divides(rules[r].lhs, x)) continue;
                for (std::size_t i = 0; i < x.size(); ++i) x[i] += rules[r].rhs[i] - rules[r].lhs[i];
                changed = true;
            }
        }
        return x;
    }

    std::size_t live_count() const { return static_cast<std::size_t>(std::count(alive.begin(), alive.end(), 1)); }

    void add_rule(Exponents lhs, Exponents rhs) {
        // Rules whose lhs the new lhs divides become equations again.
        for (std::size_t r = 0; r < rules.size(); ++r) {
            if (!alive[r] || !divides(lhs, rules[r].lhs)) continue;
            alive[r] = 0;
            equations.emplace_back(rules[r].lhs, rules[r].rhs);
        }
        std::size_t id = rules.size();
        rules.push_back({std::move(lhs), std::move(rhs)});
        alive.push_back(1);
        for (std::size_t r = 0; r < id; ++r)
            if (alive[r]) {
                rules[r].rhs = reduce(rules[r].rhs);
                pairs.emplace_back(r, id);
            }
        if (live_count() > options.max_rules)
            throw Error(ErrorCode::CompletionExceededBound,
                        "more than " + std::to_string(options.max_rules) + " rules");
    }

    void process(const Exponents& a, const Exponents& b) {
        Exponents u = reduce(a), v = reduce(b);
        int c = term_compare(u, v);
        if (c == 0) return;
        if (c < 0) std::swap(u, v);
        add_rule(std::move(u), std::move(v));
    }

    void run() {
        while (!equations.empty() || !pairs.empty()) {
            if (!equations.empty()) {
                auto [a, b] = equations.front();
                equations.pop_front();
                process(a, b);
                continue;
            }
            auto [i, j] = pairs.front();
            pairs.pop_front();
            if (!alive[i] || !alive[j]) continue;
            if (++examined > options.max_pairs)
                throw Error(ErrorCode::CompletionExceededBound,
                            "more than " + std::to_string(options.max_pairs) + " critical pairs");
            const Rule& p = rules[i];
            const Rule& q = rules[j];
            if (!overlap(p.lhs, q.lhs)) continue;
            Exponents l = lcm(p.lhs, q.lhs);
            process(exp_add(exp_sub(l, p.lhs), p.rhs), exp_add(exp_sub(l, q.lhs), q.rhs));
        }
    }
};

} // namespace

RewriteSystem RewriteSystem::complete(const MonoidPresentation& p, CompletionOptions options) {
    RewriteSystem rs;
    rs.n_ = p.size();
    rs.letter_of_inverse_.assign(rs.n_, npos);
    for (std::size_t i = 0; i < rs.n_; ++i)
        if (p.inverted(i)) {
            rs.letter_of_inverse_[i] = rs.n_ + rs.inverse_of_.size();
            rs.inverse_of_.push_back(i);
        }
    std::size_t m = rs.alphabet_size();

    Completer c{options, {}, {}, {}, {}, 0};
    for (std::size_t k = 0; k < rs.inverse_of_.size(); ++k) {
        Exponents l(m, 0);
        l[rs.inverse_of_[k]] = 1;
        l[rs.n_ + k] = 1;
        c.equations.emplace_back(l, Exponents(m, 0));
    }
    for (const auto& r : p.relations()) c.equations.emplace_back(rs.extend(r.lhs), rs.extend(r.rhs));
    c.run();

    for (std::size_t r = 0; r < c.rules.size(); ++r)
        if (c.alive[r]) rs.rules_.push_back({c.rules[r].lhs, c.reduce(c.rules[r].rhs)});
    std::sort(rs.rules_.begin(), rs.rules_.end(),
              [](const Rule& a, const Rule& b) { return term_compare(a.lhs, b.lhs) < 0; });
    rs.pairs_examined_ = c.examined;
    return rs;
}

Exponents RewriteSystem::extend(const Exponents& net) const {
    if (net.size() != n_) throw Error(ErrorCode::InvalidArgument, "element has wrong length");
    Exponents e(alphabet_size(), 0);
    for (std::size_t i = 0; i < n_; ++i) {
        if (net[i] >= 0) {
            e[i] = net[i];
        } else {
            if (letter_of_inverse_[i] == npos)
                throw Error(ErrorCode::InvalidArgument, "negative exponent on a non-inverted generator");
            e[letter_of_inverse_[i]] = -net[i];
        }
    }
    return e;
}

Exponents RewriteSystem::net(const Exponents& extended) const {
    Exponents e(extended.begin(), extended.begin() + static_cast<std::ptrdiff_t>(n_));
    for (std::size_t k = 0; k < inverse_of_.size(); ++k) e[inverse_of_[k]] -= extended[n_ + k];
    return e;
}

Exponents RewriteSystem::reduce(Exponents x) const {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : rules_) {
            if (!divides(r.lhs, x)) continue;
            // apply as many times as possible in one go
            Exponent times = -1;
            for (std::size_t i = 0; i < x.size(); ++i)
                if (r.lhs[i] > 0) {
                    Exponent t = x[i] / r.lhs[i];
                    if (times < 0 || t < times) times = t;
                }
            if (times <= 0) times = 1;
            for (std::size_t i = 0; i < x.size(); ++i) x[i] += times * (r.rhs[i] - r.lhs[i]);
            changed = true;
        }
    }
    return x;
}

Exponents RewriteSystem::normal_form(const Exponents& net_element) const {
    return net(reduce(extend(net_element)));
}

bool RewriteSystem::equal(const Exponents& a, const Exponents& b) const { return normal_form(a) == normal_form(b); }

bool RewriteSystem::verify_confluence() const {
    for (std::size_t i = 0; i < rules_.size(); ++i)
        for (std::size_t j = i; j < rules_.size(); ++j) {
            if (!overlap(rules_[i].lhs, rules_[j].lhs)) continue;
            Exponents l = lcm(rules_[i].lhs, rules_[j].lhs);
            Exponents a = reduce(exp_add(exp_sub(l, rules_[i].lhs), rules_[i].rhs));
            Exponents b = reduce(exp_add(exp_sub(l, rules_[j].lhs), rules_[j].rhs));
            if (a != b) return false;
        }
    return true;
}

} // namespace msch
