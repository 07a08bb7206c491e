#pragma once

// Congruence closure of a commutative monoid presentation, restricted to
// monomials of total degree <= cap. Two words are reported equal only when
// a chain of relation applications joins them without leaving the box.

#include <map>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

using Word = std::vector<long>;

class Congruence {
  public:
    Congruence(std::size_t n, std::vector<std::pair<Word, Word>> relations, long cap) : n_(n), cap_(cap) {
        Word w(n, 0);
        enumerate(w, 0, 0);
        parent_.resize(words_.size());
        std::iota(parent_.begin(), parent_.end(), 0);
        for (std::size_t i = 0; i < words_.size(); ++i)
            for (const auto& [l, r] : relations) {
                if (!geq(words_[i], l)) continue;
                Word v = words_[i];
                for (std::size_t k = 0; k < n; ++k) v[k] += r[k] - l[k];
                auto it = index_.find(v);
                if (it != index_.end()) unite(i, it->second);
            }
    }

    bool contains(const Word& w) const { return index_.count(w) > 0; }
    bool equal(const Word& a, const Word& b) { return find(index_.at(a)) == find(index_.at(b)); }
    const std::vector<Word>& words() const { return words_; }
    std::size_t class_of(const Word& w) { return find(index_.at(w)); }

  private:
    void enumerate(Word& w, std::size_t k, long used) {
        if (k == n_) {
            index_[w] = words_.size();
            words_.push_back(w);
            return;
        }
        for (long e = 0; used + e <= cap_; ++e) {
            w[k] = e;
            enumerate(w, k + 1, used + e);
        }
        w[k] = 0;
    }
    static bool geq(const Word& a, const Word& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] < b[i]) return false;
        return true;
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

    std::size_t n_;
    long cap_;
    std::vector<Word> words_;
    std::map<Word, std::size_t> index_;
    std::vector<std::size_t> parent_;
};

// Generator sets P whose generated ideal is a union of congruence classes
// inside the box and whose complement is closed under products.
inline std::vector<std::vector<char>> prime_sets(std::size_t n, Congruence& c) {
    std::vector<std::vector<char>> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        auto in_ideal = [&](const Word& w) {
            for (std::size_t i = 0; i < n; ++i)
                if ((mask >> i & 1U) && w[i] > 0) return true;
            return false;
        };
        std::map<std::size_t, int> state;
        bool ok = true;
        for (const auto& w : c.words()) {
            int s = in_ideal(w) ? 1 : 0;
            auto [it, fresh] = state.emplace(c.class_of(w), s);
            if (!fresh && it->second != s) ok = false;
        }
        if (!ok) continue;
        std::vector<char> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = mask >> i & 1U;
        out.push_back(p);
    }
    return out;
}

} // namespace oracle
