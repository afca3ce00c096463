#ifndef RASQ_BITSET_HPP
#define RASQ_BITSET_HPP

#include <cstdint>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace rasq {

// Fixed-universe atom set. Word-packed; universe size set at construction.
class AtomSet {
public:
    AtomSet() = default;
    explicit AtomSet(int universe) : n_(universe), w_((universe + 63) / 64, 0) {}
    AtomSet(int universe, std::initializer_list<int> xs) : AtomSet(universe) {
        for (int x : xs) set(x);
    }

    int universe() const { return n_; }

    void set(int i) { w_[size_t(i) >> 6] |= (uint64_t{1} << (i & 63)); }
    void reset(int i) { w_[size_t(i) >> 6] &= ~(uint64_t{1} << (i & 63)); }
    bool test(int i) const {
        return i >= 0 && i < n_ && (w_[size_t(i) >> 6] >> (i & 63)) & 1;
    }

    void clear() { for (auto& w : w_) w = 0; }

    bool any() const { for (auto w : w_) if (w) return true; return false; }
    bool none() const { return !any(); }
    int count() const {
        int c = 0;
        for (auto w : w_) c += __builtin_popcountll(w);
        return c;
    }

    AtomSet& operator|=(const AtomSet& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    AtomSet& operator&=(const AtomSet& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    AtomSet minus(const AtomSet& o) const {
        AtomSet r = *this;
        for (size_t i = 0; i < w_.size(); ++i) r.w_[i] &= ~o.w_[i];
        return r;
    }

    bool subset_of(const AtomSet& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }
    bool intersects(const AtomSet& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    bool operator==(const AtomSet& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const AtomSet& o) const { return !(*this == o); }
    // Arbitrary (word-lexicographic) total order for use in std::set / sorting.
    bool operator<(const AtomSet& o) const { return w_ < o.w_; }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (size_t wi = 0; wi < w_.size(); ++wi) {
            uint64_t w = w_[wi];
            while (w) {
                int b = __builtin_ctzll(w);
                fn(int(wi * 64 + b));
                w &= w - 1;
            }
        }
    }

    std::vector<int> members() const {
        std::vector<int> out;
        for_each([&](int i) { out.push_back(i); });
        return out;
    }

private:
    int n_ = 0;
    std::vector<uint64_t> w_;
};

} // namespace rasq

#endif
