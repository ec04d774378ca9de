#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"

namespace filtra {

// Multi-weight with a fixed number of axes; components are non-negative.
class Weight {
public:
    Weight() = default;

    explicit Weight(std::vector<int> comps) : c_(std::move(comps)) {
        for (int v : c_)
            if (v < 0)
                throw InvalidFrame("negative weight component");
    }

    Weight(std::initializer_list<int> comps) : Weight(std::vector<int>(comps)) {}

    static Weight zero(std::size_t axes) { return Weight(std::vector<int>(axes, 0)); }

    std::size_t axes() const { return c_.size(); }
    int operator[](std::size_t i) const { return c_[i]; }
    const std::vector<int>& components() const { return c_; }

    int total() const { return std::accumulate(c_.begin(), c_.end(), 0); }
    bool is_zero() const { return total() == 0; }

    bool leq(const Weight& o) const {
        check_axes(o);
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] > o.c_[i])
                return false;
        return true;
    }

    friend Weight operator+(const Weight& a, const Weight& b) {
        a.check_axes(b);
        std::vector<int> r(a.c_.size());
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = a.c_[i] + b.c_[i];
        return Weight(std::move(r));
    }

    Weight& operator+=(const Weight& o) { return *this = *this + o; }

    friend Weight scaled(const Weight& w, int k) {
        std::vector<int> r(w.c_.size());
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = w.c_[i] * k;
        return Weight(std::move(r));
    }

    friend Weight componentwise_max(const Weight& a, const Weight& b) {
        a.check_axes(b);
        std::vector<int> r(a.c_.size());
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = std::max(a.c_[i], b.c_[i]);
        return Weight(std::move(r));
    }

    Weight appended(int v) const {
        std::vector<int> r = c_;
        r.push_back(v);
        return Weight(std::move(r));
    }

    Weight collapsed() const { return Weight({total()}); }

    bool operator==(const Weight& o) const { return c_ == o.c_; }
    bool operator!=(const Weight& o) const { return !(*this == o); }
    bool operator<(const Weight& o) const { return c_ < o.c_; }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i)
                s += ", ";
            s += std::to_string(c_[i]);
        }
        return s + ")";
    }

private:
    void check_axes(const Weight& o) const {
        if (c_.size() != o.c_.size())
            throw FrameMismatch("weights with different axis counts");
    }

    std::vector<int> c_;
};

} // namespace filtra
