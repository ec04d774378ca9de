#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "weight.hpp"

namespace filtra {

// Base coordinates carry weight zero. A coordinate marked vertical belongs
// to the fibres of a fibred base; jet prolongation differentiates along the
// horizontal ones only.
struct BaseCoord {
    std::string name;
    bool vertical = false;

    bool operator==(const BaseCoord& o) const {
        return name == o.name && vertical == o.vertical;
    }
};

struct FiberCoord {
    std::string name;
    Weight weight;

    bool operator==(const FiberCoord& o) const {
        return name == o.name && weight == o.weight;
    }
};

// Shared shape of every chart of a bundle: named base coordinates plus
// weighted fibre indeterminates, with a declared degree bounding the fibre
// weights componentwise. The declared degree may exceed the maximal fibre
// weight (a bundle of degree k is one of any higher degree too).
class CoordinateFrame {
public:
    CoordinateFrame(std::size_t axes, std::vector<BaseCoord> base, std::vector<FiberCoord> fibers,
                    std::optional<Weight> declared_degree = std::nullopt)
        : axes_(axes), base_(std::move(base)), fibers_(std::move(fibers)) {
        if (axes_ < 1)
            throw InvalidFrame("frame needs at least one weight axis");
        Weight max = Weight::zero(axes_);
        for (const auto& f : fibers_) {
            if (f.weight.axes() != axes_)
                throw InvalidFrame("fiber weight has wrong axis count: " + f.name);
            if (f.weight.is_zero())
                throw InvalidFrame("fiber weight must be nonzero: " + f.name);
            max = componentwise_max(max, f.weight);
        }
        degree_ = declared_degree ? *declared_degree : max;
        if (degree_.axes() != axes_)
            throw InvalidFrame("degree has wrong axis count");
        if (!max.leq(degree_))
            throw InvalidFrame("declared degree below a fiber weight");
        for (std::size_t i = 0; i < base_.size(); ++i) {
            if (!base_index_.emplace(base_[i].name, i).second)
                throw InvalidFrame("duplicate coordinate name: " + base_[i].name);
        }
        for (std::size_t i = 0; i < fibers_.size(); ++i) {
            if (base_index_.count(fibers_[i].name) ||
                !fiber_index_.emplace(fibers_[i].name, i).second)
                throw InvalidFrame("duplicate coordinate name: " + fibers_[i].name);
        }
    }

    std::size_t axes() const { return axes_; }
    const Weight& degree() const { return degree_; }
    const std::vector<BaseCoord>& base() const { return base_; }
    const std::vector<FiberCoord>& fibers() const { return fibers_; }
    std::size_t n_base() const { return base_.size(); }
    std::size_t n_fibers() const { return fibers_.size(); }

    std::size_t base_index(const std::string& name) const {
        auto it = base_index_.find(name);
        if (it == base_index_.end())
            throw UnknownCoordinate("base coordinate " + name);
        return it->second;
    }

    std::size_t fiber_index(const std::string& name) const {
        auto it = fiber_index_.find(name);
        if (it == fiber_index_.end())
            throw UnknownCoordinate("fiber coordinate " + name);
        return it->second;
    }

    bool has_base(const std::string& name) const { return base_index_.count(name) > 0; }
    bool has_fiber(const std::string& name) const { return fiber_index_.count(name) > 0; }

    std::vector<std::string> base_names() const {
        std::vector<std::string> r;
        for (const auto& b : base_)
            r.push_back(b.name);
        return r;
    }

    std::vector<std::string> fiber_names() const {
        std::vector<std::string> r;
        for (const auto& f : fibers_)
            r.push_back(f.name);
        return r;
    }

    std::vector<std::size_t> horizontal_indices() const {
        std::vector<std::size_t> r;
        for (std::size_t i = 0; i < base_.size(); ++i)
            if (!base_[i].vertical)
                r.push_back(i);
        return r;
    }

    std::vector<std::size_t> vertical_indices() const {
        std::vector<std::size_t> r;
        for (std::size_t i = 0; i < base_.size(); ++i)
            if (base_[i].vertical)
                r.push_back(i);
        return r;
    }

    bool has_vertical_base() const { return !vertical_indices().empty(); }

    // Count of fiber indeterminates per total weight 1..total(degree).
    std::vector<int> rank() const {
        std::vector<int> d(static_cast<std::size_t>(degree_.total()), 0);
        for (const auto& f : fibers_)
            d.at(static_cast<std::size_t>(f.weight.total()) - 1) += 1;
        return d;
    }

    bool operator==(const CoordinateFrame& o) const {
        return axes_ == o.axes_ && degree_ == o.degree_ && base_ == o.base_ &&
               fibers_ == o.fibers_;
    }

    bool operator!=(const CoordinateFrame& o) const { return !(*this == o); }

private:
    std::size_t axes_;
    std::vector<BaseCoord> base_;
    std::vector<FiberCoord> fibers_;
    Weight degree_;
    std::map<std::string, std::size_t> base_index_;
    std::map<std::string, std::size_t> fiber_index_;
};

using FramePtr = std::shared_ptr<const CoordinateFrame>;

inline FramePtr make_frame(std::size_t axes, std::vector<BaseCoord> base,
                           std::vector<FiberCoord> fibers,
                           std::optional<Weight> declared_degree = std::nullopt) {
    return std::make_shared<const CoordinateFrame>(axes, std::move(base), std::move(fibers),
                                                   std::move(declared_degree));
}

inline bool same_frame(const FramePtr& a, const FramePtr& b) {
    if (a == b)
        return true;
    if (!a || !b)
        return false;
    return *a == *b;
}

inline void require_same_frame(const FramePtr& a, const FramePtr& b, const char* what) {
    if (!same_frame(a, b))
        throw FrameMismatch(what);
}

} // namespace filtra
