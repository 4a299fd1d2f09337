#ifndef STACKMST_UNION_FIND_HPP
#define STACKMST_UNION_FIND_HPP

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

namespace stackmst {

/// Disjoint sets with union by size and path halving.
class UnionFind {
public:
    explicit UnionFind(std::size_t n = 0) : parent_(n), size_(n, 1), components_(n)
    {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    /// Returns false when x and y were already joined.
    bool unite(std::size_t x, std::size_t y)
    {
        x = find(x);
        y = find(y);
        if (x == y)
            return false;
        if (size_[x] < size_[y])
            std::swap(x, y);
        parent_[y] = x;
        size_[x] += size_[y];
        --components_;
        return true;
    }

    bool same(std::size_t x, std::size_t y) { return find(x) == find(y); }

    std::size_t components() const noexcept { return components_; }
    std::size_t size() const noexcept { return parent_.size(); }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
    std::size_t components_;
};

/// Union-find without path compression whose unions can be undone in LIFO
/// order. Used by the forest enumeration, which backtracks constantly.
class RollbackUnionFind {
public:
    explicit RollbackUnionFind(std::size_t n = 0) : parent_(n), size_(n, 1)
    {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) const
    {
        while (parent_[x] != x)
            x = parent_[x];
        return x;
    }

    bool unite(std::size_t x, std::size_t y)
    {
        x = find(x);
        y = find(y);
        if (x == y)
            return false;
        if (size_[x] < size_[y])
            std::swap(x, y);
        parent_[y] = x;
        size_[x] += size_[y];
        history_.push_back(y);
        return true;
    }

    /// Undoes the most recent successful unite().
    void rollback()
    {
        const std::size_t child = history_.back();
        history_.pop_back();
        const std::size_t root = parent_[child];
        size_[root] -= size_[child];
        parent_[child] = child;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
    std::vector<std::size_t> history_;
};

} // namespace stackmst

#endif // STACKMST_UNION_FIND_HPP
