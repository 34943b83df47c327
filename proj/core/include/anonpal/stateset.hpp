#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace anonpal {

// Subset of a model's states. The width is fixed at construction and always
// equals the owning model's state count; all binary operations require equal
// widths.
class StateSet {
public:
    StateSet() = default;
    explicit StateSet(std::size_t width);

    static StateSet all(std::size_t width);

    std::size_t width() const { return width_; }

    bool contains(std::size_t i) const;
    void insert(std::size_t i);
    void erase(std::size_t i);

    std::size_t count() const;
    bool empty() const;
    bool is_all() const { return count() == width_; }

    bool subset_of(const StateSet& other) const;
    bool intersects(const StateSet& other) const;

    StateSet& operator&=(const StateSet& other);
    StateSet& operator|=(const StateSet& other);
    StateSet& operator-=(const StateSet& other);
    StateSet complement() const;

    friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
    friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
    friend StateSet operator-(StateSet a, const StateSet& b) { return a -= b; }
    friend StateSet operator~(const StateSet& a) { return a.complement(); }

    bool operator==(const StateSet& other) const = default;
    bool operator<(const StateSet& other) const; // lexicographic, for ordered containers

    // ascending member indices
    std::vector<std::size_t> members() const;

private:
    std::size_t width_ = 0;
    std::vector<std::uint64_t> words_;

    void check_width(const StateSet& other) const;
};

} // namespace anonpal
