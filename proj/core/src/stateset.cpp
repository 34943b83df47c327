#include "anonpal/stateset.hpp"

#include <bit>
#include <stdexcept>

namespace anonpal {

namespace {
constexpr std::size_t kBits = 64;
std::size_t word_count(std::size_t width) { return (width + kBits - 1) / kBits; }
} // namespace

StateSet::StateSet(std::size_t width) : width_(width), words_(word_count(width), 0) {}

StateSet StateSet::all(std::size_t width) {
    StateSet s(width);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    if (width % kBits != 0 && !s.words_.empty())
        s.words_.back() &= (std::uint64_t{1} << (width % kBits)) - 1;
    return s;
}

void StateSet::check_width(const StateSet& other) const {
    if (width_ != other.width_)
        throw std::logic_error("state set width mismatch");
}

bool StateSet::contains(std::size_t i) const {
    return (words_[i / kBits] >> (i % kBits)) & 1;
}

void StateSet::insert(std::size_t i) { words_[i / kBits] |= std::uint64_t{1} << (i % kBits); }

void StateSet::erase(std::size_t i) { words_[i / kBits] &= ~(std::uint64_t{1} << (i % kBits)); }

std::size_t StateSet::count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

bool StateSet::empty() const {
    for (auto w : words_)
        if (w) return false;
    return true;
}

bool StateSet::subset_of(const StateSet& other) const {
    check_width(other);
    for (std::size_t k = 0; k < words_.size(); ++k)
        if (words_[k] & ~other.words_[k]) return false;
    return true;
}

bool StateSet::intersects(const StateSet& other) const {
    check_width(other);
    for (std::size_t k = 0; k < words_.size(); ++k)
        if (words_[k] & other.words_[k]) return true;
    return false;
}

StateSet& StateSet::operator&=(const StateSet& other) {
    check_width(other);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
    return *this;
}

StateSet& StateSet::operator|=(const StateSet& other) {
    check_width(other);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= other.words_[k];
    return *this;
}

StateSet& StateSet::operator-=(const StateSet& other) {
    check_width(other);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~other.words_[k];
    return *this;
}

StateSet StateSet::complement() const {
    StateSet res = all(width_);
    for (std::size_t k = 0; k < words_.size(); ++k) res.words_[k] &= ~words_[k];
    return res;
}

bool StateSet::operator<(const StateSet& other) const {
    if (width_ != other.width_) return width_ < other.width_;
    return words_ < other.words_;
}

std::vector<std::size_t> StateSet::members() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < width_; ++i)
        if (contains(i)) out.push_back(i);
    return out;
}

} // namespace anonpal
