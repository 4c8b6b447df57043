#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace egz {

// Work limits are counted in search-node expansions. Exceeding a budget is a
// reported error, never a silent truncation.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, std::uint64_t nodes)
        : std::runtime_error(what), nodes_(nodes) {}

    std::uint64_t nodes() const { return nodes_; }

private:
    std::uint64_t nodes_;
};

struct Budget {
    std::uint64_t limit = 100'000'000;
    std::uint64_t used = 0;

    // Returns false once the budget is exhausted.
    bool charge(std::uint64_t k = 1) {
        used += k;
        return used <= limit;
    }

    bool exhausted() const { return used > limit; }

    void require(const std::string& where) const {
        if (exhausted())
            throw BudgetExceeded(where + ": budget exceeded", used);
    }
};

}  // namespace egz
