#pragma once

#include <cstdint>
#include <map>
#include <memory>

#include "json.hpp"

namespace adversim::engine {

class View;
using ViewPtr = std::shared_ptr<const View>;

// A processor's full-information history: the initial item plus one inbox
// per elapsed round mapping sender -> the view that sender broadcast.
// Immutable, shared structurally, with a memoized 64-bit digest, so deep
// multi-round histories stay cheap to extend and compare.
class View {
public:
    static ViewPtr initial(int owner, nlohmann::json item);
    // Every inbox view must have exactly prev->rounds() round entries (it was
    // sent at the start of the round being appended).
    static ViewPtr extend(const ViewPtr& prev, std::map<int, ViewPtr> inbox);

    int owner() const { return owner_; }
    int rounds() const { return rounds_; }
    std::uint64_t digest() const { return digest_; }
    const ViewPtr& prev() const { return prev_; }
    const std::map<int, ViewPtr>& inbox() const { return inbox_; }
    const nlohmann::json& item() const;

    nlohmann::json to_json() const;

private:
    View() = default;

    int owner_ = -1;
    int rounds_ = 0;
    std::uint64_t digest_ = 0;
    nlohmann::json item_;   // meaningful on round-0 views only
    ViewPtr prev_;          // null on round-0 views
    std::map<int, ViewPtr> inbox_;
};

}  // namespace adversim::engine
