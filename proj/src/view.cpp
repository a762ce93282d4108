#include "adversim/view.hpp"

#include <stdexcept>
#include <vector>

#include "adversim/util.hpp"

namespace adversim::engine {

ViewPtr View::initial(int owner, nlohmann::json item) {
    auto v = std::shared_ptr<View>(new View());
    v->owner_ = owner;
    v->rounds_ = 0;
    v->item_ = std::move(item);
    Digest d;
    d.mix(0x76696577u);  // domain tag
    d.mix(static_cast<std::uint64_t>(owner));
    d.mix_bytes(v->item_.dump());
    v->digest_ = d.value();
    return v;
}

ViewPtr View::extend(const ViewPtr& prev, std::map<int, ViewPtr> inbox) {
    if (!prev) throw std::invalid_argument("View::extend: null view");
    for (const auto& [sender, view] : inbox) {
        if (!view) throw std::invalid_argument("View::extend: null inbox view");
        if (sender == prev->owner())
            throw std::invalid_argument("View::extend: self-delivery is implicit");
        if (view->rounds() != prev->rounds())
            throw std::invalid_argument("View::extend: inbox view from a different round");
    }
    auto v = std::shared_ptr<View>(new View());
    v->owner_ = prev->owner_;
    v->rounds_ = prev->rounds_ + 1;
    v->prev_ = prev;
    v->inbox_ = std::move(inbox);
    Digest d;
    d.mix(0x65787464u);  // domain tag
    d.mix(prev->digest_);
    d.mix(v->inbox_.size());
    for (const auto& [sender, view] : v->inbox_) {
        d.mix(static_cast<std::uint64_t>(sender));
        d.mix(view->digest());
    }
    v->digest_ = d.value();
    return v;
}

const nlohmann::json& View::item() const {
    const View* v = this;
    while (v->prev_) v = v->prev_.get();
    return v->item_;
}

nlohmann::json View::to_json() const {
    // Collect the chain root-first.
    std::vector<const View*> chain;
    for (const View* v = this; v; v = v->prev_.get()) chain.push_back(v);
    nlohmann::json rounds = nlohmann::json::array();
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        if (!(*it)->prev_) continue;  // root carries the item, no inbox
        nlohmann::json entry = nlohmann::json::object();
        for (const auto& [sender, view] : (*it)->inbox_) {
            entry[std::to_string(sender)] = view->to_json();
        }
        rounds.push_back(std::move(entry));
    }
    return {{"owner", owner_}, {"item", item()}, {"rounds", rounds}};
}

}  // namespace adversim::engine
