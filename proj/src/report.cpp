#include "syzkit/report.hpp"

namespace syzkit {

std::string to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Undetermined: return "undetermined";
    }
    return "?";
}

CheckItem& CheckReport::add(CheckItem item) {
    items_.push_back(std::move(item));
    return items_.back();
}

CheckItem& CheckReport::add(std::string id, bool ok, std::string detail, std::optional<std::string> witness) {
    CheckItem it;
    it.id = std::move(id);
    it.status = ok ? Status::Pass : Status::Fail;
    it.detail = std::move(detail);
    it.witness = std::move(witness);
    return add(std::move(it));
}

CheckItem& CheckReport::info(std::string id, std::string detail, std::optional<std::string> witness) {
    CheckItem it;
    it.id = std::move(id);
    it.detail = std::move(detail);
    it.witness = std::move(witness);
    it.required = false;
    return add(std::move(it));
}

void CheckReport::append(const CheckReport& other, const std::string& prefix) {
    for (auto it : other.items_) {
        it.id = prefix + it.id;
        items_.push_back(std::move(it));
    }
}

const CheckItem* CheckReport::find(const std::string& id) const {
    for (const auto& it : items_)
        if (it.id == id) return &it;
    return nullptr;
}

bool CheckReport::passed() const { return first_failure() == nullptr; }

const CheckItem* CheckReport::first_failure() const {
    for (const auto& it : items_)
        if (it.required && it.status != Status::Pass) return &it;
    return nullptr;
}

}  // namespace syzkit
