#pragma once

// Check results shared by the verification modules and the CLI.

#include <optional>
#include <string>
#include <vector>

namespace syzkit {

enum class Status { Pass, Fail, Undetermined };

std::string to_string(Status s);

struct CheckItem {
    std::string id;
    Status status = Status::Pass;
    std::string detail;
    /// Rendered form or scalar that shows the failure (or the computed value).
    std::optional<std::string> witness;
    /// Informational items never make a report fail.
    bool required = true;
};

class CheckReport {
public:
    CheckItem& add(CheckItem item);
    CheckItem& add(std::string id, bool ok, std::string detail = {}, std::optional<std::string> witness = std::nullopt);
    CheckItem& info(std::string id, std::string detail, std::optional<std::string> witness = std::nullopt);
    void append(const CheckReport& other, const std::string& prefix = {});

    const std::vector<CheckItem>& items() const { return items_; }
    const CheckItem* find(const std::string& id) const;
    bool passed() const;
    /// First required item that did not pass.
    const CheckItem* first_failure() const;

private:
    std::vector<CheckItem> items_;
};

}  // namespace syzkit
