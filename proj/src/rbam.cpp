#include "rsep/rbam.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rsep {

Rbam Rbam::from_allocation(const Allocation& alloc) {
    Rbam rbam(alloc.num_bs(), alloc.grid_size());
    for (int b = 0; b < alloc.num_bs(); ++b)
        for (int tau = 0; tau < alloc.grid_size(); ++tau)
            rbam.grid_[b][tau] = alloc.owner(b, tau);
    return rbam;
}

Allocation Rbam::to_allocation(int num_subcarriers, int num_slots) const {
    if (num_subcarriers * num_slots != num_cols_)
        throw std::invalid_argument("RBAM column count does not match the grid");
    return Allocation::from_grid(num_subcarriers, num_slots, grid_);
}

std::int64_t Rbam::links(const std::vector<std::vector<int>>& adjacency) const {
    std::int64_t total = 0;
    for (int col = 0; col < num_cols_; ++col)
        for (int b1 = 0; b1 < num_bs(); ++b1) {
            int m = grid_[b1][col];
            if (m == kUnassigned) continue;
            for (int b2 = b1 + 1; b2 < num_bs(); ++b2)
                if (adjacency[b1][b2] && grid_[b2][col] == m) ++total;
        }
    return total;
}

std::string Rbam::pretty() const {
    std::ostringstream out;
    for (int b = 0; b < num_bs(); ++b) {
        out << "BS" << b + 1 << " |";
        for (int col = 0; col < num_cols_; ++col) {
            if (grid_[b][col] == kUnassigned)
                out << "  .";
            else
                out << " M" << grid_[b][col] + 1;
        }
        out << "\n";
    }
    return out.str();
}

std::string Rbam::to_json() const {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int b = 0; b < num_bs(); ++b) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int col = 0; col < num_cols_; ++col) {
            if (grid_[b][col] == kUnassigned)
                row.push_back(nullptr);
            else
                row.push_back(grid_[b][col] + 1);
        }
        rows.push_back(std::move(row));
    }
    return rows.dump(2) + "\n";
}

Rbam Rbam::from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("RBAM JSON parse error: ") + e.what());
    }
    if (!doc.is_array() || doc.empty())
        throw std::invalid_argument("RBAM JSON must be a non-empty array of rows");
    Rbam rbam(static_cast<int>(doc.size()), static_cast<int>(doc[0].size()));
    for (int b = 0; b < rbam.num_bs(); ++b) {
        if (static_cast<int>(doc[b].size()) != rbam.num_cols())
            throw std::invalid_argument("RBAM JSON rows must have equal length");
        for (int col = 0; col < rbam.num_cols(); ++col) {
            const auto& cell = doc[b][col];
            if (cell.is_null())
                rbam.grid_[b][col] = kUnassigned;
            else
                rbam.grid_[b][col] = cell.get<int>() - 1;
        }
    }
    return rbam;
}

} // namespace rsep
