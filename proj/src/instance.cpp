#include "rsep/instance.hpp"

#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace rsep {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

} // namespace

Instance::Instance(int num_mvnos, int num_bs, int num_subcarriers, int num_slots,
                   std::vector<std::vector<int>> adjacency,
                   std::vector<std::vector<int>> profile)
    : num_mvnos_(num_mvnos),
      num_bs_(num_bs),
      num_subcarriers_(num_subcarriers),
      num_slots_(num_slots),
      adjacency_(std::move(adjacency)),
      profile_(std::move(profile)) {
    require(num_mvnos_ > 0, "M must be positive");
    require(num_bs_ > 0, "B must be positive");
    require(num_subcarriers_ > 0, "N_RB must be positive");
    require(num_slots_ > 0, "T must be positive");

    require(static_cast<int>(adjacency_.size()) == num_bs_, "Y must have B rows");
    for (int b1 = 0; b1 < num_bs_; ++b1) {
        require(static_cast<int>(adjacency_[b1].size()) == num_bs_, "Y must be B x B");
        for (int b2 = 0; b2 < num_bs_; ++b2) {
            int y = adjacency_[b1][b2];
            require(y == 0 || y == 1, "Y entries must be 0 or 1");
        }
        require(adjacency_[b1][b1] == 0, "Y must have a zero diagonal");
    }
    for (int b1 = 0; b1 < num_bs_; ++b1)
        for (int b2 = b1 + 1; b2 < num_bs_; ++b2)
            require(adjacency_[b1][b2] == adjacency_[b2][b1], "Y must be symmetric");

    require(static_cast<int>(profile_.size()) == num_mvnos_, "L must have M rows");
    for (int m = 0; m < num_mvnos_; ++m) {
        require(static_cast<int>(profile_[m].size()) == num_bs_, "L must be M x B");
        for (int b = 0; b < num_bs_; ++b)
            require(profile_[m][b] >= 0, "L entries must be non-negative");
    }
}

std::vector<std::pair<int, int>> Instance::interfering_pairs() const {
    std::vector<std::pair<int, int>> pairs;
    for (int b1 = 0; b1 < num_bs_; ++b1)
        for (int b2 = b1 + 1; b2 < num_bs_; ++b2)
            if (adjacency_[b1][b2]) pairs.emplace_back(b1, b2);
    return pairs;
}

bool Instance::has_interference() const {
    for (int b1 = 0; b1 < num_bs_; ++b1)
        for (int b2 = b1 + 1; b2 < num_bs_; ++b2)
            if (adjacency_[b1][b2]) return true;
    return false;
}

int Instance::bs_load(int b) const {
    int load = 0;
    for (int m = 0; m < num_mvnos_; ++m) load += profile_[m][b];
    return load;
}

int Instance::overloaded_bs() const {
    for (int b = 0; b < num_bs_; ++b)
        if (bs_load(b) > grid_size()) return b;
    return -1;
}

std::string Instance::to_json() const {
    nlohmann::ordered_json doc;
    doc["M"] = num_mvnos_;
    doc["B"] = num_bs_;
    doc["N_RB"] = num_subcarriers_;
    doc["T"] = num_slots_;
    doc["Y"] = adjacency_;
    doc["L"] = profile_;
    return doc.dump(2) + "\n";
}

Instance Instance::from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("instance JSON parse error: ") + e.what());
    }
    try {
        return Instance(doc.at("M").get<int>(), doc.at("B").get<int>(),
                        doc.at("N_RB").get<int>(), doc.at("T").get<int>(),
                        doc.at("Y").get<std::vector<std::vector<int>>>(),
                        doc.at("L").get<std::vector<std::vector<int>>>());
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("instance JSON: ") + e.what());
    }
}

} // namespace rsep
