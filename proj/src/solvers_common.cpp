#include "rsep/solvers.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "rsep/errors.hpp"
#include "rsep/qmatrix.hpp"

namespace rsep {

std::string solver_name(SolverId id) {
    switch (id) {
        case SolverId::Exact: return "exact";
        case SolverId::Relaxed: return "relaxed";
        case SolverId::Mlf: return "mlf";
        case SolverId::BruteForce: return "brute";
    }
    return "unknown";
}

std::optional<SolverId> solver_from_name(const std::string& name) {
    if (name == "exact") return SolverId::Exact;
    if (name == "relaxed") return SolverId::Relaxed;
    if (name == "mlf") return SolverId::Mlf;
    if (name == "brute") return SolverId::BruteForce;
    return std::nullopt;
}

std::string SolveResult::to_json() const {
    nlohmann::ordered_json doc;
    doc["solver"] = solver_name(solver_id);
    doc["objective"] = objective;
    doc["certified"] = optimal_certified;
    doc["elapsed_ms"] = elapsed_ms;
    doc["nodes"] = nodes;
    nlohmann::ordered_json grid = nlohmann::ordered_json::array();
    for (int b = 0; b < allocation.num_bs(); ++b) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int tau = 0; tau < allocation.grid_size(); ++tau) {
            int m = allocation.owner(b, tau);
            if (m == kUnassigned)
                row.push_back(nullptr);
            else
                row.push_back(m + 1);
        }
        grid.push_back(std::move(row));
    }
    doc["allocation"] = std::move(grid);
    return doc.dump(2) + "\n";
}

RelaxParams RelaxParams::for_instance(const Instance& inst, std::optional<double> lambda,
                                      int max_restarts, std::uint64_t rounding_seed,
                                      double convergence_tol) {
    double zstar = 0.0;
    if (inst.has_interference()) zstar = QMatrix(inst).largest_eigenvalue();
    double lam = lambda.value_or(zstar + 1.0);
    if (lam < zstar) {
        std::ostringstream msg;
        msg << "lambda = " << lam << " is below z* = " << zstar
            << "; penalty equivalence not guaranteed";
        throw std::invalid_argument(msg.str());
    }
    if (max_restarts < 1) throw std::invalid_argument("max_restarts must be positive");
    return RelaxParams(lam, max_restarts, rounding_seed, convergence_tol);
}

double relaxed_surrogate_value(const Instance& inst, const Allocation& alloc,
                               double lambda) {
    QMatrix q(inst);
    std::vector<std::uint8_t> bits = alloc.to_bits(inst);
    std::vector<std::int64_t> x(bits.begin(), bits.end());
    std::vector<std::int64_t> qx = q.matvec(x);
    std::int64_t xqx = 0, ones = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        xqx += x[i] * qx[i];
        ones += x[i];
    }
    // x'x = e'x at binary points, so the penalty term cancels exactly.
    std::int64_t xx = ones, ex = ones;
    return 0.5 * static_cast<double>(xqx) + lambda * static_cast<double>(xx - ex);
}

} // namespace rsep
