/**
 * @file amis.cpp
 * @brief Implementation of the iterative margin-dependent selection.
 */

#include <modsel/amis.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace modsel::amis {

namespace {

// Effective weight map: the config's weights when given (must then cover
// every dataset), otherwise uniform 1.0 per dataset.
std::map<std::string, double> effective_weights(const std::vector<std::string>& datasets,
                                                const std::map<std::string, double>& configured) {
    std::map<std::string, double> weights;
    if (configured.empty()) {
        for (const auto& d : datasets) weights[d] = 1.0;
        return weights;
    }
    for (const auto& d : datasets) {
        auto it = configured.find(d);
        if (it == configured.end()) {
            throw ValidationError("dataset_weights", "no weight for dataset '" + d + "'");
        }
        if (!(it->second >= 0.0) || !std::isfinite(it->second)) {
            throw ValidationError("dataset_weights", "negative or non-finite weight for '" +
                                                           d + "'");
        }
        weights[d] = it->second;
    }
    double total = 0.0;
    for (const auto& [d, w] : weights) total += w;
    if (total <= 0.0) {
        throw ValidationError("dataset_weights", "weights must sum to a positive value");
    }
    return weights;
}

// Internal view of one selection round: a subset of the matrix candidates.
struct PoolView {
    const ingest::TradeoffMatrix* matrix = nullptr;
    std::vector<std::size_t> members;       // indices into matrix->candidates()
    std::vector<double> mean_times;         // aligned with members (plain mean)
};

PoolView make_pool(const ingest::TradeoffMatrix& matrix, std::vector<std::size_t> members) {
    PoolView pool;
    pool.matrix = &matrix;
    pool.members = std::move(members);
    pool.mean_times.reserve(pool.members.size());
    const std::size_t nd = matrix.dataset_count();
    for (std::size_t c : pool.members) {
        double sum = 0.0;
        for (std::size_t d = 0; d < nd; ++d) sum += matrix.point(c, d).time_ms;
        pool.mean_times.push_back(sum / static_cast<double>(nd));
    }
    return pool;
}

// Candidate order for a slate of final scores: descending score, then
// ascending mean time, then lexicographic model_id.
std::vector<std::size_t> ranking_order(const PoolView& pool, const std::vector<double>& finals) {
    std::vector<std::size_t> order(pool.members.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (finals[a] != finals[b]) return finals[a] > finals[b];
        if (pool.mean_times[a] != pool.mean_times[b]) {
            return pool.mean_times[a] < pool.mean_times[b];
        }
        return candidate_less(pool.matrix->candidates()[pool.members[a]],
                              pool.matrix->candidates()[pool.members[b]]);
    });
    return order;
}

std::vector<double> final_scores(const PoolView& pool,
                                 const std::map<std::string, regression::SlopeModel>& fitted,
                                 double factor, const std::map<std::string, double>& weights) {
    const auto& matrix = *pool.matrix;
    const std::size_t n = pool.members.size();
    std::vector<double> finals(n, 0.0);
    double weight_total = 0.0;

    std::vector<double> residuals(n);
    for (std::size_t d = 0; d < matrix.dataset_count(); ++d) {
        const std::string& dataset = matrix.datasets()[d];
        auto fit_it = fitted.find(dataset);
        if (fit_it == fitted.end()) {
            throw ValidationError("fitted", "no fitted line for dataset '" + dataset + "'");
        }
        const regression::SlopeModel line = regression::adjusted_line(fit_it->second, factor);
        for (std::size_t i = 0; i < n; ++i) {
            residuals[i] = regression::residual(line, matrix.point(pool.members[i], d));
        }
        const std::vector<double> scores = normalize_scores(residuals);
        const double w = weights.at(dataset);
        for (std::size_t i = 0; i < n; ++i) finals[i] += w * scores[i];
        weight_total += w;
    }
    for (double& f : finals) f /= weight_total;
    return finals;
}

std::vector<double> points_for_order(const std::vector<std::size_t>& order,
                                     std::span<const double> schedule) {
    std::vector<double> points(order.size(), 0.0);
    for (std::size_t rank = 0; rank < order.size() && rank < schedule.size(); ++rank) {
        points[order[rank]] = schedule[rank];
    }
    return points;
}

SweepResult sweep_pool(const PoolView& pool,
                       const std::map<std::string, regression::SlopeModel>& fitted,
                       const AmisConfig& config) {
    const auto weights = effective_weights(pool.matrix->datasets(), config.dataset_weights);
    const std::vector<double> grid = factor_grid(config);
    const std::size_t window = static_cast<std::size_t>(config.stability_window);

    SweepResult result;
    result.totals.assign(pool.members.size(), 0.0);
    result.factors.reserve(grid.size());

    std::vector<std::size_t> previous_top;
    for (std::size_t fi = 0; fi < grid.size(); ++fi) {
        const double factor = grid[fi];
        const std::vector<double> finals = final_scores(pool, fitted, factor, weights);
        const std::vector<std::size_t> order = ranking_order(pool, finals);
        std::vector<std::size_t> top(order.begin(),
                                     order.begin() + std::min(window, order.size()));

        FactorDiagnostic diag;
        diag.factor = factor;
        diag.points = points_for_order(order, config.rank_points_schedule);
        diag.contributed = (fi == 0) || (top != previous_top);
        if (diag.contributed) {
            for (std::size_t i = 0; i < result.totals.size(); ++i) {
                result.totals[i] += diag.points[i];
            }
        }
        previous_top = std::move(top);
        result.factors.push_back(std::move(diag));
    }
    return result;
}

std::size_t argmax_points(const PoolView& pool, const std::vector<double>& totals) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < totals.size(); ++i) {
        if (totals[i] > totals[best]) {
            best = i;
        } else if (totals[i] == totals[best]) {
            if (pool.mean_times[i] < pool.mean_times[best] ||
                (pool.mean_times[i] == pool.mean_times[best] &&
                 candidate_less(pool.matrix->candidates()[pool.members[i]],
                                pool.matrix->candidates()[pool.members[best]]))) {
                best = i;
            }
        }
    }
    return best;
}

std::map<std::string, regression::SlopeModel> fit_pool(const PoolView& pool, int round) {
    const auto& matrix = *pool.matrix;
    std::map<std::string, regression::SlopeModel> fits;
    for (std::size_t d = 0; d < matrix.dataset_count(); ++d) {
        std::vector<TradeoffPoint> points;
        points.reserve(pool.members.size());
        for (std::size_t c : pool.members) points.push_back(matrix.point(c, d));
        try {
            fits[matrix.datasets()[d]] = regression::fit_line(points);
        } catch (const DegenerateFitError& e) {
            throw DegenerateFitError("round " + std::to_string(round) + ", dataset '" +
                                     matrix.datasets()[d] + "': " + e.what());
        }
    }
    return fits;
}

}  // namespace

std::string to_string(FactorSpacing spacing) {
    return spacing == FactorSpacing::Geometric ? "geometric" : "linear";
}

FactorSpacing factor_spacing_from_string(const std::string& text) {
    if (text == "geometric") return FactorSpacing::Geometric;
    if (text == "linear") return FactorSpacing::Linear;
    throw ValidationError("factor_spacing", "expected geometric or linear, got '" + text + "'");
}

void AmisConfig::validate() const {
    std::vector<FieldIssue> issues;
    if (factor_count < 1) issues.push_back({"factor_count", "must be >= 1"});
    if (!(factor_min > 0.0) || !std::isfinite(factor_min)) {
        issues.push_back({"factor_min", "must be a positive finite number"});
    }
    if (!(factor_max > 0.0) || !std::isfinite(factor_max)) {
        issues.push_back({"factor_max", "must be a positive finite number"});
    }
    if (factor_count > 1 && !(factor_min < factor_max)) {
        issues.push_back({"factor_min", "must be strictly below factor_max"});
    }
    if (rank_points_schedule.empty()) {
        issues.push_back({"rank_points", "schedule must be non-empty"});
    }
    for (std::size_t i = 0; i < rank_points_schedule.size(); ++i) {
        if (rank_points_schedule[i] < 0.0 || !std::isfinite(rank_points_schedule[i])) {
            issues.push_back({"rank_points", "entries must be non-negative finite numbers"});
            break;
        }
        if (i > 0 && !(rank_points_schedule[i] < rank_points_schedule[i - 1])) {
            issues.push_back({"rank_points", "schedule must be strictly descending"});
            break;
        }
    }
    if (stability_window < 1) issues.push_back({"stability_window", "must be >= 1"});
    if (selection_count < 1) issues.push_back({"selection_count", "must be >= 1"});
    if (!dataset_weights.empty()) {
        double total = 0.0;
        for (const auto& [dataset, weight] : dataset_weights) {
            if (weight < 0.0 || !std::isfinite(weight)) {
                issues.push_back({"dataset_weights",
                                  "weight for '" + dataset + "' must be non-negative and finite"});
            } else {
                total += weight;
            }
        }
        if (total <= 0.0) {
            issues.push_back({"dataset_weights", "weights must sum to a positive value"});
        }
    }
    if (!issues.empty()) throw ValidationError(std::move(issues));
}

std::vector<double> factor_grid(const AmisConfig& config) {
    config.validate();
    const int n = config.factor_count;
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(n));
    if (n == 1) {
        grid.push_back(config.factor_min);
        return grid;
    }
    if (config.spacing == FactorSpacing::Geometric) {
        const double log_ratio = std::log(config.factor_max / config.factor_min);
        for (int i = 0; i < n; ++i) {
            grid.push_back(config.factor_min *
                           std::exp(log_ratio * static_cast<double>(i) / (n - 1)));
        }
    } else {
        const double step = (config.factor_max - config.factor_min) / (n - 1);
        for (int i = 0; i < n; ++i) {
            grid.push_back(config.factor_min + step * static_cast<double>(i));
        }
    }
    grid.front() = config.factor_min;
    grid.back() = config.factor_max;
    return grid;
}

std::vector<double> normalize_scores(std::span<const double> residuals) {
    if (residuals.empty()) {
        throw ValidationError("residuals", "cannot normalize an empty list");
    }
    double lo = residuals[0];
    double hi = residuals[0];
    for (double r : residuals) {
        if (!std::isfinite(r)) {
            throw ValidationError("residuals", "residuals must be finite");
        }
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    std::vector<double> scores(residuals.size());
    if (hi == lo) {
        std::fill(scores.begin(), scores.end(), 50.0);
        return scores;
    }
    const double range = hi - lo;
    for (std::size_t i = 0; i < residuals.size(); ++i) {
        scores[i] = 100.0 * (residuals[i] - lo) / range;
    }
    return scores;
}

double weighted_score(const std::map<std::string, double>& scores,
                      const std::map<std::string, double>& weights) {
    if (scores.size() != weights.size()) {
        throw ValidationError("weights", "score and weight key sets differ");
    }
    double numerator = 0.0;
    double denominator = 0.0;
    for (const auto& [dataset, score] : scores) {
        auto it = weights.find(dataset);
        if (it == weights.end()) {
            throw ValidationError("weights", "no weight for dataset '" + dataset + "'");
        }
        numerator += it->second * score;
        denominator += it->second;
    }
    if (denominator <= 0.0) {
        throw ValidationError("weights", "weights must sum to a positive value");
    }
    return numerator / denominator;
}

std::vector<double> rank_points(std::span<const CandidateScore> scores,
                                std::span<const double> schedule) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a].score != scores[b].score) return scores[a].score > scores[b].score;
        if (scores[a].mean_time_ms != scores[b].mean_time_ms) {
            return scores[a].mean_time_ms < scores[b].mean_time_ms;
        }
        return candidate_less(scores[a].candidate, scores[b].candidate);
    });
    std::vector<double> points(scores.size(), 0.0);
    for (std::size_t rank = 0; rank < order.size() && rank < schedule.size(); ++rank) {
        points[order[rank]] = schedule[rank];
    }
    return points;
}

std::vector<double> score_at_factor(const ingest::TradeoffMatrix& matrix,
                                    const std::map<std::string, regression::SlopeModel>& fitted,
                                    double factor, const AmisConfig& config) {
    config.validate();
    std::vector<std::size_t> all(matrix.candidate_count());
    std::iota(all.begin(), all.end(), 0);
    const PoolView pool = make_pool(matrix, std::move(all));
    const auto weights = effective_weights(matrix.datasets(), config.dataset_weights);
    const std::vector<double> finals = final_scores(pool, fitted, factor, weights);
    return points_for_order(ranking_order(pool, finals), config.rank_points_schedule);
}

SweepResult factor_sweep(const ingest::TradeoffMatrix& matrix,
                         const std::map<std::string, regression::SlopeModel>& fitted,
                         const AmisConfig& config) {
    config.validate();
    std::vector<std::size_t> all(matrix.candidate_count());
    std::iota(all.begin(), all.end(), 0);
    return sweep_pool(make_pool(matrix, std::move(all)), fitted, config);
}

SelectionResult select(const ingest::TradeoffMatrix& matrix, const AmisConfig& config) {
    config.validate();
    const std::size_t k = static_cast<std::size_t>(config.selection_count);
    if (matrix.candidate_count() < k) {
        throw ValidationError("selection_count",
                                "pool holds " + std::to_string(matrix.candidate_count()) +
                                    " candidates, cannot select " + std::to_string(k));
    }

    SelectionResult result;
    result.config = config;

    std::vector<std::size_t> remaining(matrix.candidate_count());
    std::iota(remaining.begin(), remaining.end(), 0);

    for (std::size_t round = 1; result.selected.size() < k; ++round) {
        if (remaining.empty()) {
            throw Error("round " + std::to_string(round) + ": candidate pool exhausted");
        }
        const PoolView pool = make_pool(matrix, remaining);
        RoundDiagnostics diag;
        for (std::size_t i : pool.members) diag.pool.push_back(matrix.candidates()[i]);

        std::size_t chosen_local = 0;
        if (pool.members.size() == 1) {
            // A single leftover candidate needs no sweep; there is no line
            // to fit through one point.
            diag.accumulated_points.assign(1, 0.0);
        } else {
            diag.fits = fit_pool(pool, static_cast<int>(round));
            SweepResult sweep = sweep_pool(pool, diag.fits, config);
            diag.accumulated_points = sweep.totals;
            for (const auto& fd : sweep.factors) {
                if (fd.contributed) diag.contributing_factors.push_back(fd.factor);
            }
            chosen_local = argmax_points(pool, sweep.totals);
            diag.factor_details = std::move(sweep.factors);
        }

        const std::size_t chosen_global = pool.members[chosen_local];
        diag.selected = matrix.candidates()[chosen_global];
        result.selected.push_back(diag.selected);
        result.rounds.push_back(std::move(diag));
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(chosen_local));
    }
    return result;
}

CandidateId best_within_budget(const ingest::TradeoffMatrix& matrix,
                               const std::vector<CandidateId>& selected, double budget_ms,
                               const std::map<std::string, double>& dataset_weights) {
    if (selected.empty()) {
        throw ValidationError("selected", "candidate list must be non-empty");
    }
    const auto weights = effective_weights(matrix.datasets(), dataset_weights);
    double weight_total = 0.0;
    for (const auto& [dataset, w] : weights) weight_total += w;

    struct Entry {
        const CandidateId* id;
        double time;
        double accuracy;
    };
    std::vector<Entry> feasible;
    double fastest = std::numeric_limits<double>::infinity();
    for (const auto& id : selected) {
        const std::size_t c = matrix.candidate_index(id);
        double time = 0.0;
        double accuracy = 0.0;
        for (std::size_t d = 0; d < matrix.dataset_count(); ++d) {
            const double w = weights.at(matrix.datasets()[d]);
            time += w * matrix.point(c, d).time_ms;
            accuracy += w * matrix.point(c, d).accuracy;
        }
        time /= weight_total;
        accuracy /= weight_total;
        fastest = std::min(fastest, time);
        if (time <= budget_ms) feasible.push_back({&id, time, accuracy});
    }
    if (feasible.empty()) {
        std::ostringstream msg;
        msg << "no feasible model within " << budget_ms << " ms (fastest selected candidate needs "
            << fastest << " ms)";
        throw NoFeasibleModelError(msg.str());
    }
    const Entry* best = &feasible.front();
    for (const auto& entry : feasible) {
        if (entry.accuracy > best->accuracy ||
            (entry.accuracy == best->accuracy &&
             (entry.time < best->time ||
              (entry.time == best->time && candidate_less(*entry.id, *best->id))))) {
            best = &entry;
        }
    }
    return *best->id;
}

}  // namespace modsel::amis
