/**
 * @file modsel_main.cpp
 * @brief Command-line front end: validate, pareto, select, budget, cluster,
 *        sha, metrics, report.
 *
 * Exit codes: 0 success, 1 validation/data error, 2 usage error.
 */

#include <modsel/amis.hpp>
#include <modsel/cluster.hpp>
#include <modsel/config.hpp>
#include <modsel/core.hpp>
#include <modsel/ingest.hpp>
#include <modsel/pareto.hpp>
#include <modsel/posemetrics.hpp>
#include <modsel/regression.hpp>
#include <modsel/report.hpp>
#include <modsel/sha.hpp>

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace modsel;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw Error("failed writing '" + path + "'");
}

std::string format_number(double value) {
    char buffer[32];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

// stdout listings round to two decimals; file outputs keep full precision
std::string fixed2(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.2f", value);
    return buffer;
}

config::RunConfig load_run_config(const std::string& path) {
    if (path.empty()) return {};
    std::istringstream in(read_file(path));
    return config::load_config(in);
}

std::vector<BenchmarkRecord> load_records(const std::string& csv_path,
                                          const std::string& pool_path) {
    std::istringstream in(read_file(csv_path));
    auto records = ingest::parse_benchmark_table(in);
    if (!pool_path.empty()) {
        std::istringstream pool_in(read_file(pool_path));
        ingest::apply_candidate_pool(records, ingest::parse_candidate_pool(pool_in));
    }
    return records;
}

// Shared knobs for the subcommands that consume a benchmark table.
struct TableArgs {
    std::string input;
    std::string pool_path;
    std::string config_path;
    std::string metric_override;
    std::vector<std::string> weight_overrides;  // dataset=weight
};

void add_table_options(CLI::App* cmd, TableArgs& args) {
    cmd->add_option("input", args.input, "benchmark results CSV")->required();
    cmd->add_option("--pool", args.pool_path, "candidate-pool sidecar CSV");
    cmd->add_option("--config", args.config_path, "run configuration file");
    cmd->add_option("--metric", args.metric_override,
                    "accuracy metric: ar|mspd|mssd|vsd|add|mean_of_listed");
    cmd->add_option("--weight", args.weight_overrides,
                    "dataset weight as dataset=value (repeatable)");
}

config::RunConfig resolve_config(const TableArgs& args) {
    config::RunConfig run = load_run_config(args.config_path);
    if (!args.metric_override.empty()) {
        run.metric = ingest::accuracy_metric_from_string(args.metric_override);
    }
    for (const auto& spec : args.weight_overrides) {
        const auto equals = spec.find('=');
        if (equals == std::string::npos) {
            throw ValidationError("--weight", "expected dataset=value, got '" + spec + "'");
        }
        const std::string dataset = spec.substr(0, equals);
        double value = 0.0;
        const std::string text = spec.substr(equals + 1);
        const char* begin = text.data();
        auto [ptr, ec] = std::from_chars(begin, begin + text.size(), value);
        if (ec != std::errc() || ptr != begin + text.size()) {
            throw ValidationError("--weight", "cannot parse weight in '" + spec + "'");
        }
        run.amis.dataset_weights[dataset] = value;
    }
    return run;
}

ingest::TradeoffMatrix load_matrix(const TableArgs& args, const config::RunConfig& run) {
    return ingest::build_matrix(load_records(args.input, args.pool_path), run.metric);
}

// Weighted-mean trade-off point per candidate, used when no dataset is named.
std::vector<pareto::LabeledPoint> mean_points(const ingest::TradeoffMatrix& matrix,
                                              const std::map<std::string, double>& weights) {
    std::map<std::string, double> effective = weights;
    if (effective.empty()) {
        for (const auto& d : matrix.datasets()) effective[d] = 1.0;
    }
    double total = 0.0;
    for (const auto& d : matrix.datasets()) {
        auto it = effective.find(d);
        if (it == effective.end()) {
            throw ValidationError("dataset_weights", "no weight for dataset '" + d + "'");
        }
        total += it->second;
    }
    if (total <= 0.0) {
        throw ValidationError("dataset_weights", "weights must sum to a positive value");
    }
    std::vector<pareto::LabeledPoint> points;
    for (std::size_t c = 0; c < matrix.candidate_count(); ++c) {
        double time = 0.0;
        double accuracy = 0.0;
        for (std::size_t d = 0; d < matrix.dataset_count(); ++d) {
            const double w = effective.at(matrix.datasets()[d]);
            time += w * matrix.point(c, d).time_ms;
            accuracy += w * matrix.point(c, d).accuracy;
        }
        points.push_back({matrix.candidates()[c], {time / total, accuracy / total}});
    }
    return points;
}

std::vector<pareto::LabeledPoint> dataset_points(const ingest::TradeoffMatrix& matrix,
                                                 const std::string& dataset) {
    std::size_t index = matrix.dataset_count();
    for (std::size_t d = 0; d < matrix.dataset_count(); ++d) {
        if (matrix.datasets()[d] == dataset) index = d;
    }
    if (index == matrix.dataset_count()) {
        throw ValidationError("dataset", "'" + dataset + "' not present in the input");
    }
    std::vector<pareto::LabeledPoint> points;
    for (std::size_t c = 0; c < matrix.candidate_count(); ++c) {
        points.push_back({matrix.candidates()[c], matrix.point(c, index)});
    }
    return points;
}

std::string selection_csv(const amis::SelectionResult& result) {
    std::ostringstream out;
    out << "rank,model_id,refined,points\n";
    for (std::size_t i = 0; i < result.selected.size(); ++i) {
        const auto& round = result.rounds[i];
        double points = 0.0;
        for (std::size_t j = 0; j < round.pool.size(); ++j) {
            if (round.pool[j] == result.selected[i]) points = round.accumulated_points[j];
        }
        out << (i + 1) << ',' << result.selected[i].model_id << ','
            << (result.selected[i].refined ? "true" : "false") << ',' << format_number(points)
            << "\n";
    }
    return out.str();
}

std::string rounds_csv(const amis::SelectionResult& result) {
    std::ostringstream out;
    out << "round,model_id,refined,accumulated_points,selected\n";
    for (std::size_t r = 0; r < result.rounds.size(); ++r) {
        const auto& round = result.rounds[r];
        for (std::size_t j = 0; j < round.pool.size(); ++j) {
            out << (r + 1) << ',' << round.pool[j].model_id << ','
                << (round.pool[j].refined ? "true" : "false") << ','
                << format_number(round.accumulated_points[j]) << ','
                << (round.pool[j] == round.selected ? "true" : "false") << "\n";
        }
    }
    return out.str();
}

std::string factors_csv(const amis::SelectionResult& result) {
    std::ostringstream out;
    out << "round,factor,contributed,model_id,refined,points\n";
    for (std::size_t r = 0; r < result.rounds.size(); ++r) {
        const auto& round = result.rounds[r];
        for (const auto& fd : round.factor_details) {
            for (std::size_t j = 0; j < round.pool.size(); ++j) {
                out << (r + 1) << ',' << format_number(fd.factor) << ','
                    << (fd.contributed ? "true" : "false") << ',' << round.pool[j].model_id << ','
                    << (round.pool[j].refined ? "true" : "false") << ','
                    << format_number(fd.points[j]) << "\n";
            }
        }
    }
    return out.str();
}

std::vector<CandidateId> load_selection_file(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line) || line.rfind("rank,model_id,refined", 0) != 0) {
        throw ParseError(0, "", "malformed selection file, expected header "
                                "'rank,model_id,refined[,points]'");
    }
    std::vector<CandidateId> selected;
    int row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++row;
        std::vector<std::string> fields;
        std::string current;
        for (char c : line) {
            if (c == ',') {
                fields.push_back(current);
                current.clear();
            } else {
                current += c;
            }
        }
        fields.push_back(current);
        if (fields.size() < 3) {
            throw ParseError(row, "", "expected at least 3 columns in selection file");
        }
        CandidateId id;
        id.model_id = fields[1];
        id.refined = (fields[2] == "true");
        id.backbone = fields[1];
        selected.push_back(id);
    }
    if (selected.empty()) throw ValidationError("selection", "selection file lists no models");
    return selected;
}

std::vector<pose::Pose> load_pose_file(const std::string& path) {
    std::istringstream in(read_file(path));
    std::vector<pose::Pose> poses;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::vector<double> numbers;
        double v;
        while (fields >> v) numbers.push_back(v);
        if (numbers.empty()) continue;
        if (numbers.size() != 12) {
            throw ParseError(row, "",
                             "expected 12 numbers (row-major rotation then translation), got " +
                                 std::to_string(numbers.size()));
        }
        pose::Pose p;
        p.rotation << numbers[0], numbers[1], numbers[2], numbers[3], numbers[4], numbers[5],
            numbers[6], numbers[7], numbers[8];
        p.translation << numbers[9], numbers[10], numbers[11];
        p.validate("pose");
        poses.push_back(p);
    }
    if (poses.empty()) throw ValidationError("poses", "'" + path + "' lists no poses");
    return poses;
}

// ---------------------------------------------------------------------------
// subcommand runners
// ---------------------------------------------------------------------------

void run_validate(const TableArgs& args) {
    const auto records = load_records(args.input, args.pool_path);
    std::map<std::pair<std::string, bool>, int> candidates;
    std::map<std::string, int> datasets;
    for (const auto& r : records) {
        candidates[{r.candidate.model_id, r.candidate.refined}]++;
        datasets[r.dataset]++;
    }
    std::cout << "OK: " << records.size() << " records, " << candidates.size()
              << " candidates, " << datasets.size() << " datasets\n";
}

void run_pareto(const TableArgs& args, const std::string& dataset, const std::string& svg_path,
                const std::string& csv_path, int width, int height) {
    const auto run = resolve_config(args);
    const auto matrix = load_matrix(args, run);
    const auto points = dataset.empty() ? mean_points(matrix, run.amis.dataset_weights)
                                        : dataset_points(matrix, dataset);
    const auto frontier = pareto::wrap_line(points);

    std::cout << "wrap line (" << frontier.points.size() << " of " << points.size()
              << " points):\n";
    for (const auto& lp : frontier.points) {
        std::cout << "  " << lp.candidate.label() << "  time_ms=" << fixed2(lp.point.time_ms)
                  << "  accuracy=" << fixed2(lp.point.accuracy) << "\n";
    }
    if (!csv_path.empty()) {
        std::ostringstream out;
        out << "model_id,refined,time_ms,accuracy\n";
        for (const auto& lp : frontier.points) {
            out << lp.candidate.model_id << ',' << (lp.candidate.refined ? "true" : "false") << ','
                << format_number(lp.point.time_ms) << ',' << format_number(lp.point.accuracy)
                << "\n";
        }
        write_file(csv_path, out.str());
    }
    if (!svg_path.empty()) {
        report::SvgOptions options;
        options.width = width;
        options.height = height;
        options.accuracy_label = ingest::to_string(matrix.accuracy_metric()) + " (%)";
        write_file(svg_path, report::scatter_svg(points, frontier, {}, options));
    }
}

void run_select(const TableArgs& args, int count_override, const std::string& selection_out,
                const std::string& rounds_out, const std::string& factors_out) {
    auto run = resolve_config(args);
    if (count_override > 0) run.amis.selection_count = count_override;
    const auto matrix = load_matrix(args, run);
    const auto result = amis::select(matrix, run.amis);

    std::cout << "selected " << result.selected.size() << " of " << matrix.candidate_count()
              << " candidates:\n";
    for (std::size_t i = 0; i < result.selected.size(); ++i) {
        const auto& round = result.rounds[i];
        double points = 0.0;
        for (std::size_t j = 0; j < round.pool.size(); ++j) {
            if (round.pool[j] == result.selected[i]) points = round.accumulated_points[j];
        }
        std::cout << "  " << (i + 1) << ". " << result.selected[i].label() << "  (points "
                  << format_number(points) << ", " << round.contributing_factors.size()
                  << " contributing factors)\n";
    }
    if (!selection_out.empty()) write_file(selection_out, selection_csv(result));
    if (!rounds_out.empty()) write_file(rounds_out, rounds_csv(result));
    if (!factors_out.empty()) write_file(factors_out, factors_csv(result));
}

void run_budget(const TableArgs& args, double budget_ms, const std::string& selection_path) {
    const auto run = resolve_config(args);
    const auto matrix = load_matrix(args, run);
    const std::vector<CandidateId> selected =
        selection_path.empty() ? matrix.candidates() : load_selection_file(selection_path);
    const CandidateId best =
        amis::best_within_budget(matrix, selected, budget_ms, run.amis.dataset_weights);
    std::cout << "best within " << format_number(budget_ms) << " ms: " << best.label() << "\n";
}

void run_cluster(const TableArgs& args, int k_override, const std::string& dataset) {
    const auto run = resolve_config(args);
    const auto matrix = load_matrix(args, run);
    const int k = k_override > 0 ? k_override : run.cluster_k;
    const auto points = dataset.empty() ? mean_points(matrix, run.amis.dataset_weights)
                                        : dataset_points(matrix, dataset);
    std::vector<double> times;
    times.reserve(points.size());
    for (const auto& lp : points) times.push_back(lp.point.time_ms);
    const auto clustering = cluster::kmeans_1d(times, k);

    std::cout << "clusters (k=" << k << "):\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::cout << "  " << points[i].candidate.label()
                  << "  time_ms=" << fixed2(times[i]) << "  cluster="
                  << clustering.assignments[i] << "\n";
    }
    std::cout << "centers:";
    for (double center : clustering.centers) std::cout << " " << fixed2(center);
    std::cout << "\n";
}

sha::Evaluator scores_file_evaluator(const std::string& path,
                                     std::vector<CandidateId>& candidates) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line) || line.rfind("model_id,budget_epochs,score", 0) != 0) {
        throw ParseError(0, "", "malformed scores file, expected header "
                                "'model_id,budget_epochs,score'");
    }
    auto table = std::make_shared<std::map<std::pair<std::string, int>, double>>();
    int row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++row;
        std::istringstream fields(line);
        std::string model, budget_text, score_text;
        if (!std::getline(fields, model, ',') || !std::getline(fields, budget_text, ',') ||
            !std::getline(fields, score_text) || model.empty()) {
            throw ParseError(row, "", "expected model_id,budget_epochs,score");
        }
        double budget_value = 0.0;
        {
            const char* begin = budget_text.data();
            auto [ptr, ec] = std::from_chars(begin, begin + budget_text.size(), budget_value);
            if (ec != std::errc() || ptr != begin + budget_text.size() ||
                budget_value != static_cast<int>(budget_value)) {
                throw ParseError(row, "budget_epochs",
                                 "cannot parse '" + budget_text + "' as an integer");
            }
        }
        double score = 0.0;
        {
            const char* begin = score_text.data();
            auto [ptr, ec] = std::from_chars(begin, begin + score_text.size(), score);
            if (ec != std::errc() || ptr != begin + score_text.size()) {
                throw ParseError(row, "score", "cannot parse '" + score_text + "' as a number");
            }
        }
        (*table)[{model, static_cast<int>(budget_value)}] = score;
        bool known = false;
        for (const auto& c : candidates) known = known || c.model_id == model;
        if (!known) {
            CandidateId id;
            id.model_id = model;
            id.backbone = model;
            candidates.push_back(id);
        }
    }
    return [table](const CandidateId& id, int budget) {
        auto it = table->find({id.model_id, budget});
        if (it == table->end()) {
            throw Error("scores file has no entry for '" + id.model_id + "' at " +
                        std::to_string(budget) + " epochs");
        }
        return it->second;
    };
}

void run_sha_cmd(const std::string& scores_path, int synthetic_count, unsigned seed,
                 const std::string& plan_text, const std::string& config_path,
                 const std::string& log_out) {
    config::RunConfig run = load_run_config(config_path);
    sha::RungPlan plan = run.rung_plan;
    if (!plan_text.empty()) {
        std::istringstream in("sha.plan = " + plan_text + "\n");
        plan = config::load_config(in).rung_plan;
    }

    std::vector<CandidateId> candidates;
    sha::Evaluator evaluator;
    if (!scores_path.empty()) {
        evaluator = scores_file_evaluator(scores_path, candidates);
    } else {
        // Desk-scale demo: deterministic synthetic learning curves. The seed
        // affects only this generator.
        std::mt19937 rng(seed);
        std::uniform_real_distribution<double> asymptote(55.0, 95.0);
        std::uniform_real_distribution<double> rate(0.08, 0.5);
        std::uniform_real_distribution<double> offset(0.0, 4.0);
        auto curves = std::make_shared<std::map<std::string, sha::CurveParams>>();
        for (int i = 0; i < synthetic_count; ++i) {
            char name[32];
            std::snprintf(name, sizeof(name), "synth_%02d", i + 1);
            CandidateId id;
            id.model_id = name;
            id.backbone = name;
            candidates.push_back(id);
            (*curves)[name] = {asymptote(rng), rate(rng), offset(rng)};
        }
        evaluator = [curves](const CandidateId& id, int budget) {
            return sha::curve_score(curves->at(id.model_id), budget);
        };
    }

    const auto result = sha::run_sha(candidates, evaluator, plan);
    int current_rung = -1;
    for (const auto& entry : result.log) {
        if (entry.rung != current_rung) {
            current_rung = entry.rung;
            std::cout << "rung " << entry.rung << " (" << entry.budget_epochs << " epochs):\n";
        }
        std::cout << "  " << entry.candidate.label() << "  score="
                  << fixed2(entry.score) << (entry.kept ? "  kept" : "  dropped") << "\n";
    }
    std::cout << "survivor: " << result.survivor.label() << "\n";

    if (!log_out.empty()) {
        std::ostringstream out;
        out << "rung,budget_epochs,model_id,score,kept\n";
        for (const auto& entry : result.log) {
            out << entry.rung << ',' << entry.budget_epochs << ',' << entry.candidate.model_id
                << ',' << format_number(entry.score) << ',' << (entry.kept ? "true" : "false")
                << "\n";
        }
        write_file(log_out, out.str());
    }
}

void run_metrics(const std::string& model_path, const std::string& est_path,
                 const std::string& truth_path, const std::string& sym_path, double fx, double fy,
                 double cx, double cy, const std::vector<double>& thresholds,
                 const std::string& out_path) {
    std::istringstream model_in(read_file(model_path));
    const pose::VertexSet model = pose::VertexSet::from_stream(model_in);
    const auto estimated = load_pose_file(est_path);
    const auto truth = load_pose_file(truth_path);
    if (estimated.size() != truth.size()) {
        throw ValidationError("poses", "estimated and truth files list different pose counts");
    }

    pose::SymmetrySet symmetries = pose::SymmetrySet::identity_only();
    if (!sym_path.empty()) {
        for (const auto& s : load_pose_file(sym_path)) symmetries.transforms.push_back(s);
    }

    const bool with_mspd = fx > 0.0 && fy > 0.0;
    pose::Intrinsics camera{fx, fy, cx, cy};

    std::ostringstream out;
    out << "index,add,mssd" << (with_mspd ? ",mspd" : "") << "\n";
    std::vector<double> add_errors, mssd_errors, mspd_errors;
    for (std::size_t i = 0; i < estimated.size(); ++i) {
        const double add = pose::add_metric(estimated[i], truth[i], model);
        const double surface = pose::mssd(estimated[i], truth[i], model, symmetries);
        add_errors.push_back(add);
        mssd_errors.push_back(surface);
        out << i << ',' << format_number(add) << ',' << format_number(surface);
        if (with_mspd) {
            const double projection = pose::mspd(estimated[i], truth[i], model, symmetries, camera);
            mspd_errors.push_back(projection);
            out << ',' << format_number(projection);
        }
        out << "\n";
    }
    if (out_path.empty()) {
        std::cout << out.str();
    } else {
        write_file(out_path, out.str());
    }
    if (!thresholds.empty()) {
        std::cout << "recall(add) = " << fixed2(pose::recall(add_errors, thresholds)) << "\n";
        std::cout << "recall(mssd) = " << fixed2(pose::recall(mssd_errors, thresholds)) << "\n";
        if (with_mspd) {
            std::cout << "recall(mspd) = " << fixed2(pose::recall(mspd_errors, thresholds))
                      << "\n";
        }
    }
}

void run_report(const TableArgs& args, const std::string& baseline_model, bool baseline_refined,
                const std::string& selection_path, const std::string& csv_path) {
    auto run = resolve_config(args);
    if (!baseline_model.empty()) {
        run.baseline_model = baseline_model;
        run.baseline_refined = baseline_refined;
    }
    if (run.baseline_model.empty()) {
        throw ValidationError("baseline", "a baseline model is required (--baseline or "
                                            "baseline.model in the config)");
    }
    const auto matrix = load_matrix(args, run);
    amis::SelectionResult selection;
    selection.selected = load_selection_file(selection_path);

    CandidateId baseline;
    baseline.model_id = run.baseline_model;
    baseline.refined = run.baseline_refined;
    const auto rows =
        report::comparison_table(selection, matrix, baseline, run.amis.dataset_weights);
    std::cout << "selected candidates vs " << baseline.label() << ":\n";
    std::cout << report::comparison_text(rows);
    if (!csv_path.empty()) write_file(csv_path, report::comparison_csv(rows));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Benchmark-driven model selection toolkit: trade-off analysis, "
                 "iterative margin-dependent selection, screening and 6D pose metrics"};
    app.require_subcommand(1);

    // --- validate ---
    TableArgs validate_args;
    auto* cmd_validate = app.add_subcommand("validate", "parse and validate a benchmark CSV");
    cmd_validate->add_option("input", validate_args.input, "benchmark results CSV")->required();
    cmd_validate->add_option("--pool", validate_args.pool_path, "candidate-pool sidecar CSV");
    cmd_validate->callback([&]() { run_validate(validate_args); });

    // --- pareto ---
    TableArgs pareto_args;
    std::string pareto_dataset, pareto_svg, pareto_csv;
    int pareto_width = 720, pareto_height = 480;
    auto* cmd_pareto = app.add_subcommand("pareto", "compute the wrap line and plot it");
    add_table_options(cmd_pareto, pareto_args);
    cmd_pareto->add_option("--dataset", pareto_dataset,
                           "restrict to one dataset (default: weighted mean over datasets)");
    cmd_pareto->add_option("--svg", pareto_svg, "write a scatter plot SVG here");
    cmd_pareto->add_option("--csv", pareto_csv, "write the frontier as CSV here");
    cmd_pareto->add_option("--width", pareto_width, "SVG width in pixels");
    cmd_pareto->add_option("--height", pareto_height, "SVG height in pixels");
    cmd_pareto->callback([&]() {
        run_pareto(pareto_args, pareto_dataset, pareto_svg, pareto_csv, pareto_width,
                   pareto_height);
    });

    // --- select ---
    TableArgs select_args;
    int select_count = 0;
    std::string selection_out, rounds_out, factors_out;
    auto* cmd_select = app.add_subcommand("select", "run the iterative selection");
    add_table_options(cmd_select, select_args);
    cmd_select->add_option("--count", select_count, "number of models to select");
    cmd_select->add_option("--selection-out", selection_out, "write the selection CSV here");
    cmd_select->add_option("--rounds-out", rounds_out, "write per-round diagnostics CSV here");
    cmd_select->add_option("--factors-out", factors_out, "write per-factor diagnostics CSV here");
    cmd_select->callback(
        [&]() { run_select(select_args, select_count, selection_out, rounds_out, factors_out); });

    // --- budget ---
    TableArgs budget_args;
    double budget_ms = 0.0;
    std::string budget_selection;
    auto* cmd_budget = app.add_subcommand("budget", "best selected model within a time budget");
    add_table_options(cmd_budget, budget_args);
    cmd_budget->add_option("--budget-ms", budget_ms, "inference time budget in ms")->required();
    cmd_budget->add_option("--selection", budget_selection,
                           "selection CSV from `select` (default: all candidates)");
    cmd_budget->callback([&]() { run_budget(budget_args, budget_ms, budget_selection); });

    // --- cluster ---
    TableArgs cluster_args;
    int cluster_k = 0;
    std::string cluster_dataset;
    auto* cmd_cluster = app.add_subcommand("cluster", "group candidates by inference time");
    add_table_options(cmd_cluster, cluster_args);
    cmd_cluster->add_option("--k", cluster_k, "number of clusters (default 3)");
    cmd_cluster->add_option("--dataset", cluster_dataset,
                            "cluster on one dataset's times (default: mean over datasets)");
    cmd_cluster->callback([&]() { run_cluster(cluster_args, cluster_k, cluster_dataset); });

    // --- sha ---
    std::string sha_scores, sha_plan, sha_config, sha_log;
    int sha_synthetic = 8;
    unsigned sha_seed = 7;
    auto* cmd_sha = app.add_subcommand("sha", "successive-halving screening");
    cmd_sha->add_option("--scores", sha_scores,
                        "scores CSV (model_id,budget_epochs,score); replaces synthetic curves");
    cmd_sha->add_option("--synthetic", sha_synthetic, "number of synthetic candidates");
    cmd_sha->add_option("--seed", sha_seed, "seed for the synthetic-curve generator only");
    cmd_sha->add_option("--plan", sha_plan, "rung plan: budget:survivors,... (default 5:5,10:3,15:1)");
    cmd_sha->add_option("--config", sha_config, "run configuration file");
    cmd_sha->add_option("--log-out", sha_log, "write the rung log CSV here");
    cmd_sha->callback(
        [&]() { run_sha_cmd(sha_scores, sha_synthetic, sha_seed, sha_plan, sha_config, sha_log); });

    // --- metrics ---
    std::string metrics_model, metrics_est, metrics_truth, metrics_sym, metrics_out;
    double metrics_fx = 0.0, metrics_fy = 0.0, metrics_cx = 0.0, metrics_cy = 0.0;
    std::vector<double> metrics_thresholds;
    auto* cmd_metrics = app.add_subcommand("metrics", "pose error metrics from pose files");
    cmd_metrics->add_option("--model", metrics_model, "object model points, one 'x y z' per line")
        ->required();
    cmd_metrics->add_option("--est", metrics_est, "estimated poses, 12 numbers per line")
        ->required();
    cmd_metrics->add_option("--truth", metrics_truth, "ground-truth poses, 12 numbers per line")
        ->required();
    cmd_metrics->add_option("--sym", metrics_sym,
                            "discrete symmetry transforms (identity is always included)");
    cmd_metrics->add_option("--fx", metrics_fx, "focal length x, pixels (enables mspd)");
    cmd_metrics->add_option("--fy", metrics_fy, "focal length y, pixels");
    cmd_metrics->add_option("--cx", metrics_cx, "principal point x, pixels");
    cmd_metrics->add_option("--cy", metrics_cy, "principal point y, pixels");
    cmd_metrics->add_option("--thresholds", metrics_thresholds,
                            "recall thresholds (repeatable)");
    cmd_metrics->add_option("--out", metrics_out, "write per-pose errors CSV here");
    cmd_metrics->callback([&]() {
        run_metrics(metrics_model, metrics_est, metrics_truth, metrics_sym, metrics_fx, metrics_fy,
                    metrics_cx, metrics_cy, metrics_thresholds, metrics_out);
    });

    // --- report ---
    TableArgs report_args;
    std::string report_baseline, report_selection, report_csv;
    bool report_baseline_refined = false;
    auto* cmd_report = app.add_subcommand("report", "comparison table against a baseline");
    add_table_options(cmd_report, report_args);
    cmd_report->add_option("--baseline", report_baseline, "baseline model_id");
    cmd_report->add_flag("--baseline-refined", report_baseline_refined,
                         "the baseline is the refined variant");
    cmd_report->add_option("--selection", report_selection, "selection CSV from `select`")
        ->required();
    cmd_report->add_option("--csv", report_csv, "write the comparison table CSV here");
    cmd_report->callback([&]() {
        run_report(report_args, report_baseline, report_baseline_refined, report_selection,
                   report_csv);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        std::cerr << "run with --help for usage\n";
        return 2;
    } catch (const modsel::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
