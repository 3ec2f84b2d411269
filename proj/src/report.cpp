/**
 * @file report.cpp
 * @brief Comparison-table assembly and SVG rendering.
 */

#include <modsel/report.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string_view>

namespace modsel::report {

namespace {

// 5% padding keeps extreme markers inside the plot area.
constexpr double kAxisPadding = 0.05;

struct WeightedMeans {
    double time = 0.0;
    double avg3 = 0.0;
    std::optional<double> add;
    std::optional<double> avg4;
};

WeightedMeans candidate_means(const ingest::TradeoffMatrix& matrix, std::size_t candidate,
                              const std::map<std::string, double>& weights) {
    WeightedMeans means;
    double weight_total = 0.0;
    double add_sum = 0.0;
    double avg4_sum = 0.0;
    bool add_complete = true;
    for (std::size_t d = 0; d < matrix.dataset_count(); ++d) {
        const BenchmarkRecord& record = matrix.record(candidate, d);
        const double w = weights.at(matrix.datasets()[d]);
        if (!record.vsd) {
            throw ValidationError("vsd", "required for the comparison table but absent for " +
                                               record.candidate.label() + " on " +
                                               record.dataset);
        }
        const double avg3 = (record.mspd + record.mssd + *record.vsd) / 3.0;
        means.time += w * record.time_ms;
        means.avg3 += w * avg3;
        if (record.add) {
            add_sum += w * *record.add;
            avg4_sum += w * (record.mspd + record.mssd + *record.vsd + *record.add) / 4.0;
        } else {
            add_complete = false;
        }
        weight_total += w;
    }
    means.time /= weight_total;
    means.avg3 /= weight_total;
    if (add_complete) {
        means.add = add_sum / weight_total;
        means.avg4 = avg4_sum / weight_total;
    }
    return means;
}

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::map<std::string, double> uniform_or(const std::vector<std::string>& datasets,
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
        weights[d] = it->second;
    }
    return weights;
}

}  // namespace

std::vector<ComparisonRow> comparison_table(const amis::SelectionResult& selection,
                                            const ingest::TradeoffMatrix& matrix,
                                            const CandidateId& baseline,
                                            const std::map<std::string, double>& dataset_weights) {
    if (!matrix.has_candidate(baseline)) {
        throw ValidationError("baseline",
                                "candidate '" + baseline.label() + "' not present in the matrix");
    }
    const auto weights = uniform_or(matrix.datasets(), dataset_weights);
    const WeightedMeans base = candidate_means(matrix, matrix.candidate_index(baseline), weights);

    std::vector<ComparisonRow> rows;
    rows.reserve(selection.selected.size());
    for (const auto& id : selection.selected) {
        const WeightedMeans means = candidate_means(matrix, matrix.candidate_index(id), weights);
        ComparisonRow row;
        row.candidate = id;
        row.delta_avg3 = relative_delta(base.avg3, means.avg3);
        row.delta_time = relative_delta(base.time, means.time);
        if (base.add && means.add) {
            row.delta_add = relative_delta(*base.add, *means.add);
            row.delta_avg4 = relative_delta(*base.avg4, *means.avg4);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_delta(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%+.2f", value);
    // A value that rounds to zero prints as a clean "+0.00".
    if (std::string_view(buffer) == "-0.00") return "+0.00";
    return buffer;
}

std::string comparison_text(const std::vector<ComparisonRow>& rows) {
    const std::vector<std::string> header = {"candidate", "avg(mspd,mssd,vsd) %", "add %",
                                             "avg(all four) %", "time %"};
    std::vector<std::vector<std::string>> cells;
    cells.push_back(header);
    for (const auto& row : rows) {
        cells.push_back({row.candidate.label(), format_delta(row.delta_avg3),
                         row.delta_add ? format_delta(*row.delta_add) : "n/a",
                         row.delta_avg4 ? format_delta(*row.delta_avg4) : "n/a",
                         format_delta(row.delta_time)});
    }
    std::vector<std::size_t> widths(header.size(), 0);
    for (const auto& line : cells) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            widths[i] = std::max(widths[i], line[i].size());
        }
    }
    std::ostringstream out;
    for (const auto& line : cells) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            out << line[i] << std::string(widths[i] - line[i].size(), ' ');
            out << (i + 1 < line.size() ? "  " : "");
        }
        out << "\n";
    }
    return out.str();
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
    std::ostringstream out;
    out << "model_id,refined,delta_avg3,delta_add,delta_avg4,delta_time\n";
    for (const auto& row : rows) {
        out << row.candidate.model_id << ',' << (row.candidate.refined ? "true" : "false") << ','
            << format_delta(row.delta_avg3) << ','
            << (row.delta_add ? format_delta(*row.delta_add) : "") << ','
            << (row.delta_avg4 ? format_delta(*row.delta_avg4) : "") << ','
            << format_delta(row.delta_time) << "\n";
    }
    return out.str();
}

std::string scatter_svg(const std::vector<pareto::LabeledPoint>& points,
                        const pareto::Frontier& frontier,
                        const std::vector<CandidateId>& highlighted, const SvgOptions& options) {
    if (points.empty()) {
        throw ValidationError("points", "cannot plot an empty point set");
    }
    if (options.width <= 0 || options.height <= 0) {
        throw ValidationError("canvas", "width and height must be positive");
    }

    double tmin = points.front().point.time_ms;
    double tmax = tmin;
    double amin = points.front().point.accuracy;
    double amax = amin;
    for (const auto& lp : points) {
        tmin = std::min(tmin, lp.point.time_ms);
        tmax = std::max(tmax, lp.point.time_ms);
        amin = std::min(amin, lp.point.accuracy);
        amax = std::max(amax, lp.point.accuracy);
    }
    const double traw = tmax - tmin;
    const double araw = amax - amin;
    const double tpad = traw > 0.0 ? kAxisPadding * traw : 1.0;
    const double apad = araw > 0.0 ? kAxisPadding * araw : 1.0;
    tmin -= tpad;
    tmax += tpad;
    amin -= apad;
    amax += apad;

    const double margin_left = 56.0;
    const double margin_right = 16.0;
    const double margin_top = 16.0;
    const double margin_bottom = 44.0;
    const double plot_w = options.width - margin_left - margin_right;
    const double plot_h = options.height - margin_top - margin_bottom;

    const auto x_of = [&](double t) {
        return margin_left + (t - tmin) / (tmax - tmin) * plot_w;
    };
    const auto y_of = [&](double a) {
        return margin_top + (amax - a) / (amax - amin) * plot_h;
    };
    const auto num = [](double v) {
        char buffer[32];
        std::snprintf(buffer, sizeof(buffer), "%.2f", v);
        return std::string(buffer);
    };

    const auto is_highlighted = [&](const CandidateId& id) {
        return std::any_of(highlighted.begin(), highlighted.end(),
                           [&](const CandidateId& h) { return h == id; });
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << options.width
        << "\" height=\"" << options.height << "\" viewBox=\"0 0 " << options.width << " "
        << options.height << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << options.width << "\" height=\"" << options.height
        << "\" fill=\"#ffffff\"/>\n";

    // axes
    svg << "<line x1=\"" << num(margin_left) << "\" y1=\"" << num(margin_top + plot_h)
        << "\" x2=\"" << num(margin_left + plot_w) << "\" y2=\"" << num(margin_top + plot_h)
        << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    svg << "<line x1=\"" << num(margin_left) << "\" y1=\"" << num(margin_top) << "\" x2=\""
        << num(margin_left) << "\" y2=\"" << num(margin_top + plot_h)
        << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";

    // ticks: 5 per axis
    for (int i = 0; i <= 4; ++i) {
        const double t = tmin + (tmax - tmin) * i / 4.0;
        const double a = amin + (amax - amin) * i / 4.0;
        const double x = x_of(t);
        const double y = y_of(a);
        svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(margin_top + plot_h) << "\" x2=\""
            << num(x) << "\" y2=\"" << num(margin_top + plot_h + 4) << "\" stroke=\"#000000\"/>\n";
        svg << "<text x=\"" << num(x) << "\" y=\"" << num(margin_top + plot_h + 16)
            << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">" << num(t)
            << "</text>\n";
        svg << "<line x1=\"" << num(margin_left - 4) << "\" y1=\"" << num(y) << "\" x2=\""
            << num(margin_left) << "\" y2=\"" << num(y) << "\" stroke=\"#000000\"/>\n";
        svg << "<text x=\"" << num(margin_left - 6) << "\" y=\"" << num(y + 3)
            << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" << num(a)
            << "</text>\n";
    }

    // axis labels
    svg << "<text x=\"" << num(margin_left + plot_w / 2.0) << "\" y=\""
        << num(options.height - 10.0)
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
        << "inference time (ms)</text>\n";
    svg << "<text x=\"14\" y=\"" << num(margin_top + plot_h / 2.0)
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
        << "transform=\"rotate(-90 14 " << num(margin_top + plot_h / 2.0) << ")\">"
        << xml_escape(options.accuracy_label) << "</text>\n";

    // frontier polyline
    if (!frontier.points.empty()) {
        svg << "<polyline fill=\"none\" stroke=\"#cc3311\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < frontier.points.size(); ++i) {
            if (i) svg << ' ';
            svg << num(x_of(frontier.points[i].point.time_ms)) << ','
                << num(y_of(frontier.points[i].point.accuracy));
        }
        svg << "\"/>\n";
    }

    // data markers; highlighted candidates get a ringed, larger marker
    for (const auto& lp : points) {
        const double x = x_of(lp.point.time_ms);
        const double y = y_of(lp.point.accuracy);
        if (is_highlighted(lp.candidate)) {
            svg << "<circle class=\"marker highlight\" cx=\"" << num(x) << "\" cy=\"" << num(y)
                << "\" r=\"5\" fill=\"#ee7733\" stroke=\"#000000\" stroke-width=\"1\">"
                << "<title>" << xml_escape(lp.candidate.label()) << "</title></circle>\n";
        } else {
            svg << "<circle class=\"marker\" cx=\"" << num(x) << "\" cy=\"" << num(y)
                << "\" r=\"3\" fill=\"#4477aa\"><title>" << xml_escape(lp.candidate.label())
                << "</title></circle>\n";
        }
    }

    svg << "</svg>\n";
    return svg.str();
}

}  // namespace modsel::report
