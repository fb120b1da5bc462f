#include "gmle_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace gmix::io {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

long parse_long(const std::string& s, int line_no) {
    long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw DataError("line " + std::to_string(line_no) + ": cannot parse integer '" + s + "'");
    return v;
}

double parse_double(const std::string& s, int line_no) {
    double v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw DataError("line " + std::to_string(line_no) + ": cannot parse number '" + s + "'");
    return v;
}

}  // namespace

ModelPtr make_model(const ModelSpec& spec) {
    if (spec.name == "bernoulli") return std::make_shared<BernoulliModel>();
    if (spec.name == "strata-binomial")
        return std::make_shared<StrataBinomialModel>(spec.kappa);
    if (spec.name == "survey-geometric")
        return std::make_shared<SurveyGeometricModel>(spec.max_attempts, spec.n_categories);
    if (spec.name == "poisson-binomial")
        return std::make_shared<PoissonBinomialModel>(spec.lambda_max);
    throw DataError("unknown model '" + spec.name + "'");
}

std::vector<Outcome> read_observations(std::istream& in, const Model& model) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty input: header row required");
    const auto header = split_csv(line);

    enum class Layout { Bernoulli, XKappa, CategoryAttempts } layout;
    if (header == std::vector<std::string>{"y"}) {
        layout = Layout::Bernoulli;
    } else if (header == std::vector<std::string>{"X", "kappa_obs"}) {
        layout = Layout::XKappa;
    } else if (header == std::vector<std::string>{"category_index", "attempts"}) {
        layout = Layout::CategoryAttempts;
    } else {
        throw DataError("unrecognized header '" + line + "'");
    }

    const auto support = model.support();
    const std::set<Outcome> support_set(support.begin(), support.end());

    std::vector<Outcome> out;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv(line);

        Outcome y;
        switch (layout) {
            case Layout::Bernoulli: {
                if (fields.size() != 1)
                    throw DataError("line " + std::to_string(line_no) + ": expected 1 column");
                y = Outcome::observed(static_cast<int>(parse_long(fields[0], line_no)));
                break;
            }
            case Layout::XKappa: {
                if (fields.size() != 2)
                    throw DataError("line " + std::to_string(line_no) + ": expected 2 columns");
                const long x = parse_long(fields[0], line_no);
                const long k = parse_long(fields[1], line_no);
                if (k == 0) {
                    if (x != 0)
                        throw DataError("line " + std::to_string(line_no) +
                                        ": non-response row (kappa_obs=0) requires X=0");
                    y = Outcome::non_response();
                } else {
                    y = Outcome::observed(static_cast<int>(x), static_cast<int>(k));
                }
                break;
            }
            case Layout::CategoryAttempts: {
                if (fields.size() != 2)
                    throw DataError("line " + std::to_string(line_no) + ": expected 2 columns");
                const long s = parse_long(fields[0], line_no);
                const long k = parse_long(fields[1], line_no);
                y = (k == 0) ? Outcome::non_response()
                             : Outcome::observed(static_cast<int>(s), static_cast<int>(k));
                break;
            }
        }

        if (!support_set.count(y))
            throw DataError("line " + std::to_string(line_no) + ": outcome " + to_string(y) +
                            " not in the support of model " + model.name());
        out.push_back(y);
    }
    if (out.empty()) throw DataError("no observation rows");
    return out;
}

std::vector<Outcome> read_observations_file(const std::string& path, const Model& model) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open input file '" + path + "'");
    return read_observations(in, model);
}

std::string fmt_full(double x) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, r.ptr);
}

std::string fmt_sig6(double x) {
    std::ostringstream os;
    os << std::setprecision(6) << x;
    return os.str();
}

namespace {

std::string outcome_field(const Outcome& y) {
    switch (y.kind) {
        case OutcomeKind::NonResponse: return "NR";
        case OutcomeKind::Overflow: return "OV";
        case OutcomeKind::Observed:
            return std::to_string(y.v[0]) + ";" + std::to_string(y.v[1]);
    }
    return "?";
}

}  // namespace

void write_fit_csv(std::ostream& out, const FitResult& fit, const Model& model,
                   const ObservationSet& obs, const EstimateReport& eta) {
    const auto& g = fit.g_hat;
    const std::size_t dim = g.grid().atom(0).dim();
    out << "atom";
    for (std::size_t d = 0; d < dim; ++d) out << ",coord_" << d;
    out << ",weight\n";
    for (std::size_t j = 0; j < g.size(); ++j) {
        out << "atom";
        for (std::size_t d = 0; d < dim; ++d) out << "," << fmt_full(g.grid().atom(j)[d]);
        out << "," << fmt_full(g.weight(j)) << "\n";
    }
    for (std::size_t d = 0; d < eta.eta_hat.size(); ++d)
        out << "summary,eta_hat_" << d << "," << fmt_full(eta.eta_hat[d]) << "\n";
    out << "summary,loglik," << fmt_full(fit.loglik()) << "\n";
    out << "summary,kkt_gap," << fmt_full(fit.kkt_gap) << "\n";
    out << "summary,iterations," << fit.iterations << "\n";
    out << "summary,converged," << (fit.converged ? 1 : 0) << "\n";
    out << "summary,model," << model.name() << "\n";
    for (std::size_t i = 0; i < obs.n_rows(); ++i)
        out << "marginal," << outcome_field(obs.entries()[i].first) << ","
            << obs.entries()[i].second << "," << fmt_full(fit.fitted_marginals[i]) << "\n";
}

MixingDistribution read_weights_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty weights csv");
    const auto header = split_csv(line);
    if (header.empty() || header.front() != "atom" || header.back() != "weight")
        throw DataError("weights csv: unexpected header '" + line + "'");
    const std::size_t dim = header.size() - 2;

    std::vector<ParameterAtom> atoms;
    std::vector<double> weights;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const auto fields = split_csv(line);
        if (fields.empty() || fields[0] != "atom") break;  // summary block reached
        if (fields.size() != dim + 2)
            throw DataError("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(dim + 2) + " fields");
        std::vector<double> coords(dim);
        for (std::size_t d = 0; d < dim; ++d) coords[d] = parse_double(fields[d + 1], line_no);
        atoms.emplace_back(std::move(coords));
        weights.push_back(parse_double(fields.back(), line_no));
    }
    auto grid = std::make_shared<ParameterGrid>(std::move(atoms));
    return MixingDistribution(std::move(grid), std::move(weights));
}

void write_fit_table(std::ostream& out, const FitResult& fit, const Model& model,
                     const ObservationSet& obs, const EstimateReport& eta) {
    out << "model: " << model.name() << "\n";
    for (std::size_t d = 0; d < eta.eta_hat.size(); ++d)
        out << "eta_hat[" << d << "]: " << fmt_sig6(eta.eta_hat[d]) << "\n";
    out << "loglik: " << fmt_sig6(fit.loglik()) << "\n";
    out << "kkt_gap: " << fmt_sig6(fit.kkt_gap) << "\n";
    out << "iterations: " << fit.iterations << "\n";
    out << "converged: " << (fit.converged ? "yes" : "no") << "\n";
    for (const auto& w : fit.warnings) out << "warning: " << w << "\n";
    out << "fitted marginals (outcome, count, f_hat):\n";
    for (std::size_t i = 0; i < obs.n_rows(); ++i)
        out << "  " << to_string(obs.entries()[i].first) << "  " << obs.entries()[i].second
            << "  " << fmt_sig6(fit.fitted_marginals[i]) << "\n";
    out << "weights (atom -> weight), entries above 1e-8:\n";
    const auto& g = fit.g_hat;
    for (std::size_t j = 0; j < g.size(); ++j) {
        if (g.weight(j) <= 1e-8) continue;
        out << "  (";
        const auto& a = g.grid().atom(j);
        for (std::size_t d = 0; d < a.dim(); ++d) out << (d ? "," : "") << fmt_sig6(a[d]);
        out << ") -> " << fmt_sig6(g.weight(j)) << "\n";
    }
}

void write_table_csv(std::ostream& out, const std::vector<TableRow>& rows) {
    out << "design,naive_mean,naive_sd,gmle_mean,gmle_sd,n_reps\n";
    for (const auto& r : rows) {
        const auto sd = [](const ReplicationSummary& s) {
            return std::isnan(s.sd) ? std::string("NA") : fmt_full(s.sd);
        };
        out << r.design << "," << fmt_full(r.naive.mean) << "," << sd(r.naive) << ","
            << fmt_full(r.gmle.mean) << "," << sd(r.gmle) << "," << r.naive.n_reps << "\n";
    }
}

void write_table_human(std::ostream& out, const std::vector<TableRow>& rows) {
    out << "design        naive mean (sd)        gmle mean (sd)        n_reps\n";
    for (const auto& r : rows) {
        const auto cell = [](const ReplicationSummary& s) {
            std::string sd = std::isnan(s.sd) ? std::string("NA") : fmt_sig6(s.sd);
            return fmt_sig6(s.mean) + " (" + sd + ")";
        };
        out << r.design << "  " << cell(r.naive) << "  " << cell(r.gmle) << "  "
            << r.naive.n_reps << "\n";
    }
}

}  // namespace gmix::io
