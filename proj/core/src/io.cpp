#include "stlkern/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "stlkern/parser.hpp"

namespace fs = std::filesystem;

namespace stlkern {

std::string format_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, end);
}

namespace {

double parse_double(std::string_view s, const std::string& context) {
    double v = 0.0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr == begin) {
        throw std::runtime_error(context + ": malformed number '" + std::string(s) +
                                 "'");
    }
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

std::string quote_csv(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::ifstream open_input(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    return in;
}

}  // namespace

std::string read_text_file(const fs::path& path) {
    std::ifstream in = open_input(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const fs::path& path, const std::string& body) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << body;
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

// ── trajectories ────────────────────────────────────────────────────────────

void write_trajectory_csv(const fs::path& path, const Trajectory& xi) {
    std::string body = "time,x\n";
    for (std::size_t i = 0; i < xi.size(); ++i) {
        body += format_double(xi.time_at(i));
        body += ',';
        body += format_double(xi[i]);
        body += '\n';
    }
    write_text_file(path, body);
}

namespace {

Trajectory trajectory_from_rows(const std::vector<std::pair<double, double>>& rows,
                                const std::string& context) {
    if (rows.size() < 1) throw std::runtime_error(context + ": no samples");
    const double t0 = rows.front().first;
    double h = 1.0;
    if (rows.size() > 1) h = rows[1].first - rows[0].first;
    std::vector<double> values;
    values.reserve(rows.size());
    for (const auto& [t, v] : rows) values.push_back(v);
    return Trajectory(t0, h, std::move(values));
}

}  // namespace

Trajectory read_trajectory_csv(const fs::path& path) {
    std::ifstream in = open_input(path);
    std::string line;
    std::getline(in, line);  // header
    std::vector<std::pair<double, double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 2) {
            throw std::runtime_error(path.string() + ": expected 2 columns");
        }
        rows.emplace_back(parse_double(fields[0], path.string()),
                          parse_double(fields[1], path.string()));
    }
    return trajectory_from_rows(rows, path.string());
}

void write_trajectory_batch_dir(const fs::path& dir,
                                const std::vector<Trajectory>& batch) {
    fs::create_directories(dir);
    for (std::size_t i = 0; i < batch.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "traj_%05zu.csv", i);
        write_trajectory_csv(dir / name, batch[i]);
    }
}

void write_trajectory_batch_csv(const fs::path& path,
                                const std::vector<Trajectory>& batch) {
    std::string body = "traj_id,time,x\n";
    for (std::size_t i = 0; i < batch.size(); ++i) {
        for (std::size_t t = 0; t < batch[i].size(); ++t) {
            body += std::to_string(i);
            body += ',';
            body += format_double(batch[i].time_at(t));
            body += ',';
            body += format_double(batch[i][t]);
            body += '\n';
        }
    }
    write_text_file(path, body);
}

std::vector<Trajectory> read_trajectory_batch(const fs::path& path) {
    std::vector<Trajectory> batch;
    if (fs::is_directory(path)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(path)) {
            if (entry.path().extension() == ".csv") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const fs::path& f : files) batch.push_back(read_trajectory_csv(f));
        if (batch.empty()) {
            throw std::runtime_error(path.string() + ": no trajectory CSVs");
        }
        return batch;
    }

    std::ifstream in = open_input(path);
    std::string line;
    std::getline(in, line);
    if (split_csv_line(line).size() == 2) {  // plain time,x file
        in.close();
        return {read_trajectory_csv(path)};
    }
    std::vector<std::pair<double, double>> rows;
    long long current = -1;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 3) {
            throw std::runtime_error(path.string() + ": expected 3 columns");
        }
        const long long id =
            static_cast<long long>(parse_double(fields[0], path.string()));
        if (id != current) {
            if (current >= 0) {
                batch.push_back(trajectory_from_rows(rows, path.string()));
            }
            rows.clear();
            current = id;
        }
        rows.emplace_back(parse_double(fields[1], path.string()),
                          parse_double(fields[2], path.string()));
    }
    if (!rows.empty()) batch.push_back(trajectory_from_rows(rows, path.string()));
    if (batch.empty()) throw std::runtime_error(path.string() + ": empty batch");
    return batch;
}

// ── configs ─────────────────────────────────────────────────────────────────

void write_mu0_config(const fs::path& path, const Mu0Config& cfg) {
    std::string body;
    body += "a = " + format_double(cfg.a) + "\n";
    body += "b = " + format_double(cfg.b) + "\n";
    body += "h = " + format_double(cfg.h) + "\n";
    body += "sigma_start = " + format_double(cfg.sigma_start) + "\n";
    body += "sigma_tv = " + format_double(cfg.sigma_tv) + "\n";
    body += "q = " + format_double(cfg.q) + "\n";
    body += "seed = " + std::to_string(cfg.seed) + "\n";
    write_text_file(path, body);
}

Mu0Config read_mu0_config(const fs::path& path) {
    std::ifstream in = open_input(path);
    Mu0Config cfg;
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "a") cfg.a = parse_double(value, key);
        else if (key == "b") cfg.b = parse_double(value, key);
        else if (key == "h") cfg.h = parse_double(value, key);
        else if (key == "sigma_start") cfg.sigma_start = parse_double(value, key);
        else if (key == "sigma_tv") cfg.sigma_tv = parse_double(value, key);
        else if (key == "q") cfg.q = parse_double(value, key);
        else if (key == "seed") cfg.seed = std::stoull(value);
        else throw std::runtime_error("mu0 config: unknown key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

nlohmann::json network_to_json(const ReactionNetwork& net) {
    nlohmann::json reactions = nlohmann::json::array();
    for (const Reaction& r : net.reactions) {
        reactions.push_back({{"change", r.change},
                             {"rate", r.rate},
                             {"reactants", r.reactants}});
    }
    return {{"species", net.species},
            {"initial", net.initial_counts},
            {"reactions", reactions},
            {"observed", net.observed_species}};
}

ReactionNetwork network_from_json(const nlohmann::json& j) {
    ReactionNetwork net;
    net.species = j.at("species").get<std::vector<std::string>>();
    net.initial_counts = j.at("initial").get<std::vector<long long>>();
    for (const auto& rj : j.at("reactions")) {
        Reaction r;
        r.change = rj.at("change").get<std::vector<long long>>();
        r.rate = rj.at("rate").get<double>();
        r.reactants = rj.at("reactants").get<std::vector<std::size_t>>();
        net.reactions.push_back(std::move(r));
    }
    net.observed_species = j.at("observed").get<std::string>();
    net.validate();
    return net;
}

ReactionNetwork read_network_file(const fs::path& path) {
    try {
        return network_from_json(nlohmann::json::parse(read_text_file(path)));
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

void write_network_file(const fs::path& path, const ReactionNetwork& net) {
    write_text_file(path, network_to_json(net).dump(2) + "\n");
}

// ── formula corpora and targets ─────────────────────────────────────────────

void write_corpus(const fs::path& path, const std::vector<FormulaPtr>& corpus) {
    std::string body;
    for (const FormulaPtr& f : corpus) {
        body += print_formula(f);
        body += '\n';
    }
    write_text_file(path, body);
}

std::vector<FormulaPtr> read_corpus(const fs::path& path) {
    std::ifstream in = open_input(path);
    std::vector<FormulaPtr> corpus;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        const auto end = line.find_last_not_of(" \t\r");
        try {
            corpus.push_back(parse_formula(line.substr(begin, end - begin + 1)));
        } catch (const ParseError& e) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": " + e.what());
        }
    }
    if (corpus.empty()) throw std::runtime_error(path.string() + ": empty corpus");
    return corpus;
}

void write_targets_csv(const fs::path& path, const std::vector<FormulaPtr>& corpus,
                       const std::vector<Estimate>& estimates) {
    if (corpus.size() != estimates.size()) {
        throw std::invalid_argument("targets: corpus/estimate count mismatch");
    }
    std::string body = "formula,target,stderr\n";
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        body += quote_csv(print_formula(corpus[i]));
        body += ',';
        body += format_double(estimates[i].value);
        body += ',';
        body += format_double(estimates[i].stderr_);
        body += '\n';
    }
    write_text_file(path, body);
}

std::vector<TargetRow> read_targets_csv(const fs::path& path) {
    std::ifstream in = open_input(path);
    std::string line;
    std::getline(in, line);  // header
    std::vector<TargetRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 3) {
            throw std::runtime_error(path.string() + ": expected 3 columns");
        }
        rows.push_back({fields[0], parse_double(fields[1], path.string()),
                        parse_double(fields[2], path.string())});
    }
    if (rows.empty()) throw std::runtime_error(path.string() + ": no target rows");
    return rows;
}

// ── gram matrices ───────────────────────────────────────────────────────────

void write_gram_csv(const fs::path& path, const GramMatrix& g) {
    const std::size_t n = g.size();
    std::string body = "index";
    for (std::size_t j = 0; j < n; ++j) body += ",f" + std::to_string(j);
    body += '\n';
    for (std::size_t i = 0; i < n; ++i) {
        body += 'f' + std::to_string(i);
        for (std::size_t j = 0; j < n; ++j) {
            body += ',';
            body += format_double(g.at(i, j));
        }
        body += '\n';
    }
    write_text_file(path, body);
}

SymMatrix read_gram_csv(const fs::path& path) {
    std::ifstream in = open_input(path);
    std::string line;
    std::getline(in, line);
    const std::size_t n = split_csv_line(line).size() - 1;
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::getline(in, line)) {
            throw std::runtime_error(path.string() + ": truncated gram matrix");
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != n + 1) {
            throw std::runtime_error(path.string() + ": ragged gram row");
        }
        for (std::size_t j = 0; j < n; ++j) {
            m.at(i, j) = parse_double(fields[j + 1], path.string());
        }
    }
    return m;
}

void write_gram_sidecar(const fs::path& path, const GramMatrix& g,
                        const nlohmann::json& provenance) {
    std::vector<std::string> corpus;
    corpus.reserve(g.formulas.size());
    for (const FormulaPtr& f : g.formulas) corpus.push_back(print_formula(f));
    nlohmann::json j = {
        {"corpus", corpus},
        {"kind", to_string(g.kind)},
        {"sample_fingerprint", g.sample_fingerprint},
        {"provenance", provenance},
    };
    if (g.kind == GramKind::Gaussian) j["sigma"] = g.sigma;
    if (g.jitter != 0.0) j["jitter"] = g.jitter;
    write_text_file(path, j.dump(2) + "\n");
}

// ── models and metrics ──────────────────────────────────────────────────────

nlohmann::json regressor_to_json(const Regressor& reg) {
    std::vector<std::string> corpus;
    corpus.reserve(reg.train_formulas.size());
    for (const FormulaPtr& f : reg.train_formulas) {
        corpus.push_back(print_formula(f));
    }
    nlohmann::json j = {
        {"method", to_string(reg.method)},
        {"target_kind", to_string(reg.target_kind)},
        {"hyper",
         {{"sigma", reg.hyper.sigma},
          {"neighbors", reg.hyper.neighbors},
          {"lambda", reg.hyper.ridge_lambda},
          {"C", reg.hyper.svr_c},
          {"epsilon", reg.hyper.svr_epsilon}}},
        {"train_formulas", corpus},
        {"targets", reg.targets},
        {"gram_fingerprint", reg.gram_fingerprint},
    };
    if (!reg.coefficients.empty()) j["coefficients"] = reg.coefficients;
    if (reg.method == RegressionMethod::SupportVectorRegression) {
        j["bias"] = reg.bias;
    }
    if (reg.jitter_applied != 0.0) j["jitter"] = reg.jitter_applied;
    return j;
}

Regressor regressor_from_json(const nlohmann::json& j) {
    Regressor reg;
    reg.method = regression_method_from_string(j.at("method").get<std::string>());
    reg.target_kind = target_kind_from_string(j.at("target_kind").get<std::string>());
    const auto& h = j.at("hyper");
    reg.hyper.sigma = h.at("sigma").get<double>();
    reg.hyper.neighbors = h.at("neighbors").get<std::size_t>();
    reg.hyper.ridge_lambda = h.at("lambda").get<double>();
    reg.hyper.svr_c = h.at("C").get<double>();
    reg.hyper.svr_epsilon = h.at("epsilon").get<double>();
    for (const auto& text : j.at("train_formulas")) {
        reg.train_formulas.push_back(parse_formula(text.get<std::string>()));
    }
    reg.targets = j.at("targets").get<std::vector<double>>();
    reg.gram_fingerprint = j.at("gram_fingerprint").get<std::uint64_t>();
    if (j.contains("coefficients")) {
        reg.coefficients = j.at("coefficients").get<std::vector<double>>();
    }
    if (j.contains("bias")) reg.bias = j.at("bias").get<double>();
    if (j.contains("jitter")) reg.jitter_applied = j.at("jitter").get<double>();
    if (reg.targets.size() != reg.train_formulas.size()) {
        throw std::runtime_error("model file: targets/formulas size mismatch");
    }
    return reg;
}

void write_model_file(const fs::path& path, const Regressor& reg,
                      const nlohmann::json& provenance) {
    nlohmann::json j = regressor_to_json(reg);
    j["provenance"] = provenance;
    write_text_file(path, j.dump(2) + "\n");
}

Regressor read_model_file(const fs::path& path, nlohmann::json* provenance) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
    if (provenance && j.contains("provenance")) *provenance = j.at("provenance");
    return regressor_from_json(j);
}

void write_metrics_csv(const fs::path& path, const std::vector<MetricsRow>& rows) {
    std::string body = "method,sigma,lambda,C,epsilon,k,mse_train,mse_test\n";
    for (const MetricsRow& r : rows) {
        body += r.method;
        body += ',' + format_double(r.sigma);
        body += ',' + format_double(r.lambda);
        body += ',' + format_double(r.c);
        body += ',' + format_double(r.epsilon);
        body += ',' + std::to_string(r.neighbors);
        body += ',' + format_double(r.mse_train);
        body += ',' + format_double(r.mse_test);
        body += '\n';
    }
    write_text_file(path, body);
}

}  // namespace stlkern
