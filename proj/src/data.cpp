#include "tcpda/data.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <set>

namespace tcpda {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(const std::string& s) {
    double value = 0.0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    if (begin != end && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) return std::nullopt;
    return value;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

std::string quote_if_needed(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

struct RawTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

RawTable read_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IngestionError("cannot open '" + path.string() + "'");
    RawTable table;
    std::string line;
    if (!std::getline(in, line)) {
        throw IngestionError("'" + path.string() + "' is empty");
    }
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    for (auto& h : split_csv_line(line)) table.header.push_back(trim(h));

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != table.header.size()) {
            throw IngestionError(fmt::format("{}:{}: expected {} fields, found {}",
                                             path.string(), line_no,
                                             table.header.size(), fields.size()));
        }
        for (auto& f : fields) f = trim(f);
        table.rows.push_back(std::move(fields));
    }
    return table;
}

std::size_t column_index(const RawTable& t, const std::string& name) {
    const auto it = std::find(t.header.begin(), t.header.end(), name);
    if (it == t.header.end()) throw IngestionError("unknown column '" + name + "'");
    return static_cast<std::size_t>(it - t.header.begin());
}

// One output feature column: either a numeric source column or one
// indicator of a categorical column.
struct FeatureSpec {
    std::string name;
    std::size_t source;
    std::optional<std::string> category;
};

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else if (c != '\r') {
            current += c;
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

std::vector<DomainDataset> load_csv(const std::filesystem::path& path,
                                    const CsvOptions& options) {
    const RawTable table = read_table(path);
    const bool labeled = !options.label_column.empty();
    const std::size_t label_col =
        labeled ? column_index(table, options.label_column) : table.header.size();
    const std::size_t domain_col = column_index(table, options.domain_column);
    for (const auto& c : options.drop_columns) column_index(table, c);
    for (const auto& c : options.feature_columns) column_index(table, c);

    auto is_missing = [&](const std::string& cell) {
        return cell.empty() || contains(options.missing_tokens, cell);
    };

    // Keep rows of the requested domains that carry a label.
    std::vector<const std::vector<std::string>*> rows;
    std::size_t dropped = 0;
    for (const auto& r : table.rows) {
        if (!options.domains.empty() && !contains(options.domains, r[domain_col])) continue;
        if (labeled && is_missing(r[label_col])) {
            ++dropped;
            continue;
        }
        if (is_missing(r[domain_col])) {
            throw IngestionError("row with a missing domain value in '" +
                                 path.string() + "'");
        }
        rows.push_back(&r);
    }
    if (dropped > 0) spdlog::warn("dropped {} rows with a missing label", dropped);
    for (const auto& d : options.domains) {
        const bool present = std::any_of(rows.begin(), rows.end(),
                                         [&](const auto* r) { return (*r)[domain_col] == d; });
        if (!present) throw IngestionError("domain '" + d + "' has no labeled rows");
    }
    if (rows.empty()) throw IngestionError("'" + path.string() + "' has no labeled rows");

    // Classes.
    std::set<std::string> label_values;
    if (labeled) {
        for (const auto* r : rows) label_values.insert((*r)[label_col]);
    }
    std::vector<std::string> class_names(label_values.begin(), label_values.end());
    const bool numeric_labels = std::all_of(class_names.begin(), class_names.end(),
                                            [](const auto& s) { return parse_number(s).has_value(); });
    if (numeric_labels) {
        std::stable_sort(class_names.begin(), class_names.end(),
                         [](const auto& a, const auto& b) {
                             return *parse_number(a) < *parse_number(b);
                         });
    }
    std::map<std::string, int> class_index;
    for (std::size_t k = 0; k < class_names.size(); ++k) {
        class_index[class_names[k]] = static_cast<int>(k);
    }

    // Feature columns.
    std::vector<FeatureSpec> specs;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        const std::string& name = table.header[c];
        if (c == label_col || c == domain_col || contains(options.drop_columns, name)) continue;
        if (!options.feature_columns.empty() && !contains(options.feature_columns, name)) continue;
        bool numeric = true;
        std::set<std::string> categories;
        for (const auto* r : rows) {
            const std::string& cell = (*r)[c];
            if (is_missing(cell)) continue;
            categories.insert(cell);
            if (!parse_number(cell)) numeric = false;
        }
        if (numeric) {
            specs.push_back({name, c, std::nullopt});
            continue;
        }
        if (options.categorical == CategoricalPolicy::Reject) {
            throw IngestionError("column '" + name + "' is not numeric");
        }
        for (const auto& cat : categories) specs.push_back({name + "=" + cat, c, cat});
    }
    if (specs.empty()) throw IngestionError("no feature columns left in '" + path.string() + "'");

    // Group rows by domain in order of first appearance.
    std::vector<std::string> domain_order;
    std::map<std::string, std::vector<const std::vector<std::string>*>> groups;
    for (const auto* r : rows) {
        const std::string& d = (*r)[domain_col];
        if (groups.find(d) == groups.end()) domain_order.push_back(d);
        groups[d].push_back(r);
    }

    constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
    auto cell_value = [&](const std::vector<std::string>& r, const FeatureSpec& f) {
        const std::string& cell = r[f.source];
        if (is_missing(cell)) return kNaN;
        if (f.category) return cell == *f.category ? 1.0 : 0.0;
        return *parse_number(cell);
    };

    const auto D = static_cast<Index>(specs.size());
    std::vector<DomainDataset> out;
    Vector global_sum = Vector::Zero(D);
    Vector global_count = Vector::Zero(D);
    for (const auto& name : domain_order) {
        const auto& group = groups[name];
        DomainDataset d;
        d.name = name;
        d.features.resize(static_cast<Index>(group.size()), D);
        d.labels.reserve(group.size());
        for (std::size_t i = 0; i < group.size(); ++i) {
            for (Index f = 0; f < D; ++f) {
                const double v = cell_value(*group[i], specs[static_cast<std::size_t>(f)]);
                d.features(static_cast<Index>(i), f) = v;
                if (!std::isnan(v)) {
                    global_sum(f) += v;
                    global_count(f) += 1.0;
                }
            }
            if (labeled) d.labels.push_back(class_index.at((*group[i])[label_col]));
        }
        for (const auto& s : specs) d.feature_names.push_back(s.name);
        d.class_names = class_names;
        out.push_back(std::move(d));
    }

    // Mean imputation, per domain first.
    for (auto& d : out) {
        for (Index f = 0; f < D; ++f) {
            double sum = 0.0;
            std::size_t count = 0;
            for (Index i = 0; i < d.size(); ++i) {
                if (!std::isnan(d.features(i, f))) {
                    sum += d.features(i, f);
                    ++count;
                }
            }
            if (count == static_cast<std::size_t>(d.size())) continue;
            double fill = 0.0;
            if (count > 0) {
                fill = sum / static_cast<double>(count);
            } else if (global_count(f) > 0) {
                fill = global_sum(f) / global_count(f);
                spdlog::warn("domain '{}': feature '{}' is entirely missing, using the file mean",
                             d.name, d.feature_names[static_cast<std::size_t>(f)]);
            }
            for (Index i = 0; i < d.size(); ++i) {
                if (std::isnan(d.features(i, f))) d.features(i, f) = fill;
            }
        }
    }
    return out;
}

ZScoreResult zscore(const DomainDataset& d) {
    ZScoreResult result{d, {}};
    Matrix& X = result.data.features;
    if (X.rows() < 1) throw InvalidInput("cannot z-score an empty domain");
    const double n = static_cast<double>(X.rows());
    for (Index f = 0; f < X.cols(); ++f) {
        const double mean = X.col(f).mean();
        X.col(f).array() -= mean;
        const double sd = std::sqrt(X.col(f).squaredNorm() / n);
        // Relative test so rounding noise on a constant column is not scaled up.
        if (sd <= 1e-12 * std::max(1.0, std::abs(mean))) {
            X.col(f).setZero();
            const auto& fname = d.feature_names.empty()
                                    ? std::to_string(f)
                                    : d.feature_names[static_cast<std::size_t>(f)];
            result.warnings.push_back("domain '" + d.name + "': feature '" + fname +
                                      "' has zero variance; centered only");
            spdlog::warn("{}", result.warnings.back());
            continue;
        }
        X.col(f) /= sd;
    }
    return result;
}

void write_csv(const std::vector<DomainDataset>& datasets,
               const std::filesystem::path& path, const std::string& label_column,
               const std::string& domain_column) {
    if (datasets.empty()) throw InvalidInput("nothing to write");
    const auto& names = datasets.front().feature_names;
    for (const auto& d : datasets) {
        if (d.feature_names != names || static_cast<Index>(names.size()) != d.features.cols()) {
            throw InvalidInput("datasets need matching feature names, one per column");
        }
    }
    std::ofstream out(path);
    if (!out) throw IngestionError("cannot write '" + path.string() + "'");
    out << quote_if_needed(label_column) << ',' << quote_if_needed(domain_column);
    for (const auto& f : datasets.front().feature_names) out << ',' << quote_if_needed(f);
    out << '\n';
    for (const auto& d : datasets) {
        for (Index i = 0; i < d.size(); ++i) {
            const auto row = static_cast<std::size_t>(i);
            if (!d.labels.empty()) {
                out << quote_if_needed(d.class_names[static_cast<std::size_t>(d.labels[row])]);
            }
            out << ',' << quote_if_needed(d.name);
            for (Index f = 0; f < d.features.cols(); ++f) {
                out << ',' << fmt::format("{}", d.features(i, f));
            }
            out << '\n';
        }
    }
}

void write_json(const std::vector<DomainDataset>& datasets,
                const std::filesystem::path& path) {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& d : datasets) {
        nlohmann::json rows = nlohmann::json::array();
        for (Index i = 0; i < d.size(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (Index f = 0; f < d.features.cols(); ++f) row.push_back(d.features(i, f));
            rows.push_back(std::move(row));
        }
        doc.push_back({{"name", d.name},
                       {"feature_names", d.feature_names},
                       {"class_names", d.class_names},
                       {"labels", d.labels},
                       {"features", rows}});
    }
    std::ofstream out(path);
    if (!out) throw IngestionError("cannot write '" + path.string() + "'");
    out << doc.dump(2) << '\n';
}

const DomainDataset& find_domain(const std::vector<DomainDataset>& datasets,
                                 const std::string& name) {
    for (const auto& d : datasets) {
        if (d.name == name) return d;
    }
    std::string known;
    for (const auto& d : datasets) known += (known.empty() ? "" : ", ") + d.name;
    throw IngestionError("unknown domain '" + name + "' (known: " + known + ")");
}

}  // namespace tcpda
