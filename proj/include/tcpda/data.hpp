#pragma once

#include "tcpda/common.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace tcpda {

/// Samples of one domain (a weather station, a hospital, ...).
struct DomainDataset {
    std::string name;
    Matrix features;                 // n x D
    std::vector<int> labels;         // n class indices in [0, K); empty if unlabeled
    std::vector<std::string> feature_names;
    std::vector<std::string> class_names;  // K, shared by all domains of a file

    Index size() const noexcept { return features.rows(); }
    Index num_classes() const noexcept { return static_cast<Index>(class_names.size()); }
};

enum class CategoricalPolicy { OneHot, Reject };

struct CsvOptions {
    /// May be empty for unlabeled (target-only) files.
    std::string label_column;
    std::string domain_column;
    /// Columns to ignore entirely (identifiers, dates, leakage columns).
    std::vector<std::string> drop_columns;
    /// If non-empty, only these feature columns are kept (in file order).
    std::vector<std::string> feature_columns;
    /// If non-empty, only rows of these domains are kept.
    std::vector<std::string> domains;
    CategoricalPolicy categorical = CategoricalPolicy::OneHot;
    /// Cell values treated as missing, in addition to the empty cell.
    std::vector<std::string> missing_tokens = {"NA", "?"};
};

/// Reads a headed, comma-separated file and splits it by domain.
///
/// Domains come out in order of first appearance and rows keep their file
/// order. Numeric columns are parsed as doubles; other columns are one-hot
/// encoded (categories in sorted order, named "column=value") or rejected.
/// Missing feature cells are imputed with the column mean of their own
/// domain, falling back to the mean over the whole file. Rows with a
/// missing label are dropped. Class indices follow the sorted label values
/// (numeric order when every label is a number).
std::vector<DomainDataset> load_csv(const std::filesystem::path& path,
                                    const CsvOptions& options);

struct ZScoreResult {
    DomainDataset data;
    /// One message per zero-variance feature (centered, left unscaled).
    std::vector<std::string> warnings;
};

/// Standardizes every feature with the domain's own mean and population
/// standard deviation.
ZScoreResult zscore(const DomainDataset& d);

/// Writes datasets in the layout load_csv reads back: a header of
/// label_column, domain_column and the feature names.
void write_csv(const std::vector<DomainDataset>& datasets,
               const std::filesystem::path& path, const std::string& label_column,
               const std::string& domain_column);

void write_json(const std::vector<DomainDataset>& datasets,
                const std::filesystem::path& path);

/// Finds a domain by name; throws IngestionError listing the known names.
const DomainDataset& find_domain(const std::vector<DomainDataset>& datasets,
                                 const std::string& name);

/// Splits one CSV line into fields (RFC 4180 quoting).
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace tcpda
