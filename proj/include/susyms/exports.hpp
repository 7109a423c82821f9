#pragma once

#include <string>
#include <vector>

#include "susyms/classify.hpp"
#include "susyms/reduce.hpp"
#include "susyms/vectorfield.hpp"

namespace susyms {

/// Supercommutation table in the reference row order
/// D, P1, P3, Q1, P2, P4, Q2, P5 (classical: e1..e7).
struct TableView {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> cells;
};

TableView susy_table_view();
TableView classical_table_view();

std::string table_to_text(const TableView& t);
std::string table_to_json(const TableView& t);
std::string table_to_latex(const TableView& t);
std::string table_to_markdown(const TableView& t);

/// {"schema":1, "stage":..., "count":..., "classes":[...]}
std::string classification_to_json(const std::vector<RepresentativeClass>& classes,
                                   const std::string& stage, bool deduped);

std::string identities_to_json();

std::string solution_report_to_json(const std::string& name, const SolutionReport& rep);
std::string numeric_report_to_json(const std::string& name, const NumericReport& rep,
                                   const GridSpec& grid);

/// Fixed 17-significant-digit float formatting for byte-stable reports.
std::string format_double(double v);

} // namespace susyms
