#include "susyms/exports.hpp"

#include <cstdio>

#include "json.hpp"

#include "susyms/superfield.hpp"

namespace susyms {

using nlohmann::json;

namespace {

TableView table_view(const StructureTable& t, const std::vector<int>& order) {
    TableView v;
    v.header.push_back("");
    for (int i : order)
        v.header.push_back(t.names[i]);
    for (int r : order) {
        std::vector<std::string> row;
        row.push_back(t.names[r]);
        for (int c : order)
            row.push_back(t.entry_str(r, c));
        v.cells.push_back(std::move(row));
    }
    return v;
}

} // namespace

TableView susy_table_view() {
    static const StructureTable t = structure_table(susy_basis(), susy_basis_names());
    return table_view(t, {5, 0, 2, 6, 1, 3, 7, 4});
}

TableView classical_table_view() {
    static const StructureTable t = structure_table(classical_basis(), classical_basis_names());
    return table_view(t, {0, 1, 2, 3, 4, 5, 6});
}

std::string table_to_text(const TableView& t) {
    size_t width = 0;
    for (const auto& h : t.header)
        width = std::max(width, h.size());
    for (const auto& row : t.cells)
        for (const auto& c : row)
            width = std::max(width, c.size());
    std::string out;
    auto pad = [width](const std::string& s) {
        std::string p = s;
        p.resize(width + 2, ' ');
        return p;
    };
    for (const auto& h : t.header)
        out += pad(h);
    out += "\n";
    for (const auto& row : t.cells) {
        for (const auto& c : row)
            out += pad(c);
        out += "\n";
    }
    return out;
}

std::string table_to_json(const TableView& t) {
    json j;
    j["schema"] = 1;
    j["basis"] = std::vector<std::string>(t.header.begin() + 1, t.header.end());
    json rows = json::array();
    for (const auto& row : t.cells) {
        json r = json::array();
        for (size_t i = 1; i < row.size(); ++i)
            r.push_back(row[i]);
        rows.push_back(std::move(r));
    }
    j["entries"] = std::move(rows);
    return j.dump(2) + "\n";
}

std::string table_to_latex(const TableView& t) {
    auto tex = [](std::string s) {
        // P1 -> P_1, Q2 -> Q_2, e4 -> e_4; juxtaposition instead of '*'
        std::string out;
        for (size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '*')
                continue;
            if (std::isdigit(static_cast<unsigned char>(s[i])) && i > 0 &&
                std::isalpha(static_cast<unsigned char>(s[i - 1])))
                out += "_";
            out += s[i];
        }
        return out.empty() ? std::string("0") : out;
    };
    std::string out = "\\begin{tabular}{|c||";
    for (size_t i = 1; i < t.header.size(); ++i)
        out += "c|";
    out += "}\\hline\n";
    for (size_t i = 0; i < t.header.size(); ++i) {
        if (i)
            out += " & ";
        out += i == 0 ? "" : "$\\mathbf{" + tex(t.header[i]) + "}$";
    }
    out += " \\\\\\hline\\hline\n";
    for (const auto& row : t.cells) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i)
                out += " & ";
            out += i == 0 ? "$\\mathbf{" + tex(row[i]) + "}$" : "$" + tex(row[i]) + "$";
        }
        out += " \\\\\\hline\n";
    }
    out += "\\end{tabular}\n";
    return out;
}

std::string table_to_markdown(const TableView& t) {
    std::string out = "|";
    for (const auto& h : t.header)
        out += " " + (h.empty() ? std::string("bracket") : h) + " |";
    out += "\n|";
    for (size_t i = 0; i < t.header.size(); ++i)
        out += "---|";
    out += "\n";
    for (const auto& row : t.cells) {
        out += "|";
        for (const auto& c : row)
            out += " " + c + " |";
        out += "\n";
    }
    return out;
}

std::string classification_to_json(const std::vector<RepresentativeClass>& classes,
                                   const std::string& stage, bool deduped) {
    json j;
    j["schema"] = 1;
    j["stage"] = stage;
    j["deduped"] = deduped;
    j["count"] = classes.size();
    auto stage_name = [](Stage s) {
        switch (s) {
        case Stage::S1: return "s1";
        case Stage::S2: return "s2";
        case Stage::S: return "s";
        case Stage::TildeS: return "tilde-s";
        case Stage::Full: return "full";
        }
        return "";
    };
    json arr = json::array();
    for (const auto& c : classes) {
        json e;
        e["label"] = (deduped ? "L" : "G") + std::to_string(c.label);
        e["generators"] = c.pattern.render();
        e["stage"] = stage_name(c.stage);
        if (deduped)
            e["standard_invariants"] = c.standard_invariants;
        arr.push_back(std::move(e));
    }
    j["classes"] = std::move(arr);
    return j.dump(2) + "\n";
}

std::string identities_to_json() {
    json j;
    j["schema"] = 1;
    json arr = json::array();
    for (const auto& r : check_operator_identities()) {
        json e;
        e["identity"] = r.name;
        e["holds"] = r.holds;
        if (!r.holds)
            e["residual"] = r.residual.str();
        arr.push_back(std::move(e));
    }
    j["identities"] = std::move(arr);
    return j.dump(2) + "\n";
}

std::string solution_report_to_json(const std::string& name, const SolutionReport& rep) {
    json j;
    j["schema"] = 1;
    j["solution"] = name;
    switch (rep.status) {
    case SolutionReport::Status::Zero: j["status"] = "identically zero"; break;
    case SolutionReport::Status::ConstraintVariety: j["status"] = "zero on constraint variety"; break;
    case SolutionReport::Status::NonZero: j["status"] = "nonzero"; break;
    }
    j["residual"] = rep.residual.str();
    json cs = json::array();
    for (const auto& c : rep.constraints)
        cs.push_back(c.str() + " = 0");
    j["constraints"] = std::move(cs);
    return j.dump(2) + "\n";
}

std::string numeric_report_to_json(const std::string& name, const NumericReport& rep,
                                   const GridSpec& grid) {
    json j;
    j["schema"] = 1;
    j["solution"] = name;
    j["max_abs_residual"] = format_double(rep.max_abs);
    j["at"] = {format_double(rep.at_x), format_double(rep.at_y)};
    j["grid"] = {{"x", {format_double(grid.x0), format_double(grid.x1), grid.nx}},
                 {"y", {format_double(grid.y0), format_double(grid.y1), grid.ny}}};
    j["evaluations"] = rep.evaluated;
    return j.dump(2) + "\n";
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace susyms
