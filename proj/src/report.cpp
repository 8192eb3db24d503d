#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "infl/centrality.hpp"

namespace infl {
namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string node_label(int v, const std::vector<std::string>& labels) {
    if (!labels.empty()) return labels[static_cast<std::size_t>(v)];
    return std::to_string(v);
}

std::string group_label(const std::vector<int>& grp, const std::vector<std::string>& labels) {
    std::string out;
    for (std::size_t i = 0; i < grp.size(); ++i) {
        if (i) out += ';';
        out += node_label(grp[i], labels);
    }
    return out;
}

} // namespace

std::string report_to_csv(const CentralityReport& rep, const std::vector<std::string>& labels) {
    std::ostringstream out;
    if (rep.mode == Mode::Group) {
        out << "group,value\n";
        for (std::size_t j = 0; j < rep.groups.size(); ++j)
            out << group_label(rep.groups[j], labels) << ',' << fmt(rep.group_values[j]) << '\n';
        return out.str();
    }
    const bool with_se = !rep.std_errors.empty();
    out << (with_se ? "node,value,std_error\n" : "node,value\n");
    for (std::size_t v = 0; v < rep.values.size(); ++v) {
        out << node_label(static_cast<int>(v), labels) << ',' << fmt(rep.values[v]);
        if (with_se) out << ',' << fmt(rep.std_errors[v]);
        out << '\n';
    }
    return out.str();
}

std::string report_to_json(const CentralityReport& rep, const std::vector<std::string>& labels) {
    nlohmann::json j;
    j["mode"] = mode_name(rep.mode);
    j["function"] = rep.function;
    j["method"] = rep.exact ? "exact" : "estimate";
    if (!rep.exact) {
        j["parameters"] = {{"eps", rep.eps}, {"ell", rep.ell}, {"k", rep.k}};
    }
    if (rep.mode == Mode::Group) {
        auto arr = nlohmann::json::array();
        for (std::size_t g = 0; g < rep.groups.size(); ++g) {
            nlohmann::json entry;
            auto nodes = nlohmann::json::array();
            for (int v : rep.groups[g]) nodes.push_back(node_label(v, labels));
            entry["nodes"] = nodes;
            entry["value"] = rep.group_values[g];
            arr.push_back(entry);
        }
        j["groups"] = arr;
    } else {
        auto vals = nlohmann::json::object();
        for (std::size_t v = 0; v < rep.values.size(); ++v)
            vals[node_label(static_cast<int>(v), labels)] = rep.values[v];
        j["values"] = vals;
        if (!rep.std_errors.empty()) {
            auto ses = nlohmann::json::object();
            for (std::size_t v = 0; v < rep.std_errors.size(); ++v)
                ses[node_label(static_cast<int>(v), labels)] = rep.std_errors[v];
            j["std_errors"] = ses;
        }
    }
    return j.dump(2) + "\n";
}

} // namespace infl
