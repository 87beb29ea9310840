#include "freshtab/cleaner.hpp"
#include "freshtab/errors.hpp"
#include "freshtab/config.hpp"
#include "freshtab/curator.hpp"
#include "freshtab/html_tables.hpp"
#include "freshtab/metrics.hpp"
#include "freshtab/ops.hpp"
#include "freshtab/prompts.hpp"
#include "freshtab/stats.hpp"
#include "freshtab/table.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace freshtab;

namespace {

TableLimits limits_from_kwargs(int min_rows, int max_rows, int min_cols, int max_cols,
                               double min_nonempty_ratio, int max_serialized_chars,
                               int max_cell_chars) {
    TableLimits limits;
    limits.min_rows = min_rows;
    limits.max_rows = max_rows;
    limits.min_cols = min_cols;
    limits.max_cols = max_cols;
    limits.min_nonempty_ratio = min_nonempty_ratio;
    limits.max_serialized_chars = max_serialized_chars;
    limits.max_cell_chars = max_cell_chars;
    return limits;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Fresh table-to-text benchmark construction and evaluation";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ConfigError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const ValidationError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    py::class_<TableLimits>(m, "TableLimits")
        .def(py::init(&limits_from_kwargs), py::arg("min_rows") = 4,
             py::arg("max_rows") = 40, py::arg("min_cols") = 3, py::arg("max_cols") = 10,
             py::arg("min_nonempty_ratio") = 0.5, py::arg("max_serialized_chars") = 3000,
             py::arg("max_cell_chars") = 200)
        .def_readwrite("min_rows", &TableLimits::min_rows)
        .def_readwrite("max_rows", &TableLimits::max_rows)
        .def_readwrite("min_cols", &TableLimits::min_cols)
        .def_readwrite("max_cols", &TableLimits::max_cols)
        .def_readwrite("min_nonempty_ratio", &TableLimits::min_nonempty_ratio)
        .def_readwrite("max_serialized_chars", &TableLimits::max_serialized_chars)
        .def_readwrite("max_cell_chars", &TableLimits::max_cell_chars);

    py::class_<PipelineConfig>(m, "PipelineConfig")
        .def_readonly("language", &PipelineConfig::language)
        .def_readonly("target_count", &PipelineConfig::target_count)
        .def_readonly("ops_per_table", &PipelineConfig::ops_per_table)
        .def_readonly("rng_seed", &PipelineConfig::rng_seed)
        .def_readonly("cache_dir", &PipelineConfig::cache_dir)
        .def_readonly("variant_name", &PipelineConfig::variant_name)
        .def_readonly("table_limits", &PipelineConfig::table_limits)
        .def_property_readonly("cutoff_date",
                               [](const PipelineConfig& c) { return format_date(c.cutoff_date); })
        .def_property_readonly(
            "collection_end",
            [](const PipelineConfig& c) { return format_date(c.collection_end); })
        .def_property_readonly("domain_quota",
                               [](const PipelineConfig& c) {
                                   py::dict quota;
                                   for (const auto& [domain, value] : c.domain_quota) {
                                       const std::string name(domain_name(domain));
                                       if (value.has_value()) {
                                           quota[name.c_str()] = *value;
                                       } else {
                                           quota[name.c_str()] = py::none();
                                       }
                                   }
                                   return quota;
                               })
        .def("__repr__", [](const PipelineConfig& c) {
            return "<PipelineConfig " + dataset_name(c) + ">";
        });

    m.def("load_config", &load_config, py::arg("path"),
          "Load and validate a pipeline YAML config");
    m.def("parse_config", &parse_config, py::arg("yaml_text"));
    m.def("config_to_yaml", &config_to_yaml, py::arg("config"));
    m.def("dataset_name", &dataset_name, py::arg("config"));

    py::class_<RawTable>(m, "RawTable")
        .def_property_readonly(
            "caption",
            [](const RawTable& t) { return t.caption ? py::cast(*t.caption) : py::none(); })
        .def_readonly("grid", &RawTable::grid)
        .def_readonly("header_depth", &RawTable::header_depth)
        .def_readonly("source_index", &RawTable::source_index);

    py::class_<CleanTable>(m, "CleanTable")
        .def(py::init([](std::vector<std::string> header,
                         std::vector<std::vector<std::string>> rows,
                         std::optional<std::string> caption) {
                 CleanTable table;
                 table.header = std::move(header);
                 table.rows = std::move(rows);
                 table.caption = std::move(caption);
                 return table;
             }),
             py::arg("header"), py::arg("rows"), py::arg("caption") = py::none())
        .def_readonly("page_title", &CleanTable::page_title)
        .def_readonly("page_url", &CleanTable::page_url)
        .def_readonly("header", &CleanTable::header)
        .def_readonly("rows", &CleanTable::rows)
        .def_property_readonly(
            "caption",
            [](const CleanTable& t) { return t.caption ? py::cast(*t.caption) : py::none(); });

    m.def("extract_tables", &extract_tables, py::arg("html"),
          "Data tables from rendered page HTML, colspan/rowspan expanded");
    m.def(
        "clean_table",
        [](const RawTable& raw, const TableLimits& limits) {
            const CleanOutcome outcome = clean_table(raw, limits);
            py::dict result;
            result["accepted"] = outcome.accepted();
            if (outcome.accepted()) {
                result["table"] = *outcome.table;
            } else {
                result["reason"] = std::string(reject_reason_name(*outcome.reason));
            }
            return result;
        },
        py::arg("raw"), py::arg("limits"));
    m.def("serialize_table", &serialize_table, py::arg("table"));

    m.def("logical_operations", [] {
        std::vector<std::tuple<std::string, std::string, std::string>> ops;
        for (const auto& op : logical_operations()) {
            ops.emplace_back(op.name, op.description, op.example_phrase);
        }
        return ops;
    });
    m.def("sample_operations", &sample_operations, py::arg("entry_id"), py::arg("n"),
          py::arg("seed"), "Seeded uniform draw of n distinct operation names");

    m.def(
        "direct_prompt",
        [](const CleanTable& table, const std::string& operation) {
            const LogicalOperation* op = find_operation(operation);
            if (op == nullptr) throw py::value_error("unknown operation: " + operation);
            return build_direct_prompt(table, *op);
        },
        py::arg("table"), py::arg("operation"));
    m.def("choice_prompt", &build_choice_prompt, py::arg("table"));
    m.def("judge_prompt", &build_judge_prompt, py::arg("table"), py::arg("insight"));

    m.def("tokenize",
          [](const std::string& text) { return tokenize(text); }, py::arg("text"));
    m.def("self_bleu4", &self_bleu4, py::arg("insights"));
    m.def("unique_tokens", &unique_tokens, py::arg("insights"));
    m.def("shannon_entropy", &shannon_entropy, py::arg("insights"));

    m.def(
        "z_test_proportions",
        [](std::size_t k1, std::size_t n1, std::size_t k2, std::size_t n2) {
            const StatResult result = z_test_proportions(k1, n1, k2, n2);
            return py::make_tuple(result.statistic, result.p_value);
        },
        py::arg("k1"), py::arg("n1"), py::arg("k2"), py::arg("n2"),
        "Pooled two-proportion z-test; returns (z, two_sided_p)");
    m.def(
        "pearson",
        [](const std::vector<double>& x, const std::vector<double>& y) {
            return pearson(x, y);
        },
        py::arg("x"), py::arg("y"));

    m.def("entry_id", &entry_id_for, py::arg("page_url"));

    m.attr("__version__") = "0.1.0";
}
