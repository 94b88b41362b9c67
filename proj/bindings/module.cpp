#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <optional>
#include <string>

#include "permcorr/builders.hpp"
#include "permcorr/conditions.hpp"
#include "permcorr/errors.hpp"
#include "permcorr/matrix.hpp"
#include "permcorr/moments.hpp"
#include "permcorr/null_dist.hpp"
#include "permcorr/report.hpp"
#include "permcorr/stats_util.hpp"

namespace py = pybind11;
using namespace permcorr;

namespace {

SymmetryClass parse_symmetry(const std::string& name) {
    if (name == "symmetric") return SymmetryClass::Symmetric;
    if (name == "antisymmetric") return SymmetryClass::Antisymmetric;
    if (name == "general") return SymmetryClass::General;
    throw std::invalid_argument("symmetry must be symmetric|antisymmetric|general");
}

NormalizerKind parse_kind(const std::string& name) {
    if (name == "exact_sd") return NormalizerKind::ExactSd;
    if (name == "daniels") return NormalizerKind::Daniels;
    if (name == "pham2") return NormalizerKind::Pham2;
    if (name == "pham3") return NormalizerKind::Pham3;
    throw std::invalid_argument("normalizer must be exact_sd|daniels|pham2|pham3");
}

DistinctSumPattern parse_pattern(const std::string& name) {
    if (name == "p4") return DistinctSumPattern::P4;
    if (name == "p3_shared") return DistinctSumPattern::P3Shared;
    if (name == "p3_diag") return DistinctSumPattern::P3Diag;
    if (name == "p2_sq") return DistinctSumPattern::P2Sq;
    if (name == "p2_diag2") return DistinctSumPattern::P2DiagPair;
    if (name == "p2_mixed") return DistinctSumPattern::P2Mixed;
    if (name == "p1") return DistinctSumPattern::P1;
    throw std::invalid_argument("unknown distinct-sum pattern: " + name);
}

Sidedness parse_sidedness(const std::string& name) {
    if (name == "greater") return Sidedness::Greater;
    if (name == "less") return Sidedness::Less;
    if (name == "two_sided") return Sidedness::TwoSided;
    throw std::invalid_argument("sidedness must be greater|less|two_sided");
}

CoefficientMatrix matrix_from_array(py::array_t<double, py::array::c_style | py::array::forcecast> arr,
                                    const std::string& symmetry, bool hollow) {
    if (arr.ndim() != 2 || arr.shape(0) != arr.shape(1)) {
        throw std::invalid_argument("expected a square 2-d array");
    }
    const int n = static_cast<int>(arr.shape(0));
    std::vector<double> data(static_cast<std::size_t>(n) * n);
    std::memcpy(data.data(), arr.data(), data.size() * sizeof(double));
    return CoefficientMatrix(n, std::move(data), parse_symmetry(symmetry), hollow);
}

py::array_t<double> matrix_to_array(const CoefficientMatrix& m) {
    const int n = m.order();
    py::array_t<double> arr({n, n});
    std::memcpy(arr.mutable_data(), m.data().data(),
                static_cast<std::size_t>(n) * n * sizeof(double));
    return arr;
}

py::object json_to_py(const nlohmann::ordered_json& j) {
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            py::dict d;
            for (const auto& [key, value] : j.items()) {
                d[py::str(key)] = json_to_py(value);
            }
            return d;
        }
        case nlohmann::json::value_t::array: {
            py::list l;
            for (const auto& item : j) {
                l.append(json_to_py(item));
            }
            return l;
        }
        case nlohmann::json::value_t::string:
            return py::str(j.get<std::string>());
        case nlohmann::json::value_t::boolean:
            return py::bool_(j.get<bool>());
        case nlohmann::json::value_t::number_integer:
            return py::int_(j.get<std::int64_t>());
        case nlohmann::json::value_t::number_unsigned:
            return py::int_(j.get<std::uint64_t>());
        case nlohmann::json::value_t::number_float:
            return py::float_(j.get<double>());
        default:
            return py::none();
    }
}

Sample sample_from_array(py::array_t<double, py::array::c_style | py::array::forcecast> arr) {
    if (arr.ndim() == 1) {
        std::vector<std::vector<double>> points;
        points.reserve(static_cast<std::size_t>(arr.shape(0)));
        for (py::ssize_t i = 0; i < arr.shape(0); ++i) {
            points.push_back({arr.at(i)});
        }
        return Sample(std::move(points));
    }
    if (arr.ndim() != 2) {
        throw std::invalid_argument("points must be a 1-d or 2-d array");
    }
    std::vector<std::vector<double>> points;
    points.reserve(static_cast<std::size_t>(arr.shape(0)));
    for (py::ssize_t i = 0; i < arr.shape(0); ++i) {
        std::vector<double> p;
        p.reserve(static_cast<std::size_t>(arr.shape(1)));
        for (py::ssize_t k = 0; k < arr.shape(1); ++k) {
            p.push_back(arr.at(i, k));
        }
        points.push_back(std::move(p));
    }
    return Sample(std::move(points));
}

std::optional<double> bandwidth_from(py::object bandwidth) {
    if (bandwidth.is_none()) return std::nullopt;
    if (py::isinstance<py::str>(bandwidth)) {
        if (bandwidth.cast<std::string>() == "median") return std::nullopt;
        throw std::invalid_argument("bandwidth must be 'median', None, or a number");
    }
    return bandwidth.cast<double>();
}

} // namespace

PYBIND11_MODULE(permcorr, m) {
    m.doc() = "permutation inference for generalized correlation coefficients";
    m.attr("__version__") = kToolVersion;

    py::register_exception<DegenerateError>(m, "DegenerateError");

    py::class_<CoefficientMatrix>(m, "CoefficientMatrix")
        .def(py::init(&matrix_from_array), py::arg("entries"), py::arg("symmetry") = "general",
             py::arg("hollow") = false)
        .def_property_readonly("n", &CoefficientMatrix::order)
        .def_property_readonly("symmetry",
                               [](const CoefficientMatrix& m_) {
                                   return std::string(to_string(m_.symmetry_class()));
                               })
        .def_property_readonly("hollow", &CoefficientMatrix::hollow)
        .def_property_readonly("max_abs", &CoefficientMatrix::max_abs)
        .def("to_numpy", &matrix_to_array);

    py::class_<Permutation>(m, "Permutation")
        .def(py::init<std::vector<int>>(), py::arg("mapping"))
        .def_static("identity", &Permutation::identity, py::arg("n"))
        .def("inverse", &Permutation::inverse)
        .def_property_readonly("mapping",
                               [](const Permutation& p) { return p.mapping(); });

    py::class_<NullDistribution>(m, "NullDistribution")
        .def_property_readonly("kind",
                               [](const NullDistribution& d) {
                                   return d.kind == DistributionKind::Exact ? "exact"
                                                                            : "empirical";
                               })
        .def_property_readonly("values",
                               [](const NullDistribution& d) {
                                   py::array_t<double> arr(static_cast<py::ssize_t>(d.values.size()));
                                   std::memcpy(arr.mutable_data(), d.values.data(),
                                               d.values.size() * sizeof(double));
                                   return arr;
                               })
        .def_readonly("n", &NullDistribution::n)
        .def_readonly("sample_count", &NullDistribution::sample_count)
        .def_readonly("mean", &NullDistribution::mean)
        .def_readonly("variance", &NullDistribution::variance)
        .def_readonly("skewness", &NullDistribution::skewness)
        .def_readonly("excess_kurtosis", &NullDistribution::excess_kurtosis);

    m.def("gamma", &gamma_statistic, py::arg("a"), py::arg("b"), py::arg("perm"));
    m.def("apply_permutation", &apply_permutation, py::arg("b"), py::arg("perm"));
    m.def("elementary_sums", [](const CoefficientMatrix& a) {
        const ElementarySums s = elementary_sums(a);
        py::dict d;
        d["sum_offdiag"] = s.sum_offdiag;
        d["sum_diag"] = s.sum_diag;
        d["sum_sq_offdiag"] = s.sum_sq_offdiag;
        d["row_sums"] = s.row_sums;
        d["col_sums"] = s.col_sums;
        d["triple_sum"] = s.triple_sum;
        d["max_abs"] = s.max_abs;
        return d;
    });
    m.def("restricted_sum",
          [](const CoefficientMatrix& a, const std::string& pattern) {
              return restricted_sum(a, parse_pattern(pattern));
          },
          py::arg("a"), py::arg("pattern"));

    m.def("exact_mean", &exact_mean, py::arg("a"), py::arg("b"));
    m.def("exact_second_moment", &exact_second_moment, py::arg("a"), py::arg("b"));
    m.def("exact_variance",
          [](const CoefficientMatrix& a, const CoefficientMatrix& b) {
              return exact_variance(a, b);
          },
          py::arg("a"), py::arg("b"));
    m.def("normalizer",
          [](const CoefficientMatrix& a, const CoefficientMatrix& b, const std::string& kind) {
              return normalizer(a, b, parse_kind(kind));
          },
          py::arg("a"), py::arg("b"), py::arg("kind"));
    m.def("standardize",
          [](double gamma_obs, const CoefficientMatrix& a, const CoefficientMatrix& b,
             const std::string& kind) { return standardize(gamma_obs, a, b, parse_kind(kind)); },
          py::arg("gamma_obs"), py::arg("a"), py::arg("b"), py::arg("kind"));

    m.def("prime_transform", &prime_transform, py::arg("a"));
    m.def("star_transform",
          [](const CoefficientMatrix& a, const std::string& setting) {
              if (setting == "symmetric") return star_transform(a, StarSetting::Symmetric);
              if (setting == "antisymmetric") {
                  return star_transform(a, StarSetting::Antisymmetric);
              }
              throw std::invalid_argument("setting must be symmetric|antisymmetric");
          },
          py::arg("a"), py::arg("setting"));
    m.def("diagnose",
          [](const CoefficientMatrix& a, const CoefficientMatrix& b, const std::string& theorem) {
              TheoremId id;
              if (theorem == "daniels") id = TheoremId::Daniels;
              else if (theorem == "pham1") id = TheoremId::Pham1;
              else if (theorem == "pham2") id = TheoremId::Pham2;
              else if (theorem == "pham3") id = TheoremId::Pham3;
              else if (theorem == "main") id = TheoremId::Main;
              else throw std::invalid_argument("unknown theorem: " + theorem);
              return json_to_py(condition_report_json(diagnose(a, b, id)));
          },
          py::arg("a"), py::arg("b"), py::arg("theorem"));

    m.def("diff_matrix", &diff_matrix, py::arg("values"));
    m.def("rank_diff_matrix", &rank_diff_matrix, py::arg("values"));
    m.def("sign_diff_matrix", &sign_diff_matrix, py::arg("values"));
    m.def("mst_adjacency",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> points) {
              return mst_adjacency(sample_from_array(points));
          },
          py::arg("points"));
    m.def("kernel_matrix",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> points,
             py::object bandwidth, bool keep_diagonal) {
              return kernel_matrix(sample_from_array(points), bandwidth_from(bandwidth),
                                   keep_diagonal);
          },
          py::arg("points"), py::arg("bandwidth") = py::none(),
          py::arg("keep_diagonal") = false);
    m.def("mmd_label_matrix",
          [](const std::vector<int>& labels) { return mmd_label_matrix(LabelVector(labels)); },
          py::arg("labels"));
    m.def("weighted_label_matrix",
          [](const std::vector<int>& labels, py::object p_rule) {
              const LabelVector lv(labels);
              if (py::isinstance<py::str>(p_rule)) {
                  const auto rule = p_rule.cast<std::string>();
                  if (rule == "m_over_n") return weighted_label_matrix(lv, WeightRule::MOverN);
                  if (rule == "m1_over_n2") {
                      return weighted_label_matrix(lv, WeightRule::M1OverN2);
                  }
                  throw std::invalid_argument("p_rule must be m_over_n, m1_over_n2, or a number");
              }
              return weighted_label_matrix(lv, WeightRule::Explicit, p_rule.cast<double>());
          },
          py::arg("labels"), py::arg("p_rule") = "m_over_n");
    m.def("abs_label_diff",
          [](const std::vector<int>& labels) { return abs_label_diff(LabelVector(labels)); },
          py::arg("labels"));
    m.def("centered_distance_matrix",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> points) {
              return centered_distance_matrix(sample_from_array(points));
          },
          py::arg("points"));

    m.def("enumerate_exact", &enumerate_exact, py::arg("a"), py::arg("b"),
          py::arg("cap") = kDefaultEnumerationCap);
    m.def("exact_moment", &exact_moment, py::arg("a"), py::arg("b"), py::arg("order"),
          py::arg("cap") = kDefaultEnumerationCap);
    m.def("sample_null",
          [](const CoefficientMatrix& a, const CoefficientMatrix& b, std::int64_t draws,
             std::uint64_t seed, int workers) {
              return sample_null(a, b, draws, RngSeed{seed}, workers);
          },
          py::arg("a"), py::arg("b"), py::arg("draws"), py::arg("seed") = 0,
          py::arg("workers") = 1);
    m.def("ks_normal",
          [](const NullDistribution& dist, const CoefficientMatrix& a,
             const CoefficientMatrix& b, const std::string& kind) {
              return ks_normal(dist, a, b, parse_kind(kind));
          },
          py::arg("dist"), py::arg("a"), py::arg("b"), py::arg("kind") = "exact_sd");
    m.def("p_value",
          [](const NullDistribution& dist, double gamma_obs, const std::string& sidedness) {
              return p_value(dist, gamma_obs, parse_sidedness(sidedness));
          },
          py::arg("dist"), py::arg("gamma_obs"), py::arg("sidedness") = "greater");

    m.def("normal_cdf", &normal_cdf, py::arg("z"));
    m.def("normal_quantile", &normal_quantile, py::arg("p"));
}
