#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sigstream/errors.hpp"
#include "sigstream/lead_lag.hpp"
#include "sigstream/market.hpp"
#include "sigstream/signature.hpp"
#include "sigstream/synthetic.hpp"
#include "sigstream/tensor_algebra.hpp"

namespace py = pybind11;
using namespace sigstream;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Truncated path signatures for order-book streams";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError",
                                          PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError",
                                       PyExc_ArithmeticError);

  py::class_<AlgebraParams>(m, "AlgebraParams")
      .def(py::init([](int width, int depth) {
             return AlgebraParams{width, depth};
           }),
           py::arg("width"), py::arg("depth"))
      .def_readonly("width", &AlgebraParams::width)
      .def_readonly("depth", &AlgebraParams::depth)
      .def("__eq__", [](const AlgebraParams& a, const AlgebraParams& b) {
        return a == b;
      })
      .def("__repr__", [](const AlgebraParams& p) {
        return "AlgebraParams(width=" + std::to_string(p.width) +
               ", depth=" + std::to_string(p.depth) + ")";
      });

  py::class_<TruncatedTensor>(m, "TruncatedTensor")
      .def_readonly("params", &TruncatedTensor::params)
      .def_readwrite("coeffs", &TruncatedTensor::coeffs)
      .def("__getitem__",
           [](const TruncatedTensor& t, const MultiIndex& word) {
             return get_coefficient(t, word);
           })
      .def("__len__",
           [](const TruncatedTensor& t) { return t.coeffs.size(); });

  m.def("feature_count",
        [](int width, int depth) {
          return feature_count(AlgebraParams{width, depth});
        },
        py::arg("width"), py::arg("depth"));
  m.def("zero_tensor", &zero_tensor, py::arg("params"));
  m.def("unit_tensor", &unit_tensor, py::arg("params"));
  m.def("exp_of_increment", &exp_of_increment, py::arg("v"),
        py::arg("params"));
  m.def("concat_product", &concat_product, py::arg("a"), py::arg("b"));
  m.def("log", &sigstream::log, py::arg("t"));
  m.def("shuffle_product", &shuffle_product, py::arg("i"), py::arg("j"),
        py::arg("params"));
  m.def("all_multi_indices", &all_multi_indices, py::arg("params"));
  m.def("dotted", &dotted, py::arg("word"));
  m.def("parse_dotted",
        [](const std::string& text, const AlgebraParams& params) {
          return parse_dotted(text, params);
        },
        py::arg("text"), py::arg("params"));

  py::class_<Stream>(m, "Stream")
      .def(py::init<>())
      .def(py::init([](std::vector<double> times,
                       std::vector<std::vector<double>> points) {
             return Stream{std::move(times), std::move(points)};
           }),
           py::arg("times"), py::arg("points"))
      .def_readwrite("times", &Stream::times)
      .def_readwrite("points", &Stream::points)
      .def("dimension", &Stream::dimension)
      .def("__len__", &Stream::size);

  m.def("validate_stream", &validate_stream, py::arg("stream"));
  m.def("stream_signature", &stream_signature, py::arg("stream"),
        py::arg("depth"));
  m.def("area", &area, py::arg("t"), py::arg("i"), py::arg("j"));
  m.def("second_order_area", &second_order_area, py::arg("t"), py::arg("i"),
        py::arg("j"));

  m.def("lead_transform", &lead_transform, py::arg("stream"));
  m.def("lag_transform", &lag_transform, py::arg("stream"));
  m.def("partial_lead_lag",
        [](const Stream& s, std::vector<int> lag_channels) {
          return partial_lead_lag(s, LeadLagSpec{std::move(lag_channels)});
        },
        py::arg("stream"), py::arg("lag_channels"));
  m.def("cross_variation", &cross_variation, py::arg("stream"), py::arg("i"),
        py::arg("j"));

  py::class_<OrderBookRow>(m, "OrderBookRow")
      .def(py::init<>())
      .def_readwrite("time", &OrderBookRow::time)
      .def_readwrite("best_ask", &OrderBookRow::best_ask)
      .def_readwrite("best_bid", &OrderBookRow::best_bid)
      .def_readwrite("ask_volume", &OrderBookRow::ask_volume)
      .def_readwrite("bid_volume", &OrderBookRow::bid_volume)
      .def_readwrite("cum_volume", &OrderBookRow::cum_volume);

  py::class_<OrderBookStream>(m, "OrderBookStream")
      .def(py::init<>())
      .def_readwrite("id", &OrderBookStream::id)
      .def_readwrite("label", &OrderBookStream::label)
      .def_readwrite("rows", &OrderBookStream::rows)
      .def("__len__",
           [](const OrderBookStream& s) { return s.rows.size(); });

  py::class_<NormalizedStream>(m, "NormalizedStream")
      .def_readonly("id", &NormalizedStream::id)
      .def_readonly("label", &NormalizedStream::label)
      .def_readonly("u", &NormalizedStream::u)
      .def_readonly("p", &NormalizedStream::p)
      .def_readonly("s", &NormalizedStream::s)
      .def_readonly("d", &NormalizedStream::d)
      .def_readonly("c", &NormalizedStream::c)
      .def_readonly("price_degenerate", &NormalizedStream::price_degenerate)
      .def_readonly("spread_degenerate", &NormalizedStream::spread_degenerate)
      .def_readonly("volume_degenerate",
                    &NormalizedStream::volume_degenerate);

  py::class_<FeatureRecord>(m, "FeatureRecord")
      .def_readonly("id", &FeatureRecord::id)
      .def_readonly("label", &FeatureRecord::label)
      .def_readonly("features", &FeatureRecord::features);

  py::class_<FeatureTable>(m, "FeatureTable")
      .def_readonly("params", &FeatureTable::params)
      .def_readonly("records", &FeatureTable::records);

  py::class_<FeaturizeResult>(m, "FeaturizeResult")
      .def_readonly("table", &FeaturizeResult::table)
      .def_readonly("warnings", &FeaturizeResult::warnings)
      .def_readonly("skipped", &FeaturizeResult::skipped);

  m.def("validate_order_book", &validate_order_book, py::arg("stream"));
  m.def("normalize", &normalize, py::arg("stream"));
  m.def("assemble_input", &assemble_input, py::arg("normalized"));
  m.def("featurize_streams", &featurize_streams, py::arg("streams"),
        py::arg("depth") = 4, py::arg("workers") = 1);

  py::enum_<ProfileClass>(m, "ProfileClass")
      .value("front_loaded", ProfileClass::front_loaded)
      .value("back_loaded", ProfileClass::back_loaded)
      .value("mid_loaded", ProfileClass::mid_loaded)
      .value("front_and_back_loaded", ProfileClass::front_and_back_loaded)
      .value("flat", ProfileClass::flat);

  py::class_<GeneratorConfig>(m, "GeneratorConfig")
      .def(py::init<>())
      .def_readwrite("profile_class", &GeneratorConfig::profile_class)
      .def_readwrite("n_points", &GeneratorConfig::n_points)
      .def_readwrite("noise_level", &GeneratorConfig::noise_level)
      .def_readwrite("price_vol", &GeneratorConfig::price_vol)
      .def_readwrite("seed", &GeneratorConfig::seed)
      .def_readwrite("count", &GeneratorConfig::count);

  m.def("profile_name",
        [](ProfileClass p) { return std::string(profile_name(p)); },
        py::arg("profile"));
  m.def("base_profile", &base_profile, py::arg("profile"), py::arg("u"));
  m.def("generate_stream", &generate_stream, py::arg("config"),
        py::arg("index") = 0);
  m.def("generate_dataset", &generate_dataset, py::arg("config_a"),
        py::arg("config_b"));
}
