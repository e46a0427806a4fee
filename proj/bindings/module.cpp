// Copyright 2026 the staticdet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <optional>

#include "staticdet/color.hpp"
#include "staticdet/config.hpp"
#include "staticdet/framediff.hpp"
#include "staticdet/fusion.hpp"
#include "staticdet/mog.hpp"
#include "staticdet/pipeline.hpp"
#include "staticdet/preprocess.hpp"
#include "staticdet/synthgen.hpp"

namespace py = pybind11;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using MaskArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

sdet::Frame frame_from_array(const DoubleArray& arr, const char* what) {
  py::buffer_info buf = arr.request();
  sdet::require(buf.ndim == 2 || (buf.ndim == 3 && buf.shape[2] == 3), what,
                " must be a (h, w) or (h, w, 3) array");
  sdet::Frame f(static_cast<int>(buf.shape[1]), static_cast<int>(buf.shape[0]),
                buf.ndim == 2 ? 1 : 3);
  std::memcpy(f.data.data(), buf.ptr, f.data.size() * sizeof(double));
  f.validate(what);
  return f;
}

py::array frame_to_array(const sdet::Frame& f) {
  if (f.channels == 1) {
    py::array_t<double> arr({f.height, f.width});
    std::memcpy(arr.mutable_data(), f.data.data(),
                f.data.size() * sizeof(double));
    return arr;
  }
  py::array_t<double> arr({f.height, f.width, 3});
  std::memcpy(arr.mutable_data(), f.data.data(), f.data.size() * sizeof(double));
  return arr;
}

sdet::BinaryMask mask_from_array(const MaskArray& arr, const char* what) {
  py::buffer_info buf = arr.request();
  sdet::require(buf.ndim == 2, what, " must be a (h, w) uint8 array");
  sdet::BinaryMask m(static_cast<int>(buf.shape[1]),
                     static_cast<int>(buf.shape[0]));
  const std::uint8_t* src = static_cast<const std::uint8_t*>(buf.ptr);
  for (std::size_t i = 0; i < m.data.size(); ++i) m.data[i] = src[i] ? 1 : 0;
  return m;
}

py::array mask_to_array(const sdet::BinaryMask& m) {
  py::array_t<std::uint8_t> arr({m.height, m.width});
  std::memcpy(arr.mutable_data(), m.data.data(), m.data.size());
  return arr;
}

py::object json_to_py(const sdet::Json& j) {
  switch (j.type()) {
    case sdet::Json::value_t::null: return py::none();
    case sdet::Json::value_t::boolean: return py::bool_(j.get<bool>());
    case sdet::Json::value_t::number_integer:
      return py::int_(j.get<long long>());
    case sdet::Json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case sdet::Json::value_t::number_float: return py::float_(j.get<double>());
    case sdet::Json::value_t::string: return py::str(j.get<std::string>());
    case sdet::Json::value_t::array: {
      py::list out;
      for (const sdet::Json& item : j) out.append(json_to_py(item));
      return out;
    }
    case sdet::Json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it)
        out[py::str(it.key())] = json_to_py(it.value());
      return out;
    }
    default: return py::none();
  }
}

py::object detection_to_py(const std::optional<sdet::Detection>& d) {
  if (!d) return py::none();
  py::dict out;
  out["area"] = d->component.area;
  out["bbox"] = py::make_tuple(d->component.bbox.x, d->component.bbox.y,
                               d->component.bbox.width, d->component.bbox.height);
  out["centroid"] =
      py::make_tuple(d->component.centroid_x, d->component.centroid_y);
  py::list hull;
  for (const sdet::PixelCoord& p : d->hull)
    hull.append(py::make_tuple(p.x, p.y));
  out["hull"] = std::move(hull);
  return out;
}

}  // namespace

PYBIND11_MODULE(_staticdet, m) {
  m.doc() = "Static-object detection in video via dual-foreground fusion";
  m.attr("__version__") = "0.1.0";

  m.def(
      "luma",
      [](const DoubleArray& arr) {
        return frame_to_array(sdet::luma_frame(frame_from_array(arr, "frame")));
      },
      py::arg("frame"),
      "Lab lightness of an RGB or gray array, rescaled to [0, 1].");

  m.def(
      "illumination_equalize",
      [](const DoubleArray& arr, int p, int q) {
        sdet::EqualizationParams params{p, q};
        return frame_to_array(
            sdet::illumination_equalize(frame_from_array(arr, "frame"), params));
      },
      py::arg("frame"), py::arg("p") = 7, py::arg("q") = 7,
      "Directional illumination equalization on the HSV value channel.");

  m.def(
      "dehaze",
      [](const DoubleArray& arr, int patch_radius, double omega, double t_floor,
         double airlight_fraction) {
        sdet::DehazeParams params{patch_radius, omega, t_floor,
                                  airlight_fraction};
        return frame_to_array(
            sdet::dehaze(frame_from_array(arr, "frame"), params));
      },
      py::arg("frame"), py::arg("patch_radius") = 7, py::arg("omega") = 0.95,
      py::arg("t_floor") = 0.1, py::arg("airlight_fraction") = 0.001,
      "Dark-channel-prior dehazing.");

  m.def(
      "dark_channel",
      [](const DoubleArray& arr, int patch_radius) {
        return frame_to_array(
            sdet::dark_channel(frame_from_array(arr, "frame"), patch_radius));
      },
      py::arg("frame"), py::arg("patch_radius") = 7,
      "Patch-minimum of the per-pixel channel minimum.");

  m.def(
      "threshold_mask",
      [](const DoubleArray& arr, std::optional<double> threshold) {
        sdet::Frame diff = frame_from_array(arr, "difference image");
        sdet::BinaryMask mask = threshold
                                    ? sdet::threshold_mask(diff, *threshold)
                                    : sdet::threshold_mask(diff);
        return mask_to_array(mask);
      },
      py::arg("difference"), py::arg("threshold") = py::none(),
      "Foreground where the value strictly exceeds the threshold (default: "
      "the image mean).");

  py::class_<sdet::BackgroundModel>(m, "BackgroundModel",
                                    "Per-pixel mixture-of-Gaussians "
                                    "background model over luma frames.")
      .def(py::init([](const DoubleArray& first, int k, double learning_rate,
                       double match_threshold, double background_portion,
                       double initial_variance, double variance_floor) {
             sdet::MogParams params;
             params.k = k;
             params.learning_rate = learning_rate;
             params.match_threshold = match_threshold;
             params.background_portion = background_portion;
             params.initial_variance = initial_variance;
             params.variance_floor = variance_floor;
             return sdet::BackgroundModel(frame_from_array(first, "first frame"),
                                          params);
           }),
           py::arg("first_luma"), py::arg("k") = 3,
           py::arg("learning_rate") = 0.01, py::arg("match_threshold") = 2.5,
           py::arg("background_portion") = 0.7,
           py::arg("initial_variance") = (15.0 / 255.0) * (15.0 / 255.0),
           py::arg("variance_floor") = (2.0 / 255.0) * (2.0 / 255.0))
      .def(
          "update_and_classify",
          [](sdet::BackgroundModel& model, const DoubleArray& luma) {
            return mask_to_array(
                model.update_and_classify(frame_from_array(luma, "luma")));
          },
          py::arg("luma"),
          "Classify each pixel against the current model, then absorb the "
          "frame. Returns the moving-pixel mask.")
      .def("background_luma",
           [](const sdet::BackgroundModel& model) {
             return frame_to_array(model.background_luma());
           })
      .def_property_readonly("width", &sdet::BackgroundModel::width)
      .def_property_readonly("height", &sdet::BackgroundModel::height);

  m.def(
      "subtract_masks",
      [](const MaskArray& a, const MaskArray& b) {
        return mask_to_array(sdet::subtract_masks(
            mask_from_array(a, "mask a"), mask_from_array(b, "mask b")));
      },
      py::arg("a"), py::arg("b"), "a AND NOT b, elementwise.");

  m.def(
      "detect",
      [](const MaskArray& difference_fg, const MaskArray& motion_fg,
         int erode_size, int dilate_size, long long min_area,
         long long frame_index) {
        sdet::PostParams params{erode_size, dilate_size, min_area};
        return detection_to_py(sdet::detect(
            mask_from_array(difference_fg, "difference mask"),
            mask_from_array(motion_fg, "motion mask"), params, frame_index));
      },
      py::arg("difference_fg"), py::arg("motion_fg"), py::arg("erode_size") = 3,
      py::arg("dilate_size") = 5, py::arg("min_area") = 450,
      py::arg("frame_index") = 0,
      "Dual-foreground fusion, opening, largest component and its hull. "
      "Returns None or a dict with area/bbox/centroid/hull.");

  m.def(
      "compute_iou",
      [](const MaskArray& a, const MaskArray& b) {
        return sdet::compute_iou(mask_from_array(a, "mask a"),
                                 mask_from_array(b, "mask b"));
      },
      py::arg("a"), py::arg("b"),
      "Intersection over union; 1.0 when both masks are empty.");

  m.def(
      "run",
      [](const std::string& config_path) {
        std::vector<sdet::FrameReport> reports =
            sdet::run_pipeline(sdet::load_pipeline_config(config_path));
        py::list out;
        for (const sdet::FrameReport& r : reports)
          out.append(json_to_py(sdet::frame_report_to_json(r)));
        return out;
      },
      py::arg("config_path"),
      "Run the full pipeline from a config file; returns per-frame reports "
      "as dicts.");

  m.def(
      "generate",
      [](const std::string& scenario_path, const std::string& out_dir) {
        return sdet::synth::write_sequence(sdet::load_scenario(scenario_path),
                                           out_dir);
      },
      py::arg("scenario_path"), py::arg("out_dir"),
      "Generate a synthetic sequence with ground truth; returns the frame "
      "count.");

  m.def(
      "evaluate",
      [](const std::string& pred_dir, const std::string& truth_dir) {
        sdet::EvalSummary s = sdet::evaluate_masks(pred_dir, truth_dir);
        py::dict out;
        out["mean_iou"] = s.mean_iou;
        out["min_iou"] = s.min_iou;
        py::list per_frame;
        for (const sdet::EvalEntry& e : s.per_frame) {
          py::dict entry;
          entry["index"] = e.index;
          entry["iou"] = e.iou;
          per_frame.append(std::move(entry));
        }
        out["per_frame"] = std::move(per_frame);
        return out;
      },
      py::arg("pred_dir"), py::arg("truth_dir"),
      "Score predicted masks against ground-truth masks by trailing index.");
}
