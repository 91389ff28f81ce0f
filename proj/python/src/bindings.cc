// Copyright 2026 The radaug Authors.
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

#include <sstream>

#include "json.hpp"
#include "radaug/augment.h"
#include "radaug/cli.h"
#include "radaug/corpus.h"
#include "radaug/errors.h"
#include "radaug/metrics.h"
#include "radaug/triplets.h"
#include "radaug/vol3d.h"

namespace py = pybind11;

namespace radaug {
namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// (D, H, W, C) array <-> TokenGrid.
vol3d::TokenGrid ToGrid(const Array &a) {
  if (a.ndim() != 4) {
    throw Error(ErrorCode::kInvalidArgument,
                "expected a (depth, height, width, dim) array");
  }
  std::vector<double> data(a.data(), a.data() + a.size());
  return vol3d::TokenGrid({a.shape(0), a.shape(1), a.shape(2)}, a.shape(3),
                          std::move(data));
}

Array FromGrid(const vol3d::TokenGrid &g) {
  Array out({g.grid().depth, g.grid().height, g.grid().width, g.dim()});
  std::copy(g.data().begin(), g.data().end(), out.mutable_data());
  return out;
}

template <class Tag>
vol3d::Extent3<Tag> Ext(const std::tuple<int64_t, int64_t, int64_t> &t) {
  return {std::get<0>(t), std::get<1>(t), std::get<2>(t)};
}

using Dims = std::tuple<int64_t, int64_t, int64_t>;

}  // namespace
}  // namespace radaug

PYBIND11_MODULE(_radaug, m) {
  using namespace radaug;
  m.doc() = "Native core of radaug";

  static py::exception<Error> error_type(m, "RadaugError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error &e) {
      py::object err = py::handle(error_type.ptr())(std::string(e.what()));
      err.attr("code") = std::string(ErrorCodeName(e.code()));
      PyErr_SetObject(error_type.ptr(), err.ptr());
    }
  });

  py::class_<Triplet>(m, "Triplet")
      .def(py::init([](const std::string &e, const std::string &p, bool x) {
             return MakeTriplet(e, p, x);
           }),
           py::arg("entity") = "", py::arg("position") = "",
           py::arg("exist") = true)
      .def_readonly("entity", &Triplet::entity)
      .def_readonly("position", &Triplet::position)
      .def_readonly("exist", &Triplet::exist)
      .def("__eq__", [](const Triplet &a, const Triplet &b) { return a == b; })
      .def("__hash__",
           [](const Triplet &t) {
             return py::hash(py::make_tuple(t.entity, t.position, t.exist));
           })
      .def("__repr__", [](const Triplet &t) {
        return "Triplet(" + py::repr(py::str(t.entity)).cast<std::string>() +
               ", " + py::repr(py::str(t.position)).cast<std::string>() + ", " +
               (t.exist ? "True" : "False") + ")";
      });

  py::class_<Lexicon>(m, "Lexicon")
      .def_static("from_json",
                  [](const std::string &text) {
                    return LexiconFromJson(nlohmann::json::parse(text));
                  })
      .def_static("load", &LoadLexicon);

  py::class_<CanonicalMap>(m, "CanonicalMap")
      .def(py::init<>())
      .def_static("from_json",
                  [](const std::string &text) {
                    return CanonicalMapFromJson(nlohmann::json::parse(text));
                  })
      .def_static("load", &LoadCanonicalMap)
      .def("apply", &CanonicalMap::Apply);

  m.def("split_sentences", &SplitSentences);
  m.def("extract_triplets", &ExtractTriplets);
  m.def("canonicalize", &Canonicalize);
  m.def("render_question",
        [](const Triplet &t) { return RenderQuestion(t).text; });
  m.def(
      "report_to_triplets",
      [](const std::string &text, const Lexicon &lex, const CanonicalMap &map) {
        return ReportToTriplets(text, lex, map);
      },
      py::arg("text"), py::arg("lexicon"), py::arg("map") = CanonicalMap());

  m.def("keyword_present", &KeywordPresent);
  m.def("append_sentence", &AppendSentence);
  m.def(
      "nn_augment",
      [](const std::string &text, const std::string &region,
         const std::string &rules_json) {
        auto r = ParseRegion(region);
        if (!r) throw Error(ErrorCode::kInvalidArgument, "unknown region " + region);
        auto rules = NormalityRulesFromJson(nlohmann::json::parse(rules_json));
        NnResult out = NnAugment(text, *r, rules);
        std::vector<std::string> appended;
        for (const NnFinding &f : out.appended) appended.push_back(f.sentence);
        return py::make_tuple(out.text, appended);
      },
      py::arg("text"), py::arg("region"), py::arg("rules_json"));

  m.def("tokenize", &Tokenize);
  m.def("bleu", &Bleu, py::arg("pred"), py::arg("refs"), py::arg("max_n") = 4);
  m.def("rouge", [](const TokenSeq &p, const TokenSeq &r) {
    RougeScores s = Rouge(p, r);
    return py::dict(py::arg("rouge1_f") = s.rouge1_f,
                    py::arg("rougeL_f") = s.rougeL_f);
  });
  m.def("meteor", &Meteor);
  m.def(
      "triplet_f1",
      [](const std::string &pred, const std::string &ref, const Lexicon &lex,
         const CanonicalMap &map) {
        PrecisionRecall s = TripletF1(pred, ref, lex, map);
        return py::dict(py::arg("precision") = s.precision,
                        py::arg("recall") = s.recall, py::arg("f1") = s.f1);
      },
      py::arg("pred"), py::arg("ref"), py::arg("lexicon"),
      py::arg("map") = CanonicalMap());

  m.def("token_count", [](const Dims &vol, const Dims &patch) {
    return vol3d::TokenCount(Ext<vol3d::VolumeTag>(vol), Ext<vol3d::PatchTag>(patch));
  });
  m.def("anyres_crops", [](const Dims &vol, const Dims &crop, const Dims &global) {
    vol3d::CropPlan plan = vol3d::AnyresPlan(Ext<vol3d::VolumeTag>(vol),
                                             Ext<vol3d::VolumeTag>(crop),
                                             Ext<vol3d::VolumeTag>(global));
    vol3d::ValidateCropPlan(plan);
    std::vector<Dims> offsets;
    for (const auto &b : plan.crops) {
      offsets.emplace_back(b.offset.depth, b.offset.height, b.offset.width);
    }
    return offsets;
  });
  m.def("anyres_token_budget", [](const Dims &vol, const Dims &crop,
                                  const Dims &global, const Dims &patch,
                                  int64_t per_view) {
    vol3d::CropPlan plan = vol3d::AnyresPlan(Ext<vol3d::VolumeTag>(vol),
                                             Ext<vol3d::VolumeTag>(crop),
                                             Ext<vol3d::VolumeTag>(global));
    return vol3d::AnyresTokenBudget(plan, Ext<vol3d::PatchTag>(patch), per_view);
  });
  m.def(
      "mlp_project",
      [](const Array &tokens, int64_t out_dim, uint64_t seed) {
        return FromGrid(vol3d::MlpProject(ToGrid(tokens), out_dim, seed));
      },
      py::arg("tokens"), py::arg("out_dim"), py::arg("seed") = 0);
  m.def(
      "spp_project",
      [](const Array &tokens, const Dims &pool, int64_t out_dim, uint64_t seed) {
        return FromGrid(vol3d::SppProject(
            ToGrid(tokens), Ext<vol3d::KernelTag>(pool), out_dim, seed));
      },
      py::arg("tokens"), py::arg("pool"), py::arg("out_dim"), py::arg("seed") = 0);
  m.def(
      "tokenpacker_project",
      [](const Array &tokens, const Dims &down, int64_t out_dim, uint64_t seed) {
        return FromGrid(vol3d::TokenPacker3dProject(
            ToGrid(tokens), Ext<vol3d::KernelTag>(down), out_dim, seed));
      },
      py::arg("tokens"), py::arg("down"), py::arg("out_dim"), py::arg("seed") = 0);
  m.def("mean_pool3d", [](const Array &tokens, const Dims &pool) {
    return FromGrid(vol3d::MeanPool3d(ToGrid(tokens), Ext<vol3d::KernelTag>(pool)));
  });

  m.def(
      "run_cli",
      [](const std::vector<std::string> &args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::Run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      "Runs a radaug command line; returns (exit_code, stdout, stderr).");
}
