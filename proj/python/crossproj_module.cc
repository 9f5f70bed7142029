// Copyright 2026 The Crossproj Authors.
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

#include <optional>
#include <string>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "crossproj/aligner.h"
#include "crossproj/corpus.h"
#include "crossproj/embedding_store.h"
#include "crossproj/error.h"
#include "crossproj/evaluator.h"
#include "crossproj/run.h"
#include "crossproj/sinkhorn.h"
#include "crossproj/version.h"

namespace py = pybind11;

namespace crossproj {
namespace {

py::dict MatrixDict(const EmbeddingMatrix &m) {
  py::dict d;
  d["vectors"] = Eigen::MatrixXf(m.vectors);
  d["wp_to_token"] = m.wp_to_token;
  return d;
}

EmbeddingMatrix MatrixFrom(const Eigen::MatrixXf &vectors,
                           const std::vector<int> &wp_to_token) {
  EmbeddingMatrix m;
  m.dim = static_cast<int>(vectors.cols());
  m.vectors = vectors;
  m.wp_to_token = wp_to_token;
  CheckEmbeddingMatrix(m);
  return m;
}

Command ParseCommand(const std::string &name) {
  for (Command c : {Command::kProject, Command::kEvaluate, Command::kDivergence,
                    Command::kStats}) {
    if (CommandName(c) == name) return c;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown command '" + name + "'");
}

}  // namespace
}  // namespace crossproj

PYBIND11_MODULE(_crossproj, m) {
  using namespace crossproj;
  m.doc() = "Annotation projection and predicate divergence analysis.";
  m.attr("__version__") = std::string(kVersion);

  // Owned by the module attribute for the interpreter's lifetime.
  static PyObject *error_type =
      py::exception<Error>(m, "CrossprojError", PyExc_ValueError).ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error &e) {
      py::object exc =
          py::reinterpret_borrow<py::object>(error_type)(py::str(e.what()));
      exc.attr("code") = std::string(ErrorCodeName(e.code()));
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  m.def(
      "canonicalize_corpus",
      [](const std::string &text) {
        return SerializeCorpus(ParseCorpus(text));
      },
      py::arg("text"),
      "Parses JSON-lines corpus text and returns its canonical serialization.");

  m.def(
      "load_embeddings",
      [](py::bytes data, std::optional<int> expected_dim) {
        EmbeddingStore store = LoadEmbeddings(std::string(data), expected_dim);
        py::list out;
        for (const EmbeddingPair &p : store.pairs()) {
          py::dict d;
          d["id"] = p.sentence_id;
          d["source"] = MatrixDict(p.source);
          d["target"] = MatrixDict(p.target);
          out.append(d);
        }
        return out;
      },
      py::arg("data"), py::arg("expected_dim") = py::none());

  m.def(
      "rounded_prf",
      [](int64_t correct, int64_t false_pos, int64_t false_neg) {
        Prf p = RoundedPrf({"", correct, false_pos, false_neg});
        return py::make_tuple(p.precision, p.recall, p.f1);
      },
      py::arg("correct"), py::arg("false_pos"), py::arg("false_neg"));

  m.def(
      "sinkhorn_plan",
      [](const Eigen::MatrixXd &cost, const Eigen::VectorXd &mu,
         const Eigen::VectorXd &nu, double epsilon, int max_iters, double tol) {
        SinkhornResult r =
            SinkhornPlan(cost, mu, nu, {epsilon, max_iters, tol, false});
        py::dict d;
        d["plan"] = r.plan;
        d["converged"] = r.converged;
        d["iterations"] = r.iterations;
        d["residual"] = r.residual;
        return d;
      },
      py::arg("cost"), py::arg("mu"), py::arg("nu"), py::arg("epsilon") = 0.1,
      py::arg("max_iters") = 1000, py::arg("tol") = 1e-9,
      "Entropic transport plan; rows follow nu, columns follow mu.");

  m.def(
      "ot_alignment",
      [](const Eigen::MatrixXf &source, const Eigen::MatrixXf &target,
         double threshold, double epsilon, double temperature) {
        auto ids = [](const Eigen::MatrixXf &v) {
          std::vector<int> map(v.rows());
          for (int i = 0; i < v.rows(); ++i) map[i] = i;
          return map;
        };
        AlignerConfig cfg;
        cfg.mode = AlignerMode::kOtBidir;
        cfg.threshold = threshold;
        cfg.epsilon = epsilon;
        cfg.temperature = temperature;
        cfg.Validate();
        OtAlignment a = ExtractOtBidir(MatrixFrom(source, ids(source)),
                                       MatrixFrom(target, ids(target)), cfg);
        py::list links;
        for (const WordPieceLink &l : a.alignment.links) {
          links.append(py::make_tuple(l.source, l.target, l.score));
        }
        return links;
      },
      py::arg("source"), py::arg("target"), py::arg("threshold") = 1e-3,
      py::arg("epsilon") = 0.1, py::arg("temperature") = 1.0,
      "Word-piece links (source row, target row, score).");

  m.def(
      "run",
      [](const std::string &command, const std::string &corpus,
         const std::string &out_dir, std::optional<std::string> embeddings,
         std::optional<std::string> alignment, const std::string &aligner,
         int workers) {
        RunConfig cfg;
        cfg.command = ParseCommand(command);
        cfg.corpus_path = corpus;
        cfg.out_dir = out_dir;
        cfg.embeddings_path = embeddings;
        cfg.workers = workers;
        cfg.aligner.mode =
            aligner == "ot" ? AlignerMode::kOtBidir : AlignerMode::kTopkS2t;
        if (alignment) {
          if (*alignment == "gold") {
            cfg.alignment = AlignmentSource::kGold;
          } else if (*alignment == "auto") {
            cfg.alignment = AlignmentSource::kGoldIfPresent;
          } else if (*alignment == "embeddings") {
            cfg.alignment = AlignmentSource::kEmbeddings;
          } else {
            throw Error(ErrorCode::kInvalidArgument,
                        "unknown alignment source '" + *alignment + "'");
          }
        }
        RunManifest manifest;
        {
          py::gil_scoped_release release;
          manifest = Execute(cfg);
        }
        py::dict d;
        d["outputs"] = manifest.outputs;
        d["warnings"] = manifest.warnings;
        d["nonconverged"] = manifest.nonconverged;
        return d;
      },
      py::arg("command"), py::arg("corpus"), py::arg("out_dir"),
      py::arg("embeddings") = py::none(), py::arg("alignment") = py::none(),
      py::arg("aligner") = "topk", py::arg("workers") = 1,
      "Runs one batch command and returns what it wrote.");
}
