// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The chirpwave Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "chirpwave/acceptance.hpp"
#include "chirpwave/aliasing.hpp"
#include "chirpwave/channel.hpp"
#include "chirpwave/experiment.hpp"
#include "chirpwave/receiver.hpp"
#include "chirpwave/spectral.hpp"
#include "chirpwave/transforms.hpp"
#include "chirpwave/waveform.hpp"

namespace py = pybind11;
using namespace chirpwave;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;
using RArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

CVec to_cvec(const CArray& a) {
  if (a.ndim() != 1) throw std::invalid_argument("expected a 1-D array");
  return CVec(a.data(), a.data() + a.size());
}

RVec to_rvec(const RArray& a) {
  if (a.ndim() != 1) throw std::invalid_argument("expected a 1-D array");
  return RVec(a.data(), a.data() + a.size());
}

py::array_t<cplx> from_cvec(const CVec& v) {
  return py::array_t<cplx>({static_cast<py::ssize_t>(v.size())}, v.data());
}

py::array_t<double> from_rvec(const RVec& v) {
  return py::array_t<double>({static_cast<py::ssize_t>(v.size())}, v.data());
}

py::dict waveform_dict(const Waveform& w) {
  py::dict d;
  d["samples"] = from_cvec(w.samples);
  d["sample_rate"] = w.sample_rate;
  d["t0"] = w.t0;
  return d;
}

DDChannel channel_from(const std::vector<std::tuple<cplx, double, double>>& paths) {
  std::vector<DDPath> p;
  for (const auto& [g, d, nu] : paths) p.push_back({g, d, nu});
  return DDChannel(std::move(p));
}

std::vector<std::tuple<cplx, double, double>> channel_to(const DDChannel& ch) {
  std::vector<std::tuple<cplx, double, double>> out;
  for (const auto& p : ch.paths()) out.emplace_back(p.gain, p.delay, p.doppler);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "AFDM chirp waveforms, delay-Doppler channels and matched-filter I/O relations";

  py::class_<ChirpConfig>(m, "ChirpConfig")
      .def(py::init(&make_config), py::arg("n"), py::arg("t"), py::arg("c1"), py::arg("c2"))
      .def_readonly("n", &ChirpConfig::n)
      .def_readonly("t", &ChirpConfig::t)
      .def_readonly("c1", &ChirpConfig::c1)
      .def_readonly("c2", &ChirpConfig::c2)
      .def_property_readonly("dt", &ChirpConfig::dt)
      .def_property_readonly("chirp_index", &ChirpConfig::chirp_index)
      .def("__repr__", [](const ChirpConfig& c) {
        std::ostringstream os;
        os << "ChirpConfig(n=" << c.n << ", t=" << c.t << ", c1=" << c.c1 << ", c2=" << c.c2 << ")";
        return os.str();
      });

  auto tr = m.def_submodule("transforms", "discrete affine Fourier transform");
  tr.def("idaft_matrix", [](const ChirpConfig& c) { return idaft_matrix(c).entries; });
  tr.def("daft_matrix", [](const ChirpConfig& c) { return daft_matrix(c).entries; });
  tr.def("idfnt_matrix", [](int n) { return idfnt_matrix(n).entries; });
  tr.def("modulate", [](const ChirpConfig& c, const CArray& x) { return from_cvec(modulate(c, to_cvec(x))); });
  tr.def("demodulate", [](const ChirpConfig& c, const CArray& y) { return from_cvec(demodulate(c, to_cvec(y))); });

  auto wf = m.def_submodule("waveform", "continuous-time chirps, prefixes and pulse shaping");
  py::class_<SrrcFilter>(wf, "SrrcFilter")
      .def_readonly("beta", &SrrcFilter::beta)
      .def_readonly("q", &SrrcFilter::q)
      .def_readonly("o", &SrrcFilter::o)
      .def_readonly("ts", &SrrcFilter::ts)
      .def_property_readonly("taps", [](const SrrcFilter& f) { return from_cvec(f.taps); });
  wf.def("design_srrc", &design_srrc, py::arg("beta"), py::arg("q"), py::arg("o"), py::arg("ts"));
  wf.def("synth_ideal", [](const ChirpConfig& c, const CArray& x, int o) {
    return waveform_dict(synth_ideal(c, to_cvec(x), o));
  }, py::arg("cfg"), py::arg("symbols"), py::arg("o"));
  wf.def("add_cpp", [](const ChirpConfig& c, const CArray& s, int l) { return from_cvec(add_cpp(c, to_cvec(s), l)); });
  wf.def("add_cps", [](const ChirpConfig& c, const CArray& s, int l) { return from_cvec(add_cps(c, to_cvec(s), l)); });
  wf.def("shape", [](const CArray& s, const SrrcFilter& f, int first) {
    return waveform_dict(shape(to_cvec(s), f, first));
  }, py::arg("seq"), py::arg("filt"), py::arg("first_index") = 0);

  auto sp = m.def_submodule("spectral", "power spectral density");
  sp.def("prototype_spectrum", [](const ChirpConfig& c, const RArray& f) {
    return from_cvec(prototype_spectrum(c, to_rvec(f)));
  });
  sp.def("analytic_psd", [](const ChirpConfig& c, double sigma2, const RArray& f) {
    return from_rvec(analytic_psd(c, sigma2, to_rvec(f)).psd);
  }, py::arg("cfg"), py::arg("sigma2"), py::arg("freqs"));
  sp.def("bandwidth_estimate", &bandwidth_estimate);
  sp.def("occupied_bandwidth", [](const RArray& f, const RArray& p, double level_db) {
    PsdCurve c;
    c.freq = to_rvec(f);
    c.psd = to_rvec(p);
    return occupied_bandwidth(c, level_db);
  }, py::arg("freqs"), py::arg("psd"), py::arg("level_db") = -20.0);

  auto al = m.def_submodule("aliasing", "aliased continuous-time chirps");
  al.def("q_index", &q_index);
  al.def("inner_product_matrix", [](const ChirpConfig& c, int o) { return inner_product_matrix(c, o).abs_i; },
         py::arg("cfg"), py::arg("o") = 32);
  al.def("predict_orthogonality", [](const ChirpConfig& c, int n, int np) {
    const auto p = predict_orthogonality(c, n, np);
    py::dict d;
    d["aliased"] = p.verdict == Orthogonality::Aliased;
    d["divisible"] = p.divisible;
    d["magnitude"] = p.magnitude;
    d["pieces"] = p.pieces;
    return d;
  });

  auto ch = m.def_submodule("channel", "delay-Doppler channels");
  ch.def("max_doppler", &max_doppler, py::arg("speed_kmh"), py::arg("fc_hz"));
  ch.def("make_eva_channel", [](double speed, double fc, std::uint64_t seed) {
    ChannelRealizationSpec s;
    s.speed_kmh = speed;
    s.fc_hz = fc;
    s.seed = seed;
    return channel_to(make_eva_channel(s));
  }, py::arg("speed_kmh") = 500.0, py::arg("fc_hz") = 5e9, py::arg("seed") = 1);

  auto rx = m.def_submodule("receiver", "matched filtering and effective channels");
  rx.def("ideal_srrc_ambiguity", &ideal_srrc_ambiguity, py::arg("beta"), py::arg("ts"), py::arg("tau"), py::arg("nu"));
  rx.def("cross_ambiguity", &cross_ambiguity, py::arg("filt"), py::arg("tau"), py::arg("nu"));
  rx.def("effective_channel", [](const ChirpConfig& c, const std::vector<std::tuple<cplx, double, double>>& paths,
                                 const SrrcFilter& f, const std::string& model) {
    const DDChannel chan = quantize_delays(channel_from(paths), f.o / f.ts);
    const TapLayout lay = default_tap_layout(c, chan, f.q);
    const TapGrid g = effective_taps(c, chan, AmbiguityEvaluator(f, parse_pulse_model(model)), lay);
    const EffectiveChannel e = build_hu_mf(c, g, default_cpp_length(c, chan, f.q), lay.lead);
    py::dict d;
    d["h_mf"] = e.h_mf;
    d["hu_mf"] = e.hu_mf;
    d["path_gap"] = e.path_gap;
    return d;
  }, py::arg("cfg"), py::arg("paths"), py::arg("filt"), py::arg("model") = "ideal");
  rx.def("baseline", [](const ChirpConfig& c, const std::vector<std::tuple<cplx, int, double>>& paths) {
    std::vector<BaselinePath> p;
    for (const auto& [g, l, nu] : paths) p.push_back({g, l, nu});
    const auto b = build_baseline(c, p);
    return py::make_tuple(b.h, b.hu);
  });

  auto hx = m.def_submodule("harness", "experiments and acceptance criteria");
  hx.def("complexity_ratio", [](int n, int n_od) { return complexity_compare(n, n_od, false).ratio; });
  hx.def("run_acceptance", [](bool small, const std::vector<int>& only) {
    AcceptanceOptions opt;
    opt.small = small;
    opt.only = only;
    std::ostringstream os;
    const auto res = run_acceptance(opt, os);
    py::list out;
    for (const auto& r : res) {
      py::dict d;
      d["id"] = r.id;
      d["name"] = r.name;
      d["pass"] = r.pass;
      d["detail"] = r.detail;
      out.append(d);
    }
    return out;
  }, py::arg("small") = true, py::arg("only") = std::vector<int>{});
}
